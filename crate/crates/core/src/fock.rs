//! Fixed-N bosonic Fock sectors over the `2n` modes of the two wells, and the
//! number, hopping and ladder operators acting on them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sparse::RealOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Well {
    A,
    B,
}

/// One bosonic mode: a well and a 1-based on-well level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModeId {
    pub well: Well,
    pub level: usize,
}

impl ModeId {
    pub fn a(level: usize) -> Self {
        Self { well: Well::A, level }
    }

    pub fn b(level: usize) -> Self {
        Self { well: Well::B, level }
    }

    /// Position in the occupation tuple (a-modes first, then b-modes).
    pub fn slot(&self, n_levels: usize) -> Result<usize> {
        if self.level == 0 || self.level > n_levels {
            return Err(Error::InvalidMode(self.to_string()));
        }
        Ok(match self.well {
            Well::A => self.level - 1,
            Well::B => n_levels + self.level - 1,
        })
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = match self.well {
            Well::A => 'a',
            Well::B => 'b',
        };
        write!(f, "{w}{}", self.level)
    }
}

/// Occupation numbers `(n_a1..n_an, n_b1..n_bn)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState(Vec<u32>);

impl FockState {
    pub fn new(occupations: Vec<u32>) -> Self {
        Self(occupations)
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn n_levels(&self) -> usize {
        self.0.len() / 2
    }

    pub fn well(&self, well: Well) -> &[u32] {
        let n = self.n_levels();
        match well {
            Well::A => &self.0[..n],
            Well::B => &self.0[n..],
        }
    }
}

/// Number of ways to place `n_atoms` bosons in `2·n_levels` modes.
pub fn dimension(n_levels: usize, n_atoms: usize) -> Result<usize> {
    if n_levels == 0 {
        return Err(Error::NoLevels);
    }
    let overflow = || Error::DimensionOverflow { n_levels, n_atoms };
    let modes = n_levels.checked_mul(2).ok_or_else(overflow)?;
    multiset_count(modes, n_atoms).ok_or_else(overflow)
}

/// `C(modes − 1 + total, total)` with checked arithmetic.
fn multiset_count(modes: usize, total: usize) -> Option<usize> {
    let top = (modes as u128).checked_sub(1)?.checked_add(total as u128)?;
    let k = total.min(modes - 1) as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc = C(top − k + i, i) stays integral at each step
        acc = acc.checked_mul(top - k + i)? / i;
    }
    usize::try_from(acc).ok()
}

/// All occupation tuples of `modes` modes summing to `total`, in descending
/// lexicographic order.
pub(crate) fn compositions(modes: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; modes];
    fill(&mut current, 0, total, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for k in (0..=remaining).rev() {
        current[pos] = k;
        fill(current, pos + 1, remaining - k, out);
    }
    current[pos] = 0;
}

#[derive(Clone, Debug)]
pub struct FockSector {
    n_levels: usize,
    n_atoms: usize,
    basis: Vec<FockState>,
    index: HashMap<FockState, usize>,
}

impl FockSector {
    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FockState] {
        &self.basis
    }

    pub fn state(&self, i: usize) -> &FockState {
        &self.basis[i]
    }

    pub fn index_of(&self, state: &FockState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn index_of_occupations(&self, occupations: &[u32]) -> Option<usize> {
        self.index_of(&FockState::new(occupations.to_vec()))
    }
}

pub fn enumerate_sector(n_levels: usize, n_atoms: usize) -> Result<FockSector> {
    let expected = dimension(n_levels, n_atoms)?;
    let total = u32::try_from(n_atoms).map_err(|_| Error::DimensionOverflow { n_levels, n_atoms })?;
    let basis: Vec<FockState> = compositions(2 * n_levels, total)
        .into_iter()
        .map(FockState::new)
        .collect();
    debug_assert_eq!(basis.len(), expected);
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    Ok(FockSector {
        n_levels,
        n_atoms,
        basis,
        index,
    })
}

/// Sectors `0, 1, ..., n_atoms` with the same level count.
pub fn sector_chain(n_levels: usize, n_atoms: usize) -> Result<Vec<FockSector>> {
    (0..=n_atoms).map(|k| enumerate_sector(n_levels, k)).collect()
}

pub fn number_operator(sector: &FockSector, mode: ModeId) -> Result<RealOperator> {
    let slot = mode.slot(sector.n_levels)?;
    let diag: Vec<f64> = sector
        .basis
        .iter()
        .map(|s| f64::from(s.0[slot]))
        .collect();
    Ok(RealOperator::from_diagonal(&diag))
}

/// Total atom number; a multiple of the identity on a fixed-N sector.
pub fn total_number_operator(sector: &FockSector) -> RealOperator {
    RealOperator::identity(sector.dim()).scale(sector.n_atoms as f64)
}

/// `x†_create x_annihilate` restricted to the sector.
pub fn hopping_operator(sector: &FockSector, create: ModeId, annihilate: ModeId) -> Result<RealOperator> {
    let c = create.slot(sector.n_levels)?;
    let a = annihilate.slot(sector.n_levels)?;
    if c == a {
        return Err(Error::SameMode(create.to_string()));
    }
    let mut triplets = Vec::new();
    for (col, state) in sector.basis.iter().enumerate() {
        let n_a = state.0[a];
        if n_a == 0 {
            continue;
        }
        let n_c = state.0[c];
        let mut target = state.0.clone();
        target[a] -= 1;
        target[c] += 1;
        let row = sector.index[&FockState(target)];
        let amp = (f64::from(n_c + 1) * f64::from(n_a)).sqrt();
        triplets.push((row, col, amp));
    }
    Ok(RealOperator::from_triplets(sector.dim(), sector.dim(), triplets))
}

/// `x†_mode` mapping `source` (N atoms) into `target` (N + 1 atoms).
pub fn creation_operator(source: &FockSector, target: &FockSector, mode: ModeId) -> Result<RealOperator> {
    if source.n_levels != target.n_levels {
        return Err(Error::LevelMismatch {
            params: source.n_levels,
            sector: target.n_levels,
        });
    }
    if target.n_atoms != source.n_atoms + 1 {
        return Err(Error::Internal(format!(
            "creation needs adjacent sectors, got N = {} -> {}",
            source.n_atoms, target.n_atoms
        )));
    }
    let slot = mode.slot(source.n_levels)?;
    let triplets = source.basis.iter().enumerate().map(|(col, state)| {
        let mut occ = state.0.clone();
        occ[slot] += 1;
        let amp = f64::from(occ[slot]).sqrt();
        (target.index[&FockState(occ)], col, amp)
    });
    Ok(RealOperator::from_triplets(target.dim(), source.dim(), triplets.collect::<Vec<_>>()))
}

/// Ladder operators for `n_modes` bosons on the direct sum of the sectors with
/// total occupation `0..=cutoff`.
///
/// Creators annihilate the top sector, so `[a_i, a_j†] = δ_ij` holds only on
/// states of total occupation at most `cutoff − 1`.
#[derive(Clone, Debug)]
pub struct TruncatedLadders {
    pub n_modes: usize,
    pub cutoff: u32,
    basis: Vec<Vec<u32>>,
    pub annihilators: Vec<RealOperator>,
    pub creators: Vec<RealOperator>,
}

impl TruncatedLadders {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn total_occupation(&self, i: usize) -> u32 {
        self.basis[i].iter().sum()
    }

    /// Basis indices whose total occupation is at most `max_total`.
    pub fn indices_up_to(&self, max_total: u32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.total_occupation(i) <= max_total)
            .collect()
    }

    pub fn number(&self, mode: usize) -> RealOperator {
        let diag: Vec<f64> = self.basis.iter().map(|s| f64::from(s[mode])).collect();
        RealOperator::from_diagonal(&diag)
    }
}

pub fn truncated_ladder(n_modes: usize, cutoff: u32) -> TruncatedLadders {
    let basis: Vec<Vec<u32>> = (0..=cutoff).flat_map(|k| compositions(n_modes, k)).collect();
    let index: HashMap<&[u32], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let dim = basis.len();
    let mut annihilators = Vec::with_capacity(n_modes);
    let mut creators = Vec::with_capacity(n_modes);
    for j in 0..n_modes {
        let mut lower = Vec::new();
        for (col, state) in basis.iter().enumerate() {
            if state[j] == 0 {
                continue;
            }
            let mut target = state.clone();
            target[j] -= 1;
            lower.push((index[target.as_slice()], col, f64::from(state[j]).sqrt()));
        }
        let a = RealOperator::from_triplets(dim, dim, lower);
        creators.push(a.transpose());
        annihilators.push(a);
    }
    TruncatedLadders {
        n_modes,
        cutoff,
        basis,
        annihilators,
        creators,
    }
}
