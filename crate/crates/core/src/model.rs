//! The physical two-well Hamiltonian with `n` levels per well.
//!
//! ```text
//! H = Σ_p Σ_j U_ppjj N_pj² + ½ Σ_p Σ_{j≠k} U_ppjk N_pj N_pk + Σ_jk U_abjk N_aj N_bk
//!     − Σ_j μ_j (N_aj − N_bj) + Σ_j ε_aj N_aj + Σ_j ε_bj N_bj
//!     − Σ_jk Ω_jk (a_j† b_k + b_k† a_j)
//! ```
//!
//! For two levels the `½ Σ_{j≠k}` form means the stored `U_pp12` is exactly the
//! coefficient of `N_p1 N_p2`. All couplings share one arbitrary energy unit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{hopping_operator, number_operator, FockSector, FockState, ModeId, Well};
use crate::sparse::RealOperator;

/// Per-well pair of values, serialized as `{"a": ..., "b": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerWell<T> {
    pub a: T,
    pub b: T,
}

impl<T> PerWell<T> {
    pub fn get(&self, well: Well) -> &T {
        match well {
            Well::A => &self.a,
            Well::B => &self.b,
        }
    }

    pub fn get_mut(&mut self, well: Well) -> &mut T {
        match well {
            Well::A => &mut self.a,
            Well::B => &mut self.b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n_levels: usize,
    /// `U_ppjk`, symmetric in `j, k`.
    pub u_same_well: PerWell<Vec<Vec<f64>>>,
    /// `U_abjk`.
    pub u_cross_well: Vec<Vec<f64>>,
    pub mu: Vec<f64>,
    pub eps: PerWell<Vec<f64>>,
    /// Tunneling amplitudes `Ω_jk` for `a_j† b_k + h.c.`.
    pub omega: Vec<Vec<f64>>,
}

fn check_square(name: &str, m: &[Vec<f64>], n: usize, problems: &mut Vec<String>) -> bool {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        problems.push(format!("{name} must be {n}x{n}"));
        return false;
    }
    if m.iter().flatten().any(|x| !x.is_finite()) {
        problems.push(format!("{name} has non-finite entries"));
    }
    true
}

fn check_vector(name: &str, v: &[f64], n: usize, problems: &mut Vec<String>) {
    if v.len() != n {
        problems.push(format!("{name} must have {n} entries, found {}", v.len()));
    } else if v.iter().any(|x| !x.is_finite()) {
        problems.push(format!("{name} has non-finite entries"));
    }
}

impl ModelParams {
    /// All couplings zero.
    pub fn zeros(n_levels: usize) -> Self {
        let m = vec![vec![0.0; n_levels]; n_levels];
        Self {
            n_levels,
            u_same_well: PerWell { a: m.clone(), b: m.clone() },
            u_cross_well: m.clone(),
            mu: vec![0.0; n_levels],
            eps: PerWell {
                a: vec![0.0; n_levels],
                b: vec![0.0; n_levels],
            },
            omega: m,
        }
    }

    /// Every structural problem with the parameters; empty when valid.
    pub fn problems(&self) -> Vec<String> {
        let n = self.n_levels;
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("n_levels must be at least 1".into());
            return problems;
        }
        for (well, name) in [(Well::A, "u_same_well.a"), (Well::B, "u_same_well.b")] {
            let u = self.u_same_well.get(well);
            if check_square(name, u, n, &mut problems) {
                for j in 0..n {
                    for k in (j + 1)..n {
                        if u[j][k] != u[k][j] {
                            problems.push(format!(
                                "{name} must be symmetric: [{}][{}] = {} but [{}][{}] = {}",
                                j + 1,
                                k + 1,
                                u[j][k],
                                k + 1,
                                j + 1,
                                u[k][j]
                            ));
                        }
                    }
                }
            }
        }
        check_square("u_cross_well", &self.u_cross_well, n, &mut problems);
        check_square("omega", &self.omega, n, &mut problems);
        check_vector("mu", &self.mu, n, &mut problems);
        check_vector("eps.a", &self.eps.a, n, &mut problems);
        check_vector("eps.b", &self.eps.b, n, &mut problems);
        problems
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.problems();
        if p.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(p))
        }
    }

    /// Linear coefficient of `N_pj`: `ε_aj − μ_j` or `ε_bj + μ_j`.
    pub fn onsite(&self, well: Well, j: usize) -> f64 {
        match well {
            Well::A => self.eps.a[j] - self.mu[j],
            Well::B => self.eps.b[j] + self.mu[j],
        }
    }

    /// Same-well interaction energy plus on-site terms for one well's occupations.
    fn well_energy(&self, well: Well, occ: &[u32]) -> f64 {
        let u = self.u_same_well.get(well);
        let mut e = 0.0;
        for j in 0..self.n_levels {
            let nj = f64::from(occ[j]);
            e += u[j][j] * nj * nj + self.onsite(well, j) * nj;
            for k in (j + 1)..self.n_levels {
                e += u[j][k] * nj * f64::from(occ[k]);
            }
        }
        e
    }

    fn cross_energy(&self, state: &FockState) -> f64 {
        let (a, b) = (state.well(Well::A), state.well(Well::B));
        let mut e = 0.0;
        for j in 0..self.n_levels {
            for k in 0..self.n_levels {
                e += self.u_cross_well[j][k] * f64::from(a[j]) * f64::from(b[k]);
            }
        }
        e
    }

    /// Diagonal matrix element `⟨state|H|state⟩`.
    pub fn diagonal_energy(&self, state: &FockState) -> f64 {
        let (e_a, e_b) = decoupled_energies(self, state);
        e_a + e_b + self.cross_energy(state)
    }
}

/// `(E_a, E_b)`: the energies of the two wells without tunneling and without
/// the cross-well interaction.
pub fn decoupled_energies(params: &ModelParams, state: &FockState) -> (f64, f64) {
    (
        params.well_energy(Well::A, state.well(Well::A)),
        params.well_energy(Well::B, state.well(Well::B)),
    )
}

/// Matrix of `H` on a fixed-N sector, built state by state. Exactly symmetric.
pub fn build_hamiltonian(params: &ModelParams, sector: &FockSector) -> Result<RealOperator> {
    params.validate()?;
    if params.n_levels != sector.n_levels() {
        return Err(Error::LevelMismatch {
            params: params.n_levels,
            sector: sector.n_levels(),
        });
    }
    let n = params.n_levels;
    let mut triplets = Vec::new();
    for (col, state) in sector.basis().iter().enumerate() {
        triplets.push((col, col, params.diagonal_energy(state)));
        let occ = state.occupations();
        for j in 0..n {
            for k in 0..n {
                let w = params.omega[j][k];
                if w == 0.0 {
                    continue;
                }
                // a_j† b_k and b_k† a_j
                for (create, annihilate) in [(j, n + k), (n + k, j)] {
                    if occ[annihilate] == 0 {
                        continue;
                    }
                    let mut target = occ.to_vec();
                    target[annihilate] -= 1;
                    target[create] += 1;
                    let row = sector
                        .index_of_occupations(&target)
                        .expect("hopping stays inside the sector");
                    let amp = f64::from((occ[create] + 1) * occ[annihilate]).sqrt();
                    triplets.push((row, col, -w * amp));
                }
            }
        }
    }
    Ok(RealOperator::from_triplets(sector.dim(), sector.dim(), triplets))
}

/// Largest commutator entries of `H` with the number-type operators.
#[derive(Clone, Debug, Serialize)]
pub struct ConservationReport {
    /// `‖[H, N_total]‖max`.
    pub total_number: f64,
    /// `‖[H, N_pj]‖max` for each mode.
    pub modes: Vec<(String, f64)>,
    /// `‖[H, N_aj + N_bj]‖max` for each level `j` (1-based).
    pub level_pairs: Vec<(usize, f64)>,
}

impl ConservationReport {
    /// Names of the operators that commute with `H` exactly.
    pub fn conserved(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.total_number == 0.0 {
            out.push("N".to_string());
        }
        out.extend(self.modes.iter().filter(|m| m.1 == 0.0).map(|m| format!("N_{}", m.0)));
        out.extend(
            self.level_pairs
                .iter()
                .filter(|m| m.1 == 0.0)
                .map(|m| format!("J_{}", m.0)),
        );
        out
    }
}

pub fn conservation_report(params: &ModelParams, sector: &FockSector) -> Result<ConservationReport> {
    let h = build_hamiltonian(params, sector)?;
    let dim = sector.dim();
    let mut total = RealOperator::zeros(dim, dim);
    let mut modes = Vec::new();
    let mut level_pairs = Vec::new();
    for j in 1..=params.n_levels {
        let na = number_operator(sector, ModeId::a(j))?;
        let nb = number_operator(sector, ModeId::b(j))?;
        modes.push((ModeId::a(j).to_string(), h.commutator(&na).max_abs()));
        modes.push((ModeId::b(j).to_string(), h.commutator(&nb).max_abs()));
        let pair = na.add(&nb);
        level_pairs.push((j, h.commutator(&pair).max_abs()));
        total = total.add(&pair);
    }
    Ok(ConservationReport {
        total_number: h.commutator(&total).max_abs(),
        modes,
        level_pairs,
    })
}

/// `H` assembled from the Fock-space operators by sparse algebra. Used as an
/// independent route to [`build_hamiltonian`].
pub fn compose_hamiltonian(params: &ModelParams, sector: &FockSector) -> Result<RealOperator> {
    params.validate()?;
    let n = params.n_levels;
    let dim = sector.dim();
    let num = |w: Well, j: usize| number_operator(sector, ModeId { well: w, level: j + 1 });
    let mut h = RealOperator::zeros(dim, dim);
    for well in [Well::A, Well::B] {
        let u = params.u_same_well.get(well);
        for j in 0..n {
            let nj = num(well, j)?;
            h = h.add_scaled(&nj.matmul(&nj), u[j][j]);
            h = h.add_scaled(&nj, params.onsite(well, j));
            for k in 0..n {
                if k != j {
                    h = h.add_scaled(&nj.matmul(&num(well, k)?), 0.5 * u[j][k]);
                }
            }
        }
    }
    for j in 0..n {
        for k in 0..n {
            let cross = num(Well::A, j)?.matmul(&num(Well::B, k)?);
            h = h.add_scaled(&cross, params.u_cross_well[j][k]);
            let hop = hopping_operator(sector, ModeId::a(j + 1), ModeId::b(k + 1))?;
            h = h.add_scaled(&hop.add(&hop.transpose()), -params.omega[j][k]);
        }
    }
    Ok(h)
}
