use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::{r_matrix, IntegrableParams};
use crate::error::{Error, Result};
use crate::fock::{truncated_ladder, TruncatedLadders};
use crate::sparse::ComplexOperator;

/// A 2×2 Lax matrix whose entries act on one well's truncated Fock space:
///
/// ```text
/// L(u) = | uI + η Σ N_j     Σ t_j a_j |
///        | Σ s_j a_j†       ζ/η I     |
/// ```
#[derive(Clone, Debug)]
pub struct LaxOperator {
    pub a: ComplexOperator,
    pub b: ComplexOperator,
    pub c: ComplexOperator,
    pub d: ComplexOperator,
}

impl LaxOperator {
    fn entry(&self, row: usize, col: usize) -> &ComplexOperator {
        match (row, col) {
            (0, 0) => &self.a,
            (0, 1) => &self.b,
            (1, 0) => &self.c,
            _ => &self.d,
        }
    }
}

pub fn lax_operator(u: Complex64, ip: &IntegrableParams, ladders: &TruncatedLadders) -> Result<LaxOperator> {
    ip.validate()?;
    if ladders.n_modes != ip.n_levels {
        return Err(Error::LevelMismatch {
            params: ip.n_levels,
            sector: ladders.n_modes,
        });
    }
    let dim = ladders.dim();
    let id = ComplexOperator::identity(dim);
    let mut a = id.scale(u);
    let mut b = ComplexOperator::zeros(dim, dim);
    let mut c = ComplexOperator::zeros(dim, dim);
    for j in 0..ip.n_levels {
        a = a.add_scaled(&ladders.number(j).to_complex(), ip.eta.into());
        b = b.add_scaled(&ladders.annihilators[j].to_complex(), ip.t[j].into());
        c = c.add_scaled(&ladders.creators[j].to_complex(), ip.s[j].into());
    }
    let d = id.scale((ip.zeta() / ip.eta).into());
    Ok(LaxOperator { a, b, c, d })
}

/// Residual of `R12(u−v) L1(u) L2(v) = L2(v) L1(u) R12(u−v)` for explicitly
/// supplied Lax matrices, restricted to quantum states of total occupation at
/// most `cutoff − 2` where the truncated products are exact.
pub fn rll_residual_of(
    u: Complex64,
    v: Complex64,
    eta: f64,
    l_u: &LaxOperator,
    l_v: &LaxOperator,
    ladders: &TruncatedLadders,
) -> Result<f64> {
    if ladders.cutoff < 2 {
        return Err(Error::Internal("RLL check needs cutoff >= 2".into()));
    }
    let r = r_matrix(u - v, eta)?;
    let q = ladders.dim();
    let n = 4 * q;
    let zero = Complex64::new(0.0, 0.0);
    let dense = |op: &ComplexOperator| op.to_dense();
    let blocks_u: Vec<DMatrix<Complex64>> = (0..4).map(|i| dense(l_u.entry(i / 2, i % 2))).collect();
    let blocks_v: Vec<DMatrix<Complex64>> = (0..4).map(|i| dense(l_v.entry(i / 2, i % 2))).collect();

    // index of (aux1, aux2, quantum)
    let idx = |x1: usize, x2: usize, k: usize| (2 * x1 + x2) * q + k;
    let mut l1 = DMatrix::from_element(n, n, zero);
    let mut l2 = DMatrix::from_element(n, n, zero);
    let mut r12 = DMatrix::from_element(n, n, zero);
    for x1 in 0..2 {
        for x2 in 0..2 {
            for y in 0..2 {
                let bu = &blocks_u[2 * x1 + y];
                let bv = &blocks_v[2 * x2 + y];
                for i in 0..q {
                    for j in 0..q {
                        l1[(idx(x1, x2, i), idx(y, x2, j))] = bu[(i, j)];
                        l2[(idx(x1, x2, i), idx(x1, y, j))] = bv[(i, j)];
                    }
                }
            }
            for y1 in 0..2 {
                for y2 in 0..2 {
                    let val = r[(2 * x1 + x2, 2 * y1 + y2)];
                    for k in 0..q {
                        r12[(idx(x1, x2, k), idx(y1, y2, k))] = val;
                    }
                }
            }
        }
    }
    let lhs = &r12 * &l1 * &l2;
    let rhs = &l2 * &l1 * &r12;

    let keep: Vec<usize> = ladders
        .indices_up_to(ladders.cutoff - 2)
        .into_iter()
        .flat_map(|k| (0..4).map(move |aux| aux * q + k))
        .collect();
    let mut worst: f64 = 0.0;
    for &i in &keep {
        for &j in &keep {
            worst = worst.max((lhs[(i, j)] - rhs[(i, j)]).norm());
        }
    }
    Ok(worst)
}

/// RLL residual for the multi-level Lax operator built on ladders of the given cutoff.
pub fn rll_residual(u: Complex64, v: Complex64, ip: &IntegrableParams, cutoff: u32) -> Result<f64> {
    let ladders = truncated_ladder(ip.n_levels, cutoff);
    let l_u = lax_operator(u, ip, &ladders)?;
    let l_v = lax_operator(v, ip, &ladders)?;
    rll_residual_of(u, v, ip.eta, &l_u, &l_v, &ladders)
}

/// Residuals of the Lax-entry commutation relations on states of total
/// occupation at most `cutoff − 1`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AbcdResiduals {
    /// `[A(u), B(v)] + η B(v)`
    pub ab: f64,
    /// `[A(u), C(v)] − η C(v)`
    pub ac: f64,
    /// `[B(u), C(v)] − ζ I`
    pub bc: f64,
    /// `max_X [X(v), D(u)]`
    pub d: f64,
}

impl AbcdResiduals {
    pub fn max(&self) -> f64 {
        self.ab.max(self.ac).max(self.bc).max(self.d)
    }
}

pub fn abcd_residuals(u: Complex64, v: Complex64, ip: &IntegrableParams, ladders: &TruncatedLadders) -> Result<AbcdResiduals> {
    let lu = lax_operator(u, ip, ladders)?;
    let lv = lax_operator(v, ip, ladders)?;
    let keep = ladders.indices_up_to(ladders.cutoff.saturating_sub(1));
    let proj = |op: &ComplexOperator| op.restrict(&keep, &keep).max_abs();
    let eta = Complex64::from(ip.eta);
    let zeta_id = ComplexOperator::identity(ladders.dim()).scale(ip.zeta().into());
    let d = [&lv.a, &lv.b, &lv.c, &lv.d]
        .iter()
        .map(|x| proj(&x.commutator(&lu.d)))
        .fold(0.0, f64::max);
    Ok(AbcdResiduals {
        ab: proj(&lu.a.commutator(&lv.b).add_scaled(&lv.b, eta)),
        ac: proj(&lu.a.commutator(&lv.c).add_scaled(&lv.c, -eta)),
        bc: proj(&lu.b.commutator(&lv.c).sub(&zeta_id)),
        d,
    })
}
