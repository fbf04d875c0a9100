use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntegrableParams;
use crate::error::{Error, Result};
use crate::fock::{hopping_operator, number_operator, total_number_operator, FockSector, ModeId};
use crate::sparse::{ComplexOperator, RealOperator};

fn check_levels(ip: &IntegrableParams, sector: &FockSector) -> Result<()> {
    ip.validate()?;
    if ip.n_levels != sector.n_levels() {
        return Err(Error::LevelMismatch {
            params: ip.n_levels,
            sector: sector.n_levels(),
        });
    }
    Ok(())
}

/// `(Σ_j N_aj, Σ_j N_bj)`.
fn well_numbers(sector: &FockSector) -> Result<(RealOperator, RealOperator)> {
    let dim = sector.dim();
    let mut na = RealOperator::zeros(dim, dim);
    let mut nb = RealOperator::zeros(dim, dim);
    for j in 1..=sector.n_levels() {
        na = na.add(&number_operator(sector, ModeId::a(j))?);
        nb = nb.add(&number_operator(sector, ModeId::b(j))?);
    }
    Ok((na, nb))
}

/// `t(u) = u² + uηN + (ζ²/η² − W²) + ηW Σ_j (N_bj − N_aj) + η² Σ_jk N_aj N_bk
///        + Σ_jk s_j t_k (a_j† b_k + b_k† a_j)` on a fixed-N sector.
pub fn transfer_matrix(u: Complex64, ip: &IntegrableParams, sector: &FockSector) -> Result<ComplexOperator> {
    check_levels(ip, sector)?;
    let (eta, w) = (ip.eta, ip.w_sum());
    let (na, nb) = well_numbers(sector)?;
    let id = RealOperator::identity(sector.dim());
    let mut real = id
        .scale(ip.d_vacuum() - w * w)
        .add_scaled(&nb.sub(&na), eta * w)
        .add_scaled(&na.matmul(&nb), eta * eta);
    for j in 0..ip.n_levels {
        for k in 0..ip.n_levels {
            let hop = hopping_operator(sector, ModeId::a(j + 1), ModeId::b(k + 1))?;
            real = real.add_scaled(&hop.add(&hop.transpose()), ip.s[j] * ip.t[k]);
        }
    }
    let number = total_number_operator(sector).to_complex();
    Ok(ComplexOperator::identity(sector.dim())
        .scale(u * u)
        .add_scaled(&number, u * eta)
        .add(&real.to_complex()))
}

/// Trace of the two-well monodromy `L_a(u + W) L_b(u − W)` taken literally:
/// `A_a A_b + B_a C_b + C_a B_b + D_a D_b`.
///
/// Its hopping part is `Σ_jk s_j t_k (a_j† b_k + b_j† a_k)`, which coincides
/// with [`transfer_matrix`] only when `s_j t_k = s_k t_j` (s parallel to t).
pub fn monodromy_trace(u: Complex64, ip: &IntegrableParams, sector: &FockSector) -> Result<ComplexOperator> {
    check_levels(ip, sector)?;
    let (eta, w) = (ip.eta, ip.w_sum());
    let (na, nb) = well_numbers(sector)?;
    let id = ComplexOperator::identity(sector.dim());
    let a_a = id.scale(u + w).add_scaled(&na.to_complex(), eta.into());
    let a_b = id.scale(u - w).add_scaled(&nb.to_complex(), eta.into());
    let mut trace = a_a.matmul(&a_b).add(&id.scale(ip.d_vacuum().into()));
    for j in 0..ip.n_levels {
        for k in 0..ip.n_levels {
            let coeff = Complex64::from(ip.s[j] * ip.t[k]);
            // B_a C_b = Σ t_k a_k Σ s_j b_j†, C_a B_b = Σ s_j a_j† Σ t_k b_k
            let bc = hopping_operator(sector, ModeId::b(j + 1), ModeId::a(k + 1))?;
            let cb = hopping_operator(sector, ModeId::a(j + 1), ModeId::b(k + 1))?;
            trace = trace.add_scaled(&bc.add(&cb).to_complex(), coeff);
        }
    }
    Ok(trace)
}

/// `‖t(u)t(v) − t(v)t(u)‖max / max(1, ‖t(u)‖max ‖t(v)‖max)`.
pub fn transfer_commutator_residual(
    u: Complex64,
    v: Complex64,
    ip: &IntegrableParams,
    sector: &FockSector,
) -> Result<f64> {
    let tu = transfer_matrix(u, ip, sector)?;
    let tv = transfer_matrix(v, ip, sector)?;
    let norm = (tu.max_abs() * tv.max_abs()).max(1.0);
    Ok(tu.commutator(&tv).max_abs() / norm)
}

/// Coefficients of `t(u) = C2 u² + C1 u + C0`.
#[derive(Clone, Debug)]
pub struct ConservedCharges {
    pub c0: ComplexOperator,
    pub c1: ComplexOperator,
    pub c2: ComplexOperator,
    /// Largest `|t(u) − (u² C2 + u C1 + C0)|` over the sampled `u`.
    pub reconstruction: f64,
    /// Largest pairwise commutator entry.
    pub commutators: f64,
}

pub const CHARGE_TOL: f64 = 1e-12;

pub fn conserved_charges(ip: &IntegrableParams, sector: &FockSector) -> Result<ConservedCharges> {
    let c0 = transfer_matrix(Complex64::new(0.0, 0.0), ip, sector)?;
    let c1 = total_number_operator(sector).to_complex().scale(ip.eta.into());
    let c2 = ComplexOperator::identity(sector.dim());

    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let mut reconstruction: f64 = 0.0;
    for _ in 0..3 {
        let u = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let poly = c2.scale(u * u).add_scaled(&c1, u).add(&c0);
        reconstruction = reconstruction.max(transfer_matrix(u, ip, sector)?.max_abs_diff(&poly));
    }
    let commutators = [
        c0.commutator(&c1).max_abs(),
        c0.commutator(&c2).max_abs(),
        c1.commutator(&c2).max_abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    if reconstruction > CHARGE_TOL {
        return Err(Error::Internal(format!(
            "t(u) differs from its charge expansion by {reconstruction:e}"
        )));
    }
    Ok(ConservedCharges {
        c0,
        c1,
        c2,
        reconstruction,
        commutators,
    })
}

fn hamiltonian_at(u: Complex64, ip: &IntegrableParams, sector: &FockSector) -> Result<ComplexOperator> {
    let n = sector.n_atoms() as f64;
    let scalar = u * u + u * ip.eta * n + ip.alpha * n * n + ip.d_vacuum() - ip.w_sum().powi(2);
    Ok(ComplexOperator::identity(sector.dim())
        .scale(scalar)
        .sub(&transfer_matrix(u, ip, sector)?))
}

/// `H = u² + u C1 + (α/η²) C1² + (ζ²/η² − W²) − t(u)`, which does not depend on `u`.
pub fn hamiltonian_from_transfer(ip: &IntegrableParams, sector: &FockSector) -> Result<RealOperator> {
    let h = hamiltonian_at(ip.u, ip, sector)?;
    let shifted = hamiltonian_at(ip.u + 1.0, ip, sector)?;
    let scale = h.max_abs().max(1.0);
    let drift = h.max_abs_diff(&shifted);
    if drift > 1e-12 * scale {
        return Err(Error::Internal(format!(
            "Hamiltonian from t(u) depends on u (drift {drift:e})"
        )));
    }
    h.try_into_real(1e-12 * scale)
        .map_err(|im| Error::Internal(format!("Hamiltonian from t(u) has imaginary part {im:e}")))
}
