use nalgebra::DMatrix;
use num_complex::Complex64;

use super::BetheRoots;
use crate::error::{Error, Result};
use crate::yangbaxter::{check_pole, IntegrableParams};

/// Distance below which a root counts as sitting on the evaluation point.
pub const EVALUATION_POLE_TOL: f64 = 1e-6;

fn ratio_factor(x: Complex64, eta: f64) -> Complex64 {
    (x - eta) / (x + eta)
}

/// Residual of the Bethe equations,
/// `F_i = η²(v_i² − W²)/ζ² − Π_{j≠i} (v_i − v_j − η)/(v_i − v_j + η)`.
pub fn bae_residual(roots: &BetheRoots, ip: &IntegrableParams) -> Result<Vec<Complex64>> {
    ip.validate()?;
    raw_residual(roots.as_slice(), ip)
}

/// Residual without the distinctness check on the roots; used inside Newton.
pub(crate) fn raw_residual(v: &[Complex64], ip: &IntegrableParams) -> Result<Vec<Complex64>> {
    let eta = ip.eta;
    let lhs_scale = (eta / ip.zeta()).powi(2);
    let w2 = ip.w_sum().powi(2);
    let mut out = Vec::with_capacity(v.len());
    for (i, &vi) in v.iter().enumerate() {
        let mut prod = Complex64::new(1.0, 0.0);
        for (j, &vj) in v.iter().enumerate() {
            if i == j {
                continue;
            }
            let x = vi - vj;
            check_pole(x + eta, || format!("v_{i} - v_{j} + eta = 0"))?;
            prod *= ratio_factor(x, eta);
        }
        out.push(lhs_scale * (vi * vi - w2) - prod);
    }
    Ok(out)
}

/// Complex Jacobian `∂F_i/∂v_k` of [`raw_residual`]. The residual is
/// holomorphic in every root, so this also fixes the real 2N×2N Jacobian.
pub(crate) fn raw_jacobian(v: &[Complex64], ip: &IntegrableParams) -> DMatrix<Complex64> {
    let eta = ip.eta;
    let lhs_scale = (eta / ip.zeta()).powi(2);
    let n = v.len();
    let g = |x: Complex64| ratio_factor(x, eta);
    let dg = |x: Complex64| 2.0 * eta / ((x + eta) * (x + eta));
    let mut jac = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        let mut diag = 2.0 * lhs_scale * v[i];
        for k in 0..n {
            if k == i {
                continue;
            }
            // product over j ≠ i, k, times g'(v_i − v_k)
            let mut rest = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i && j != k {
                    rest *= g(v[i] - v[j]);
                }
            }
            let term = dg(v[i] - v[k]) * rest;
            diag -= term;
            jac[(i, k)] = term;
        }
        jac[(i, i)] = diag;
    }
    jac
}

/// Bethe equations with denominators cleared,
/// `G_i = η²(v_i² − W²)/ζ² Π_{j≠i}(v_i − v_j + η) − Π_{j≠i}(v_i − v_j − η)`.
/// Polynomial in the roots, so Newton on `G` does not stall near the poles of
/// [`raw_residual`]; its zeros are checked against `F` afterwards.
pub(crate) fn cleared_residual(v: &[Complex64], ip: &IntegrableParams) -> Vec<Complex64> {
    let eta = ip.eta;
    let lhs_scale = (eta / ip.zeta()).powi(2);
    let w2 = ip.w_sum().powi(2);
    (0..v.len())
        .map(|i| {
            let (mut plus, mut minus) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
            for j in (0..v.len()).filter(|&j| j != i) {
                plus *= v[i] - v[j] + eta;
                minus *= v[i] - v[j] - eta;
            }
            lhs_scale * (v[i] * v[i] - w2) * plus - minus
        })
        .collect()
}

pub(crate) fn cleared_jacobian(v: &[Complex64], ip: &IntegrableParams) -> DMatrix<Complex64> {
    let eta = ip.eta;
    let lhs_scale = (eta / ip.zeta()).powi(2);
    let w2 = ip.w_sum().powi(2);
    let n = v.len();
    let one = Complex64::new(1.0, 0.0);
    let mut jac = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 0..n {
        let lhs = lhs_scale * (v[i] * v[i] - w2);
        let mut plus = one;
        for j in (0..n).filter(|&j| j != i) {
            plus *= v[i] - v[j] + eta;
        }
        let mut diag = 2.0 * lhs_scale * v[i] * plus;
        for k in (0..n).filter(|&k| k != i) {
            // products over j ≠ i, k
            let (mut p, mut m) = (one, one);
            for j in (0..n).filter(|&j| j != i && j != k) {
                p *= v[i] - v[j] + eta;
                m *= v[i] - v[j] - eta;
            }
            let term = lhs * p - m;
            diag += term;
            jac[(i, k)] = -term;
        }
        jac[(i, i)] = diag;
    }
    jac
}

/// Transfer-matrix eigenvalue on a Bethe state,
/// `Λ(u) = (u² − W²) Π (v_i − u − η)/(v_i − u) + (ζ/η)² Π (v_i − u + η)/(v_i − u)`.
pub fn transfer_eigenvalue(u: Complex64, roots: &BetheRoots, ip: &IntegrableParams) -> Result<Complex64> {
    ip.validate()?;
    let eta = ip.eta;
    let mut p_minus = Complex64::new(1.0, 0.0);
    let mut p_plus = Complex64::new(1.0, 0.0);
    for &v in roots.as_slice() {
        let x = v - u;
        if x.norm() <= EVALUATION_POLE_TOL {
            return Err(Error::RootAtEvaluationPoint { u, root: v });
        }
        p_minus *= (x - eta) / x;
        p_plus *= (x + eta) / x;
    }
    Ok((u * u - ip.w_sum().powi(2)) * p_minus + ip.d_vacuum() * p_plus)
}

fn energy_at(u: Complex64, roots: &BetheRoots, ip: &IntegrableParams, n_atoms: usize) -> Result<Complex64> {
    let n = n_atoms as f64;
    let lambda = transfer_eigenvalue(u, roots, ip)?;
    Ok(u * u + u * ip.eta * n + ip.alpha * n * n + ip.d_vacuum() - ip.w_sum().powi(2) - lambda)
}

/// A second evaluation point at least `1` away from `u` and every root.
pub(crate) fn shifted_point(u: Complex64, roots: &BetheRoots) -> Complex64 {
    let candidates = [
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(1.5, 1.5),
        Complex64::new(-2.5, 0.5),
    ];
    candidates
        .iter()
        .map(|&d| u + d)
        .max_by(|a, b| {
            let gap = |z: &Complex64| roots.as_slice().iter().map(|r| (r - z).norm()).fold(f64::INFINITY, f64::min);
            gap(a).total_cmp(&gap(b))
        })
        .unwrap()
}

/// Energy of the Bethe state,
/// `E = u² + uηN + αN² + (ζ/η)² − W² − Λ(u)` at `u = ip.u`.
///
/// The value is re-evaluated at a shifted `u`; disagreement beyond `1e-9`
/// relative means the roots do not solve the Bethe equations.
pub fn bethe_energy(roots: &BetheRoots, ip: &IntegrableParams, n_atoms: usize) -> Result<Complex64> {
    if roots.len() != n_atoms {
        return Err(Error::Internal(format!(
            "{} roots supplied for N = {n_atoms}",
            roots.len()
        )));
    }
    let e = energy_at(ip.u, roots, ip, n_atoms)?;
    let e2 = energy_at(shifted_point(ip.u, roots), roots, ip, n_atoms)?;
    if (e - e2).norm() > 1e-9 * e.norm().max(1.0) {
        return Err(Error::Internal(format!(
            "Bethe energy depends on u ({e} vs {e2}); the roots do not solve the Bethe equations"
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn roots(v: &[Complex64]) -> BetheRoots {
        BetheRoots::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_root_examples() {
        let ip = IntegrableParams::default_for(2);
        let r5 = 5f64.sqrt();
        let f = bae_residual(&roots(&[c(r5, 0.0)]), &ip).unwrap();
        assert!(f[0].norm() < 1e-14);
        let f = bae_residual(&roots(&[c(1.0, 0.0)]), &ip).unwrap();
        assert!((f[0] - c(-4.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn conjugate_pair_gives_conjugate_residuals() {
        let ip = IntegrableParams::default_for(2);
        let r = c(0.8, 1.3);
        let f = bae_residual(&roots(&[r, r.conj()]), &ip).unwrap();
        assert!((f[0] - f[1].conj()).norm() < 1e-14);
    }

    #[test]
    fn pole_detected() {
        let ip = IntegrableParams::default_for(2);
        let err = bae_residual(&roots(&[c(0.0, 0.0), c(1.0, 0.0)]), &ip).unwrap_err();
        assert!(matches!(err, Error::Pole(_)));
    }

    #[test]
    fn energies_of_single_root_solutions() {
        let ip = IntegrableParams::default_for(2);
        let r5 = 5f64.sqrt();
        let e = bethe_energy(&roots(&[c(r5, 0.0)]), &ip, 1).unwrap();
        assert!((e - c(1.0 - r5, 0.0)).norm() < 1e-12);
        let e = bethe_energy(&roots(&[c(-r5, 0.0)]), &ip, 1).unwrap();
        assert!((e - c(1.0 + r5, 0.0)).norm() < 1e-12);
        let lam = transfer_eigenvalue(c(0.0, 0.0), &roots(&[c(r5, 0.0)]), &ip).unwrap();
        assert!((lam - c(-3.0 + r5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn empty_roots_give_vacuum() {
        let ip = IntegrableParams::default_for(2);
        let empty = roots(&[]);
        let u = c(0.3, 0.1);
        let lam = transfer_eigenvalue(u, &empty, &ip).unwrap();
        assert!((lam - (u * u - 4.0 + 1.0)).norm() < 1e-15);
        assert_eq!(bethe_energy(&empty, &ip, 0).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn non_solution_is_rejected_by_energy() {
        let ip = IntegrableParams::default_for(2);
        assert!(bethe_energy(&roots(&[c(1.0, 0.0)]), &ip, 1).is_err());
    }

    #[test]
    fn evaluation_pole_is_reported() {
        let mut ip = IntegrableParams::default_for(1);
        ip.u = c(2.0, 0.0);
        let err = transfer_eigenvalue(ip.u, &roots(&[c(2.0, 0.0)]), &ip).unwrap_err();
        assert!(matches!(err, Error::RootAtEvaluationPoint { .. }));
    }

    #[test]
    fn cleared_jacobian_matches_finite_differences() {
        let ip = IntegrableParams {
            eta: -0.6,
            ..IntegrableParams::default_for(3)
        };
        let v = vec![c(0.3, 0.9), c(-1.2, 0.4), c(2.1, -0.6), c(0.5, 0.1)];
        let jac = cleared_jacobian(&v, &ip);
        let h = 1e-6;
        for k in 0..4 {
            let mut vp = v.clone();
            let mut vm = v.clone();
            vp[k] += h;
            vm[k] -= h;
            let (fp, fm) = (cleared_residual(&vp, &ip), cleared_residual(&vm, &ip));
            for i in 0..4 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!((fd - jac[(i, k)]).norm() < 1e-6, "({i},{k}): {fd} vs {}", jac[(i, k)]);
            }
        }
    }

    #[test]
    fn cleared_and_raw_residuals_share_zeros() {
        let ip = IntegrableParams::default_for(2);
        let v = [c(5f64.sqrt(), 0.0)];
        assert!(cleared_residual(&v, &ip)[0].norm() < 1e-14);
        let v = [c(0.4, 0.3), c(-0.7, 1.1)];
        let raw = raw_residual(&v, &ip).unwrap();
        let cleared = cleared_residual(&v, &ip);
        for i in 0..2 {
            let j = 1 - i;
            let denom = v[i] - v[j] + ip.eta;
            assert!((raw[i] * denom - cleared[i]).norm() < 1e-13);
        }
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let ip = IntegrableParams {
            eta: 0.7,
            ..IntegrableParams::default_for(2)
        };
        let v = vec![c(0.3, 0.9), c(-1.2, 0.4), c(2.1, -0.6)];
        let jac = raw_jacobian(&v, &ip);
        let h = 1e-6;
        for k in 0..3 {
            let mut vp = v.clone();
            let mut vm = v.clone();
            vp[k] += h;
            vm[k] -= h;
            let fp = raw_residual(&vp, &ip).unwrap();
            let fm = raw_residual(&vm, &ip).unwrap();
            for i in 0..3 {
                let fd = (fp[i] - fm[i]) / (2.0 * h);
                assert!((fd - jac[(i, k)]).norm() < 1e-7, "({i},{k}): {fd} vs {}", jac[(i, k)]);
            }
        }
    }
}
