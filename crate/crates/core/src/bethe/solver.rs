//! Multi-start damped Newton solver for the Bethe equations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::equations::{
    cleared_jacobian, cleared_residual, raw_jacobian, raw_residual, shifted_point, EVALUATION_POLE_TOL,
};
use super::{bethe_energy, bethe_vector, BetheRoots, BetheSolution};
use crate::error::{Error, Result};
use crate::fock::sector_chain;
use crate::yangbaxter::IntegrableParams;

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Number of random starts; `None` means `100·N`.
    pub budget: Option<usize>,
    pub seed: u64,
    /// Acceptance threshold on `max_i |F_i|`.
    pub tol: f64,
    pub max_iter: usize,
    /// Multiset distance below which two solutions are the same.
    pub dedup_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            budget: None,
            seed: 0,
            tol: 1e-10,
            max_iter: 200,
            dedup_tol: 1e-8,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct SolveStats {
    pub attempts: usize,
    pub converged: usize,
    pub unique: usize,
    /// Unique solutions discarded because their Bethe vector vanishes.
    pub spurious: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaeRun {
    pub solutions: Vec<BetheSolution>,
    pub stats: SolveStats,
}

fn max_abs(f: &[Complex64]) -> f64 {
    f.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn sq_norm(f: &[Complex64]) -> f64 {
    f.iter().map(|z| z.norm_sqr()).sum()
}

/// Newton with Armijo backtracking on `‖F‖²` for a holomorphic map `F`.
/// Returns the final point and `max_i |F_i|` there.
fn newton<F, J>(mut v: Vec<Complex64>, residual: F, jacobian: J, tol: f64, max_iter: usize) -> Option<(Vec<Complex64>, f64)>
where
    F: Fn(&[Complex64]) -> Option<Vec<Complex64>>,
    J: Fn(&[Complex64]) -> DMatrix<Complex64>,
{
    const ARMIJO: f64 = 1e-4;
    let mut f = residual(&v)?;
    for _ in 0..max_iter {
        let err = max_abs(&f);
        if !err.is_finite() {
            return None;
        }
        if err <= tol {
            break;
        }
        let rhs = DVector::from_iterator(f.len(), f.iter().map(|z| -z));
        let step = jacobian(&v).lu().solve(&rhs)?;
        let f2 = sq_norm(&f);
        let mut lambda = 1.0;
        loop {
            let trial: Vec<Complex64> = v.iter().zip(step.iter()).map(|(a, d)| a + d * lambda).collect();
            if let Some(ft) = residual(&trial) {
                if sq_norm(&ft) <= (1.0 - 2.0 * ARMIJO * lambda) * f2 {
                    v = trial;
                    f = ft;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-12 {
                let err = max_abs(&f);
                return err.is_finite().then_some((v, err));
            }
        }
    }
    let err = max_abs(&f);
    err.is_finite().then_some((v, err))
}

/// Newton on the cleared equations, then a few steps on the original ones to
/// polish. Accepted only if the original residual is within `opts.tol`.
fn solve_from(start: Vec<Complex64>, ip: &IntegrableParams, opts: &SolveOptions) -> Option<Vec<Complex64>> {
    let (v, _) = newton(
        start,
        |v| Some(cleared_residual(v, ip)),
        |v| cleared_jacobian(v, ip),
        1e-3 * opts.tol,
        opts.max_iter,
    )?;
    let (v, err) = newton(v, |v| raw_residual(v, ip).ok(), |v| raw_jacobian(v, ip), 1e-3 * opts.tol, 20)?;
    (err <= opts.tol).then_some(v)
}

fn initial_guess(attempt: usize, n_atoms: usize, scale: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    (0..n_atoms)
        .map(|_| Complex64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale)))
        .collect()
}

/// Solves the Bethe equations for `N` roots from seeded random starts.
///
/// Attempts run in parallel, each with its own random stream, and the
/// surviving solutions are deduplicated in attempt order, so the result does
/// not depend on scheduling. Solutions whose Bethe vector vanishes are
/// dropped as spurious.
pub fn solve_bae(ip: &IntegrableParams, n_atoms: usize, opts: &SolveOptions) -> Result<BaeRun> {
    ip.validate()?;
    if n_atoms == 0 {
        let roots = BetheRoots::new(Vec::new())?;
        let energy = bethe_energy(&roots, ip, 0)?;
        return Ok(BaeRun {
            solutions: vec![BetheSolution {
                roots,
                residual: 0.0,
                energy,
                matched_eigenvalue: None,
                near_evaluation_pole: false,
            }],
            stats: SolveStats {
                attempts: 0,
                converged: 0,
                unique: 1,
                spurious: 0,
            },
        });
    }

    let budget = opts.budget.unwrap_or(100 * n_atoms);
    // real roots of highly excited states spread over roughly |η|·N beyond max(W, ζ/η)
    let scale = ip.w_sum().abs().max((ip.zeta() / ip.eta).abs()).max(1.0) + ip.eta.abs() * n_atoms as f64;
    let outcomes: Vec<Option<BetheRoots>> = (0..budget)
        .into_par_iter()
        .map(|attempt| {
            let start = initial_guess(attempt, n_atoms, scale, opts.seed);
            let v = solve_from(start, ip, opts)?;
            BetheRoots::new(v).ok()
        })
        .collect();

    let converged = outcomes.iter().filter(|o| o.is_some()).count();
    let mut unique: Vec<BetheRoots> = Vec::new();
    for roots in outcomes.into_iter().flatten() {
        if unique.iter().all(|u| u.distance(&roots) > opts.dedup_tol) {
            unique.push(roots);
        }
    }
    let n_unique = unique.len();

    let chain = sector_chain(ip.n_levels, n_atoms)?;
    let mut solutions = Vec::new();
    let mut spurious = 0;
    for roots in unique {
        match bethe_vector(&roots, ip, &chain) {
            Ok(_) => {}
            Err(Error::VanishingBetheVector(_)) => {
                spurious += 1;
                continue;
            }
            Err(e) => return Err(e),
        }
        let near_pole = roots
            .as_slice()
            .iter()
            .any(|r| (r - ip.u).norm() <= EVALUATION_POLE_TOL);
        let energy = if near_pole {
            let shifted = IntegrableParams {
                u: shifted_point(ip.u, &roots),
                ..ip.clone()
            };
            bethe_energy(&roots, &shifted, n_atoms)?
        } else {
            bethe_energy(&roots, ip, n_atoms)?
        };
        let residual = max_abs(&raw_residual(roots.as_slice(), ip)?);
        solutions.push(BetheSolution {
            roots,
            residual,
            energy,
            matched_eigenvalue: None,
            near_evaluation_pole: near_pole,
        });
    }
    solutions.sort_by(|a, b| a.energy.re.total_cmp(&b.energy.re));
    Ok(BaeRun {
        solutions,
        stats: SolveStats {
            attempts: budget,
            converged,
            unique: n_unique,
            spurious,
        },
    })
}
