use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use twowell::bethe::{solve_bae, SolveOptions};
use twowell::yangbaxter::validate_model;
use twowell::{build_hamiltonian, eigensolve, enumerate_sector, EigenOptions, ModelParams};

use crate::config::{ModelSpec, Resolved};
use crate::error::{CliError, Result};
use crate::output::{num, to_value, CommandOutput, JsonReport};

pub const DEFAULT_ATOMS: [usize; 4] = [1, 2, 3, 4];
pub const CONCAVITY_TOL: f64 = 1e-9;

/// Reference two-level couplings for the ground-state curves: unit on-level
/// and cross-well interactions, `U_aa12 = U_bb12 = 2`, `ε_a = (−2, 2)`,
/// `ε_b = (1, −1)`, `μ = (1, μ_2)` and `Ω_jk = 0.5`.
pub fn reference_params(mu2: f64) -> ModelParams {
    let mut mp = ModelParams::zeros(2);
    mp.u_same_well.a = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
    mp.u_same_well.b = mp.u_same_well.a.clone();
    mp.u_cross_well = vec![vec![1.0; 2]; 2];
    mp.eps.a = vec![-2.0, 2.0];
    mp.eps.b = vec![1.0, -1.0];
    mp.mu = vec![1.0, mu2];
    mp.omega = vec![vec![0.5; 2]; 2];
    mp
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: 5.0,
            step: 0.05,
        }
    }
}

impl Grid {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid \"{text}\" must have the form start:stop:step"));
        }
        let mut vals = [0.0; 3];
        for (v, p) in vals.iter_mut().zip(&parts) {
            *v = p
                .trim()
                .parse()
                .map_err(|_| format!("grid \"{text}\": \"{p}\" is not a number"))?;
        }
        let grid = Self {
            start: vals[0],
            stop: vals[1],
            step: vals[2],
        };
        let problems = grid.problems();
        if problems.is_empty() {
            Ok(grid)
        } else {
            Err(problems.join("; "))
        }
    }

    pub fn problems(&self) -> Vec<String> {
        let mut p = Vec::new();
        if ![self.start, self.stop, self.step].iter().all(|x| x.is_finite()) {
            p.push("grid values must be finite".to_string());
        }
        if self.step <= 0.0 {
            p.push(format!("grid step must be positive, got {}", self.step));
        }
        if self.stop < self.start {
            p.push(format!("grid stop {} is below start {}", self.stop, self.start));
        }
        p
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvePoint {
    pub n_atoms: usize,
    pub mu2_over_mu1: f64,
    pub e0_over_mu1: f64,
}

/// Largest second difference `E(x−h) − 2E(x) + E(x+h)` of one curve; a
/// concave curve has none above zero.
pub fn max_second_difference(curve: &[f64]) -> f64 {
    curve
        .windows(3)
        .map(|w| w[0] - 2.0 * w[1] + w[2])
        .fold(f64::NEG_INFINITY, f64::max)
}

fn ground_energy_ed(mp: &ModelParams, n: usize) -> Result<f64> {
    let h = build_hamiltonian(mp, &enumerate_sector(mp.n_levels, n)?)?;
    Ok(eigensolve(&h, &EigenOptions::default())?.ground_energy())
}

fn ground_energy_bae(mp: &ModelParams, n: usize, opts: &SolveOptions) -> Result<f64> {
    let report = validate_model(mp);
    let ip = match report.derived {
        Some(ip) if report.integrable => ip,
        _ => return Err(CliError::NotIntegrable(Box::new(report))),
    };
    let run = solve_bae(&ip, n, opts)?;
    run.solutions
        .iter()
        .map(|s| s.energy.re)
        .min_by(f64::total_cmp)
        .ok_or_else(|| CliError::Threshold(format!("no Bethe solution found for N={n}")))
}

/// Ground-state curves `E0/μ1` against `μ2/μ1`. The base couplings are the
/// reference two-level set unless the config supplies physical ones.
pub fn fig2_curves(base: &ModelParams, atoms: &[usize], grid: &Grid, bae: Option<&SolveOptions>) -> Result<Vec<CurvePoint>> {
    let mu1 = base.mu[0];
    let xs = grid.points();
    let jobs: Vec<(usize, f64)> = atoms.iter().flat_map(|&n| xs.iter().map(move |&x| (n, x))).collect();
    jobs.par_iter()
        .map(|&(n, x)| {
            let mut mp = base.clone();
            mp.mu[1] = x * mu1;
            let e0 = match bae {
                None => ground_energy_ed(&mp, n)?,
                Some(opts) => ground_energy_bae(&mp, n, opts)?,
            };
            Ok(CurvePoint {
                n_atoms: n,
                mu2_over_mu1: x,
                e0_over_mu1: e0 / mu1,
            })
        })
        .collect()
}

pub fn cmd_fig2(run: &Resolved, grid: &Grid, force_bae: bool) -> Result<CommandOutput> {
    let base = match &run.model {
        ModelSpec::Physical(mp) => mp.clone(),
        ModelSpec::Integrable(_) => reference_params(1.0),
    };
    let mut problems = grid.problems();
    if base.n_levels != 2 {
        problems.push(format!("fig2 needs two levels, model has {}", base.n_levels));
    } else if base.mu[0] == 0.0 {
        problems.push("fig2 needs mu_1 != 0".to_string());
    }
    if !problems.is_empty() {
        return Err(CliError::Invalid(problems));
    }
    let opts = SolveOptions {
        budget: run.budget,
        seed: run.seed,
        ..Default::default()
    };
    if force_bae {
        // every grid point must be integrable before any solving starts
        for x in grid.points() {
            let mut mp = base.clone();
            mp.mu[1] = x * base.mu[0];
            let report = validate_model(&mp);
            if !report.integrable {
                log::error!("mu2/mu1 = {x} fails the integrability identification");
                return Err(CliError::NotIntegrable(Box::new(report)));
            }
        }
    }
    let points = fig2_curves(&base, &run.atoms, grid, force_bae.then_some(&opts))?;

    let mut csv = String::from("N,mu2_over_mu1,E0_over_mu1\n");
    for p in &points {
        csv.push_str(&format!("{},{},{}\n", p.n_atoms, num(p.mu2_over_mu1), num(p.e0_over_mu1)));
    }
    let mut concavity = serde_json::Map::new();
    let mut lines = Vec::new();
    let mut worst = f64::NEG_INFINITY;
    for &n in &run.atoms {
        let curve: Vec<f64> = points.iter().filter(|p| p.n_atoms == n).map(|p| p.e0_over_mu1).collect();
        let d2 = max_second_difference(&curve);
        worst = worst.max(d2);
        concavity.insert(format!("N={n}"), json!(d2.is_finite().then_some(d2)));
        lines.push(format!(
            "N={n}: {} points, E0/mu1 from {} to {}",
            curve.len(),
            num(curve[0]),
            num(*curve.last().expect("grid is non-empty"))
        ));
    }
    let failure = (worst > CONCAVITY_TOL)
        .then(|| CliError::Threshold(format!("a curve is not concave (second difference {worst:e})")));
    Ok(CommandOutput {
        csv: Some(csv),
        lines,
        json: JsonReport {
            command: "fig2",
            config_echo: to_value(&run.echo),
            results: json!({
                "grid": grid,
                "path": if force_bae { "bae" } else { "ed" },
                "points": points,
            }),
            residual_summary: json!({ "max_second_difference": concavity }),
        },
        failure,
    })
}
