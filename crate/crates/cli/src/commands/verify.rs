use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use twowell::fock::truncated_ladder;
use twowell::yangbaxter::{
    abcd_residuals, conserved_charges, hamiltonian_from_transfer, identify_parameters, lax_operator,
    rll_residual_of, transfer_commutator_residual, ybe_residual,
};
use twowell::{build_hamiltonian, enumerate_sector, Complex64, ComplexOperator, IntegrableParams};

use crate::config::Resolved;
use crate::error::{CliError, Result};
use crate::output::{to_value, CommandOutput, JsonReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ybe,
    Rll,
    Tcommute,
    Charges,
    Hrel,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::Rll => "rll",
            Suite::Tcommute => "tcommute",
            Suite::Charges => "charges",
            Suite::Hrel => "hrel",
            Suite::All => "all",
        }
    }
}

pub const YBE_TOL: f64 = 1e-12;
pub const RLL_TOL: f64 = 1e-12;
pub const RLL_CONTROL_MIN: f64 = 1e-3;
pub const TCOMMUTE_TOL: f64 = 1e-10;
pub const CHARGES_TOL: f64 = 1e-12;
pub const HREL_TOL: f64 = 1e-12;

/// Random draws per check.
const YBE_DRAWS: usize = 100;
const RLL_DRAWS: usize = 20;
const TCOMMUTE_DRAWS: usize = 20;
const RLL_CUTOFF: u32 = 4;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    /// `false` for negative controls, which must reach the threshold.
    pub upper_bound: bool,
    pub passed: bool,
}

impl Check {
    fn at_most(suite: Suite, name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            suite,
            name: name.into(),
            residual,
            threshold,
            upper_bound: true,
            passed: residual <= threshold,
        }
    }

    fn at_least(suite: Suite, name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self {
            suite,
            name: name.into(),
            residual,
            threshold,
            upper_bound: false,
            passed: residual >= threshold,
        }
    }

    pub fn line(&self) -> String {
        let cmp = if self.upper_bound { "<=" } else { ">=" };
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "{}/{}: max residual {:.1e} (need {cmp} {:.0e}), {verdict}",
            self.suite.name(),
            self.name,
            self.residual,
            self.threshold
        )
    }
}

fn point<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius))
}

fn stream(seed: u64, suite: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite);
    rng
}

/// Yang–Baxter residual over random `(u, v, η)` with `|u|, |v| ≤ 5` per
/// component and `0.1 ≤ |η| ≤ 3`; draws at a pole are redrawn.
pub fn ybe_suite(seed: u64) -> Result<Vec<Check>> {
    let mut rng = stream(seed, 1);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < YBE_DRAWS {
        let (u, v) = (point(&mut rng, 5.0), point(&mut rng, 5.0));
        let eta = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        if let Ok(r) = ybe_residual(u, v, eta) {
            worst = worst.max(r);
            done += 1;
        }
    }
    Ok(vec![Check::at_most(
        Suite::Ybe,
        format!("{YBE_DRAWS} random draws"),
        worst,
        YBE_TOL,
    )])
}

/// RLL and ABCD relations for the configured Lax data at random `(u, v)`,
/// plus the broken-ζ negative control.
pub fn rll_suite(ip: &IntegrableParams, seed: u64) -> Result<Vec<Check>> {
    let mut rng = stream(seed, 2);
    let ladders = truncated_ladder(ip.n_levels, RLL_CUTOFF);
    let mut rll: f64 = 0.0;
    let mut abcd: f64 = 0.0;
    for _ in 0..RLL_DRAWS {
        let (u, v) = (point(&mut rng, 2.0), point(&mut rng, 2.0));
        let (lu, lv) = (lax_operator(u, ip, &ladders)?, lax_operator(v, ip, &ladders)?);
        rll = rll.max(rll_residual_of(u, v, ip.eta, &lu, &lv, &ladders)?);
        abcd = abcd.max(abcd_residuals(u, v, ip, &ladders)?.max());
    }
    let (u, v) = (Complex64::new(0.9, 0.0), Complex64::new(-0.4, 0.0));
    let broken = |z: Complex64| -> Result<_> {
        let mut l = lax_operator(z, ip, &ladders)?;
        l.d = ComplexOperator::identity(ladders.dim()).scale(((ip.zeta() + 0.1) / ip.eta).into());
        Ok(l)
    };
    let control = rll_residual_of(u, v, ip.eta, &broken(u)?, &broken(v)?, &ladders)?;
    Ok(vec![
        Check::at_most(Suite::Rll, format!("RLL, n={}, cutoff {RLL_CUTOFF}", ip.n_levels), rll, RLL_TOL),
        Check::at_most(Suite::Rll, "ABCD relations", abcd, RLL_TOL),
        Check::at_least(Suite::Rll, "broken-zeta control", control, RLL_CONTROL_MIN),
    ])
}

pub fn tcommute_suite(ip: &IntegrableParams, atoms: &[usize], seed: u64) -> Result<Vec<Check>> {
    let mut rng = stream(seed, 3);
    let mut checks = Vec::new();
    for &n in atoms {
        let sector = enumerate_sector(ip.n_levels, n)?;
        let mut worst: f64 = 0.0;
        for _ in 0..TCOMMUTE_DRAWS {
            let (u, v) = (point(&mut rng, 3.0), point(&mut rng, 3.0));
            worst = worst.max(transfer_commutator_residual(u, v, ip, &sector)?);
        }
        checks.push(Check::at_most(Suite::Tcommute, format!("N={n}"), worst, TCOMMUTE_TOL));
    }
    Ok(checks)
}

pub fn charges_suite(ip: &IntegrableParams, atoms: &[usize]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for &n in atoms {
        let sector = enumerate_sector(ip.n_levels, n)?;
        let ch = conserved_charges(ip, &sector)?;
        let id = ComplexOperator::identity(sector.dim());
        let c1 = ch.c1.max_abs_diff(&id.scale((ip.eta * n as f64).into()));
        let c2 = ch.c2.max_abs_diff(&id);
        checks.push(Check::at_most(Suite::Charges, format!("N={n} expansion"), ch.reconstruction, CHARGES_TOL));
        checks.push(Check::at_most(Suite::Charges, format!("N={n} commutators"), ch.commutators, CHARGES_TOL));
        checks.push(Check::at_most(Suite::Charges, format!("N={n} C1 = eta N, C2 = I"), c1.max(c2), 0.0));
    }
    Ok(checks)
}

pub fn hrel_suite(ip: &IntegrableParams, atoms: &[usize]) -> Result<Vec<Check>> {
    let mp = identify_parameters(ip)?;
    let mut checks = Vec::new();
    for &n in atoms {
        let sector = enumerate_sector(ip.n_levels, n)?;
        let d = hamiltonian_from_transfer(ip, &sector)?.max_abs_diff(&build_hamiltonian(&mp, &sector)?);
        checks.push(Check::at_most(Suite::Hrel, format!("N={n}"), d, HREL_TOL));
    }
    Ok(checks)
}

pub fn run_suite(suite: Suite, ip: &IntegrableParams, atoms: &[usize], seed: u64) -> Result<Vec<Check>> {
    Ok(match suite {
        Suite::Ybe => ybe_suite(seed)?,
        Suite::Rll => rll_suite(ip, seed)?,
        Suite::Tcommute => tcommute_suite(ip, atoms, seed)?,
        Suite::Charges => charges_suite(ip, atoms)?,
        Suite::Hrel => hrel_suite(ip, atoms)?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Ybe, Suite::Rll, Suite::Tcommute, Suite::Charges, Suite::Hrel] {
                all.extend(run_suite(s, ip, atoms, seed)?);
            }
            all
        }
    })
}

pub fn cmd_verify(suite: Suite, run: &Resolved) -> Result<CommandOutput> {
    let ip = run.integrable()?;
    let checks = run_suite(suite, &ip, &run.atoms, run.seed)?;
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let mut summary = serde_json::Map::new();
    for c in &checks {
        let entry = summary.entry(c.suite.name()).or_insert(json!(0.0));
        if c.upper_bound && c.residual > entry.as_f64().unwrap_or(0.0) {
            *entry = json!(c.residual);
        }
    }
    let failure = (!failed.is_empty()).then(|| {
        let names: Vec<String> = failed.iter().map(|c| format!("{}/{}", c.suite.name(), c.name)).collect();
        CliError::Threshold(format!("failing checks: {}", names.join(", ")))
    });
    Ok(CommandOutput {
        csv: None,
        lines: checks.iter().map(Check::line).collect(),
        json: JsonReport {
            command: "verify",
            config_echo: to_value(&run.echo),
            results: json!({ "suite": suite, "checks": checks }),
            residual_summary: summary.into(),
        },
        failure,
    })
}
