//! Run configuration: one JSON document, optionally overridden by flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use twowell::yangbaxter::{complex_repr, identify_parameters, validate_model};
use twowell::{Complex64, IntegrableParams, ModelParams};

use crate::error::{CliError, Result};

/// The parameter family of a run, tagged by `kind`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelSpec {
    Physical(ModelParams),
    Integrable(IntegrableParams),
}

impl ModelSpec {
    pub fn n_levels(&self) -> usize {
        match self {
            ModelSpec::Physical(mp) => mp.n_levels,
            ModelSpec::Integrable(ip) => ip.n_levels,
        }
    }

    fn problems(&self) -> Vec<String> {
        let list = match self {
            ModelSpec::Physical(mp) => mp.problems(),
            ModelSpec::Integrable(ip) => ip.problems(),
        };
        list.into_iter().map(|p| format!("model: {p}")).collect()
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Random starts per atom number; defaults to `100·N`.
    #[serde(default)]
    pub budget: Option<i64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// `csv` (default) or `json`.
    #[serde(default)]
    pub format: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub n_atoms: Vec<i64>,
    /// Evaluation point for the spectral parameter; overrides `model.u`.
    #[serde(default, serialize_with = "ser_opt_complex", deserialize_with = "de_opt_complex")]
    pub u: Option<Complex64>,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn ser_opt_complex<S: Serializer>(u: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u {
        Some(z) => complex_repr::serialize(z, s),
        None => s.serialize_none(),
    }
}

fn de_opt_complex<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Complex64>, D::Error> {
    complex_repr::deserialize(d).map(Some)
}

impl RunConfig {
    pub fn default_integrable(n_levels: usize) -> Self {
        Self {
            model: ModelSpec::Integrable(IntegrableParams::default_for(n_levels)),
            n_atoms: Vec::new(),
            u: None,
            solver: SolverConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(vec![format!("config: {e}")]))
    }
}

/// Flag values that override the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n_levels: Option<usize>,
    pub atoms: Option<Vec<i64>>,
    pub seed: Option<u64>,
    pub budget: Option<i64>,
    pub out: Option<PathBuf>,
}

/// A fully validated run description.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub model: ModelSpec,
    pub atoms: Vec<usize>,
    pub budget: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// The effective configuration, echoed into JSON reports.
    pub echo: RunConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl Resolved {
    /// Merges `config` (or the default integrable set) with the flags and
    /// validates everything, reporting every problem at once.
    pub fn new(config: Option<RunConfig>, ov: &Overrides, default_atoms: &[usize]) -> Result<Self> {
        let mut problems = Vec::new();
        let from_file = config.is_some();
        let mut cfg = config.unwrap_or_else(|| RunConfig::default_integrable(ov.n_levels.unwrap_or(2)));

        if let Some(n) = ov.n_levels {
            if from_file && cfg.model.n_levels() != n {
                problems.push(format!(
                    "--n {n} disagrees with model.n_levels = {}",
                    cfg.model.n_levels()
                ));
            }
        }
        if let Some(a) = &ov.atoms {
            cfg.n_atoms = a.clone();
        }
        if let Some(s) = ov.seed {
            cfg.solver.seed = s;
        }
        if let Some(b) = ov.budget {
            cfg.solver.budget = Some(b);
        }
        if let Some(o) = &ov.out {
            cfg.output.path = Some(o.clone());
        }
        if let (Some(u), ModelSpec::Integrable(ip)) = (cfg.u, &mut cfg.model) {
            ip.u = u;
        }

        problems.extend(cfg.model.problems());
        let mut atoms = Vec::new();
        for &n in &cfg.n_atoms {
            match usize::try_from(n) {
                Ok(v) => atoms.push(v),
                Err(_) => problems.push(format!("n_atoms: {n} is negative")),
            }
        }
        if cfg.n_atoms.is_empty() {
            atoms = default_atoms.to_vec();
            cfg.n_atoms = atoms.iter().map(|&a| a as i64).collect();
        }
        let budget = match cfg.solver.budget {
            None => None,
            Some(b) if b > 0 => Some(b as usize),
            Some(b) => {
                problems.push(format!("solver.budget must be positive, got {b}"));
                None
            }
        };
        let format = match cfg.output.format.as_deref() {
            None | Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => {
                problems.push(format!("output.format must be \"csv\" or \"json\", got \"{other}\""));
                OutputFormat::Csv
            }
        };
        if !problems.is_empty() {
            return Err(CliError::Invalid(problems));
        }
        Ok(Self {
            model: cfg.model.clone(),
            atoms,
            budget,
            seed: cfg.solver.seed,
            out: cfg.output.path.clone(),
            format,
            echo: cfg,
        })
    }

    /// Integrable data, either given directly or recovered from physical
    /// couplings that pass the identification checks.
    pub fn integrable(&self) -> Result<IntegrableParams> {
        match &self.model {
            ModelSpec::Integrable(ip) => Ok(ip.clone()),
            ModelSpec::Physical(mp) => {
                let report = validate_model(mp);
                match (&report.derived, report.integrable) {
                    (Some(ip), true) => {
                        let mut ip = ip.clone();
                        if let Some(u) = self.echo.u {
                            ip.u = u;
                        }
                        Ok(ip)
                    }
                    _ => Err(CliError::NotIntegrable(Box::new(report))),
                }
            }
        }
    }

    /// Physical couplings, identified from integrable data when necessary.
    pub fn physical(&self) -> Result<ModelParams> {
        match &self.model {
            ModelSpec::Physical(mp) => Ok(mp.clone()),
            ModelSpec::Integrable(ip) => Ok(identify_parameters(ip)?),
        }
    }
}
