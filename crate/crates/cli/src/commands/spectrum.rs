use serde::Serialize;
use serde_json::json;
use twowell::{build_hamiltonian, dimension, eigensolve, enumerate_sector, EigenOptions, Error};

use crate::config::Resolved;
use crate::error::{CliError, Result};
use crate::output::{num, to_value, CommandOutput, JsonReport};

/// Largest sector dimension the CLI agrees to build.
pub const DIMENSION_CAP: usize = 50_000;

/// Refuses any requested sector above [`DIMENSION_CAP`], naming all of them.
pub fn check_dimensions(n_levels: usize, atoms: &[usize]) -> Result<()> {
    let mut problems = Vec::new();
    for &n in atoms {
        match dimension(n_levels, n) {
            Ok(d) if d > DIMENSION_CAP => problems.push(format!(
                "N={n}: sector dimension {d} exceeds the cap of {DIMENSION_CAP}"
            )),
            Ok(_) => {}
            Err(Error::DimensionOverflow { .. }) => {
                problems.push(format!("N={n}: sector dimension overflows"))
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invalid(problems))
    }
}

#[derive(Serialize)]
struct SectorSpectrum {
    n_atoms: usize,
    dimension: usize,
    /// `false` when only the ground state was computed (iterative path).
    complete: bool,
    eigenvalues: Vec<f64>,
    max_hermiticity_defect: f64,
}

pub fn cmd_spectrum(run: &Resolved) -> Result<CommandOutput> {
    let mp = run.physical()?;
    check_dimensions(mp.n_levels, &run.atoms)?;
    let mut csv = String::from("n_atoms,index,eigenvalue\n");
    let mut sectors = Vec::new();
    let mut lines = Vec::new();
    for &n in &run.atoms {
        let sector = enumerate_sector(mp.n_levels, n)?;
        let h = build_hamiltonian(&mp, &sector)?;
        let spec = eigensolve(&h, &EigenOptions::default())?;
        if !spec.dense {
            log::warn!("N={n}: dimension {} above the dense threshold, ground state only", sector.dim());
        }
        for (i, e) in spec.eigenvalues.iter().enumerate() {
            csv.push_str(&format!("{n},{i},{}\n", num(*e)));
        }
        lines.push(format!(
            "N={n}: d={}, ground energy {}",
            sector.dim(),
            num(spec.ground_energy())
        ));
        sectors.push(SectorSpectrum {
            n_atoms: n,
            dimension: sector.dim(),
            complete: spec.dense,
            eigenvalues: spec.eigenvalues,
            max_hermiticity_defect: h.hermiticity_defect().0,
        });
    }
    let defect = sectors.iter().map(|s| s.max_hermiticity_defect).fold(0.0, f64::max);
    Ok(CommandOutput {
        csv: Some(csv),
        lines,
        json: JsonReport {
            command: "spectrum",
            config_echo: to_value(&run.echo),
            results: to_value(&sectors),
            residual_summary: json!({ "max_hermiticity_defect": defect }),
        },
        failure: None,
    })
}
