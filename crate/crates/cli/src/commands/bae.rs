use serde::Serialize;
use serde_json::json;
use twowell::bethe::{bethe_vector, match_spectrum, solve_bae, SolveOptions, SolveStats};
use twowell::fock::sector_chain;
use twowell::sparse::eigen_residual;
use twowell::yangbaxter::hamiltonian_from_transfer;
use twowell::{eigensolve, EigenOptions, IntegrableParams};

use super::spectrum::check_dimensions;
use crate::config::Resolved;
use crate::error::{CliError, Result};
use crate::output::{num, opt_num, to_value, CommandOutput, JsonReport};

/// Largest `|E_Bethe − E_ED|` accepted as a match.
pub const MATCH_TOL: f64 = 1e-8;
/// Largest `‖Hx − Ex‖∞/‖x‖∞` accepted for a Bethe vector.
pub const EIGVEC_TOL: f64 = 1e-9;

pub const CSV_HEADER: &str =
    "solution_id,root_index,re_v,im_v,energy,bae_residual,eigvec_residual,matched_eigenvalue,delta\n";

#[derive(Clone, Debug, Serialize)]
pub struct SolutionRow {
    pub id: usize,
    pub n_atoms: usize,
    /// `[re, im]` pairs in canonical order.
    pub roots: Vec<[f64; 2]>,
    pub energy: [f64; 2],
    pub bae_residual: f64,
    pub eigvec_residual: f64,
    pub matched_eigenvalue: Option<f64>,
    pub delta: Option<f64>,
    pub near_evaluation_pole: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorRun {
    pub n_atoms: usize,
    pub dimension: usize,
    pub stats: SolveStats,
    pub matched: usize,
    /// ED levels not reached by any Bethe energy (coverage, not an error).
    pub unmatched_levels: usize,
    pub unmatched_solutions: usize,
    pub max_gap: f64,
    pub solutions: Vec<SolutionRow>,
}

/// Solves, builds Bethe vectors and matches against exact diagonalization for
/// one atom number. `first_id` numbers solutions across a whole run.
pub fn bae_sector(ip: &IntegrableParams, n: usize, opts: &SolveOptions, first_id: usize) -> Result<SectorRun> {
    let run = solve_bae(ip, n, opts)?;
    let chain = sector_chain(ip.n_levels, n)?;
    let sector = chain.last().expect("chain holds N + 1 sectors");
    let h_real = hamiltonian_from_transfer(ip, sector)?;
    let spec = eigensolve(&h_real, &EigenOptions::default())?;
    let h = h_real.to_complex();
    let report = match_spectrum(&run.solutions, &spec, MATCH_TOL);
    let mut rows = Vec::new();
    for (k, sol) in run.solutions.iter().enumerate() {
        let x = bethe_vector(&sol.roots, ip, &chain)?;
        let pair = report.eigenvalue_for(k);
        rows.push(SolutionRow {
            id: first_id + k,
            n_atoms: n,
            roots: sol.roots.as_slice().iter().map(|z| [z.re, z.im]).collect(),
            energy: [sol.energy.re, sol.energy.im],
            bae_residual: sol.residual,
            eigvec_residual: eigen_residual(&h, &x, sol.energy),
            matched_eigenvalue: pair.map(|p| p.eigenvalue),
            delta: pair.map(|p| sol.energy.re - p.eigenvalue),
            near_evaluation_pole: sol.near_evaluation_pole,
        });
    }
    Ok(SectorRun {
        n_atoms: n,
        dimension: sector.dim(),
        stats: run.stats,
        matched: report.matched,
        unmatched_levels: report.unmatched_levels.len(),
        unmatched_solutions: report.unmatched_solutions.len(),
        max_gap: report.max_gap,
        solutions: rows,
    })
}

pub fn csv_rows(sectors: &[SectorRun]) -> String {
    let mut csv = String::from(CSV_HEADER);
    for s in sectors {
        for row in &s.solutions {
            let tail = format!(
                "{},{},{},{},{}",
                num(row.energy[0]),
                num(row.bae_residual),
                num(row.eigvec_residual),
                opt_num(row.matched_eigenvalue),
                opt_num(row.delta)
            );
            if row.roots.is_empty() {
                csv.push_str(&format!("{},,,,{tail}\n", row.id));
            }
            for (i, r) in row.roots.iter().enumerate() {
                csv.push_str(&format!("{},{i},{},{},{tail}\n", row.id, num(r[0]), num(r[1])));
            }
        }
    }
    csv
}

pub fn cmd_bae(run: &Resolved) -> Result<CommandOutput> {
    let ip = run.integrable()?;
    check_dimensions(ip.n_levels, &run.atoms)?;
    let mut sectors: Vec<SectorRun> = Vec::new();
    for &n in &run.atoms {
        let opts = SolveOptions {
            budget: run.budget,
            seed: run.seed,
            ..Default::default()
        };
        let first_id = sectors.iter().map(|s| s.solutions.len()).sum();
        sectors.push(bae_sector(&ip, n, &opts, first_id)?);
    }

    let all = || sectors.iter().flat_map(|s| &s.solutions);
    let max_bae = all().map(|r| r.bae_residual).fold(0.0, f64::max);
    let max_vec = all().map(|r| r.eigvec_residual).fold(0.0, f64::max);
    let max_delta = all().filter_map(|r| r.delta.map(f64::abs)).fold(0.0, f64::max);
    let unmatched: usize = sectors.iter().map(|s| s.unmatched_solutions).sum();
    let bad_vectors = all().filter(|r| r.eigvec_residual > EIGVEC_TOL).count();

    let lines = sectors
        .iter()
        .map(|s| {
            format!(
                "N={}: {} solution(s) from {} start(s) ({} converged, {} spurious), {} of {} levels matched",
                s.n_atoms,
                s.solutions.len(),
                s.stats.attempts,
                s.stats.converged,
                s.stats.spurious,
                s.matched,
                s.dimension
            )
        })
        .collect();
    let mut problems = Vec::new();
    if unmatched > 0 {
        problems.push(format!("{unmatched} Bethe energies match no ED level within {MATCH_TOL:e}"));
    }
    if bad_vectors > 0 {
        problems.push(format!("{bad_vectors} Bethe vectors have eigen-residual above {EIGVEC_TOL:e}"));
    }
    Ok(CommandOutput {
        csv: Some(csv_rows(&sectors)),
        lines,
        json: JsonReport {
            command: "bae",
            config_echo: to_value(&run.echo),
            results: to_value(&sectors),
            residual_summary: json!({
                "max_bae_residual": max_bae,
                "max_eigvec_residual": max_vec,
                "max_abs_delta": max_delta,
                "unmatched_solutions": unmatched,
            }),
        },
        failure: (!problems.is_empty()).then(|| CliError::Threshold(problems.join("; "))),
    })
}
