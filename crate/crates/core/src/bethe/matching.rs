use serde::Serialize;

use super::BetheSolution;
use crate::eigen::SpectrumResult;

#[derive(Clone, Debug, Serialize)]
pub struct MatchPair {
    pub solution: usize,
    pub level: usize,
    pub eigenvalue: f64,
    pub delta: f64,
}

/// Coverage of an exact spectrum by Bethe energies. Completeness is reported,
/// never asserted.
#[derive(Clone, Debug, Serialize)]
pub struct MatchReport {
    pub pairs: Vec<MatchPair>,
    pub matched: usize,
    /// Solutions with no unmatched level within tolerance.
    pub unmatched_solutions: Vec<usize>,
    pub unmatched_levels: Vec<usize>,
    /// Largest `|ΔE|` among matched pairs.
    pub max_gap: f64,
}

impl MatchReport {
    /// Matched eigenvalue for each solution index.
    pub fn eigenvalue_for(&self, solution: usize) -> Option<&MatchPair> {
        self.pairs.iter().find(|p| p.solution == solution)
    }
}

/// Pairs each Bethe energy (real part), in order, with the nearest eigenvalue
/// not yet taken. A pair counts only when `|ΔE| ≤ tol`.
pub fn match_spectrum(solutions: &[BetheSolution], spectrum: &SpectrumResult, tol: f64) -> MatchReport {
    let levels = &spectrum.eigenvalues;
    let mut taken = vec![false; levels.len()];
    let mut pairs = Vec::new();
    let mut unmatched_solutions = Vec::new();
    for (si, sol) in solutions.iter().enumerate() {
        let e = sol.energy.re;
        let nearest = levels
            .iter()
            .enumerate()
            .filter(|(i, _)| !taken[*i])
            .map(|(i, &l)| (i, l, (l - e).abs()))
            .min_by(|a, b| a.2.total_cmp(&b.2));
        match nearest {
            Some((level, eigenvalue, delta)) if delta <= tol => {
                taken[level] = true;
                pairs.push(MatchPair {
                    solution: si,
                    level,
                    eigenvalue,
                    delta,
                });
            }
            _ => unmatched_solutions.push(si),
        }
    }
    let max_gap = pairs.iter().map(|p| p.delta).fold(0.0, f64::max);
    MatchReport {
        matched: pairs.len(),
        pairs,
        unmatched_solutions,
        unmatched_levels: (0..levels.len()).filter(|&i| !taken[i]).collect(),
        max_gap,
    }
}
