//! Bethe ansatz equations, their numerical solution, Bethe energies and
//! vectors, and cross-validation against exact diagonalization.

mod equations;
mod matching;
mod solver;
mod vector;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use equations::{bae_residual, bethe_energy, transfer_eigenvalue, EVALUATION_POLE_TOL};
pub use matching::{match_spectrum, MatchPair, MatchReport};
pub use solver::{solve_bae, BaeRun, SolveOptions, SolveStats};
pub use vector::{bethe_vector, pi_c_operator};

/// Roots closer than this are treated as coincident.
pub const COINCIDENCE_TOL: f64 = 1e-9;

/// An unordered set of pairwise-distinct rapidities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetheRoots(Vec<Complex64>);

impl BetheRoots {
    pub fn new(roots: Vec<Complex64>) -> Result<Self> {
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                if (roots[i] - roots[j]).norm() <= COINCIDENCE_TOL {
                    return Err(Error::CoincidentRoots {
                        i,
                        j,
                        a: roots[i],
                        b: roots[j],
                    });
                }
            }
        }
        let mut r = Self(roots);
        r.canonicalize();
        Ok(r)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conj(&self) -> Self {
        let mut r = Self(self.0.iter().map(|z| z.conj()).collect());
        r.canonicalize();
        r
    }

    /// Sorts by real part, then imaginary part. Real parts are compared on a
    /// 1e-8 grid so conjugate pairs with round-off in the real part keep a
    /// stable order.
    fn canonicalize(&mut self) {
        let key = |z: &Complex64| ((z.re * 1e8).round() as i64, z.im);
        self.0
            .sort_by(|a, b| key(a).0.cmp(&key(b).0).then(key(a).1.total_cmp(&key(b).1)));
    }

    /// Largest distance between paired roots under a nearest-neighbour
    /// matching of the two multisets; infinite when the sizes differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let mut used = vec![false; other.len()];
        let mut worst: f64 = 0.0;
        for a in &self.0 {
            let (best, d) = other
                .0
                .iter()
                .enumerate()
                .filter(|(j, _)| !used[*j])
                .map(|(j, b)| (j, (a - b).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("equal sizes");
            used[best] = true;
            worst = worst.max(d);
        }
        worst
    }

    /// Whether the set maps to itself under complex conjugation within `tol`.
    pub fn is_conjugation_closed(&self, tol: f64) -> bool {
        self.distance(&self.conj()) <= tol
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BetheSolution {
    pub roots: BetheRoots,
    /// `max_i |F_i|` of the Bethe equations.
    pub residual: f64,
    pub energy: Complex64,
    pub matched_eigenvalue: Option<f64>,
    /// A root lies within [`EVALUATION_POLE_TOL`] of the requested evaluation
    /// point; the energy was taken at a shifted `u`.
    pub near_evaluation_pole: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coincident_roots_rejected() {
        let err = BetheRoots::new(vec![c(1.0, 0.0), c(1.0, 1e-12)]).unwrap_err();
        assert!(matches!(err, Error::CoincidentRoots { i: 0, j: 1, .. }));
    }

    #[test]
    fn canonical_order_ignores_input_order() {
        let a = BetheRoots::new(vec![c(2.0, 0.0), c(0.5, -1.0), c(0.5, 1.0)]).unwrap();
        let b = BetheRoots::new(vec![c(0.5, 1.0), c(2.0, 0.0), c(0.5 + 1e-12, -1.0)]).unwrap();
        assert!(a.distance(&b) < 1e-11);
        assert_eq!(a.as_slice()[0], c(0.5, -1.0));
        assert!(a.is_conjugation_closed(1e-8));
    }

    #[test]
    fn distance_of_different_sizes_is_infinite() {
        let a = BetheRoots::new(vec![c(1.0, 0.0)]).unwrap();
        let b = BetheRoots::new(vec![]).unwrap();
        assert_eq!(a.distance(&b), f64::INFINITY);
    }
}
