use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("sector dimension overflows the counting integer (n_levels = {n_levels}, n_atoms = {n_atoms})")]
    DimensionOverflow { n_levels: usize, n_atoms: usize },

    #[error("n_levels must be at least 1")]
    NoLevels,

    #[error("mode {0} is not valid for this sector")]
    InvalidMode(String),

    #[error("hopping requires distinct modes; use the number operator for {0}")]
    SameMode(String),

    #[error("level count mismatch: parameters have {params}, sector has {sector}")]
    LevelMismatch { params: usize, sector: usize },

    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: |H[{row},{col}] - conj(H[{col},{row}])| = {deviation:e}")]
    NonHermitian { row: usize, col: usize, deviation: f64 },

    #[error("pole: {0}")]
    Pole(String),

    #[error("roots {i} and {j} coincide ({a} vs {b})")]
    CoincidentRoots {
        i: usize,
        j: usize,
        a: Complex64,
        b: Complex64,
    },

    #[error("evaluation point u = {u} coincides with Bethe root {root}; evaluate at a shifted u")]
    RootAtEvaluationPoint { u: Complex64, root: Complex64 },

    #[error("Bethe vector vanishes numerically (max amplitude {0:e}); spurious solution")]
    VanishingBetheVector(f64),

    #[error("iterative eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
