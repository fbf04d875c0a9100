//! The integrable structure behind the model: R-matrix, multi-level Lax
//! operator, two-well transfer matrix, conserved charges, and the map between
//! the algebraic data and the physical couplings.

mod identify;
mod lax;
mod rmatrix;
mod transfer;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use identify::{
    identify_parameters, identify_parameters_with, validate_model, EpsilonConvention, IdentificationReport,
    Violation,
};
pub use lax::{abcd_residuals, lax_operator, rll_residual, rll_residual_of, AbcdResiduals, LaxOperator};
pub use rmatrix::{r_matrix, ybe_residual};
pub use transfer::{
    conserved_charges, hamiltonian_from_transfer, monodromy_trace, transfer_commutator_residual,
    transfer_matrix, ConservedCharges,
};

/// Algebraic data of the two-well Lax construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrableParams {
    pub n_levels: usize,
    pub eta: f64,
    pub omega: Vec<f64>,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    pub alpha: f64,
    /// Spectral parameter used wherever an evaluation point is needed.
    #[serde(default, with = "complex_repr")]
    pub u: Complex64,
}

impl IntegrableParams {
    /// `η = α = 1`, `ω_j = 1`, `s = t = (1/√n, ..)`, so `ζ = 1` and `W = n`.
    pub fn default_for(n_levels: usize) -> Self {
        let st = vec![(1.0 / n_levels as f64).sqrt(); n_levels];
        Self {
            n_levels,
            eta: 1.0,
            omega: vec![1.0; n_levels],
            s: st.clone(),
            t: st,
            alpha: 1.0,
            u: Complex64::new(0.0, 0.0),
        }
    }

    /// `ζ = Σ_j s_j t_j`.
    pub fn zeta(&self) -> f64 {
        self.s.iter().zip(&self.t).map(|(s, t)| s * t).sum()
    }

    /// `W = Σ_j ω_j`.
    pub fn w_sum(&self) -> f64 {
        self.omega.iter().sum()
    }

    /// `η⁻²ζ²`, the pseudo-vacuum eigenvalue of the `D` entry of the monodromy.
    pub fn d_vacuum(&self) -> f64 {
        (self.zeta() / self.eta).powi(2)
    }

    pub fn problems(&self) -> Vec<String> {
        let mut p = Vec::new();
        let n = self.n_levels;
        if n == 0 {
            p.push("n_levels must be at least 1".to_string());
        }
        for (name, v) in [("omega", &self.omega), ("s", &self.s), ("t", &self.t)] {
            if v.len() != n {
                p.push(format!("{name} must have {n} entries, found {}", v.len()));
            }
            if v.iter().any(|x| !x.is_finite()) {
                p.push(format!("{name} has non-finite entries"));
            }
        }
        if !self.eta.is_finite() || self.eta == 0.0 {
            p.push(format!("eta must be a nonzero finite real, found {}", self.eta));
        }
        if !self.alpha.is_finite() {
            p.push("alpha must be finite".to_string());
        }
        if !self.u.re.is_finite() || !self.u.im.is_finite() {
            p.push("u must be finite".to_string());
        }
        if self.s.len() == self.t.len() && self.zeta() == 0.0 {
            p.push("zeta = sum_j s_j t_j must be nonzero".to_string());
        }
        p
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.problems();
        if p.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(p))
        }
    }
}

/// Complex numbers as `x`, `[re, im]` or `{"re": .., "im": ..}` on input and
/// `[re, im]` on output.
pub mod complex_repr {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Real(f64),
        Pair([f64; 2]),
        Parts { re: f64, im: f64 },
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        Ok(match Repr::deserialize(d)? {
            Repr::Real(x) => Complex64::new(x, 0.0),
            Repr::Pair([re, im]) | Repr::Parts { re, im } => Complex64::new(re, im),
        })
    }
}

pub(crate) fn check_pole(z: Complex64, what: impl FnOnce() -> String) -> Result<()> {
    if z.norm() <= 1e-14 {
        Err(Error::Pole(what()))
    } else {
        Ok(())
    }
}
