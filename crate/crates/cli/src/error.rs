use thiserror::Error;
use twowell::yangbaxter::IdentificationReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration:\n  - {}", .0.join("\n  - "))]
    Invalid(Vec<String>),

    #[error("model is not integrable ({} violated constraint(s))", .0.violations.len())]
    NotIntegrable(Box<IdentificationReport>),

    #[error("numerical threshold failed: {0}")]
    Threshold(String),

    #[error(transparent)]
    Core(#[from] twowell::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 1 for validation and integrability failures, 2 for numerical
    /// thresholds and solver breakdowns.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Threshold(_) => 2,
            CliError::Core(twowell::Error::NoConvergence { .. } | twowell::Error::NonHermitian { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_separate_validation_from_numerics() {
        assert_eq!(CliError::Invalid(vec!["x".into()]).exit_code(), 1);
        assert_eq!(CliError::Threshold("x".into()).exit_code(), 2);
        let stall = twowell::Error::NoConvergence {
            iterations: 3,
            residual: 1.0,
        };
        assert_eq!(CliError::from(stall).exit_code(), 2);
        assert_eq!(CliError::from(twowell::Error::NoLevels).exit_code(), 1);
    }

    #[test]
    fn invalid_lists_each_problem() {
        let msg = CliError::Invalid(vec!["a".into(), "b".into()]).to_string();
        assert_eq!(msg, "invalid configuration:\n  - a\n  - b");
    }
}
