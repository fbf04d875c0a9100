use serde_json::json;
use twowell::yangbaxter::{identify_parameters, validate_model};

use crate::config::{ModelSpec, Resolved};
use crate::error::{CliError, Result};
use crate::output::{to_value, CommandOutput, JsonReport};

/// Runs the identification checks. Integrable input is first mapped to
/// physical couplings, so the report doubles as a round-trip check.
pub fn cmd_identify(run: &Resolved) -> Result<CommandOutput> {
    let mp = match &run.model {
        ModelSpec::Physical(mp) => mp.clone(),
        ModelSpec::Integrable(ip) => identify_parameters(ip)?,
    };
    let report = validate_model(&mp);
    let lines = if report.integrable {
        vec!["integrable: all identification constraints hold".to_string()]
    } else {
        report
            .violations
            .iter()
            .map(|v| format!("violated: {} (lhs {}, rhs {})", v.constraint, v.lhs, v.rhs))
            .collect()
    };
    let failure = (!report.integrable).then(|| CliError::NotIntegrable(Box::new(report.clone())));
    Ok(CommandOutput {
        csv: None,
        lines,
        json: JsonReport {
            command: "identify",
            config_echo: to_value(&run.echo),
            results: json!({ "report": report, "physical": mp }),
            residual_summary: json!({ "violations": report.violations.len() }),
        },
        failure,
    })
}
