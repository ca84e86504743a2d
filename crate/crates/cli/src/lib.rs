//! Library half of the `relent` command-line tool: grid scans, Wigner
//! angles and CHSH reports. `main.rs` only parses arguments.

pub mod chsh;
pub mod parse;
pub mod scan;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or values; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] relent::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// `δ` in radians and degrees, 12 significant digits each.
pub fn wigner_angle_report(eta: f64, xi: f64) -> Result<String, CliError> {
    use relent::relativity::{wigner_angle, Rapidity};
    let usage = |e: relent::Error| CliError::Usage(e.to_string());
    let d = wigner_angle(
        Rapidity::new(eta).map_err(usage)?,
        Rapidity::new(xi).map_err(usage)?,
    );
    Ok(format!(
        "delta_rad={}\ndelta_deg={}\n",
        parse::format_sig(d, 12),
        parse::format_sig(d.to_degrees(), 12)
    ))
}
