use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("solver failed at row {row} (gamma = {gamma:e}): {source}")]
    SweepPoint {
        row: usize,
        gamma: f64,
        source: wgrate_core::Error,
    },

    #[error("solver failed: {0}")]
    Solver(wgrate_core::Error),

    #[error("{failed} of {total} oracle checks exceeded their bound")]
    Verification {
        failed: usize,
        total: usize,
        /// Rendered oracle table, still shown on failure.
        output: String,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 usage, 2 solver, 3 verification. I/O failures count as usage.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::SweepPoint { .. } | CliError::Solver(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }
}

/// Input validation errors are usage errors; everything else from the
/// numerics is a solver failure.
impl From<wgrate_core::Error> for CliError {
    fn from(e: wgrate_core::Error) -> Self {
        use wgrate_core::Error as E;
        match e {
            E::NonPositive { .. }
            | E::InvalidTheta(_)
            | E::InvalidPhi(_)
            | E::InvalidSpecies(_)
            | E::InvalidTolerance(_) => CliError::Usage(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}
