use pctlab::PctError;

/// Exit codes: 0 success, 1 validation, 2 verification failure, 3 numerical failure.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Verification(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Validation(_) => 1,
            Self::Verification(_) => 2,
            Self::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Validation(m) => write!(f, "error: {m}"),
            Self::Verification(m) => write!(f, "verification failed: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<PctError> for CliError {
    fn from(e: PctError) -> Self {
        if e.is_numerical() {
            Self::Numerical(e.to_string())
        } else {
            Self::Validation(e.to_string())
        }
    }
}
