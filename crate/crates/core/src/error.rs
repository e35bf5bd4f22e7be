use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    Parse(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid voting system: {0}")]
    InvalidSystem(String),
    #[error("voter {voter} out of range for a system of {voters} voters")]
    VoterOutOfRange { voter: usize, voters: usize },
    #[error("{what} = {value} is outside {expected}")]
    Domain {
        what: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("bound violated at N = {n}: value {value} exceeds bound {bound}")]
    BoundViolated { n: usize, value: f64, bound: f64 },
}

impl Error {
    /// Stable machine-readable category, used for CLI exit reporting.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidMeasure(_) | Error::InvalidSystem(_) | Error::VoterOutOfRange { .. } => {
                "validation"
            }
            Error::Domain { .. } => "domain",
            Error::Resource(_) => "capacity",
            Error::BoundViolated { .. } => "check-failed",
        }
    }

    pub(crate) fn domain(what: &'static str, value: impl ToString, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value: value.to_string(),
            expected,
        }
    }
}
