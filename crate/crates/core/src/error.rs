use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A (mu, nu) pair that is not an intuitionistic fuzzy number.
    #[error("{}invalid IFN ({mu}, {nu}): {reason}", at(.location))]
    Domain {
        mu: f64,
        nu: f64,
        reason: &'static str,
        location: Option<String>,
    },

    /// A scalar parameter outside its admissible range.
    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("{}length mismatch: expected {expected}, got {actual}", at(.context))]
    LengthMismatch {
        expected: usize,
        actual: usize,
        context: Option<String>,
    },

    /// Item `index` sits at distance zero from every other item of its group,
    /// so its closeness similarity is undefined.
    #[error("degenerate group: item {index} is identical to every other item")]
    DegenerateGroup { index: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
}

fn at(location: &Option<String>) -> String {
    match location {
        Some(l) => format!("{l}: "),
        None => String::new(),
    }
}

impl Error {
    /// Attach a location to errors that carry one, leaving others untouched.
    pub fn located(self, loc: impl Into<String>) -> Self {
        match self {
            Error::Domain { mu, nu, reason, .. } => Error::Domain {
                mu,
                nu,
                reason,
                location: Some(loc.into()),
            },
            Error::LengthMismatch {
                expected, actual, ..
            } => Error::LengthMismatch {
                expected,
                actual,
                context: Some(loc.into()),
            },
            other => other,
        }
    }

    /// True for problems with the caller's data, false for violated internal invariants.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Degenerate(_))
    }
}
