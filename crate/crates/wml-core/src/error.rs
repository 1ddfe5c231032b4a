use thiserror::Error;

/// Crate-wide error type. Numerical failures carry enough context to name
/// the offending term or location.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge in {what}; worst panel near {location}")]
    NonConvergence { what: String, location: String },

    #[error("tail budget violated in {what}: achieved {achieved:.3e}, required {required:.3e}")]
    TailBudget {
        what: String,
        achieved: f64,
        required: f64,
    },

    #[error("instability in {what}: values {a} vs {b} disagree beyond tolerance")]
    Instability { what: String, a: String, b: String },

    #[error("non-finite value at {0}")]
    NonFinite(String),

    #[error("schema violation at line {line}: {msg}")]
    Schema { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unsupported regime: {0}")]
    Unsupported(String),

    #[error("{term}: {source}")]
    InTerm {
        term: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the name of the report term it occurred in.
    pub fn in_term(self, term: &str) -> Error {
        Error::InTerm {
            term: term.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
