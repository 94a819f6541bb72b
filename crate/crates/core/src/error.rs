use thiserror::Error;

/// Errors raised by the numerical kernel and the configuration layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation was called with a model it does not accept.
    #[error("usage error: {0}")]
    Usage(String),

    /// A denominator came within the guard distance of zero, or the integrand
    /// produced a non-finite value.
    #[error("numerical singularity in {context}{}", location_suffix(*.xi, *.k))]
    Singularity {
        context: &'static str,
        xi: Option<f64>,
        k: Option<f64>,
    },

    /// Invalid run configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Reading a run file or writing output failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for CasimirError {
    fn from(e: std::io::Error) -> Self {
        CasimirError::Io(e.to_string())
    }
}

fn location_suffix(xi: Option<f64>, k: Option<f64>) -> String {
    match (xi, k) {
        (Some(xi), Some(k)) => format!(" at (xi = {xi:e}, k = {k:e})"),
        _ => String::new(),
    }
}

impl CasimirError {
    pub(crate) fn singular(context: &'static str) -> Self {
        CasimirError::Singularity {
            context,
            xi: None,
            k: None,
        }
    }

    /// Attaches a spectral location to a singularity error; other variants pass through.
    pub fn at(self, xi_at: f64, k_at: f64) -> Self {
        match self {
            CasimirError::Singularity { context, .. } => CasimirError::Singularity {
                context,
                xi: Some(xi_at),
                k: Some(k_at),
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, CasimirError>;
