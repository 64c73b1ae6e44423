use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max |A - A^H| = {deviation:e}, allowed {allowed:e})")]
    NotHermitian { deviation: f64, allowed: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid subsystem selection: {0}")]
    Subsystem(String),

    #[error("invalid parameter `{field}`: {reason}")]
    Parameter { field: String, reason: String },

    #[error("steady state is not unique: smallest singular values {smallest:e} and {second:e}")]
    DegenerateSteadyState { smallest: f64, second: f64 },

    #[error("state is not stationary: residual {residual:e} exceeds {allowed:e}")]
    NotStationary { residual: f64, allowed: f64 },

    #[error("time step {dt:e} too large: dt * spectral radius = {product:e} > 0.1")]
    StepTooLarge { dt: f64, product: f64 },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    #[error("fit needs at least two distinct abscissae")]
    DegenerateFit,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(field: &str, reason: impl Into<String>) -> Self {
        Error::Parameter { field: field.to_string(), reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
