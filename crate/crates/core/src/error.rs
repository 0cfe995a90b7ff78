use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} has size {size}, above the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    EigenNoConvergence { sweeps: usize, residual: f64 },

    #[error("grid does not resolve the profile: {0}")]
    GridResolution(String),

    #[error("exponents (p={p}, q={q}) are not admissible in dimension {d}")]
    NotAdmissible { p: f64, q: f64, d: usize },

    #[error("non-finite integrand value at node {node}")]
    NonFinite { node: f64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
