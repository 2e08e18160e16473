use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("potential has no interior minimum (Kratzer shape requires mu > 0)")]
    NoInteriorMinimum,

    #[error("asymptote undefined without soft core (mu = 0)")]
    AsymptoteUndefined,

    #[error(
        "dimension d = {0} is not supported here (collective-field integrals exist for d = 3 only)"
    )]
    UnsupportedDimension(u32),

    #[error("quadrature did not converge: last estimate {last}, previous {previous}")]
    QuadratureNotConverged { last: f64, previous: f64 },

    #[error("integrand returned a non-finite value {value} at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },

    #[error("eigenvalue bisection did not converge after {iterations} iterations")]
    EigenNotConverged { iterations: usize },

    #[error("mesh too coarse: Richardson error estimate {estimate:e} exceeds {tolerance:e}")]
    MeshTooCoarse { estimate: f64, tolerance: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
