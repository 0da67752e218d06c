use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("term ({m}, {n}) exceeds the truncation degree {max_degree}")]
    IndexOutOfRange { m: i64, n: i64, max_degree: i64 },

    #[error("duplicate term index ({m}, {n})")]
    DuplicateTerm { m: i64, n: i64 },

    #[error("terms are not in lexicographic (m, n) order at ({m}, {n})")]
    UnorderedTerms { m: i64, n: i64 },

    #[error("field is not holomorphic: Cauchy-Riemann residual {residual:.3e}")]
    NotHolomorphic { residual: f64 },

    #[error("quadrature {radial}x{angular} cannot resolve angular frequency {frequency}")]
    UnderResolved {
        radial: usize,
        angular: usize,
        frequency: i64,
    },

    #[error("Gram system is ill-conditioned (condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("Newton inversion of the conformal map failed at {point} after {iterations} iterations")]
    InversionFailed { point: Complex64, iterations: usize },

    #[error("map derivative nearly vanishes on the sample grid (min |phi'| = {min_deriv:.3e})")]
    DegenerateMap { min_deriv: f64 },

    #[error("map boundary self-intersects near samples {first} and {second}")]
    BoundarySelfIntersection { first: usize, second: usize },

    #[error("weight function vanishes on the sample grid (min |psi| = {min_abs:.3e})")]
    WeightVanishes { min_abs: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("integration unstable at t = {t}: coefficient norm grew by {growth:.3e}")]
    Unstable { t: f64, growth: f64 },

    #[error("embedding degenerated at t = {t}: {reason}")]
    EmbeddingDegenerate { t: f64, reason: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
