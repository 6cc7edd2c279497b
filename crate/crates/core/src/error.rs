use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("multivariate gamma Γ_{m}({a}) has a pole (scalar argument {arg})")]
    GammaPole { m: usize, a: f64, arg: f64 },

    #[error("zonal table of degree {degree} exceeds the configured ceiling {ceiling}")]
    DegreeCeiling { degree: u32, ceiling: u32 },

    #[error("series diverges: degree-{degree} contribution {contribution:e} keeps growing")]
    Divergence { degree: u32, contribution: f64 },

    #[error("series not converged by degree {degree} (tail estimate {tail:e}); raise max_degree")]
    NotConverged { degree: u32, tail: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("outside the working domain: {0}")]
    Domain(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("sampler failure: {0}")]
    Sampler(String),

    #[error("polynomial form unavailable for N={n}, K={k}: c - a = -(N-K-1)/2 is not a negative integer")]
    Parity { n: usize, k: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
