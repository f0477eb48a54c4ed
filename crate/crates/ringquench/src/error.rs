use thiserror::Error;

/// Errors produced by configuration validation and the numerical kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice config: {0}")]
    InvalidConfig(String),

    #[error("initial wave vector q_i = {q:.6} sits at a band edge (sin q_i = 0); the linearized level spacing vanishes there")]
    BandEdge { q: f64 },

    #[error("invalid state vector: {0}")]
    InvalidState(String),

    #[error("basis change not applicable: {0}")]
    BasisChange(String),

    #[error("time series: {0}")]
    Series(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("time stepper norm drift {drift:.3e} exceeded bound {bound:.3e} at t = {t:.6}")]
    NormDrift { drift: f64, bound: f64, t: f64 },

    #[error("{0}")]
    Numerical(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
