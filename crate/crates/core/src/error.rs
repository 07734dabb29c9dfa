use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:e})")]
    NonHermitianInput { asymmetry: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("closed form requires full resonance, got eps1 = {eps1} µeV, eps2 = {eps2} µeV")]
    NotResonant { eps1: f64, eps2: f64 },

    #[error("no real tunneling ratio for n = {n}, m = {m} (requires m < 2n)")]
    NoRealSolution { n: u32, m: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
