use thiserror::Error;

/// Errors shared across the simulator backends and the operator algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("site {site} out of range 1..={length}")]
    SiteOutOfRange { site: usize, length: usize },

    #[error("invalid bond ({0}, {1})")]
    InvalidBond(usize, usize),

    #[error("rotation generator must carry a real sign (phase i^k with k even), got i^{0}")]
    NonHermitianGenerator(u8),

    #[error("invalid operand: {0}")]
    InvalidOperand(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
