use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UsoError {
    #[error("dimension {n} exceeds the cap of {cap} for {what}")]
    DimensionOverCap { n: u32, cap: u32, what: &'static str },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("direction {lambda} is outside [1, {n}]")]
    DirectionOutOfRange { lambda: u32, n: u32 },

    #[error("mask {mask:#x} is not a subset of [{n}]")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("invalid subcube: lower bound {lo:#x} is not a subset of upper bound {hi:#x}")]
    InvalidSubcube { lo: u32, hi: u32 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("outmap table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },

    #[error("malformed uso-map: {0}")]
    Parse(String),

    #[error("outmap is not a bijection")]
    NotBijection,

    #[error("orientation is not a unique sink orientation: {0}")]
    NotUso(String),

    #[error("inconsistent decision oracle: {0}")]
    InconsistentDecision(String),

    #[error("random edge walk exceeded the step cap of {cap}")]
    StepCapExceeded { cap: u64 },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("period recovery exhausted after {attempts} attempt(s)")]
    RecoveryExhausted { attempts: u32 },
}

pub type Result<T> = std::result::Result<T, UsoError>;
