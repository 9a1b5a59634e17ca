use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {left}x{left} vs {right}x{right}")]
    Shape { left: usize, right: usize },

    #[error("generator is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("coefficient of {operator} is singular at the requested point ({detail})")]
    Singularity { operator: String, detail: String },

    #[error("field `{descriptor}` evaluated to a non-finite value")]
    NonFinite { descriptor: String },

    #[error("separable quadrature needs polynomial states, got opaque field `{descriptor}`")]
    OpaqueField { descriptor: String },

    #[error("action-table fit for {operator} on {symbol} has residual {residual:e}")]
    Convention {
        operator: String,
        symbol: String,
        residual: f64,
    },

    #[error("irrep ({p},{q}) generation produced {found} states, expected {expected}")]
    Generation {
        p: u32,
        q: u32,
        found: usize,
        expected: usize,
    },

    #[error("irrep ({p},{q}) exceeds the configured bound p+q <= {bound}")]
    IrrepTooLarge { p: u32, q: u32, bound: u32 },

    #[error("product dimension {dim} exceeds the configured bound {bound}")]
    ProductTooLarge { dim: usize, bound: usize },

    #[error("decomposition dimensions sum to {found}, expected {expected}")]
    Decomposition { found: usize, expected: usize },

    #[error("multiplicity index {index} out of range (multiplicity {multiplicity})")]
    MultiplicityIndex { index: usize, multiplicity: usize },

    #[error("coupling coefficient has imaginary part {imag:e}")]
    NotReal { imag: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
