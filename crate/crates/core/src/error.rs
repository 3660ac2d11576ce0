use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("galois twist {t} is not a unit modulo {n}")]
    NotAUnit { t: i64, n: u64 },
    #[error("exponent {0} is outside [0, 1)")]
    ExponentRange(String),
    #[error("cannot parse rational number from {0:?}")]
    Parse(String),
    #[error("invalid spectra: {0}")]
    InvalidSpectra(String),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("reducible system: {0}")]
    Reducible(String),
    #[error("expected dimension is {0}, not 0")]
    NotZeroDimension(i64),
    #[error("invalid star diagram: {0}")]
    InvalidDiagram(String),
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("numeric embedding did not separate from zero at {0} bits")]
    Precision(u32),
    #[error("intertwiner space has dimension {0}, expected 1")]
    IntertwinerDimension(usize),
    #[error("no quadratic extension: {0}")]
    NotQuadratic(String),
    #[error("irregular singular point at {0}")]
    Irregular(String),
    #[error("series recursion is resonant at index {0}")]
    Resonant(usize),
    #[error("pole in hypergeometric parameters: {0}")]
    Pole(String),
    #[error("newton polygon has a vertical side")]
    VerticalSide,
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
