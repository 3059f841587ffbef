use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{kernel}: point outside the domain ({detail})")]
    DomainViolation { kernel: &'static str, detail: String },

    #[error("{what}: series diverges (|q|·|r| = {ratio} >= 1)")]
    Divergent { what: &'static str, ratio: f64 },

    #[error("polynomial degree {degree} exceeds operator table capacity {capacity}")]
    CapacityExceeded { degree: u32, capacity: u32 },

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    QuadratureInsufficient { estimate: f64, tolerance: f64 },

    #[error("not an imaginary unit: {0}")]
    NotAUnit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("csv row {row}: {detail}")]
    CsvFormat { row: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
