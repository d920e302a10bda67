use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NotHermitian {
        deviation: f64,
    },
    NotDensity {
        trace: f64,
        min_eigenvalue: f64,
    },
    InvalidLayout(String),
    InvalidPermutation,
    NotCptp {
        min_eigenvalue: f64,
        trace_deviation: f64,
    },
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                found,
            } => write!(
                f,
                "dimension mismatch in {context}: expected {expected}, found {found}"
            ),
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::NotDensity {
                trace,
                min_eigenvalue,
            } => write!(
                f,
                "not a density matrix (trace {trace}, min eigenvalue {min_eigenvalue:e})"
            ),
            Error::InvalidLayout(msg) => write!(f, "invalid register layout: {msg}"),
            Error::InvalidPermutation => f.write_str("register permutation is not a bijection"),
            Error::NotCptp {
                min_eigenvalue,
                trace_deviation,
            } => write!(
                f,
                "channel is not CPTP (Choi min eigenvalue {min_eigenvalue:e}, trace-preservation deviation {trace_deviation:e})"
            ),
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
