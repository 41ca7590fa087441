use alloc::string::String;
use core::fmt;

use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    IndexOutOfRange {
        index: usize,
        n_nodes: usize,
    },
    DuplicateEdge {
        src: usize,
        dst: usize,
    },
    NonFinite(&'static str),
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NegativeEntry {
        row: usize,
        col: usize,
    },
    InvalidParameter(String),
    ZeroModulus,
    Singular,
    /// Confluent Vandermonde system or eigenvector matrix too ill-conditioned
    /// for floating point; the exact backend should be used instead.
    IllConditioned {
        cond: f64,
        limit: f64,
    },
    GraphTooLarge {
        n_nodes: usize,
        limit: usize,
    },
    /// Numeric backend found an eigenvalue without a full eigenvector set.
    Defective {
        eigenvalue: Complex64,
        algebraic: usize,
        geometric: usize,
    },
    DecompositionFailed {
        residual: f64,
        tolerance: f64,
    },
    ExactUnsupported(String),
    NotInvertible {
        eigenvalue: Complex64,
        value: f64,
    },
    /// Taps cannot be recovered: the impulse matrix has rank below `N_A`, or
    /// no filter reproduces the impulse response.
    UnrecoverableTaps {
        rank: usize,
        required: usize,
        residual: f64,
    },
    Precondition(String),
    GraphMismatch,
    NoKnownLabels,
    NoConvergence(&'static str),
}

impl Error {
    /// Whether the failure is numerical (as opposed to invalid input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular
                | Error::IllConditioned { .. }
                | Error::Defective { .. }
                | Error::DecompositionFailed { .. }
                | Error::ExactUnsupported(_)
                | Error::NotInvertible { .. }
                | Error::UnrecoverableTaps { .. }
                | Error::NoConvergence(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::IndexOutOfRange { index, n_nodes } => {
                write!(f, "node index {index} out of range for graph with {n_nodes} nodes")
            }
            Error::DuplicateEdge { src, dst } => write!(f, "duplicate edge {src} -> {dst}"),
            Error::NonFinite(what) => write!(f, "non-finite value in {what}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NegativeEntry { row, col } => write!(f, "negative entry at ({row}, {col})"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::ZeroModulus => write!(f, "polynomial modulus is zero"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::IllConditioned { cond, limit } => {
                write!(f, "ill-conditioned system (condition estimate {cond:.3e} > {limit:.1e}); use the exact backend")
            }
            Error::GraphTooLarge { n_nodes, limit } => {
                write!(f, "graph with {n_nodes} nodes exceeds the spectral limit of {limit}")
            }
            Error::Defective { eigenvalue, algebraic, geometric } => write!(
                f,
                "eigenvalue {eigenvalue} is defective (algebraic multiplicity {algebraic}, geometric {geometric}); \
                 use the exact backend or allow numeric Jordan chains explicitly"
            ),
            Error::DecompositionFailed { residual, tolerance } => write!(
                f,
                "Jordan decomposition failed: residual {residual:.3e} exceeds {tolerance:.3e}; try the exact backend"
            ),
            Error::ExactUnsupported(msg) => write!(f, "exact backend cannot handle this matrix: {msg}"),
            Error::NotInvertible { eigenvalue, value } => {
                write!(f, "filter is not invertible: |h({eigenvalue})| = {value:.3e} vanishes at an eigenvalue")
            }
            Error::UnrecoverableTaps { rank, required, residual } => {
                if rank < required {
                    write!(f, "taps are unrecoverable: impulse matrix has rank {rank}, filter space needs {required}")
                } else {
                    write!(
                        f,
                        "impulse response is not reachable by any filter on this graph (relative residual {residual:.3e})"
                    )
                }
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::GraphMismatch => write!(f, "object belongs to a different graph"),
            Error::NoKnownLabels => write!(f, "no known labels to train on"),
            Error::NoConvergence(what) => write!(f, "{what} did not converge"),
        }
    }
}

impl core::error::Error for Error {}
