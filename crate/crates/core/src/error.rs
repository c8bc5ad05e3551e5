use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance {tol:e} on [{a}, {b}] within depth {depth}")]
    Quadrature { a: f64, b: f64, tol: f64, depth: u32 },

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invariant {invariant} violated at vertex {vertex} (slack {slack:e})")]
    InvariantViolation {
        invariant: &'static str,
        vertex: usize,
        slack: f64,
    },

    #[error("edge ({0}, {1}) joins vertices on the same side or an unlabeled vertex")]
    Side(usize, usize),

    #[error("graph is not bipartite: {0}")]
    NotBipartite(String),

    #[error("instance too large for brute force: {0} vertices (max {1})")]
    TooLarge(usize, usize),

    #[error("length mismatch: trace has {trace} prefixes, oracle has {oracle}")]
    LengthMismatch { trace: usize, oracle: usize },

    #[error("usage: {0}")]
    Usage(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
