use num_bigint::BigInt;
use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("-1 is a square in {field}, so adjoining i does not give a field")]
    MinusOneIsSquare { field: String },

    #[error("invalid modulus {0}: expected an odd prime")]
    InvalidModulus(u64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular")]
    Singular,

    #[error("index out of bounds: {0}")]
    OutOfBounds(String),

    #[error("order {0} is odd; only even orders are supported here")]
    OddOrder(usize),

    #[error("K*K is not -I")]
    NotAntiInvolutory,

    #[error("K is not of the form [[0, K2], [-K2^-1, 0]]")]
    NotSimpleForm,

    #[error("matrix is not {kind} with respect to this K: {relation} fails")]
    BlockRelation { kind: &'static str, relation: &'static str },

    #[error("matrix neither commutes nor anti-commutes with K")]
    NeitherKind,

    #[error("matrix is not alternating {0}")]
    NotAlternating(&'static str),

    #[error("{what} = {value} exceeds the guard {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("{n} is not a sum of two squares: prime {prime} = 3 (mod 4) occurs to the odd power {exponent}")]
    NotSumOfTwoSquares { n: BigInt, prime: BigInt, exponent: u32 },

    #[error("expected an integer matrix")]
    NotIntegral,

    #[error("invalid lattice vertex ({0}, {1}): coordinates must be odd")]
    InvalidVertex(i64, i64),

    #[error("invalid lattice edge ({0}, {1}) -- ({2}, {3})")]
    InvalidEdge(i64, i64, i64, i64),

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not 2-even symmetric")]
    NotSymmetric,

    #[error("no perfect matching possible: {white} white vs {black} black vertices")]
    NoPerfectMatching { white: usize, black: usize },

    #[error("lattice signs do not count matchings here: the face containing ({0}, {1}) encloses an odd number of missing lattice points")]
    OddFace(i64, i64),

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("step length {0} is even; every step off the central band must have odd length")]
    EvenStep(u32),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("K is over {k} but the matrix is over {matrix}")]
    FieldMismatch { matrix: String, k: String },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
