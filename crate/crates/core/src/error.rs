use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed shape: {0}")]
    Shape(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("matrix is not symmetric: entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },

    #[error("form is not alternating: diagonal entry {index} is nonzero")]
    NotAlternating { index: usize },

    #[error("diagonal entry {index} does not match the parity of enhancement value {index}")]
    DiagonalParity { index: usize },

    #[error("value {value} at position {index} is out of range for {what}")]
    OutOfRange {
        what: &'static str,
        index: usize,
        value: String,
    },

    #[error("form is degenerate")]
    Degenerate,

    #[error("lattice is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("lattice is not even: diagonal entry {index} is odd")]
    NotEven { index: usize },

    #[error("vector is not characteristic: fails at basis vector {index}")]
    NotCharacteristic { index: usize },

    #[error("boundary framing sum {0} is odd")]
    OddFramingSum(String),

    #[error("not a knot Seifert matrix: det(V + Vᵀ) is even")]
    EvenKnotDeterminant,

    #[error("linking matrix disagrees with the Seifert form: {0}")]
    InconsistentLinking(String),

    #[error("operation requires the component linking matrix")]
    MissingLinking,

    #[error("operation requires a knot, got {components} components")]
    NotAKnot { components: usize },

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),

    #[error("divisibility failure: {what} = {value} is not divisible by {modulus}")]
    Divisibility {
        what: &'static str,
        value: String,
        modulus: u32,
    },

    #[error("invariant is infinite: {0}")]
    Infinite(&'static str),

    #[error("internal error: {0}")]
    Internal(String),
}
