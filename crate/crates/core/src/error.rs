use thiserror::Error;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("not a permutation of 0..{len}")]
    NotAPermutation { len: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("width {0} exceeds the supported maximum of 64")]
    TooWide(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("facet vertices are affinely dependent")]
    DegenerateFacet,

    #[error("vertex subset is affinely dependent")]
    DependentSubset,

    #[error("matrix does not represent a nonobtuse simplex")]
    NotNonobtuse,

    #[error("matrix is fully indecomposable")]
    FullyIndecomposable,

    #[error("fully indecomposable component {0} is not acute")]
    ComponentNotAcute(usize),

    #[error("simplex is not orthogonal")]
    NotOrthogonal,

    #[error("dimension {n} outside the supported range {min}..={max}")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("unknown filter `{0}`")]
    UnknownFilter(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A structural guarantee failed to hold. Indicates an arithmetic bug,
    /// never a property of the input.
    #[error("internal consistency violated: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
