use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no bundled Conway polynomial for GF({p}^{k})")]
    UnknownConwayPolynomial { p: u64, k: u32 },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("symmetric forms in even characteristic cannot be diagonalised")]
    OddCharRequired,
    #[error("element does not lie in the subfield GF(q)")]
    NotInSubfield,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have the symmetry required by the form kind")]
    SymmetryViolation,
    #[error("dimension {d} is incompatible with form type {label}")]
    IncompatibleDimension { label: String, d: usize },
    #[error("form is degenerate")]
    Degenerate,
    #[error("form is identically zero")]
    ZeroForm,
    #[error("forms have different kinds")]
    KindMismatch,
    #[error("forms are not isometric{}", if *.similar { " (but they are similar)" } else { "" })]
    NotIsometric { similar: bool },
    #[error("matrix is not a similarity of the form")]
    NotSimilarity,
    #[error("matrix is not an isometry of the form")]
    NotIsometry,
    #[error("vector is singular")]
    SingularVector,
    #[error("group parameters outside supported range: {0}")]
    NotQuasisimple(String),
    #[error("element is not in the conformal group")]
    NotInDelta,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
