use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code (see [`Error::code`]),
/// which the command-line front end prints on exit status 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("grade {grade} is below degree {degree}")]
    GradeBelowDegree { grade: usize, degree: usize },
    #[error("Moebius matrix is singular")]
    SingularMobiusMatrix,
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("divisor is not strictly regular")]
    DivisorNotStrictlyRegular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("scaling by zero is not unimodular")]
    ZeroScale,
    #[error("matrix polynomial is zero")]
    ZeroMatrix,
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("matrix polynomial is not regular")]
    NotRegular,
    #[error("cannot factor: {0}")]
    UnsupportedFactorization(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("first vector does not majorize the second")]
    NotMajorized,
    #[error("average of entries is not {0}")]
    AverageNotMu(i64),
    #[error("entry {0} lies outside the admissible window")]
    EntriesOutOfWindow(i64),
    #[error("transfer target ({alpha},{beta}) outside [{lo},{hi}] or wrong sum")]
    TargetOutOfRange {
        alpha: usize,
        beta: usize,
        lo: usize,
        hi: usize,
    },
    #[error("matrix polynomial is not upper triangular")]
    NotTriangular,
    #[error("layout does not match the diagonal: {0}")]
    LayoutMismatch(String),
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("index sum violated: sigma = {sigma}, grade*size = {expected}")]
    IndexSumViolation { sigma: usize, expected: usize },
    #[error("degree equalization did not converge within {0} steps")]
    EqualizationFailed(usize),
    #[error("diagonal block {0} is not strictly regular")]
    DiagonalBlockNotStrictlyRegular(usize),
    #[error("size {n} is smaller than the {m} nontrivial invariant polynomials")]
    TooSmall { n: usize, m: usize },
    #[error("every field element is an eigenvalue; no Moebius shift is available")]
    FieldExhausted,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("triangularizability condition not established")]
    ConditionNotEstablished,
    #[error("schema error at {path}: {msg}")]
    SchemaError { path: String, msg: String },
}

impl Error {
    /// Stable identifier used in machine-readable diagnostics.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            DivisionByZero => "DivisionByZero",
            FieldMismatch(..) => "FieldMismatch",
            BothZero => "BothZero",
            Unsupported(_) => "Unsupported",
            GradeBelowDegree { .. } => "GradeBelowDegree",
            SingularMobiusMatrix => "SingularMobiusMatrix",
            NotSquare(..) => "NotSquare",
            DivisorNotStrictlyRegular => "DivisorNotStrictlyRegular",
            ShapeMismatch(_) => "ShapeMismatch",
            IndexOutOfRange { .. } => "IndexOutOfRange",
            ZeroScale => "ZeroScale",
            ZeroMatrix => "ZeroMatrix",
            NotIrreducible(_) => "NotIrreducible",
            NotRegular => "NotRegular",
            UnsupportedFactorization(_) => "UnsupportedFactorization",
            LengthMismatch(..) => "LengthMismatch",
            NotMajorized => "NotMajorized",
            AverageNotMu(_) => "AverageNotMu",
            EntriesOutOfWindow(_) => "EntriesOutOfWindow",
            TargetOutOfRange { .. } => "TargetOutOfRange",
            NotTriangular => "NotTriangular",
            LayoutMismatch(_) => "LayoutMismatch",
            BadPermutation(_) => "BadPermutation",
            IndexSumViolation { .. } => "IndexSumViolation",
            EqualizationFailed(_) => "EqualizationFailed",
            DiagonalBlockNotStrictlyRegular(_) => "DiagonalBlockNotStrictlyRegular",
            TooSmall { .. } => "TooSmall",
            FieldExhausted => "FieldExhausted",
            HypothesisViolated(_) => "HypothesisViolated",
            ConditionNotEstablished => "ConditionNotEstablished",
            SchemaError { .. } => "SchemaError",
        }
    }

    pub(crate) fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::SchemaError {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
