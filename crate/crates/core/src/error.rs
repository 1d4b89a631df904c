use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree mismatch: expected {expected}, exponents sum to {found}")]
    DegreeMismatch { expected: u128, found: u128 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("coefficient monomial has a negative exponent and is not a polynomial")]
    NotPolynomial,
    #[error("cannot evaluate: symbol {0} has no numeric value")]
    Unassigned(String),
    #[error("cannot evaluate: symbol {0} is zero but appears with a negative exponent")]
    ZeroDenominator(String),
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
}

/// Generator indices in these errors are one-based, as printed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("generator f{generator}: tail has degree {found}, expected {expected}")]
    TailDegree {
        generator: usize,
        expected: u64,
        found: u128,
    },
    #[error("generator f{generator}: tail equals the leading power x{generator}^{degree}")]
    TailIsLeadingPower { generator: usize, degree: u64 },
    #[error("generator f{generator} is missing")]
    MissingGenerator { generator: usize },
    #[error("generator f{generator} is given twice")]
    DuplicateGenerator { generator: usize },
    #[error("generator f{generator}: leading coefficient a{generator} is zero")]
    ZeroLeadingCoefficient { generator: usize },
    #[error("generator f{generator}: leading term must be a pure power of x{generator}")]
    LeadingTerm { generator: usize },
    #[error("generator f{generator}: coefficient symbol {symbol} does not belong to this generator")]
    SymbolMismatch { generator: usize, symbol: String },
    #[error("generator f{generator}: degree must be positive")]
    ZeroDegree { generator: usize },
    #[error("variable x{variable} exceeds the number of generators {n}")]
    VariableOutOfRange { variable: usize, n: usize },
    #[error("family has no generators")]
    Empty,
    #[error("coefficient vectors have length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },
    #[error("invalid family JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the family is not fully numeric")]
    NotNumeric,
    #[error("the family is not a complete intersection at this specialization")]
    NotCompleteIntersection,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("basis element {0} has the wrong degree")]
    BasisDegree(String),
    #[error("basis of size {given} is dependent in degree {k} (rank {rank})")]
    DependentBasis { k: u64, given: usize, rank: usize },
    #[error("order {k} exceeds half the socle degree {socle}")]
    OrderTooLarge { k: u64, socle: u64 },
    #[error("linear form has {found} coefficients, expected {expected}")]
    FormLength { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
}
