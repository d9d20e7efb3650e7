use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// Every variant is a domain or input error; none of them indicate a bug,
/// with the exception of [`Error::Inconsistent`], which is raised when two
/// independent computations that must agree do not.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("gcd(s = {s}, n = {n}) must be 1")]
    BadSigma { s: u32, n: u32 },
    #[error("extension parameters must be positive")]
    BadParameters,
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: usize },
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("field would have {size} elements, bound is {bound}")]
    SizeBoundExceeded { size: u128, bound: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("{what} = {value} outside {lo}..={hi}")]
    BadRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("parse error: {0}")]
    Parse(String),

    #[error("right division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcrc of two zero polynomials")]
    BothZero,
    #[error("lclc needs two nonzero polynomials")]
    ZeroInput,
    #[error("twist parameter must be nonzero")]
    ZeroAlpha,
    #[error("sigma-degree {degree} must be below n = {n}")]
    DegreeTooLarge { degree: usize, n: u32 },
    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("sigma-degree must be at least 1")]
    DegreeZero,
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("constant coefficient a_0 is zero")]
    ZeroConstant,
    #[error("matrix dimension {0} exceeds the supported maximum of 8")]
    DimTooLarge(usize),
    #[error("matrix dimensions do not match")]
    DimMismatch,

    #[error("expected sigma-degree {expected}, found {found:?}")]
    WrongDegree {
        expected: usize,
        found: Option<usize>,
    },
    #[error("middle coefficient b is zero")]
    ZeroMiddleCoefficient,
    #[error("inner coefficients b, c must be nonzero")]
    ZeroInnerCoefficient,
    #[error("outer coefficients must be nonzero")]
    ZeroOuterCoefficient,
    #[error("a coefficient required to be nonzero is zero")]
    ZeroCoefficient,
    #[error("no closed form for n = {0}")]
    UnsupportedN(u32),

    #[error("field too large for brute force ({size} elements, bound {bound})")]
    FieldTooLarge { size: u64, bound: u64 },
    #[error("plan needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
