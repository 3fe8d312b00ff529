use thiserror::Error;

use crate::noether::FailureReason;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid variable permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix must be {expected}x{expected}")]
    BadMatrixShape { expected: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomial is not univariate in the requested variable")]
    NotUnivariate,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax { line: usize, col: usize, message: String },
    #[error("{line}:{col}: undeclared identifier `{name}`")]
    UndeclaredIdentifier { name: String, line: usize, col: usize },
    #[error("{line}:{col}: exponent must be a non-negative integer constant")]
    NonConstantExponent { line: usize, col: usize },
    #[error("{line}:{col}: exponent {value} exceeds the limit {limit}")]
    ExponentTooLarge { value: String, limit: u32, line: usize, col: usize },
    #[error("{line}:{col}: division by a non-constant expression")]
    DivisionByNonConstant { line: usize, col: usize },
    #[error("{line}:{col}: division by zero")]
    DivisionByZero { line: usize, col: usize },
    #[error("invalid variable declaration: {0}")]
    BadDeclaration(String),
    #[error("line {line}: system file must start with a `vars:` declaration")]
    MissingDeclaration { line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("pair budget of {budget} S-pairs exhausted")]
    BudgetExhausted { budget: usize },
    #[error("divisor list contains the zero polynomial")]
    ZeroDivisor,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("root iteration did not converge for degree {degree} after {iterations} iterations")]
    NoConvergence { degree: usize, iterations: usize },
    #[error("roots could not be separated; cluster around {center:?}")]
    Cluster { center: (f64, f64) },
    #[error("residual certification failed at {root:?} after refinement to {bits} bits")]
    Certification { root: (f64, f64), bits: u32 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoetherError {
    #[error("malformed split: m = {m} with {arity} variables")]
    MalformedSplit { m: usize, arity: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("the ideal is inconsistent (1 lies in the ideal)")]
    Inconsistent,
    #[error("no generators of positive degree")]
    NoGenerators,
    #[error("search budget of {attempts} attempts exhausted (last failure: {last:?})")]
    BudgetExhausted { attempts: usize, last: Option<FailureReason> },
    #[error("not a Noether presentation: {0:?}")]
    NotNoether(FailureReason),
    #[error("sample lies on the branch locus")]
    BranchLocus,
    #[error("could not find a regular sample within {0} tries")]
    SampleBudget(usize),
    #[error("expected a plane curve in two variables")]
    NotPlaneCurve,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NewtonError {
    #[error("expected a nonconstant polynomial in two variables")]
    NotBivariate,
    #[error("segment is not a lower segment of this polygon")]
    SegmentNotOnPolygon,
    #[error("branch widths sum to {total}, expected deg_y = {expected}")]
    WidthMismatch { total: u32, expected: u32 },
    #[error("leading root has multiplicity {0}; pass a simple root")]
    MultipleLeadingRoot(u32),
    #[error("degenerate branch: the refined edge polynomial still has a multiple root")]
    DegenerateBranch,
    #[error("series precision exhausted before {0} nonzero terms were found")]
    PrecisionExhausted(usize),
    #[error("no such branch")]
    NoSuchBranch,
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LelongError {
    #[error("curve is not Noether-presented in (x, y): {0:?}")]
    NotNoether(FailureReason),
    #[error("no pure-x term in the curve; the curve is likely reducible")]
    ReducibilitySuspected,
    #[error("the polynomial vanishes identically on the curve")]
    VanishesOnCurve,
    #[error("expected polynomials in the same two variables")]
    NotPlane,
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Noether(#[from] NoetherError),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BezoutError {
    #[error("expected polynomials in the same two variables")]
    NotPlane,
    #[error("the polynomials share a common component; the intersection is not finite")]
    NonFiniteIntersection,
    #[error("polynomial has degree < 1")]
    ConstantInput,
    #[error("level {level} needs a user-supplied Lelong degree")]
    MissingUserDegree { level: usize },
    #[error("level {level}: {message}")]
    InvalidLevel { level: usize, message: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lelong(#[from] LelongError),
    #[error(transparent)]
    Noether(#[from] NoetherError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Umbrella error used by the command-line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Noether(#[from] NoetherError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Lelong(#[from] LelongError),
    #[error(transparent)]
    Bezout(#[from] BezoutError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// 1: input/parse error, 2: analysis error, 3: budget or precision exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Usage(_) | Error::Poly(_) => 1,
            Error::Groebner(GroebnerError::BudgetExhausted { .. })
            | Error::Noether(NoetherError::BudgetExhausted { .. })
            | Error::Noether(NoetherError::SampleBudget(_))
            | Error::Noether(NoetherError::Groebner(GroebnerError::BudgetExhausted { .. }))
            | Error::Newton(NewtonError::PrecisionExhausted(_))
            | Error::Root(_)
            | Error::Noether(NoetherError::Root(_))
            | Error::Newton(NewtonError::Root(_))
            | Error::Lelong(LelongError::Root(_))
            | Error::Bezout(BezoutError::Root(_)) => 3,
            Error::Groebner(GroebnerError::Poly(_)) | Error::Bezout(BezoutError::Poly(_)) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "input",
            3 => "budget",
            _ => "analysis",
        }
    }
}
