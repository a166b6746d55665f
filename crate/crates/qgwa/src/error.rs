use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QgwaError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("galois index {0} is not coprime to the conductor {1}")]
    InvalidGaloisIndex(i64, u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("mismatched conductors: {0} vs {1}")]
    MismatchedConductor(u64, u64),
    #[error("polynomial is not in the subring k[h^{0}]")]
    NotInSubring(i64),
    #[error("root multiset does not close under multiplication by a primitive {0}th root of unity")]
    IncompleteOrbit(i64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("elements belong to different algebras")]
    MismatchedAlgebra,
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("automorphism has infinite order")]
    InfiniteOrder,
    #[error("gamma is not a {0}th root of unity (g = gcd of exponent gaps of a)")]
    GammaNotInCg(i64),
    #[error("i0 = {0} is not the exponent of a nonzero coefficient of a")]
    InvalidI0(i64),
    #[error("the automorphism Omega requires q = -1")]
    OmegaRequiresQMinusOne,
    #[error("mu with a nonzero h-power is only available over the Laurent base")]
    LaurentMuInPolyBase,
    #[error("generator has infinite order")]
    InfiniteOrderGenerator,
    #[error("defining polynomial is symmetric; the subgroup classification does not apply")]
    SymmetricDefiningPolynomial,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("the Omega fixed-ring path requires q = -1")]
    RequiresQMinusOne,
    #[error("gamma must be 1 or -1 in the Omega fixed-ring path")]
    InvalidGamma,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("the Calabi-Yau classifier is stated for the polynomial base only")]
    LaurentBaseUnsupported,
    #[error("internal cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("parse error at line {line}, column {column}: expected {expected}")]
    ParseError {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("semantic error: {0}")]
    SemanticError(String),
}

pub type Result<T> = std::result::Result<T, QgwaError>;
