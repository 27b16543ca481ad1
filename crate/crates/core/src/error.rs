use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. Mixed-field arithmetic and shape mismatches are programming
/// errors and panic instead; everything a caller can trigger with bad input
/// surfaces here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not an odd prime.
    NotOddPrime(u64),
    /// Extension degree must be positive.
    ZeroDegree,
    /// `p^n` exceeds the configured size bound.
    SizeBound { p: u64, n: usize, bound: u64 },
    /// Generating set of a numerical semigroup has gcd != 1 or is empty.
    NotNumericalSemigroup,
    /// No semigroup member prime to `p` was found below the search bound.
    NoMemberPrimeToP,
    /// Moore determinant vanished: the proposed root basis is F_p-dependent.
    DependentBasis,
    /// The ambient field does not split the additive polynomial.
    AmbientTooSmall { suggested_degree: usize },
    /// `Y^p - Y = g` has no polynomial solution over the ambient field.
    ArtinSchreierObstruction,
    /// Hensel derivative reduces to a zero divisor.
    ZeroDivisorDerivative,
    /// Hensel seed does not solve the equation modulo the maximal ideal.
    BadHenselSeed,
    /// Division of truncated series left a genuine pole where a regular
    /// series was required.
    PoleInQuotient,
    /// A series operation ran out of known coefficients.
    PrecisionExhausted,
    /// Leading coefficient is not a unit, so the series cannot be inverted.
    NonUnitLeading,
    /// Composition or substitution argument must have valuation one.
    ValuationNotOne,
    /// Tangent-direction index out of range `1..=s`.
    BadDirection { index: usize, s: usize },
    /// Malformed external input (CLI files, flags).
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(p) => write!(f, "{} is not an odd prime", p),
            Error::ZeroDegree => write!(f, "extension degree must be at least 1"),
            Error::SizeBound { p, n, bound } => {
                write!(f, "field size {}^{} exceeds bound {}", p, n, bound)
            }
            Error::NotNumericalSemigroup => {
                write!(f, "generators must be nonempty with gcd 1")
            }
            Error::NoMemberPrimeToP => {
                write!(f, "no semigroup member prime to p below the search bound")
            }
            Error::DependentBasis => {
                write!(f, "Moore determinant is zero: vectors are F_p-linearly dependent")
            }
            Error::AmbientTooSmall { suggested_degree } => write!(
                f,
                "ambient field does not split the additive polynomial; try extension degree {}",
                suggested_degree
            ),
            Error::ArtinSchreierObstruction => {
                write!(f, "no polynomial solution of Y^p - Y = g over the ambient field")
            }
            Error::ZeroDivisorDerivative => {
                write!(f, "derivative at the seed is a zero divisor")
            }
            Error::BadHenselSeed => {
                write!(f, "seed does not solve the equation modulo the maximal ideal")
            }
            Error::PoleInQuotient => {
                write!(f, "series division produced a pole where a regular series was required")
            }
            Error::PrecisionExhausted => write!(f, "series precision exhausted"),
            Error::NonUnitLeading => {
                write!(f, "leading coefficient is not a unit")
            }
            Error::ValuationNotOne => {
                write!(f, "argument must be a series of valuation 1 with unit leading coefficient")
            }
            Error::BadDirection { index, s } => {
                write!(f, "tangent direction {} out of range 1..={}", index, s)
            }
            Error::InvalidInput(msg) => write!(f, "invalid input: {}", msg),
        }
    }
}

impl std::error::Error for Error {}
