use thiserror::Error;

/// Every failure mode of the library. Verdict-style outcomes of the oracles
/// (a claim that does not hold) are reported through report types, not here;
/// these are the cases where a computation could not be carried out.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base ring {0} is not local")]
    NotLocalBase(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("element {0} does not lie in the base ring {1}")]
    NotInBase(String, String),
    #[error("determinant {0} is not a unit; the polynomials are not certified comaximal")]
    NotInvertible(String),
    #[error("{0} is not a Weierstrass polynomial")]
    NotWeierstrass(String),
    #[error("constant coefficient of {0} is not a unit")]
    NonUnitConstantTerm(String),
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("series {0} is not a unit")]
    NotAUnit(String),
    #[error("row is degenerate: every residue entry vanishes at precision {0}")]
    DegenerateRow(i64),
    #[error("row is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("row is not congruent to (1,0,...,0) modulo the ideal: {0}")]
    NotInIdealForm(String),
    #[error("denominator {0} is not a power of {1}")]
    NotLocalizedAtS(String, String),
    #[error("row is not normalized to t^{k}: product sum is {found}")]
    NotNormalized { k: i64, found: String },
    #[error("relation {index} is not homogeneous: {relation}")]
    NonHomogeneous { index: usize, relation: String },
    #[error("triangularity violated: {0}")]
    TriangularityViolation(String),
    #[error("oracle gave up after {0} S-pairs")]
    OracleTimeout(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed data: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
