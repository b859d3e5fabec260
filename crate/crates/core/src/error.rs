use thiserror::Error;

/// Errors raised by constructions and certificates in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not monic")]
    NotMonic,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid field data: {0}")]
    InvalidField(String),

    #[error("image {index} is not an automorphism: f(image) is not zero mod f")]
    NotAutomorphism { index: usize },

    #[error("duplicate images at indices {0} and {1}")]
    DuplicateImages(usize, usize),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("index set is not a subgroup")]
    NotSubgroup,

    #[error("Z[theta] is not maximal at p = {0}")]
    NotMaximalAt(u64),

    #[error("inertia group has order {found}, ramification index is {expected}")]
    InertiaMismatch { expected: usize, found: usize },

    #[error("infinite valuation: element is zero")]
    InfiniteValuation,

    #[error("denominator lies in the prime")]
    DenominatorInPrime,

    #[error("not in category at layer {layer}: {reason}")]
    NotInCategory { layer: usize, reason: String },

    #[error("map is not a well-defined bimodule map: {0}")]
    NotBimoduleMap(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("certificate failed: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
