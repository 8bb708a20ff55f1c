use thiserror::Error;

/// Errors shared by every module of the crate.
///
/// Input errors (bad residues, wrong modulus shape, malformed weights) are
/// kept separate from search-budget exhaustion, which is not an error at all
/// but an explicit `SearchStatus` on the result.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("element {element} is out of range for modulus {modulus}")]
    ElementOutOfRange { element: u64, modulus: u64 },

    #[error("{value} is not a divisor of {modulus}")]
    NotADivisor { value: u64, modulus: u64 },

    #[error("set must be nonempty")]
    EmptySet,

    #[error("weight function is identically zero")]
    DegenerateWeight,

    #[error("mask polynomial does not vanish at a primitive root of full order; no coset decomposition exists")]
    NotFaithfullyVanishing,

    #[error("mask polynomial does not vanish at a primitive root of full order; no nonnegative two-prime decomposition exists")]
    NoDecomposition,

    #[error("mask coefficients must be 0 or 1 for this operation")]
    NotASetMask,

    #[error("mask coefficients must be nonnegative integers for this operation")]
    NotAMultisetMask,

    #[error("modulus {0} is not square-free")]
    NotSquareFree(u64),

    #[error("modulus {0} does not have exactly two prime divisors")]
    NotTwoPrimes(u64),

    #[error("modulus {0} is not of the form p^n q^2")]
    NotPnQSquared(u64),

    #[error("(S, Lambda) is not a spectral pair")]
    NotSpectralPair,

    #[error("projection to the quotient is not injective on the set")]
    NonInjectiveProjection,

    #[error("{set:?} is not a subset of the subgroup of order {order}")]
    NotInSubgroup { set: Vec<u64>, order: u64 },

    #[error("{0} is not a tiling of the subgroup")]
    NotASubgroupTiling(String),

    #[error("prime {0} is unsupported here (supported: 2, 3, 5)")]
    UnsupportedZpSquaredPrime(u64),

    #[error("modulus {modulus} exceeds the limit {limit} for this search operation")]
    ModulusTooLarge { modulus: u64, limit: u64 },

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
