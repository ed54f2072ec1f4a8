//! Exact arithmetic for the abundancy index.
//!
//! The abundancy index of a positive integer is `I(n) = sigma(n) / n`,
//! where `sigma` sums all divisors. Key order facts, each encoded as an
//! operation or enforced invariant here:
//!
//! - `I` is multiplicative on coprime arguments.
//! - If `m` properly divides `n` then `I(m) < I(n)`: every divisor of `m`
//!   scales into a distinct divisor of `n`.
//! - For a fixed exponent pattern, replacing primes by entrywise larger
//!   primes can only lower the index ([`substitute_primes_monotone`]).
//! - Over any fixed finite set of allowed primes, the index stays strictly
//!   below the product of `p / (p - 1)` ([`cap_bound`]).
//!
//! All values are exact; decimal output is display-only.

mod factorization;
mod factorize;
pub mod primes;
mod ratio;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

pub use factorization::{
    sigma_prime_power, FactorEntry, Factorization, FactorizationError,
};
pub use factorize::{factorize, factorize_u64, factorize_with, FactorEffort, FactorizeError};
pub(crate) use factorize::trial_divide_big;
pub use primes::PrimalityError;
pub use ratio::{ExactRatio, RatioError};

/// Sum of all divisors of the factored value.
pub fn sigma(f: &Factorization) -> BigUint {
    f.sigma()
}

/// The abundancy index `sigma(n) / n` of the factored value, in lowest terms.
pub fn abundancy(f: &Factorization) -> ExactRatio {
    f.abundancy()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CapBoundError {
    #[error("cap bound over the empty set carries no information")]
    EmptySet,
    #[error("cap bound inputs must be distinct, {0} repeats")]
    Duplicate(BigUint),
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error(transparent)]
    Primality(#[from] PrimalityError),
}

/// Product of `p / (p - 1)` over a nonempty set of distinct primes.
///
/// This is a strict upper bound on `I(n)` for every `n` all of whose prime
/// factors lie in the set: each local factor `sigma(p^e) / p^e` increases
/// toward, but never reaches, `p / (p - 1)`. Equality with a target is
/// therefore already a refutation.
pub fn cap_bound(primes: &[BigUint]) -> Result<ExactRatio, CapBoundError> {
    if primes.is_empty() {
        return Err(CapBoundError::EmptySet);
    }
    let mut seen: Vec<&BigUint> = Vec::with_capacity(primes.len());
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    for p in primes {
        if seen.contains(&p) {
            return Err(CapBoundError::Duplicate(p.clone()));
        }
        if !primes::is_certified_prime(p)? {
            return Err(CapBoundError::NotPrime(p.clone()));
        }
        seen.push(p);
        numerator *= p;
        denominator *= p - BigUint::one();
    }
    Ok(ExactRatio::from_unsigned(numerator, denominator).expect("primes exceed 1"))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubstituteError {
    #[error("factorizations have {original} and {substituted} entries; shapes must match")]
    ShapeMismatch { original: usize, substituted: usize },
    #[error("exponent mismatch at entry {index}: {original} vs {substituted}")]
    ExponentMismatch {
        index: usize,
        original: u32,
        substituted: u32,
    },
    #[error("entry {index} replaces {original} with the smaller prime {substituted}")]
    NotEntrywiseLarger {
        index: usize,
        original: BigUint,
        substituted: BigUint,
    },
}

/// Certificate produced by [`substitute_primes_monotone`]:
/// `original_abundancy >= substituted_abundancy`, strictly when any prime
/// actually changed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionWitness {
    pub original_abundancy: ExactRatio,
    pub substituted_abundancy: ExactRatio,
    pub strict: bool,
}

/// Compares the abundancy of two factorizations with the same exponent
/// pattern, where each prime of `substituted` is entrywise `>=` the
/// corresponding prime of `original`.
///
/// Raising any prime with its exponent fixed lowers that prime's local
/// factor `sigma(p^e) / p^e`, and the factors multiply, so the substituted
/// index can never exceed the original. The returned witness carries both
/// exact values.
pub fn substitute_primes_monotone(
    original: &Factorization,
    substituted: &Factorization,
) -> Result<SubstitutionWitness, SubstituteError> {
    let a = original.entries();
    let b = substituted.entries();
    if a.len() != b.len() {
        return Err(SubstituteError::ShapeMismatch {
            original: a.len(),
            substituted: b.len(),
        });
    }
    for (index, (ea, eb)) in a.iter().zip(b).enumerate() {
        if ea.exponent != eb.exponent {
            return Err(SubstituteError::ExponentMismatch {
                index,
                original: ea.exponent,
                substituted: eb.exponent,
            });
        }
        if ea.prime > eb.prime {
            return Err(SubstituteError::NotEntrywiseLarger {
                index,
                original: ea.prime.clone(),
                substituted: eb.prime.clone(),
            });
        }
    }
    let original_abundancy = original.abundancy();
    let substituted_abundancy = substituted.abundancy();
    debug_assert!(original_abundancy >= substituted_abundancy);
    Ok(SubstitutionWitness {
        strict: original != substituted,
        original_abundancy,
        substituted_abundancy,
    })
}
