//! Exact arithmetic around the abundancy index `I(n) = sigma(n) / n`.
//!
//! Everything here is computed over arbitrary-precision integers and
//! rationals; no floating point enters any decision. The crate provides:
//!
//! - [`exactmath`]: certified factorization, sigma, the abundancy index,
//!   and the order/bound lemmas the rest of the crate leans on.
//! - [`theorem`]: the structural constraints any friend of 10 must satisfy,
//!   an exhaustive checker for candidates, and a replication ledger for the
//!   finite verifications behind those constraints.
//! - [`search`]: a branch-and-bound enumeration of prime-signature
//!   candidates attaining a target abundancy, with sound pruning and
//!   resumable checkpoints.
//! - [`experiments`]: sieve-backed range scans (friend classes, density
//!   counts) over an initial segment of the integers.
//! - [`sequences`]: geometric sequences whose abundancy converges to a
//!   target value, and the proximity measure for how close they get.
//!
//! # Examples
//!
//! ```
//! use abundancy::{abundancy, check_friend_of_10, factorize_u64, ExactRatio, Verdict};
//! use num_bigint::BigUint;
//!
//! let ten = factorize_u64(10).unwrap();
//! assert_eq!(abundancy(&ten), ExactRatio::new(9, 5).unwrap());
//!
//! // 45 = 3^2 * 5 fails the structural constraints (it is divisible by 3).
//! let report = check_friend_of_10(&BigUint::from(45u32)).unwrap();
//! assert_eq!(report.verdict, Verdict::Refuted);
//! ```

pub mod exactmath;
pub mod experiments;
pub mod search;
pub mod sequences;
pub mod theorem;

pub use exactmath::{
    abundancy, cap_bound, factorize, factorize_u64, factorize_with, sigma,
    substitute_primes_monotone, ExactRatio, FactorEffort, FactorEntry, Factorization,
    SubstitutionWitness,
};
pub use experiments::{
    density_estimate, friend_classes, friendly_multiple_density, friends_of, friends_of_10,
    DensityEstimate, FriendClass, FriendlyMultipleDensity, SigmaSieve,
};
pub use search::{
    run_search, run_search_with_checkpoint, CandidateSignature, PruneCounts, SearchConfig,
    SearchOutcome, SearchState, StructuralFilters,
};
pub use sequences::{
    geometric_theoretical_friend, proximity_of, search_theoretical_friend, FamilyBounds,
    ProximityReport, SequenceTerm, TheoreticalFriendWitness,
};
pub use theorem::{check_friend_of_10, TheoremCheck, TheoremReport, Verdict};
