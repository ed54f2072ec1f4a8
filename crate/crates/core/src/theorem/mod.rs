//! Structural constraints on any friend of 10.
//!
//! A friend of 10 is an integer n with n != 10 and `I(n) = I(10) = 9/5`,
//! equivalently `5*sigma(n) = 9n`. That identity forces a surprising amount
//! of structure: n is divisible by 5, odd, coprime to 3, a perfect square,
//! has at least six distinct prime factors, and carries a prime `p = 1
//! (mod 3)` whose exponent is `2 (mod 6)` (with exponent `8 (mod 18)` when
//! that prime is unique). None of this decides whether a friend exists; it
//! makes every candidate cheaply checkable and bounds where one could live.
//!
//! [`check_friend_of_10`] runs the full battery against a candidate,
//! [`replicate_proof_ledger`] re-verifies the finite computations behind the
//! constraint chain, and the modular helpers expose the residue lemmas the
//! exponent conditions rest on.

mod ledger;
mod modular;

use std::fmt;

use num_bigint::BigUint;

pub use ledger::{
    min_friend_lower_bound, replicate_proof_ledger, LedgerEntry, MIN_FRIEND_WITNESS_PRIMES,
};
pub use modular::{exponent_class_mod9, geometric_sum_mod, ModClass, ModularError};

use crate::exactmath::{factorize, FactorizeError, Factorization};

/// Outcome of checking one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Every structural constraint holds but `5*sigma(n) = 9n` does not:
    /// the candidate is compatible with the constraints without being a
    /// friend.
    Consistent,
    /// At least one required structural constraint fails; the candidate
    /// cannot be a friend of 10.
    Refuted,
    /// `5*sigma(n) = 9n` holds exactly and n != 10.
    ConfirmedFriend,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Verdict::Consistent => "consistent",
            Verdict::Refuted => "refuted",
            Verdict::ConfirmedFriend => "confirmed-friend",
        };
        write!(f, "{text}")
    }
}

/// One evaluated constraint.
///
/// `required` is what must be observed for the candidate to stay viable.
/// The two non-structural lines bend that reading: the defining identity
/// (first check) is the hypothesis under test rather than a consequence, so
/// failing it leaves a candidate consistent instead of refuted, and its
/// `required` mirrors the observation; the uniqueness refinement (last
/// check) reports `required = observed = false` when it does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    pub name: &'static str,
    pub required: bool,
    pub observed: bool,
    pub witness: String,
}

/// Full evaluation of a candidate against every friend-of-10 constraint.
/// Checks appear in proof order and are all evaluated, so a refuted
/// candidate shows every violated constraint at once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub candidate: BigUint,
    pub checks: Vec<TheoremCheck>,
    pub verdict: Verdict,
}

impl TheoremReport {
    /// True when no check mismatches, i.e. the verdict is not `Refuted`.
    pub fn structurally_clean(&self) -> bool {
        self.checks.iter().all(|c| c.required == c.observed)
    }
}

impl fmt::Display for TheoremReport {
    /// One line per check (`check <name> required=<b> observed=<b>
    /// witness=<text>`), then a verdict line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "candidate {}", self.candidate)?;
        for check in &self.checks {
            writeln!(
                f,
                "check {} required={} observed={} witness={}",
                check.name, check.required, check.observed, check.witness
            )?;
        }
        write!(f, "verdict {}", self.verdict)
    }
}

/// Evaluates every friend-of-10 constraint against `n >= 1`.
///
/// Errors only when `n` cannot be factored within the default effort; any
/// factorable candidate yields a report, never an error.
pub fn check_friend_of_10(n: &BigUint) -> Result<TheoremReport, FactorizeError> {
    let f = factorize(n)?;
    Ok(check_factored_candidate(n, &f))
}

/// [`check_friend_of_10`] for a candidate already in factored form.
pub fn check_factored_candidate(n: &BigUint, f: &Factorization) -> TheoremReport {
    debug_assert_eq!(&f.value(), n);
    let mut checks = Vec::with_capacity(8);

    let five_sigma = f.sigma() * BigUint::from(5u32);
    let nine_n = n * BigUint::from(9u32);
    let equation = five_sigma == nine_n;
    checks.push(TheoremCheck {
        name: "abundancy-equals-9/5",
        required: equation,
        observed: equation,
        witness: format!("5*sigma(n) = {five_sigma}, 9*n = {nine_n}"),
    });

    let exponent_of = |p: u32| f.exponent_of(&BigUint::from(p));
    let e5 = exponent_of(5);
    checks.push(TheoremCheck {
        name: "divisible-by-5",
        required: true,
        observed: e5.is_some(),
        witness: format!("exponent of 5 in n: {}", e5.unwrap_or(0)),
    });

    let e2 = exponent_of(2);
    checks.push(TheoremCheck {
        name: "odd",
        required: true,
        observed: e2.is_none(),
        witness: format!("exponent of 2 in n: {}", e2.unwrap_or(0)),
    });

    let e3 = exponent_of(3);
    checks.push(TheoremCheck {
        name: "not-divisible-by-3",
        required: true,
        observed: e3.is_none(),
        witness: format!("exponent of 3 in n: {}", e3.unwrap_or(0)),
    });

    checks.push(TheoremCheck {
        name: "perfect-square",
        required: true,
        observed: f.is_square(),
        witness: format!("n = {f}"),
    });

    let distinct = f.num_distinct_primes();
    checks.push(TheoremCheck {
        name: "at-least-6-distinct-primes",
        required: true,
        observed: distinct >= 6,
        witness: format!("{distinct} distinct primes"),
    });

    // The identity makes sigma(n) divisible by 9; some prime power must
    // contribute the factor 3, which happens exactly at exponents 2 mod 6
    // of primes 1 mod 3.
    let three = BigUint::from(3u32);
    let qualifying: Vec<_> = f
        .entries()
        .iter()
        .filter(|entry| {
            (&entry.prime % &three) == BigUint::from(1u32) && entry.exponent % 6 == 2
        })
        .collect();
    let qualifying_names = if qualifying.is_empty() {
        "none".to_owned()
    } else {
        qualifying
            .iter()
            .map(|entry| entry.prime.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    checks.push(TheoremCheck {
        name: "exponent-2-mod-6-prime-exists",
        required: true,
        observed: !qualifying.is_empty(),
        witness: format!("primes 1 mod 3 with exponent 2 mod 6: {qualifying_names}"),
    });

    // When a single prime power must carry the whole factor 9 by itself,
    // its exponent class tightens to 8 mod 18.
    if let [unique] = qualifying.as_slice() {
        let residue = unique.exponent % 18;
        checks.push(TheoremCheck {
            name: "unique-prime-exponent-8-mod-18",
            required: true,
            observed: residue == 8,
            witness: format!(
                "unique qualifying prime {} has exponent {}; {} mod 18 = {residue}",
                unique.prime, unique.exponent, unique.exponent
            ),
        });
    } else {
        checks.push(TheoremCheck {
            name: "unique-prime-exponent-8-mod-18",
            required: false,
            observed: false,
            witness: format!(
                "{} qualifying primes; the refinement applies only to exactly one",
                qualifying.len()
            ),
        });
    }

    let confirmed = equation && *n != BigUint::from(10u32);
    let refuted = checks.iter().any(|c| c.required != c.observed);
    debug_assert!(
        !(confirmed && refuted),
        "a confirmed friend cannot violate a consequence of being one"
    );
    let verdict = if confirmed {
        Verdict::ConfirmedFriend
    } else if refuted {
        Verdict::Refuted
    } else {
        Verdict::Consistent
    };

    TheoremReport {
        candidate: n.clone(),
        checks,
        verdict,
    }
}

/// Convenience wrapper for machine-word candidates.
pub fn check_friend_of_10_u64(n: u64) -> Result<TheoremReport, FactorizeError> {
    check_friend_of_10(&BigUint::from(n))
}
