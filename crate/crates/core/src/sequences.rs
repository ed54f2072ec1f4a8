//! Geometric families whose abundancy converges to a chosen exact limit,
//! and the proximity measure counting how few primes such a family needs.
//!
//! The family with base prime p, cofactor c coprime to p, and terms
//! n_k = p^k * c has I(n_k) strictly increasing with exact limit
//! (p/(p-1)) * I(c): each term's gap to that limit is a concrete
//! fraction, never an epsilon. Proximity is the number of distinct
//! primes dividing any term, so the family above costs the primes of c
//! plus one.
//!
//! Witnesses here are restricted to this geometric shape: a fixed part
//! times a set of primes whose exponents all grow together. Convergent
//! sequences in general need not look like that; the restriction is what
//! makes exact limit comparison a closed-form identity instead of a
//! numeric threshold.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use thiserror::Error;

use crate::exactmath::{
    factorize_u64, primes, ExactRatio, Factorization, FactorizeError,
};

#[derive(Debug, Error)]
pub enum SequencesError {
    #[error("base {0} is not prime")]
    NotPrime(u64),
    #[error("base {p} and cofactor {c} are not coprime")]
    NonCoprime { p: u64, c: u64 },
    #[error(transparent)]
    Factorize(#[from] FactorizeError),
}

/// One element of a convergent family: the integer, its exact abundancy,
/// and its exact distance to the family's limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTerm {
    pub index: u32,
    pub value: Factorization,
    pub abundancy: ExactRatio,
    pub gap: ExactRatio,
}

/// A generated family together with its limit, the primes its terms
/// consume, and their count.
///
/// The target is carried as the exact limiting abundancy rather than an
/// integer: the limit of a geometric family is always a well-defined
/// rational, while an integer attaining it may or may not exist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityReport {
    pub target_abundancy: ExactRatio,
    pub terms: Vec<SequenceTerm>,
    pub prime_support: BTreeSet<BigUint>,
    pub proximity: usize,
}

impl fmt::Display for ProximityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "target I = {} (~{})",
            self.target_abundancy,
            self.target_abundancy.to_decimal(6)
        )?;
        for term in &self.terms {
            writeln!(
                f,
                "k={} n={} I={} (~{}) gap={} (~{})",
                term.index,
                term.value,
                term.abundancy,
                term.abundancy.to_decimal(6),
                term.gap,
                term.gap.to_decimal(6)
            )?;
        }
        let support: Vec<String> = self.prime_support.iter().map(|p| p.to_string()).collect();
        write!(f, "proximity {} over primes {{{}}}", self.proximity, support.join(", "))
    }
}

/// Generates the family n_k = p^k * c for k = 0..=k_max with exact
/// abundancies and gaps to the limiting value (p/(p-1)) * I(c).
///
/// Fails if p is not prime or shares a factor with c (which also rules
/// out c = 0). Note the support excludes p itself when `k_max` is 0,
/// since p then divides no emitted term.
pub fn geometric_theoretical_friend(
    p: u64,
    c: u64,
    k_max: u32,
) -> Result<ProximityReport, SequencesError> {
    if !primes::is_prime_u64(p) {
        return Err(SequencesError::NotPrime(p));
    }
    if p.gcd(&c) != 1 {
        return Err(SequencesError::NonCoprime { p, c });
    }
    let cofactor = factorize_u64(c)?;
    let limit = ExactRatio::new(p, p - 1).expect("p >= 2") * cofactor.abundancy();

    let mut terms = Vec::with_capacity(k_max as usize + 1);
    let mut prime_support = BTreeSet::new();
    for k in 0..=k_max {
        let value = if k == 0 {
            cofactor.clone()
        } else {
            let mut entries: Vec<(BigUint, u32)> = cofactor
                .entries()
                .iter()
                .map(|e| (e.prime.clone(), e.exponent))
                .collect();
            entries.push((BigUint::from(p), k));
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Factorization::new(entries).expect("p is coprime to c")
        };
        for entry in value.entries() {
            prime_support.insert(entry.prime.clone());
        }
        let abundancy = value.abundancy();
        let gap = limit.abs_diff(&abundancy);
        terms.push(SequenceTerm {
            index: k,
            value,
            abundancy,
            gap,
        });
    }
    let proximity = prime_support.len();
    Ok(ProximityReport {
        target_abundancy: limit,
        terms,
        prime_support,
        proximity,
    })
}

/// Number of distinct primes dividing any term: the proximity of the
/// sequence. Panics on an empty list or when the values are not strictly
/// increasing, the well-formedness this module demands of sequences.
pub fn proximity_of(terms: &[Factorization]) -> usize {
    assert!(!terms.is_empty(), "proximity of an empty sequence");
    for pair in terms.windows(2) {
        assert!(
            pair[0].value() < pair[1].value(),
            "sequence terms must be strictly increasing"
        );
    }
    let mut support = BTreeSet::new();
    for term in terms {
        for entry in term.entries() {
            support.insert(entry.prime.clone());
        }
    }
    support.len()
}

/// Depth limits for [`search_theoretical_friend`]: primes considered for
/// the support, and how high fixed-part exponents may go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyBounds {
    pub prime_limit: u64,
    pub max_fixed_exponent: u32,
}

impl Default for FamilyBounds {
    fn default() -> Self {
        FamilyBounds {
            prime_limit: 50,
            max_fixed_exponent: 6,
        }
    }
}

/// A geometric family n_k = fixed * prod_{p in growing} p^k whose
/// abundancy converges exactly to the requested target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoreticalFriendWitness {
    pub support: BTreeSet<u64>,
    pub growing: BTreeSet<u64>,
    pub fixed_part: Factorization,
    pub limit: ExactRatio,
}

/// Searches for a geometric family converging to I(m) using at most `t`
/// distinct primes, all below the configured limit.
///
/// Supports are scanned by (size, lexicographic order), growing subsets
/// within a support likewise, fixed exponents in odometer order; the
/// first exact witness wins, so results are reproducible. `None` means
/// no witness within these bounds, not that none exists. The family
/// solves prod_{p in growing} p/(p-1) * I(fixed) = I(m) exactly.
pub fn search_theoretical_friend(
    m: u64,
    t: u32,
    bounds: &FamilyBounds,
) -> Result<Option<TheoreticalFriendWitness>, SequencesError> {
    assert!(m >= 1, "target must be positive");
    assert!(t >= 1, "support budget must be positive");
    let target = factorize_u64(m)?.abundancy();
    // Every candidate limit strictly exceeds 1 (the growing part alone
    // contributes p/(p-1) > 1), so I(1) = 1 has no witness at any bound.
    if target == ExactRatio::one() {
        return Ok(None);
    }
    let primes = primes::primes_up_to(bounds.prime_limit);

    for size in 1..=(t as usize).min(primes.len()) {
        let mut found = None;
        for_each_combination(&primes, size, &mut |support| {
            found = witness_on_support(support, &target, bounds.max_fixed_exponent);
            found.is_some()
        });
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Calls `visit` on each `size`-subset of `items` in lexicographic
/// order until it returns true; reports whether any call did.
fn for_each_combination(
    items: &[u64],
    size: usize,
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    fn go(
        items: &[u64],
        start: usize,
        chosen: &mut Vec<u64>,
        size: usize,
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        if chosen.len() == size {
            return visit(chosen);
        }
        for i in start..items.len() {
            chosen.push(items[i]);
            if go(items, i + 1, chosen, size, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(items, 0, &mut Vec::with_capacity(size), size, visit)
}

/// Tries every split of `support` into growing and fixed primes, then
/// every bounded fixed exponent vector, returning the first exact match.
fn witness_on_support(
    support: &[u64],
    target: &ExactRatio,
    max_fixed_exponent: u32,
) -> Option<TheoreticalFriendWitness> {
    let s = support.len();
    let mut masks: Vec<u32> = (1..(1u32 << s)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));

    for mask in masks {
        let mut growing_factor = ExactRatio::one();
        let mut growing = BTreeSet::new();
        let mut fixed = Vec::new();
        for (i, &p) in support.iter().enumerate() {
            if mask & (1 << i) != 0 {
                growing_factor = growing_factor * ExactRatio::new(p, p - 1).expect("p >= 2");
                growing.insert(p);
            } else {
                fixed.push(p);
            }
        }
        // The fixed part must contribute exactly target / growing_factor,
        // and its abundancy is at least 1, strictly so when nonempty.
        let required = target.clone() / growing_factor;
        if fixed.is_empty() {
            if required == ExactRatio::one() {
                return Some(TheoreticalFriendWitness {
                    support: support.iter().copied().collect(),
                    growing,
                    fixed_part: Factorization::one(),
                    limit: target.clone(),
                });
            }
            continue;
        }
        if required <= ExactRatio::one() {
            continue;
        }
        let mut exponents = vec![1u32; fixed.len()];
        loop {
            let entries: Vec<(BigUint, u32)> = fixed
                .iter()
                .zip(&exponents)
                .map(|(&p, &e)| (BigUint::from(p), e))
                .collect();
            let fixed_part = Factorization::new(entries).expect("distinct ascending primes");
            if fixed_part.abundancy() == required {
                return Some(TheoreticalFriendWitness {
                    support: support.iter().copied().collect(),
                    growing,
                    fixed_part,
                    limit: target.clone(),
                });
            }
            // Odometer step over 1..=max_fixed_exponent per position.
            let mut pos = 0;
            loop {
                if pos == exponents.len() {
                    break;
                }
                if exponents[pos] < max_fixed_exponent {
                    exponents[pos] += 1;
                    break;
                }
                exponents[pos] = 1;
                pos += 1;
            }
            if pos == exponents.len() {
                break;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn gaps_for_base_3_cofactor_5_follow_the_closed_form() {
        let report = geometric_theoretical_friend(3, 5, 30).unwrap();
        assert_eq!(report.target_abundancy, ratio(9, 5));
        for term in &report.terms {
            let k = term.index;
            let denominator = BigUint::from(5u32) * BigUint::from(3u32).pow(k + 1);
            let expected = ExactRatio::from_unsigned(BigUint::from(9u32), denominator).unwrap();
            assert_eq!(term.gap, expected, "k = {k}");
        }
        for pair in report.terms.windows(2) {
            assert!(pair[0].gap > pair[1].gap);
            assert!(pair[0].abundancy < pair[1].abundancy);
            assert!(pair[0].value.value() < pair[1].value.value());
        }
        for term in &report.terms {
            assert!(term.abundancy < report.target_abundancy);
        }
    }

    #[test]
    fn first_two_terms_of_the_canonical_family() {
        let report = geometric_theoretical_friend(3, 5, 1).unwrap();
        assert_eq!(report.terms[0].abundancy, ratio(6, 5));
        assert_eq!(report.terms[0].gap, ratio(3, 5));
        assert_eq!(report.terms[1].abundancy, ratio(8, 5));
        assert_eq!(report.terms[1].gap, ratio(1, 5));
        assert_eq!(report.terms[1].value.to_string(), "3^1 * 5^1");
    }

    #[test]
    fn twenty_terms_use_exactly_two_primes() {
        let report = geometric_theoretical_friend(3, 5, 20).unwrap();
        assert_eq!(report.proximity, 2);
        let support: Vec<u64> = report
            .prime_support
            .iter()
            .map(|p| u64::try_from(p).unwrap())
            .collect();
        assert_eq!(support, [3, 5]);
    }

    #[test]
    fn a_single_term_family_never_sees_its_base() {
        let report = geometric_theoretical_friend(3, 5, 0).unwrap();
        assert_eq!(report.proximity, 1);
        assert_eq!(report.terms.len(), 1);
    }

    #[test]
    fn cofactor_one_is_a_pure_prime_power_family() {
        let report = geometric_theoretical_friend(2, 1, 4).unwrap();
        assert_eq!(report.target_abundancy, ratio(2, 1));
        assert_eq!(report.terms[0].abundancy, ratio(1, 1));
        assert_eq!(report.terms[4].abundancy, ratio(31, 16));
        assert_eq!(report.proximity, 1);
    }

    #[test]
    fn invalid_families_are_rejected() {
        assert!(matches!(
            geometric_theoretical_friend(4, 3, 2),
            Err(SequencesError::NotPrime(4))
        ));
        assert!(matches!(
            geometric_theoretical_friend(1, 3, 2),
            Err(SequencesError::NotPrime(1))
        ));
        assert!(matches!(
            geometric_theoretical_friend(3, 6, 2),
            Err(SequencesError::NonCoprime { p: 3, c: 6 })
        ));
        assert!(matches!(
            geometric_theoretical_friend(3, 0, 2),
            Err(SequencesError::NonCoprime { p: 3, c: 0 })
        ));
    }

    #[test]
    fn proximity_counts_the_union_of_supports() {
        let terms: Vec<Factorization> = [10u64, 100, 1000]
            .iter()
            .map(|&n| factorize_u64(n).unwrap())
            .collect();
        assert_eq!(proximity_of(&terms), 2);

        let terms: Vec<Factorization> = [6u64, 35]
            .iter()
            .map(|&n| factorize_u64(n).unwrap())
            .collect();
        assert_eq!(proximity_of(&terms), 4);

        assert_eq!(proximity_of(&[factorize_u64(7).unwrap()]), 1);
    }

    #[test]
    #[should_panic(expected = "empty")]
    fn proximity_of_nothing_is_rejected() {
        proximity_of(&[]);
    }

    #[test]
    #[should_panic(expected = "strictly increasing")]
    fn proximity_of_a_stuttering_sequence_is_rejected() {
        let ten = factorize_u64(10).unwrap();
        proximity_of(&[ten.clone(), ten]);
    }

    #[test]
    fn search_recovers_the_family_for_10() {
        let witness = search_theoretical_friend(10, 2, &FamilyBounds::default())
            .unwrap()
            .expect("a two-prime witness exists");
        assert_eq!(witness.support.iter().copied().collect::<Vec<_>>(), [3, 5]);
        assert_eq!(witness.growing.iter().copied().collect::<Vec<_>>(), [3]);
        assert_eq!(witness.fixed_part.to_string(), "5^1");
        assert_eq!(witness.limit, ratio(9, 5));
    }

    #[test]
    fn search_finds_single_prime_families() {
        let witness = search_theoretical_friend(6, 2, &FamilyBounds::default())
            .unwrap()
            .expect("the powers of 2 converge to 2");
        assert_eq!(witness.support.iter().copied().collect::<Vec<_>>(), [2]);
        assert_eq!(witness.growing.iter().copied().collect::<Vec<_>>(), [2]);
        assert_eq!(witness.fixed_part, Factorization::one());
        assert_eq!(witness.limit, ratio(2, 1));

        let witness = search_theoretical_friend(2, 1, &FamilyBounds::default())
            .unwrap()
            .expect("the powers of 3 converge to 3/2");
        assert_eq!(witness.support.iter().copied().collect::<Vec<_>>(), [3]);
    }

    #[test]
    fn search_reports_none_when_no_family_fits() {
        assert_eq!(
            search_theoretical_friend(1, 3, &FamilyBounds::default()).unwrap(),
            None
        );
        // No single prime satisfies p/(p-1) = 9/5.
        assert_eq!(
            search_theoretical_friend(10, 1, &FamilyBounds::default()).unwrap(),
            None
        );
    }

    #[test]
    fn found_witnesses_reproduce_the_target_exactly() {
        for m in [2u64, 4, 6, 10, 12, 28] {
            let target = factorize_u64(m).unwrap().abundancy();
            if let Some(witness) =
                search_theoretical_friend(m, 3, &FamilyBounds::default()).unwrap()
            {
                let mut limit = witness.fixed_part.abundancy();
                for &p in &witness.growing {
                    limit = limit * ratio(p as i64, p as i64 - 1);
                }
                assert_eq!(limit, target, "m = {m}");
                assert_eq!(witness.limit, target);
                assert!(!witness.growing.is_empty());
                assert!(witness.growing.is_subset(&witness.support));
            }
        }
    }

    #[test]
    fn report_rendering_is_one_line_per_term_plus_frame() {
        let report = geometric_theoretical_friend(3, 5, 2).unwrap();
        let text = report.to_string();
        assert_eq!(text.lines().count(), 1 + 3 + 1);
        assert!(text.starts_with("target I = 9/5 (~1.800000)"));
        assert!(text.contains("k=1 n=3^1 * 5^1 I=8/5 (~1.600000) gap=1/5 (~0.200000)"));
        assert!(text.ends_with("proximity 2 over primes {3, 5}"));
    }
}
