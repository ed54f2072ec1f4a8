use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::exactmath::{cap_bound, sigma_prime_power, ExactRatio, Factorization};

/// One verified numeric fact from the chain of finite checks behind the
/// friend-of-10 constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    /// Stable one-letter label, "a" through "h", in proof order.
    pub label: &'static str,
    /// What the entry claims, stated so a failure is meaningful on its own.
    pub claim: &'static str,
    /// Whether the exact computation confirms the claim.
    pub holds: bool,
    /// The exact numbers behind the verdict.
    pub detail: String,
}

/// The six smallest primes that can divide a friend of 10: 5 plus the five
/// smallest primes other than 2 and 3.
pub const MIN_FRIEND_WITNESS_PRIMES: [u64; 6] = [5, 7, 11, 13, 17, 19];

/// Least value any friend of 10 could take: the square of the product of
/// [`MIN_FRIEND_WITNESS_PRIMES`], i.e. 1616615^2.
///
/// Any friend is an odd square with at least six distinct prime factors,
/// none of them 2 or 3 and one of them 5, so it is at least the square of
/// the six smallest admissible primes.
pub fn min_friend_lower_bound() -> BigUint {
    MIN_FRIEND_WITNESS_PRIMES
        .iter()
        .map(|&p| BigUint::from(p))
        .product::<BigUint>()
        .pow(2)
}

fn fact(entries: &[(u32, u32)]) -> Factorization {
    Factorization::new(
        entries
            .iter()
            .map(|&(p, e)| (BigUint::from(p), e))
            .collect(),
    )
    .expect("ledger factorizations are hard-coded valid")
}

fn ratio(n: u32, d: u32) -> ExactRatio {
    ExactRatio::new(n, d).expect("nonzero denominator")
}

fn primes(values: &[u32]) -> Vec<BigUint> {
    values.iter().map(|&p| BigUint::from(p)).collect()
}

/// Verifies, with exact arithmetic only, each numeric fact in the finite
/// case analysis that forces any friend of 10 to have at least six distinct
/// prime factors. Entries are ordered as the argument unfolds; all must
/// hold.
///
/// The storyline: a friend n satisfies 5*sigma(n) = 9n and is an odd
/// square divisible by 5. Entries (a)-(c) eliminate 3 | n; (d) forces at
/// least five distinct primes; (e)-(h) eliminate every five-prime support.
pub fn replicate_proof_ledger() -> Vec<LedgerEntry> {
    let target = ratio(9, 5);
    let mut entries = Vec::new();

    // (a) If 3 | n, small 3-and-5 parts already push the index past 9/5;
    // divisor monotonicity then rules out anything they divide.
    let a1 = fact(&[(3, 4), (5, 2)]).abundancy();
    let a2 = fact(&[(3, 2), (5, 4)]).abundancy();
    entries.push(LedgerEntry {
        label: "a",
        claim: "abundancy of 3^4 * 5^2 and of 3^2 * 5^4 both exceed 9/5",
        holds: a1 > target && a2 > target,
        detail: format!(
            "I(3^4 * 5^2) = {a1} (~{}), I(3^2 * 5^4) = {a2} (~{}), target 9/5 = 1.8",
            a1.to_decimal(6),
            a2.to_decimal(6)
        ),
    });

    // (b) In the surviving 3-divisible shape n = 3^2 * 5^2 * m^2, the
    // identity 9n = 3^4 * 5^2 * m^2 = 5*sigma(n) gives
    // sigma(n) = 3^4 * 5 * m^2. Both sigma(3^2) = 13 and sigma(5^2) = 31
    // divide sigma(n); neither divides 3^4 * 5, so both divide m, hence n.
    // (Note the 3-exponent: the factor 9 doubles it, so the chain pins the
    // 3-part of n at exactly 3^2.)
    let sigma_nine = sigma_prime_power(&BigUint::from(3u32), 2);
    let sigma_twentyfive = sigma_prime_power(&BigUint::from(5u32), 2);
    let coeff = BigUint::from(3u32).pow(4) * BigUint::from(5u32);
    let b_holds = sigma_nine == BigUint::from(13u32)
        && sigma_twentyfive == BigUint::from(31u32)
        && !(&coeff % &sigma_nine).is_zero()
        && !(&coeff % &sigma_twentyfive).is_zero();
    entries.push(LedgerEntry {
        label: "b",
        claim: "sigma(3^2) = 13 and sigma(5^2) = 31 force 13 and 31 into any friend with parts 3^2 and 5^2",
        holds: b_holds,
        detail: format!(
            "sigma(3^2) = {sigma_nine}, sigma(5^2) = {sigma_twentyfive}; neither divides 3^4 * 5 = {coeff}, so both divide the cofactor square"
        ),
    });

    // (c) Following that forcing, the index is already too large.
    let c = fact(&[(3, 2), (5, 2), (13, 2), (31, 2)]).abundancy();
    entries.push(LedgerEntry {
        label: "c",
        claim: "abundancy of 3^2 * 5^2 * 13^2 * 31^2 exceeds 9/5, so no friend is divisible by 3",
        holds: c > target,
        detail: format!("I(3^2 * 5^2 * 13^2 * 31^2) = {c} (~{})", c.to_decimal(6)),
    });

    // (d) Four primes cannot carry the index to 9/5: the cap over the four
    // smallest admissible primes falls short.
    let d = cap_bound(&primes(&[5, 7, 11, 13])).expect("valid prime set");
    entries.push(LedgerEntry {
        label: "d",
        claim: "cap over {5, 7, 11, 13} stays below 9/5, so at least five distinct primes are needed",
        holds: d < target,
        detail: format!("cap = 1001/576 = {d} (~{})", d.to_decimal(6)),
    });

    // (e) Five primes with 19 as the largest overshoot at the minimal
    // square exponents.
    let e = fact(&[(5, 2), (7, 2), (11, 2), (13, 2), (19, 2)]).abundancy();
    entries.push(LedgerEntry {
        label: "e",
        claim: "abundancy of 5^2 * 7^2 * 11^2 * 13^2 * 19^2 exceeds 9/5",
        holds: e > target,
        detail: format!(
            "I(5^2 * 7^2 * 11^2 * 13^2 * 19^2) = {e} (~{})",
            e.to_decimal(6)
        ),
    });

    // (f) Raising the 5-exponent in the 23 variant also overshoots.
    let f = fact(&[(5, 4), (7, 2), (11, 2), (13, 2), (23, 2)]).abundancy();
    entries.push(LedgerEntry {
        label: "f",
        claim: "abundancy of 5^4 * 7^2 * 11^2 * 13^2 * 23^2 exceeds 9/5",
        holds: f > target,
        detail: format!(
            "I(5^4 * 7^2 * 11^2 * 13^2 * 23^2) = {f} (~{})",
            f.to_decimal(6)
        ),
    });

    // (g) The two tightest five-prime caps, settled by cross-multiplication.
    let g1 = cap_bound(&primes(&[5, 7, 11, 13, 29])).expect("valid prime set");
    let g2 = cap_bound(&primes(&[5, 7, 11, 17, 19])).expect("valid prime set");
    let raw_numer: u64 = [5u64, 7, 11, 13, 29].iter().product();
    let raw_denom: u64 = [4u64, 6, 10, 12, 28].iter().product();
    entries.push(LedgerEntry {
        label: "g",
        claim: "caps over {5, 7, 11, 13, 29} and over {5, 7, 11, 17, 19} stay below 9/5",
        holds: g1 < target && g2 < target,
        detail: format!(
            "5 * {raw_numer} = {} < {} = 9 * {raw_denom}; cap({{5,7,11,13,29}}) = {g1}, cap({{5,7,11,17,19}}) = {g2}",
            5 * raw_numer,
            9 * raw_denom
        ),
    });

    // (h) Support {5, 7, 11, 13, 23} with 5-part exactly 5^2 is impossible:
    // sigma(5^2) = 31 divides sigma(n) = 9n/5 and is coprime to 9, so
    // 31 | n, yet 31 is outside the support.
    let support: [u64; 5] = [5, 7, 11, 13, 23];
    let support_product: u64 = support.iter().product();
    let h_holds = sigma_twentyfive == BigUint::from(31u32)
        && support_product % 31 != 0
        && 9u64.gcd(&31) == 1;
    entries.push(LedgerEntry {
        label: "h",
        claim: "a friend with 5-part exactly 5^2 and support {5, 7, 11, 13, 23} would need 31 to divide it, a contradiction",
        holds: h_holds,
        detail: format!(
            "sigma(5^2) = 31 divides sigma(n) = 9n/5; gcd(31, 9) = 1 forces 31 | n, but 31 is not among {{5, 7, 11, 13, 23}} (product {support_product})"
        ),
    });

    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_is_the_expected_square() {
        let bound = min_friend_lower_bound();
        assert_eq!(bound, "2613444058225".parse().unwrap());
        assert_eq!(bound, BigUint::from(1616615u64).pow(2));
        assert!(bound > BigUint::from(1_000_000u64));
    }

    #[test]
    fn lower_bound_is_odd_and_coprime_to_three() {
        let bound = min_friend_lower_bound();
        assert!(!(&bound % 2u32).is_zero());
        assert!(!(&bound % 3u32).is_zero());
    }

    #[test]
    fn ledger_has_eight_ordered_entries_all_holding() {
        let entries = replicate_proof_ledger();
        let labels: Vec<&str> = entries.iter().map(|e| e.label).collect();
        assert_eq!(labels, ["a", "b", "c", "d", "e", "f", "g", "h"]);
        for entry in &entries {
            assert!(entry.holds, "entry ({}) failed: {}", entry.label, entry.detail);
        }
    }

    #[test]
    fn ledger_details_carry_the_exact_fractions() {
        let entries = replicate_proof_ledger();
        let detail = |label: &str| {
            &entries
                .iter()
                .find(|e| e.label == label)
                .expect("label present")
                .detail
        };
        assert!(detail("a").contains("3751/2025"));
        assert!(detail("a").contains("10153/5625"));
        assert!(detail("c").contains("20191/10075"));
        assert!(detail("d").contains("1001/576"));
        assert!(detail("e").contains("6484239/3578575"));
        assert!(detail("f").contains("1111642101/614631875"));
        assert!(detail("g").contains("725725"));
        assert!(detail("g").contains("725760"));
        assert!(detail("g").contains("4147/2304"));
        assert!(detail("g").contains("24871/13824"));
        assert!(detail("h").contains("gcd(31, 9) = 1"));
    }
}
