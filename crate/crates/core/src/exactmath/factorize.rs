use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use super::factorization::Factorization;
use super::primes::{
    certification_limit, default_trial_primes, is_certified_prime, is_prime_u64, mul_mod_u64,
    primes_up_to,
};

/// Work limits for [`factorize_with`]. Exceeding them yields an error, never
/// a wrong or partial answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEffort {
    /// Trial-divide by all primes up to this bound first.
    pub trial_division_bound: u64,
    /// Iterations of the rho cycle walk per restart before giving up.
    pub rho_iterations: u64,
    /// Rho restarts (with fresh polynomial constants) per composite.
    pub rho_restarts: u32,
}

impl Default for FactorEffort {
    fn default() -> Self {
        Self {
            trial_division_bound: 1_000_000,
            rho_iterations: 1 << 20,
            rho_restarts: 24,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorizeError {
    #[error("cannot factor 0")]
    Zero,
    #[error("failed to split composite {0} within the configured effort")]
    SplitEffortExceeded(BigUint),
    #[error("cannot certify cofactor {0}: beyond the deterministic primality limit")]
    BeyondCertificationLimit(BigUint),
}

/// Factors `n >= 1` with the default effort.
pub fn factorize(n: &BigUint) -> Result<Factorization, FactorizeError> {
    factorize_with(n, &FactorEffort::default())
}

/// Convenience wrapper for machine-word inputs.
pub fn factorize_u64(n: u64) -> Result<Factorization, FactorizeError> {
    factorize(&BigUint::from(n))
}

/// Factors `n >= 1` into a certified [`Factorization`].
///
/// Strategy: trial division by primes up to the effort bound, then repeated
/// splitting of whatever composite remains (exact powers peeled first, then
/// Brent rho), certifying each leaf cofactor prime. Rho uses a fixed
/// sequence of polynomial constants, so the whole routine is deterministic.
pub fn factorize_with(n: &BigUint, effort: &FactorEffort) -> Result<Factorization, FactorizeError> {
    if n.is_zero() {
        return Err(FactorizeError::Zero);
    }
    if n.is_one() {
        return Ok(Factorization::one());
    }
    if let Some(small) = n.to_u64() {
        return factorize_u64_inner(small, effort);
    }

    let mut factors: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut remaining = n.clone();
    trial_divide_big(&mut remaining, &mut factors, effort.trial_division_bound);
    if !remaining.is_one() {
        split_big(remaining, &mut factors, effort)?;
    }
    Ok(Factorization::from_sorted_unchecked(
        factors.into_iter().collect(),
    ))
}

pub(crate) fn trial_divide_big(
    remaining: &mut BigUint,
    factors: &mut BTreeMap<BigUint, u32>,
    bound: u64,
) {
    let default: &[u64] = default_trial_primes();
    let sieved;
    let primes: &[u64] = if bound <= 1_000_000 {
        let end = default.partition_point(|&p| p <= bound);
        &default[..end]
    } else {
        sieved = primes_up_to(bound);
        &sieved
    };
    for &p in primes {
        if remaining.is_one() {
            break;
        }
        let p_big = BigUint::from(p);
        if &p_big * &p_big > *remaining {
            break;
        }
        let mut exponent = 0u32;
        loop {
            let (q, r) = remaining.div_rem(&p_big);
            if !r.is_zero() {
                break;
            }
            *remaining = q;
            exponent += 1;
        }
        if exponent > 0 {
            factors.insert(p_big, exponent);
        }
    }
    // Trial division covered all primes up to sqrt(remaining): it is prime.
    if !remaining.is_one() {
        let bound_big = BigUint::from(bound);
        if &bound_big * &bound_big >= *remaining {
            let prime = std::mem::replace(remaining, BigUint::one());
            *factors.entry(prime).or_insert(0) += 1;
        }
    }
}

/// Recursively splits a value with no prime factor below the trial bound.
/// Every recorded prime is certified; an unsplittable or uncertifiable
/// cofactor is an error.
fn split_big(
    value: BigUint,
    factors: &mut BTreeMap<BigUint, u32>,
    effort: &FactorEffort,
) -> Result<(), FactorizeError> {
    let mut pending = vec![value];
    while let Some(current) = pending.pop() {
        if current.is_one() {
            continue;
        }
        let certifiable = current < *certification_limit();
        if certifiable && is_certified_prime(&current).expect("below certification limit") {
            *factors.entry(current).or_insert(0) += 1;
            continue;
        }
        // Perfect powers both defeat rho and arise constantly here (square
        // candidates), so peel exact roots before walking cycles.
        if let Some((root, k)) = exact_power(&current) {
            for _ in 0..k {
                pending.push(root.clone());
            }
            continue;
        }
        if let Some(divisor) = brent_rho_big(&current, effort) {
            let quotient = &current / &divisor;
            pending.push(divisor);
            pending.push(quotient);
            continue;
        }
        return Err(if certifiable {
            FactorizeError::SplitEffortExceeded(current)
        } else {
            // Could be a giant prime or a stubborn composite; either way no
            // certified answer exists within this effort.
            FactorizeError::BeyondCertificationLimit(current)
        });
    }
    Ok(())
}

/// If `n = r^k` exactly for some k >= 2, returns `(r, k)` with k maximal,
/// which makes r itself not a perfect power.
fn exact_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let max_k = n.bits() as u32;
    for k in (2..=max_k).rev() {
        let root = n.nth_root(k);
        if root > BigUint::one() && root.pow(k) == *n {
            return Some((root, k));
        }
    }
    None
}

/// Brent's cycle-based rho with polynomial x^2 + c, trying c = 1, 2, ...
/// across restarts. Returns a nontrivial divisor of composite `n`.
fn brent_rho_big(n: &BigUint, effort: &FactorEffort) -> Option<BigUint> {
    let one = BigUint::one();
    for restart in 0..effort.rho_restarts {
        let c = BigUint::from(restart as u64 + 1);
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = one.clone();
        let mut iterations = 0u64;
        let mut x;
        let mut ys;
        let mut divisor;
        'outer: loop {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k: u64 = 0;
            while k < r {
                let block = 128.min(r - k);
                ys = y.clone();
                for _ in 0..block {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                divisor = q.gcd(n);
                iterations += block;
                if !divisor.is_one() || iterations >= effort.rho_iterations {
                    break 'outer;
                }
                k += block;
            }
            r *= 2;
        }
        if divisor.is_one() {
            continue; // iteration budget exhausted with no factor
        }
        if divisor == *n {
            // The block overshot; re-walk it one step at a time.
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                divisor = diff.gcd(n);
                if !divisor.is_one() {
                    break;
                }
            }
            if divisor == *n {
                continue;
            }
        }
        return Some(divisor);
    }
    None
}

fn factorize_u64_inner(n: u64, effort: &FactorEffort) -> Result<Factorization, FactorizeError> {
    let mut factors: BTreeMap<u64, u32> = BTreeMap::new();
    let mut remaining = n;
    for &p in default_trial_primes() {
        if p > effort.trial_division_bound || p.saturating_mul(p) > remaining {
            break;
        }
        let mut exponent = 0u32;
        while remaining % p == 0 {
            remaining /= p;
            exponent += 1;
        }
        if exponent > 0 {
            factors.insert(p, exponent);
        }
    }
    if remaining > 1 {
        let mut pending = vec![remaining];
        while let Some(current) = pending.pop() {
            if is_prime_u64(current) {
                *factors.entry(current).or_insert(0) += 1;
                continue;
            }
            let divisor = brent_rho_u64(current, effort)
                .ok_or_else(|| FactorizeError::SplitEffortExceeded(BigUint::from(current)))?;
            pending.push(divisor);
            pending.push(current / divisor);
        }
    }
    Ok(Factorization::from_sorted_unchecked(
        factors
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect(),
    ))
}

fn brent_rho_u64(n: u64, effort: &FactorEffort) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for restart in 0..effort.rho_restarts {
        let c = restart as u64 + 1;
        let step = |v: u64| (mul_mod_u64(v, v, n) + c) % n;
        let mut y = 2u64;
        let mut r: u64 = 1;
        let mut q = 1u64;
        let mut iterations = 0u64;
        let mut x;
        let mut ys;
        let mut divisor;
        'outer: loop {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k: u64 = 0;
            while k < r {
                let block = 128.min(r - k);
                ys = y;
                for _ in 0..block {
                    y = step(y);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                divisor = q.gcd(&n);
                iterations += block;
                if divisor != 1 || iterations >= effort.rho_iterations {
                    break 'outer;
                }
                k += block;
            }
            r *= 2;
        }
        if divisor == 1 {
            continue;
        }
        if divisor == n {
            loop {
                ys = step(ys);
                divisor = x.abs_diff(ys).gcd(&n);
                if divisor != 1 {
                    break;
                }
            }
            if divisor == n {
                continue;
            }
        }
        return Some(divisor);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn entries(f: &Factorization) -> Vec<(u64, u32)> {
        f.entries()
            .iter()
            .map(|e| (e.prime.to_u64().unwrap(), e.exponent))
            .collect()
    }

    #[test]
    fn small_known_factorizations() {
        assert_eq!(entries(&factorize_u64(1).unwrap()), vec![]);
        assert_eq!(entries(&factorize_u64(2).unwrap()), vec![(2, 1)]);
        assert_eq!(entries(&factorize_u64(10).unwrap()), vec![(2, 1), (5, 1)]);
        assert_eq!(entries(&factorize_u64(2025).unwrap()), vec![(3, 4), (5, 2)]);
        assert_eq!(
            entries(&factorize_u64(725725).unwrap()),
            vec![(5, 2), (7, 1), (11, 1), (13, 1), (29, 1)]
        );
        assert_eq!(
            entries(&factorize_u64(488281).unwrap()),
            vec![(19, 1), (31, 1), (829, 1)]
        );
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(factorize_u64(0), Err(FactorizeError::Zero));
    }

    #[test]
    fn factors_semiprime_beyond_trial_bound() {
        // 1000003 * 1000033, both prime, both above the default trial bound.
        let n = 1000003u64 * 1000033u64;
        assert_eq!(
            entries(&factorize_u64(n).unwrap()),
            vec![(1000003, 1), (1000033, 1)]
        );
    }

    #[test]
    fn factors_big_square() {
        let n: BigUint = "2613444058225".parse().unwrap(); // (5*7*11*13*17*19)^2
        assert_eq!(
            entries(&factorize(&n).unwrap()),
            vec![(5, 2), (7, 2), (11, 2), (13, 2), (17, 2), (19, 2)]
        );
    }

    #[test]
    fn factors_big_semiprime_with_rho() {
        let p: BigUint = "1000000000039".parse().unwrap();
        let q: BigUint = "1000000000061".parse().unwrap();
        let n = &p * &q; // ~1e24, beyond u64
        let f = factorize(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.num_distinct_primes(), 2);
        assert_eq!(f.entries()[0].prime, p);
        assert_eq!(f.entries()[1].prime, q);
    }

    #[test]
    fn peels_perfect_power_of_large_prime() {
        let p: BigUint = "1000000000039".parse().unwrap();
        let n = p.pow(3u32); // ~1e36, far beyond the certification limit
        let f = factorize(&n).unwrap();
        assert_eq!(f.entries().len(), 1);
        assert_eq!(f.entries()[0].prime, p);
        assert_eq!(f.entries()[0].exponent, 3);
    }

    #[test]
    fn factors_square_of_certifiable_semiprime() {
        // (p*q)^2 with p, q ~ 1e12: the square exceeds the certification
        // limit, but peeling the root brings it back under.
        let p: BigUint = "1000000000039".parse().unwrap();
        let q: BigUint = "1000000000061".parse().unwrap();
        let n = (&p * &q).pow(2u32);
        let f = factorize(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.entries()[0].exponent, 2);
        assert_eq!(f.entries()[1].exponent, 2);
    }

    #[test]
    fn effort_exhaustion_is_an_error_not_an_answer() {
        // ~1e24: beyond u64, below the certification limit, not a perfect
        // power, no factor under the trial bound.
        let n = BigUint::from(1000000000039u64) * BigUint::from(1000000000061u64);
        // Forbid rho progress entirely; the composite cannot be split.
        let effort = FactorEffort {
            trial_division_bound: 1_000,
            rho_iterations: 0,
            rho_restarts: 2,
        };
        match factorize_with(&n, &effort) {
            Err(FactorizeError::SplitEffortExceeded(c)) => assert_eq!(c, n),
            other => panic!("expected SplitEffortExceeded, got {other:?}"),
        }
    }

    #[test]
    fn effort_exhaustion_on_machine_words() {
        let n = 1000003u64 * 1000033 * 1000037; // composite, ~1e18
        let effort = FactorEffort {
            trial_division_bound: 1_000,
            rho_iterations: 0,
            rho_restarts: 2,
        };
        match factorize_with(&BigUint::from(n), &effort) {
            Err(FactorizeError::SplitEffortExceeded(c)) => assert_eq!(c, BigUint::from(n)),
            other => panic!("expected SplitEffortExceeded, got {other:?}"),
        }
    }

    #[test]
    fn uncertifiable_cofactor_is_an_error() {
        // M127 = 2^127 - 1 is prime and beyond the certification limit; its
        // product with a distinct large prime cannot be split or certified.
        let m127: BigUint = "170141183460469231731687303715884105727".parse().unwrap();
        let other: BigUint = "1000000000039".parse().unwrap();
        let n = &m127 * &other;
        let effort = FactorEffort {
            trial_division_bound: 1_000,
            rho_iterations: 0,
            rho_restarts: 2,
        };
        match factorize_with(&n, &effort) {
            Err(FactorizeError::BeyondCertificationLimit(c)) => assert_eq!(c, n),
            other => panic!("expected BeyondCertificationLimit, got {other:?}"),
        }
    }

    #[test]
    fn round_trips_value_for_a_range() {
        for n in 1u64..=3_000 {
            let f = factorize_u64(n).unwrap();
            assert_eq!(f.value(), BigUint::from(n), "value mismatch at {n}");
        }
    }

    #[test]
    fn custom_trial_bound_still_correct() {
        let effort = FactorEffort {
            trial_division_bound: 10,
            ..FactorEffort::default()
        };
        let f = factorize_with(&BigUint::from(9991u32), &effort).unwrap();
        // 9991 = 97 * 103, both beyond the trial bound, found by rho.
        assert_eq!(entries(&f), vec![(97, 1), (103, 1)]);
    }
}
