//! Brute-force oracles shared across integration tests.
#![allow(dead_code)]

use abundancy::exactmath::sigma_prime_power;
use abundancy::ExactRatio;
use num_bigint::BigUint;

/// Visits every nonempty signature over ascending `primes` with at most
/// `max_primes` entries and exponents in `1..=max_exponent`, passing the
/// entry list and its exact abundancy.
pub fn for_each_signature(
    primes: &[u64],
    max_exponent: u32,
    max_primes: usize,
    visit: &mut impl FnMut(&[(u64, u32)], &ExactRatio),
) {
    let mut current = Vec::new();
    let mut ratios = vec![ExactRatio::one()];
    recurse(primes, 0, max_exponent, max_primes, &mut current, &mut ratios, visit);
}

fn recurse(
    primes: &[u64],
    start: usize,
    max_exponent: u32,
    max_primes: usize,
    current: &mut Vec<(u64, u32)>,
    ratios: &mut Vec<ExactRatio>,
    visit: &mut impl FnMut(&[(u64, u32)], &ExactRatio),
) {
    if !current.is_empty() {
        visit(current, ratios.last().expect("ratio stack is never empty"));
    }
    if current.len() == max_primes {
        return;
    }
    for i in start..primes.len() {
        let p = primes[i];
        for e in 1..=max_exponent {
            let step = prime_power_abundancy(p, e);
            let next = ratios.last().expect("ratio stack is never empty") * &step;
            current.push((p, e));
            ratios.push(next);
            recurse(primes, i + 1, max_exponent, max_primes, current, ratios, visit);
            ratios.pop();
            current.pop();
        }
    }
}

pub fn prime_power_abundancy(p: u64, e: u32) -> ExactRatio {
    let prime = BigUint::from(p);
    ExactRatio::from_unsigned(sigma_prime_power(&prime, e), prime.pow(e))
        .expect("prime powers are nonzero")
}

pub fn abundancy_of(entries: &[(u64, u32)]) -> ExactRatio {
    entries
        .iter()
        .fold(ExactRatio::one(), |acc, &(p, e)| acc * prime_power_abundancy(p, e))
}

/// All signatures within the bounds whose abundancy equals `target`
/// exactly, in canonical order.
pub fn brute_candidates(
    primes: &[u64],
    max_exponent: u32,
    max_primes: usize,
    target: &ExactRatio,
) -> Vec<Vec<(u64, u32)>> {
    let mut found = Vec::new();
    for_each_signature(primes, max_exponent, max_primes, &mut |entries, ratio| {
        if ratio == target {
            found.push(entries.to_vec());
        }
    });
    found.sort();
    found
}
