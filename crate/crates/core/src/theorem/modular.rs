use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::exactmath::primes::is_prime_u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} unsupported; residue constraints use modulus 3 or 9")]
    UnsupportedModulus(u64),
    #[error("prime {prime} is {residue} mod 3; this analysis needs residue 1")]
    NotOneModThree { prime: u64, residue: u64 },
}

/// A prime together with its residue modulo 3 or 9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModClass {
    prime: u64,
    modulus: u64,
    residue: u64,
}

impl ModClass {
    /// Classifies `prime` modulo `modulus`, which must be 3 or 9.
    pub fn new(prime: u64, modulus: u64) -> Result<Self, ModularError> {
        if modulus != 3 && modulus != 9 {
            return Err(ModularError::UnsupportedModulus(modulus));
        }
        if !is_prime_u64(prime) {
            return Err(ModularError::NotPrime(prime));
        }
        Ok(Self {
            prime,
            modulus,
            residue: prime % modulus,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }
}

/// `(1 + base + base^2 + ... + base^(terms-1)) mod modulus`, computed from
/// the residue cycle of the powers rather than big powers, so `terms` may be
/// astronomically large. `modulus` must be at least 2; the walk length is
/// bounded by the cycle of `base` mod `modulus`, so keep the modulus small.
pub fn geometric_sum_mod(base: u64, terms: u64, modulus: u64) -> u64 {
    assert!(modulus >= 2, "modulus must be at least 2");
    let m = modulus as u128;
    let b = (base % modulus) as u128;
    let mut seen: HashMap<u64, usize> = HashMap::new();
    // powers[i] = b^i mod m; prefix[i] = sum of the first i powers mod m
    let mut powers: Vec<u64> = Vec::new();
    let mut prefix: Vec<u64> = vec![0];
    let mut power: u128 = 1 % m;
    loop {
        if powers.len() as u64 >= terms {
            return prefix[terms as usize];
        }
        if let Some(&start) = seen.get(&(power as u64)) {
            // Powers repeat from `start` with period `len`; prefix sums then
            // advance by a fixed cycle sum per period.
            let len = powers.len() - start;
            let remaining = terms - start as u64;
            let full_cycles = remaining / len as u64;
            let tail = (remaining % len as u64) as usize;
            let cycle_sum = (prefix[start + len] as u128 + m - prefix[start] as u128) % m;
            let tail_sum = (prefix[start + tail] as u128 + m - prefix[start] as u128) % m;
            let total = (prefix[start] as u128
                + (full_cycles as u128 % m) * cycle_sum % m
                + tail_sum)
                % m;
            return total as u64;
        }
        seen.insert(power as u64, powers.len());
        powers.push(power as u64);
        let next = (*prefix.last().expect("nonempty") as u128 + power) % m;
        prefix.push(next as u64);
        power = power * b % m;
    }
}

/// For a prime `p ≡ 1 (mod 3)`, the residues of even exponents `2e mod 18`
/// at which `9 | sigma(p^(2e))`.
///
/// The answer is computed, not assumed: divisibility is sampled across ten
/// full periods of even exponents and checked for consistency within each
/// residue class. The result is `{8}` for every admissible prime, because
/// the power residues of `p` mod 9 cycle with period dividing 6 and the
/// cycle sum vanishes mod 9, making the prefix sums 18-periodic in the
/// exponent.
pub fn exponent_class_mod9(p: u64) -> Result<BTreeSet<u64>, ModularError> {
    let class = ModClass::new(p, 3)?;
    if class.residue() != 1 {
        return Err(ModularError::NotOneModThree {
            prime: p,
            residue: class.residue(),
        });
    }
    let mut divisible_at: HashMap<u64, bool> = HashMap::new();
    for two_e in (0..180).step_by(2) {
        let divisible = geometric_sum_mod(p, two_e + 1, 9) == 0;
        let residue = two_e % 18;
        match divisible_at.get(&residue) {
            None => {
                divisible_at.insert(residue, divisible);
            }
            Some(&previous) => assert_eq!(
                previous, divisible,
                "exponent residue {residue} mod 18 must decide divisibility for p = {p}"
            ),
        }
    }
    Ok(divisible_at
        .into_iter()
        .filter_map(|(residue, divisible)| divisible.then_some(residue))
        .collect())
}
