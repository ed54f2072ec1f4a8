use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Witness set for which the Miller-Rabin test is a proof of primality for
/// every n below [`certification_limit`] (the first 13 primes).
const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrimalityError {
    #[error("{0} exceeds the certification limit for deterministic primality testing")]
    BeyondCertificationLimit(BigUint),
}

/// Largest bound below which [`is_certified_prime`] is a decision procedure:
/// 3_317_044_064_679_887_385_961_981 (about 3.3e24).
pub fn certification_limit() -> &'static BigUint {
    static LIMIT: OnceLock<BigUint> = OnceLock::new();
    LIMIT.get_or_init(|| "3317044064679887385961981".parse().unwrap())
}

/// Decides primality of `n`, or errors if `n` is too large for the witness
/// set to constitute a proof. Never returns a probabilistic answer.
pub fn is_certified_prime(n: &BigUint) -> Result<bool, PrimalityError> {
    if n >= certification_limit() {
        return Err(PrimalityError::BeyondCertificationLimit(n.clone()));
    }
    if let Some(small) = n.to_u64() {
        return Ok(is_prime_u64(small));
    }
    Ok(miller_rabin(n))
}

/// Deterministic primality for machine-word integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in WITNESSES {
        let mut x = pow_mod_u64(a as u64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n >= 2, so n - 1 is nonzero");
    let d = &n_minus_1 >> s;
    'witness: for a in WITNESSES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `<= limit`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = usize::try_from(limit).expect("sieve limit fits in memory");
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut multiple = p * p;
        while multiple <= limit {
            composite[multiple] = true;
            multiple += p;
        }
    }
    primes
}

/// Shared sieve of all primes below 10^6, for trial division.
pub(crate) fn default_trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(1_000_000))
}

/// Floor of the integer square root paired with exactness: `(r, r*r == n)`.
pub fn sqrt_exact(n: &BigUint) -> (BigUint, bool) {
    if n.is_zero() {
        return (BigUint::zero(), true);
    }
    let r = n.sqrt();
    let exact = &r * &r == *n;
    (r, exact)
}
