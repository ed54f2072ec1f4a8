//! Desk-scale scans over an initial segment of the integers: friend
//! classes, friend lookups, and empirical densities.
//!
//! Everything here is exact. A [`SigmaSieve`] tabulates the divisor sum
//! for every n up to a limit by smallest-prime-factor decomposition, so a
//! full scan costs a few machine operations per integer and no
//! factorization. Abundancy comparisons reduce to integer cross
//! multiplication; no floating point, no thresholds.
//!
//! The scans answer finite questions only: a friend absent below a limit
//! says nothing beyond that limit, and a density at scan scale is an
//! empirical stand-in for the (open) limiting density, never an
//! extrapolation.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exactmath::{factorize_u64, ExactRatio, FactorizeError};
use crate::theorem::min_friend_lower_bound;

/// Largest supported sieve limit; 10^7 keeps the two tables near 120 MB.
pub const MAX_SIEVE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum ExperimentsError {
    #[error("{m} and {n} are not friends: I({m}) = {abundancy_m}, I({n}) = {abundancy_n}")]
    NotFriends {
        m: u64,
        n: u64,
        abundancy_m: ExactRatio,
        abundancy_n: ExactRatio,
    },
    #[error("an integer is its own abundancy match but never its own friend (got {0} twice)")]
    SelfFriend(u64),
    #[error(transparent)]
    Factorize(#[from] FactorizeError),
}

/// Divisor-sum table for `1..=limit`, built once and queried in constant
/// time.
pub struct SigmaSieve {
    limit: u64,
    smallest_factor: Vec<u32>,
    sigma: Vec<u64>,
}

impl SigmaSieve {
    /// Builds the table. Panics if `limit` is 0 or exceeds the supported
    /// maximum of 10^7.
    pub fn new(limit: u64) -> Self {
        assert!(
            (1..=MAX_SIEVE_LIMIT).contains(&limit),
            "sieve limit must be in 1..=10^7, got {limit}"
        );
        let n = limit as usize;
        let mut smallest_factor = vec![0u32; n + 1];
        let mut i = 2usize;
        while i <= n {
            if smallest_factor[i] == 0 {
                for j in (i..=n).step_by(i) {
                    if smallest_factor[j] == 0 {
                        smallest_factor[j] = i as u32;
                    }
                }
            }
            i += 1;
        }

        let mut sigma = vec![0u64; n + 1];
        if n >= 1 {
            sigma[1] = 1;
        }
        for v in 2..=n {
            let p = smallest_factor[v] as usize;
            // Peel the full power of the smallest prime: v = p^a * rest,
            // with rest coprime to p and already tabulated.
            let mut rest = v;
            let mut prime_power_sigma = 1u64;
            let mut power = 1u64;
            while rest % p == 0 {
                rest /= p;
                power *= p as u64;
                prime_power_sigma += power;
            }
            sigma[v] = prime_power_sigma * sigma[rest];
        }

        SigmaSieve {
            limit,
            smallest_factor,
            sigma,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// The divisor sum of `n`. Panics outside `1..=limit`.
    pub fn sigma(&self, n: u64) -> u64 {
        assert!(
            n >= 1 && n <= self.limit,
            "sigma queried at {n}, outside 1..={}",
            self.limit
        );
        self.sigma[n as usize]
    }

    /// The abundancy index of `n` in lowest terms. Panics outside
    /// `1..=limit`.
    pub fn abundancy(&self, n: u64) -> ExactRatio {
        ExactRatio::new(self.sigma(n), n).expect("n >= 1")
    }

    /// True when `n = p^a` for a prime p and a >= 1.
    pub fn is_prime_power(&self, n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let p = self.smallest_factor[n as usize] as u64;
        let mut rest = n;
        while rest % p == 0 {
            rest /= p;
        }
        rest == 1
    }

    /// Groups every `n <= limit` by exact abundancy and returns the
    /// classes with at least two members, ordered by smallest member.
    /// Members are ascending; all of them share the class abundancy
    /// exactly, so any two distinct members are friends.
    pub fn friend_classes(&self) -> Vec<FriendClass> {
        let mut groups: HashMap<(u64, u64), Vec<u64>> = HashMap::new();
        for n in 1..=self.limit {
            let s = self.sigma[n as usize];
            let g = s.gcd(&n);
            groups.entry((s / g, n / g)).or_default().push(n);
        }
        let mut classes: Vec<FriendClass> = groups
            .into_iter()
            .filter(|(_, members)| members.len() >= 2)
            .map(|((num, den), members)| FriendClass {
                abundancy: ExactRatio::new(num, den).expect("den >= 1"),
                members,
            })
            .collect();
        classes.sort_by_key(|class| class.members[0]);
        classes
    }

    /// All `n <= limit` with `I(n) = I(m)` and `n != m`, ascending.
    ///
    /// For `m` within the sieve the match is a pure table scan. A larger
    /// `m` is factored exactly first, which can fail only if `m` resists
    /// the default factorization effort.
    pub fn friends_of(&self, m: u64) -> Result<Vec<u64>, FactorizeError> {
        let (num, den): (u128, u128) = if m <= self.limit {
            let s = self.sigma[m as usize];
            let g = s.gcd(&m);
            ((s / g) as u128, (m / g) as u128)
        } else {
            let abundancy = factorize_u64(m)?.abundancy();
            // sigma(m) < 2^67 for any u64 m, so u128 holds both parts.
            let num = abundancy.numerator().to_u128().expect("sigma of a u64");
            let den = abundancy.denominator().to_u128().expect("divides m");
            (num, den)
        };
        let mut friends = Vec::new();
        for n in 1..=self.limit {
            if n == m {
                continue;
            }
            // I(n) = num/den exactly, by cross multiplication: sigma(n)
            // is under 2^26 at sieve scale, so both sides fit u128.
            let s = self.sigma[n as usize];
            if (s as u128) * den == num * (n as u128) {
                friends.push(n);
            }
        }
        Ok(friends)
    }

    /// Counts `n <= limit` with `I(n) > x` strictly.
    pub fn density_estimate(&self, x: &ExactRatio) -> DensityEstimate {
        let num = x.numerator();
        let den = x.denominator();
        let fast = num
            .to_u64()
            .zip(den.to_u64())
            .filter(|&(n, d)| n > 0 && d > 0);
        let mut count = 0u64;
        match fast {
            Some((num, den)) => {
                for n in 1..=self.limit {
                    // sigma(n) * den < 2^90 and n * num < 2^128: exact.
                    if (self.sigma[n as usize] as u128) * (den as u128)
                        > (num as u128) * (n as u128)
                    {
                        count += 1;
                    }
                }
            }
            None => {
                for n in 1..=self.limit {
                    if BigInt::from(self.sigma[n as usize]) * den > num * BigInt::from(n) {
                        count += 1;
                    }
                }
            }
        }
        DensityEstimate {
            x: x.clone(),
            limit: self.limit,
            count,
            ratio: ExactRatio::new(count, self.limit).expect("limit >= 1"),
        }
    }
}

/// A maximal set of mutual friends below a scan limit: at least two
/// integers sharing one exact abundancy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendClass {
    pub abundancy: ExactRatio,
    pub members: Vec<u64>,
}

/// Exact count of `n <= limit` with `I(n) > x`, the finite stand-in for
/// the density of `J(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityEstimate {
    pub x: ExactRatio,
    pub limit: u64,
    pub count: u64,
    pub ratio: ExactRatio,
}

/// Empirical density of the friendly multiples `k*m` for `k` coprime to
/// `m*n`, where `n` is a friend of `m`: each such `k*m` has `k*n` as a
/// friend, since scaling by a coprime factor multiplies both abundancies
/// by `I(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendlyMultipleDensity {
    pub base: u64,
    pub friend: u64,
    pub limit: u64,
    pub count: u64,
    pub ratio: ExactRatio,
}

/// See [`SigmaSieve::friend_classes`]; builds the sieve internally.
pub fn friend_classes(limit: u64) -> Vec<FriendClass> {
    SigmaSieve::new(limit).friend_classes()
}

/// See [`SigmaSieve::friends_of`]; builds the sieve internally.
pub fn friends_of(m: u64, limit: u64) -> Result<Vec<u64>, FactorizeError> {
    SigmaSieve::new(limit).friends_of(m)
}

/// Friends of 10 below `limit`, using the structural lower bound instead
/// of a scan: no integer below `(5*7*11*13*17*19)^2` can share I = 9/5,
/// so limits under that bound return empty without building a sieve.
pub fn friends_of_10(limit: u64) -> Vec<u64> {
    if BigUint::from(limit) < min_friend_lower_bound() {
        return Vec::new();
    }
    // Unreachable at supported sieve sizes (the bound exceeds 10^12), but
    // kept honest for when it is not.
    SigmaSieve::new(limit)
        .friends_of(10)
        .expect("10 factors instantly")
}

/// See [`SigmaSieve::density_estimate`]; builds the sieve internally.
pub fn density_estimate(x: &ExactRatio, limit: u64) -> DensityEstimate {
    SigmaSieve::new(limit).density_estimate(x)
}

/// Counts `k <= limit` with `gcd(k, m*n) = 1` for friends `m` and `n`:
/// exactly the multipliers for which `k*m` and `k*n` are again friends.
/// Rejects inputs that are not friends.
pub fn friendly_multiple_density(
    m: u64,
    n: u64,
    limit: u64,
) -> Result<FriendlyMultipleDensity, ExperimentsError> {
    if m == n {
        return Err(ExperimentsError::SelfFriend(m));
    }
    let abundancy_m = factorize_u64(m)?.abundancy();
    let abundancy_n = factorize_u64(n)?.abundancy();
    if abundancy_m != abundancy_n {
        return Err(ExperimentsError::NotFriends {
            m,
            n,
            abundancy_m,
            abundancy_n,
        });
    }
    let product = (m as u128) * (n as u128);
    let mut count = 0u64;
    for k in 1..=limit {
        if (k as u128).gcd(&product) == 1 {
            count += 1;
        }
    }
    Ok(FriendlyMultipleDensity {
        base: m,
        friend: n,
        limit,
        count,
        ratio: ExactRatio::new(count, limit).expect("limit >= 1"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    fn sigma_naive(n: u64) -> u64 {
        (1..=n).filter(|d| n % d == 0).sum()
    }

    #[test]
    fn sieve_matches_naive_divisor_sums() {
        let sieve = SigmaSieve::new(500);
        for n in 1..=500 {
            assert_eq!(sieve.sigma(n), sigma_naive(n), "sigma({n})");
        }
        assert_eq!(sieve.abundancy(6), ratio(2, 1));
        assert_eq!(sieve.abundancy(10), ratio(9, 5));
    }

    #[test]
    fn prime_power_detection() {
        let sieve = SigmaSieve::new(200);
        for n in [2u64, 3, 4, 8, 9, 27, 49, 121, 128] {
            assert!(sieve.is_prime_power(n), "{n}");
        }
        for n in [1u64, 6, 10, 12, 36, 100, 180] {
            assert!(!sieve.is_prime_power(n), "{n}");
        }
    }

    #[test]
    fn the_perfect_numbers_are_the_first_class() {
        let classes = friend_classes(30);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].abundancy, ratio(2, 1));
        assert_eq!(classes[0].members, [6, 28]);
    }

    #[test]
    fn no_classes_below_ten() {
        assert!(friend_classes(9).is_empty());
        assert!(friend_classes(1).is_empty());
    }

    #[test]
    fn classes_up_to_1000_start_with_the_known_six() {
        let classes = friend_classes(1000);
        assert_eq!(classes.len(), 18);
        let expected: [(ExactRatio, &[u64]); 6] = [
            (ratio(2, 1), &[6, 28, 496]),
            (ratio(7, 3), &[12, 234]),
            (ratio(12, 5), &[30, 140]),
            (ratio(9, 4), &[40, 224]),
            (ratio(24, 11), &[66, 308]),
            (ratio(28, 13), &[78, 364]),
        ];
        for (class, (abundancy, members)) in classes.iter().zip(expected.iter()) {
            assert_eq!(&class.abundancy, abundancy);
            assert_eq!(&class.members, members);
        }
    }

    #[test]
    fn class_members_share_the_key_and_never_divide_each_other() {
        let sieve = SigmaSieve::new(100_000);
        for class in sieve.friend_classes() {
            for &member in &class.members {
                assert_eq!(sieve.abundancy(member), class.abundancy);
            }
            for &a in &class.members {
                for &b in &class.members {
                    if a != b {
                        assert!(b % a != 0, "{a} divides {b} in one class");
                    }
                }
            }
        }
    }

    #[test]
    fn no_prime_power_has_a_friend_at_desk_scale() {
        let sieve = SigmaSieve::new(100_000);
        for class in sieve.friend_classes() {
            for &member in &class.members {
                assert!(!sieve.is_prime_power(member), "{member}");
            }
        }
    }

    #[test]
    fn friend_lookups() {
        assert_eq!(friends_of(6, 30).unwrap(), [28]);
        assert_eq!(friends_of(6, 27).unwrap(), Vec::<u64>::new());
        assert_eq!(friends_of(1, 1000).unwrap(), Vec::<u64>::new());
        assert_eq!(friends_of(10, 100_000).unwrap(), Vec::<u64>::new());
        // m above the scan limit takes the factorization path.
        assert_eq!(friends_of(28, 10).unwrap(), [6]);
    }

    #[test]
    fn friends_of_10_skips_the_scan_below_the_structural_bound() {
        assert_eq!(friends_of_10(1_000_000), Vec::<u64>::new());
        assert_eq!(friends_of_10(u64::MAX.min(2_000_000)), Vec::<u64>::new());
    }

    #[test]
    fn density_pins() {
        assert_eq!(density_estimate(&ratio(9, 5), 100).count, 34);
        assert_eq!(density_estimate(&ratio(10, 1), 100).count, 0);
        // Just above 1 everything but n = 1 counts.
        let estimate = density_estimate(&ratio(102, 101), 100);
        assert_eq!(estimate.count, 99);
        assert_eq!(estimate.ratio, ratio(99, 100));
    }

    #[test]
    fn density_is_monotone_in_x() {
        let sieve = SigmaSieve::new(1000);
        let thresholds = [ratio(6, 5), ratio(3, 2), ratio(9, 5), ratio(2, 1), ratio(3, 1)];
        let counts: Vec<u64> = thresholds
            .iter()
            .map(|x| sieve.density_estimate(x).count)
            .collect();
        for pair in counts.windows(2) {
            assert!(pair[0] >= pair[1]);
        }
        assert!(counts[0] > 0);
    }

    #[test]
    fn friendly_multiple_pins() {
        let record = friendly_multiple_density(6, 28, 10_000).unwrap();
        assert_eq!(record.count, 2857);
        assert_eq!(record.ratio, ratio(2857, 10_000));

        let record = friendly_multiple_density(6, 28, 1).unwrap();
        assert_eq!(record.count, 1);
    }

    #[test]
    fn friendly_multiple_rejects_non_friends() {
        assert!(matches!(
            friendly_multiple_density(4, 9, 100),
            Err(ExperimentsError::NotFriends { .. })
        ));
        assert!(matches!(
            friendly_multiple_density(6, 6, 100),
            Err(ExperimentsError::SelfFriend(6))
        ));
    }
}
