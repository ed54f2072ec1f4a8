use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use super::primes::{is_certified_prime, PrimalityError};
use super::ratio::ExactRatio;

/// One `prime^exponent` component of a factorization.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorEntry {
    pub prime: BigUint,
    pub exponent: u32,
}

/// A certified prime factorization: entries sorted by strictly ascending
/// prime, every exponent positive, every prime proven prime on construction.
/// The empty factorization represents 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    entries: Vec<FactorEntry>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorizationError {
    #[error("primes must be strictly ascending, found {0} after an equal or larger prime")]
    NotAscending(BigUint),
    #[error("exponents must be positive, found 0 on prime {0}")]
    ZeroExponent(BigUint),
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("malformed factorization literal {0:?}: expected `p^e * p^e * ...` or `1`")]
    Malformed(String),
    #[error(transparent)]
    Primality(#[from] PrimalityError),
}

impl Factorization {
    /// The factorization of 1 (no prime factors).
    pub fn one() -> Self {
        Self { entries: Vec::new() }
    }

    /// Validates and certifies a factorization: ascending distinct primes,
    /// positive exponents, every prime proven prime.
    pub fn new(entries: Vec<(BigUint, u32)>) -> Result<Self, FactorizationError> {
        let mut previous: Option<&BigUint> = None;
        for (prime, exponent) in &entries {
            if *exponent == 0 {
                return Err(FactorizationError::ZeroExponent(prime.clone()));
            }
            if let Some(prev) = previous {
                if prev >= prime {
                    return Err(FactorizationError::NotAscending(prime.clone()));
                }
            }
            if !is_certified_prime(prime)? {
                return Err(FactorizationError::NotPrime(prime.clone()));
            }
            previous = Some(prime);
        }
        Ok(Self::from_sorted_unchecked(entries))
    }

    /// Skips validation; callers must guarantee ascending certified primes
    /// and positive exponents.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(BigUint, u32)>) -> Self {
        Self {
            entries: entries
                .into_iter()
                .map(|(prime, exponent)| FactorEntry { prime, exponent })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[FactorEntry] {
        &self.entries
    }

    pub fn num_distinct_primes(&self) -> usize {
        self.entries.len()
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = &BigUint> {
        self.entries.iter().map(|entry| &entry.prime)
    }

    pub fn exponent_of(&self, prime: &BigUint) -> Option<u32> {
        self.entries
            .binary_search_by(|entry| entry.prime.cmp(prime))
            .ok()
            .map(|idx| self.entries[idx].exponent)
    }

    pub fn divides(&self, prime: &BigUint) -> bool {
        self.exponent_of(prime).is_some()
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> BigUint {
        self.entries
            .iter()
            .map(|entry| entry.prime.pow(entry.exponent))
            .product()
    }

    /// Sum of all divisors: product over entries of
    /// `1 + p + p^2 + ... + p^e = (p^(e+1) - 1) / (p - 1)`.
    pub fn sigma(&self) -> BigUint {
        self.entries
            .iter()
            .map(|entry| sigma_prime_power(&entry.prime, entry.exponent))
            .product()
    }

    /// The abundancy index `sigma(value) / value`, in lowest terms.
    pub fn abundancy(&self) -> ExactRatio {
        ExactRatio::from_unsigned(self.sigma(), self.value())
            .expect("factorization value is positive")
    }

    /// True when every exponent is even, i.e. the value is a perfect square.
    pub fn is_square(&self) -> bool {
        self.entries.iter().all(|entry| entry.exponent % 2 == 0)
    }
}

/// `sigma(p^e)` for a single prime power, via the geometric sum.
pub fn sigma_prime_power(prime: &BigUint, exponent: u32) -> BigUint {
    let mut sum = BigUint::one();
    let mut power = BigUint::one();
    for _ in 0..exponent {
        power *= prime;
        sum += &power;
    }
    sum
}

impl fmt::Display for Factorization {
    /// Renders as `p1^e1 * p2^e2 * ...`; the empty product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        let rendered: Vec<String> = self
            .entries
            .iter()
            .map(|entry| format!("{}^{}", entry.prime, entry.exponent))
            .collect();
        write!(f, "{}", rendered.join(" * "))
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Factorization({self})")
    }
}

impl FromStr for Factorization {
    type Err = FactorizationError;

    /// Parses the [`Display`](fmt::Display) format: `p^e * p^e * ...` or `1`.
    /// A factor written without `^` gets exponent 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let malformed = || FactorizationError::Malformed(s.to_owned());
        let mut entries = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (prime_text, exponent) = match part.split_once('^') {
                Some((p, e)) => {
                    let exponent: u32 = e.trim().parse().map_err(|_| malformed())?;
                    (p.trim(), exponent)
                }
                None => (part, 1),
            };
            let prime: BigUint = prime_text.parse().map_err(|_| malformed())?;
            entries.push((prime, exponent));
        }
        Self::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(entries: &[(u64, u32)]) -> Factorization {
        Factorization::new(
            entries
                .iter()
                .map(|&(p, e)| (BigUint::from(p), e))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn value_and_sigma_of_known_factorizations() {
        let ten = fact(&[(2, 1), (5, 1)]);
        assert_eq!(ten.value(), BigUint::from(10u32));
        assert_eq!(ten.sigma(), BigUint::from(18u32));

        let n2025 = fact(&[(3, 4), (5, 2)]);
        assert_eq!(n2025.value(), BigUint::from(2025u32));

        let eightyone = fact(&[(3, 4)]);
        assert_eq!(eightyone.sigma(), BigUint::from(121u32));

        assert_eq!(Factorization::one().value(), BigUint::one());
        assert_eq!(Factorization::one().sigma(), BigUint::one());
    }

    #[test]
    fn abundancy_is_reduced() {
        assert_eq!(fact(&[(2, 1), (5, 1)]).abundancy(), "9/5".parse().unwrap());
        assert_eq!(
            fact(&[(2, 1), (3, 1)]).abundancy(),
            "2/1".parse().unwrap()
        );
        assert_eq!(
            fact(&[(3, 2), (5, 2)]).abundancy(),
            "403/225".parse().unwrap()
        );
        assert_eq!(Factorization::one().abundancy(), ExactRatio::one());
    }

    #[test]
    fn sigma_prime_power_matches_direct_sum() {
        assert_eq!(
            sigma_prime_power(&BigUint::from(2u32), 4),
            BigUint::from(31u32)
        );
        assert_eq!(
            sigma_prime_power(&BigUint::from(5u32), 2),
            BigUint::from(31u32)
        );
        assert_eq!(
            sigma_prime_power(&BigUint::from(7u32), 8),
            BigUint::from(6725601u32)
        );
        assert_eq!(sigma_prime_power(&BigUint::from(13u32), 0), BigUint::one());
    }

    #[test]
    fn construction_rejects_malformed_input() {
        let err = Factorization::new(vec![(BigUint::from(5u32), 1), (BigUint::from(3u32), 1)]);
        assert_eq!(
            err,
            Err(FactorizationError::NotAscending(BigUint::from(3u32)))
        );
        let err = Factorization::new(vec![(BigUint::from(3u32), 1), (BigUint::from(3u32), 2)]);
        assert_eq!(
            err,
            Err(FactorizationError::NotAscending(BigUint::from(3u32)))
        );
        let err = Factorization::new(vec![(BigUint::from(4u32), 1)]);
        assert_eq!(err, Err(FactorizationError::NotPrime(BigUint::from(4u32))));
        let err = Factorization::new(vec![(BigUint::from(3u32), 0)]);
        assert_eq!(
            err,
            Err(FactorizationError::ZeroExponent(BigUint::from(3u32)))
        );
    }

    #[test]
    fn square_detection() {
        assert!(fact(&[(3, 4), (5, 2)]).is_square());
        assert!(!fact(&[(3, 4), (5, 1)]).is_square());
        assert!(Factorization::one().is_square());
    }

    #[test]
    fn display_round_trips_through_parse() {
        let n = fact(&[(3, 4), (5, 2)]);
        assert_eq!(n.to_string(), "3^4 * 5^2");
        assert_eq!(n.to_string().parse::<Factorization>().unwrap(), n);
        assert_eq!("1".parse::<Factorization>().unwrap(), Factorization::one());
        assert_eq!("2 * 5".parse::<Factorization>().unwrap(), fact(&[(2, 1), (5, 1)]));
        assert!("6^2".parse::<Factorization>().is_err());
        assert!("5^2 * 3^2".parse::<Factorization>().is_err());
    }

    #[test]
    fn exponent_lookup() {
        let n = fact(&[(3, 4), (5, 2)]);
        assert_eq!(n.exponent_of(&BigUint::from(3u32)), Some(4));
        assert_eq!(n.exponent_of(&BigUint::from(5u32)), Some(2));
        assert_eq!(n.exponent_of(&BigUint::from(7u32)), None);
        assert!(n.divides(&BigUint::from(5u32)));
        assert!(!n.divides(&BigUint::from(2u32)));
    }
}
