//! Branch-and-bound enumeration of prime signatures hitting a target
//! abundancy.
//!
//! A signature is an ascending list of distinct prime powers `p1^e1 *
//! p2^e2 * ...`; the search walks the tree of signatures depth-first,
//! extending each node by one prime at a time, and records every signature
//! whose abundancy equals the target exactly. Three prune rules keep the
//! tree finite and small:
//!
//! - **overshoot**: the abundancy index is strictly monotone in divisors,
//!   so a node past the target can never return to it;
//! - **cap**: `I(n) < prod p/(p-1)` over the primes of n, strictly, so a
//!   node whose abundancy times the cap product of its best possible
//!   future primes fails to exceed the target is dead (equality prunes:
//!   the cap is a supremum, never attained);
//! - **forced conflict**: any prime dividing `sigma(p^e)` for a committed
//!   entry, but not the target numerator, must divide every completion.
//!   A forced prime that is filter-excluded, larger than the prime limit,
//!   smaller than the cursor, or in excess of the remaining slots refutes
//!   the whole subtree.
//!
//! Every prune is conservative and the final membership test is the exact
//! rational equation, so the outcome lists precisely the signatures within
//! bounds attaining the target. Runs are deterministic: identical configs
//! give identical outcomes, candidates sorted in canonical signature
//! order. Long runs can checkpoint and resume through [`save_checkpoint`]
//! and [`load_checkpoint`] without changing the outcome.

mod checkpoint;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use checkpoint::{load_checkpoint, run_search_with_checkpoint, save_checkpoint};

use crate::exactmath::primes::{is_certified_prime, is_prime_u64, primes_up_to};
use crate::exactmath::{sigma_prime_power, trial_divide_big, ExactRatio, Factorization};

/// Largest prime tried when factoring `sigma(p^e)` for forcing. Factors
/// beyond it are used only when the cofactor certifies prime; a composite
/// cofactor is ignored, which weakens forcing but never misleads it.
const FORCING_TRIAL_BOUND: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("checkpoint i/o: {0}")]
    CheckpointIo(#[from] std::io::Error),
    #[error("checkpoint malformed: {0}")]
    CheckpointMalformed(String),
    #[error("unsupported checkpoint version {found:?} (this build reads version 1)")]
    CheckpointVersionMismatch { found: String },
    #[error("checkpoint config mismatch: {0}")]
    CheckpointConfigMismatch(String),
}

/// Structural restrictions a search may impose on signatures.
///
/// `square_only` admits only even exponents, `exclude_three` bans the
/// prime 3, and `require_five` records only candidates divisible by 5
/// (and prunes subtrees where 5 can no longer appear). All three reflect
/// constraints a friend of 10 is known to satisfy; they default to off so
/// generic targets search the unrestricted space.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StructuralFilters {
    pub square_only: bool,
    pub exclude_three: bool,
    pub require_five: bool,
}

/// Bounds and target for one search run.
///
/// `max_distinct_primes` bounds the total count of distinct primes in a
/// signature, counting forced ones; `max_exponent` bounds each exponent by
/// value; `prime_limit` bounds each prime by value. `checkpoint_interval`
/// is the node cadence at which [`run_search_with_checkpoint`] persists
/// state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub target: ExactRatio,
    pub max_distinct_primes: u32,
    pub max_exponent: u32,
    pub prime_limit: u64,
    pub checkpoint_interval: u64,
    pub filters: StructuralFilters,
}

impl SearchConfig {
    /// The friend-of-10 hunt: target 9/5 over squares coprime to 3 and
    /// divisible by 5, up to five distinct primes below 1000 with
    /// exponents up to 20. An exhausted run with no candidates shows any
    /// friend of 10 needs at least six distinct primes or one outside
    /// these bounds.
    pub fn friend_of_10() -> Self {
        SearchConfig {
            target: ExactRatio::new(9, 5).expect("nonzero denominator"),
            max_distinct_primes: 5,
            max_exponent: 20,
            prime_limit: 1000,
            checkpoint_interval: 1024,
            filters: StructuralFilters {
                square_only: true,
                exclude_three: true,
                require_five: true,
            },
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let invalid = |msg: String| Err(SearchError::InvalidConfig(msg));
        if self.target <= ExactRatio::one() {
            return invalid(format!("target must exceed 1, got {}", self.target));
        }
        if self.max_distinct_primes == 0 || self.max_distinct_primes > 64 {
            return invalid(format!(
                "max_distinct_primes must be in 1..=64, got {}",
                self.max_distinct_primes
            ));
        }
        let min_exponent = if self.filters.square_only { 2 } else { 1 };
        if self.max_exponent < min_exponent {
            return invalid(format!(
                "max_exponent must be at least {min_exponent}, got {}",
                self.max_exponent
            ));
        }
        if self.prime_limit < 2 || self.prime_limit > 10_000_000 {
            return invalid(format!(
                "prime_limit must be in 2..=10000000, got {}",
                self.prime_limit
            ));
        }
        if self.checkpoint_interval == 0 {
            return invalid("checkpoint_interval must be positive".to_owned());
        }
        Ok(())
    }

    fn admits_prime(&self, p: u64) -> bool {
        p <= self.prime_limit && !(self.filters.exclude_three && p == 3)
    }

    fn admits_exponent(&self, e: u32) -> bool {
        e >= 1 && e <= self.max_exponent && !(self.filters.square_only && e % 2 != 0)
    }
}

/// An ascending list of distinct prime powers. `complete` marks
/// signatures emitted as candidates, whose abundancy has been compared
/// against the target exactly; frontier signatures carry `complete =
/// false`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateSignature {
    entries: Vec<(u64, u32)>,
    complete: bool,
}

impl CandidateSignature {
    pub fn empty() -> Self {
        CandidateSignature {
            entries: Vec::new(),
            complete: false,
        }
    }

    /// Validates ascending distinct primes with positive exponents.
    pub fn new(entries: Vec<(u64, u32)>) -> Result<Self, SearchError> {
        let invalid = |msg: String| Err(SearchError::InvalidSignature(msg));
        for window in entries.windows(2) {
            if window[0].0 >= window[1].0 {
                return invalid(format!(
                    "primes must be strictly ascending, got {} before {}",
                    window[0].0, window[1].0
                ));
            }
        }
        for &(p, e) in &entries {
            if !is_prime_u64(p) {
                return invalid(format!("{p} is not prime"));
            }
            if e == 0 {
                return invalid(format!("exponent of {p} must be positive"));
            }
        }
        Ok(CandidateSignature {
            entries,
            complete: false,
        })
    }

    fn from_entries_unchecked(entries: Vec<(u64, u32)>) -> Self {
        CandidateSignature {
            entries,
            complete: false,
        }
    }

    fn completed(&self) -> Self {
        CandidateSignature {
            entries: self.entries.clone(),
            complete: true,
        }
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn num_distinct_primes(&self) -> usize {
        self.entries.len()
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.entries.iter().any(|&(q, _)| q == p)
    }

    pub fn to_factorization(&self) -> Factorization {
        Factorization::from_sorted_unchecked(
            self.entries
                .iter()
                .map(|&(p, e)| (BigUint::from(p), e))
                .collect(),
        )
    }

    pub fn value(&self) -> BigUint {
        self.to_factorization().value()
    }

    pub fn abundancy(&self) -> ExactRatio {
        self.to_factorization().abundancy()
    }
}

impl fmt::Display for CandidateSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_factorization())
    }
}

impl FromStr for CandidateSignature {
    type Err = SearchError;

    /// Parses the display form `p1^e1 * p2^e2` (or `1` for the empty
    /// signature). Parsed signatures are not marked complete.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factorization: Factorization = s
            .parse()
            .map_err(|e| SearchError::InvalidSignature(format!("{s:?}: {e}")))?;
        let mut entries = Vec::with_capacity(factorization.num_distinct_primes());
        for entry in factorization.entries() {
            let p = entry.prime.to_u64().ok_or_else(|| {
                SearchError::InvalidSignature(format!(
                    "prime {} exceeds the machine-word range",
                    entry.prime
                ))
            })?;
            entries.push((p, entry.exponent));
        }
        Ok(CandidateSignature::from_entries_unchecked(entries))
    }
}

/// One frontier node: a partial signature plus the state needed to decide
/// pruning and extension without recomputation.
///
/// `forced` holds the primes that must divide any completion of this
/// signature and are not yet in it (from the target denominator, the
/// require-5 filter, and sigma forcing of committed entries).
/// `prime_cursor` is the smallest prime an extension may use; signatures
/// grow in ascending prime order, so everything below it is unreachable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchNode {
    pub signature: CandidateSignature,
    pub current_abundancy: ExactRatio,
    pub forced: BTreeSet<BigUint>,
    pub slots_remaining: u32,
    pub prime_cursor: u64,
}

impl SearchNode {
    /// The empty signature under `config`: abundancy 1, full slot budget,
    /// cursor at 2, forced set seeded from the target denominator (and 5
    /// when the require-5 filter is on).
    pub fn root(config: &SearchConfig) -> Result<Self, SearchError> {
        config.validate()?;
        Ok(Self::build(CandidateSignature::empty(), config))
    }

    /// Reconstructs the node for an existing partial signature, validating
    /// it against the config bounds and filters.
    pub fn from_signature(
        signature: &CandidateSignature,
        config: &SearchConfig,
    ) -> Result<Self, SearchError> {
        config.validate()?;
        let invalid = |msg: String| Err(SearchError::InvalidSignature(msg));
        if signature.entries.len() > config.max_distinct_primes as usize {
            return invalid(format!(
                "{signature} has more than {} distinct primes",
                config.max_distinct_primes
            ));
        }
        for &(p, e) in &signature.entries {
            if !config.admits_prime(p) {
                return invalid(format!("prime {p} not admitted by the configuration"));
            }
            if !config.admits_exponent(e) {
                return invalid(format!(
                    "exponent {e} of {p} not admitted by the configuration"
                ));
            }
        }
        Ok(Self::build(signature.clone(), config))
    }

    fn build(signature: CandidateSignature, config: &SearchConfig) -> Self {
        let current_abundancy = signature.abundancy();
        let mut forced = forcing_set(&signature, &config.target);
        if config.filters.require_five && !signature.contains_prime(5) {
            forced.insert(BigUint::from(5u32));
        }
        let prime_cursor = match signature.entries.last() {
            Some(&(p, _)) => next_prime_after(p),
            None => 2,
        };
        let slots_remaining = config.max_distinct_primes - signature.entries.len() as u32;
        SearchNode {
            signature,
            current_abundancy,
            forced,
            slots_remaining,
            prime_cursor,
        }
    }
}

/// Returns the primes every completion of `node` must contain: the primes
/// of the target denominator plus, for each committed `p^e`, the primes of
/// `sigma(p^e)` not dividing the target numerator. Primes already in the
/// signature are omitted.
///
/// `sigma(p^e)` is factored by trial division below 10^6 plus primality
/// certification of the cofactor; prime factors hiding in a composite
/// cofactor beyond that effort are not reported, which under-approximates
/// the true forced set but never wrongly forces a prime.
pub fn forced_primes(node: &SearchNode, target: &ExactRatio) -> BTreeSet<BigUint> {
    forcing_set(&node.signature, target)
}

fn forcing_set(signature: &CandidateSignature, target: &ExactRatio) -> BTreeSet<BigUint> {
    let numerator = target
        .numerator()
        .to_biguint()
        .expect("target exceeds 1, so its numerator is positive");
    let denominator = target
        .denominator()
        .to_biguint()
        .expect("denominators are normalized positive");
    let mut forced = bounded_prime_factors(&denominator);
    for &(p, e) in &signature.entries {
        let sigma = sigma_prime_power(&BigUint::from(p), e);
        for q in bounded_prime_factors(&sigma) {
            if !(&numerator % &q).is_zero() {
                forced.insert(q);
            }
        }
    }
    forced.retain(|q| {
        q.to_u64()
            .map_or(true, |qv| !signature.contains_prime(qv))
    });
    forced
}

/// Prime factors of `n` found by trial division up to the forcing bound,
/// plus the cofactor when it certifies prime.
fn bounded_prime_factors(n: &BigUint) -> BTreeSet<BigUint> {
    let mut remaining = n.clone();
    let mut factors = BTreeMap::new();
    trial_divide_big(&mut remaining, &mut factors, FORCING_TRIAL_BOUND);
    let mut primes: BTreeSet<BigUint> = factors.into_keys().collect();
    if !remaining.is_one() && is_certified_prime(&remaining) == Ok(true) {
        primes.insert(remaining);
    }
    primes
}

fn next_prime_after(p: u64) -> u64 {
    let mut q = p + 1;
    while !is_prime_u64(q) {
        q += 1;
    }
    q
}

/// Why a node was cut, or `Keep` if it must be extended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneDecision {
    Keep,
    Overshoot,
    Cap,
    ForcedConflict,
}

/// Classifies a node against the three prune rules, in order: overshoot,
/// cap, forced conflict.
///
/// A node exactly on target is overshoot-pruned only when an admissible
/// extension exists (any extension strictly increases the abundancy);
/// with no extension it is kept as a plain leaf. The engine records
/// exact hits as candidates before consulting this classification.
pub fn prune(node: &SearchNode, config: &SearchConfig) -> PruneDecision {
    match node.current_abundancy.cmp(&config.target) {
        std::cmp::Ordering::Greater => return PruneDecision::Overshoot,
        std::cmp::Ordering::Equal => {
            return if has_admissible_extension(node, config) {
                PruneDecision::Overshoot
            } else {
                PruneDecision::Keep
            };
        }
        std::cmp::Ordering::Less => {}
    }

    // Cap: the best attainable abundancy multiplies in q/(q-1) for the
    // slots_remaining smallest admissible primes at or past the cursor.
    // That bound is strict, so reaching the target exactly requires
    // strictly exceeding it here; equality prunes.
    let mut cap = node.current_abundancy.clone();
    for q in admissible_primes_from(node.prime_cursor, config).take(node.slots_remaining as usize)
    {
        cap = cap * ExactRatio::new(q, q - 1).expect("q >= 2");
    }
    if cap <= config.target {
        return PruneDecision::Cap;
    }

    if node.forced.len() > node.slots_remaining as usize {
        return PruneDecision::ForcedConflict;
    }
    let cursor = BigUint::from(node.prime_cursor);
    let limit = BigUint::from(config.prime_limit);
    let three = BigUint::from(3u32);
    for f in &node.forced {
        let unreachable = *f < cursor || *f > limit;
        let excluded = config.filters.exclude_three && *f == three;
        if unreachable || excluded {
            return PruneDecision::ForcedConflict;
        }
    }

    PruneDecision::Keep
}

fn has_admissible_extension(node: &SearchNode, config: &SearchConfig) -> bool {
    node.slots_remaining > 0
        && admissible_primes_from(node.prime_cursor, config)
            .next()
            .is_some()
}

fn admissible_primes_from<'a>(
    start: u64,
    config: &'a SearchConfig,
) -> impl Iterator<Item = u64> + 'a {
    (start..=config.prime_limit).filter(move |&q| is_prime_u64(q) && config.admits_prime(q))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneCounts {
    pub overshoot: u64,
    pub cap: u64,
    pub forced_conflict: u64,
}

/// Result of a finished (or interrupted) run. `candidates_found` is in
/// canonical signature order; `exhausted` is true only when the frontier
/// emptied, i.e. every signature within bounds was either visited or
/// soundly pruned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub candidates_found: Vec<CandidateSignature>,
    pub nodes_expanded: u64,
    pub prune_counts: PruneCounts,
    pub exhausted: bool,
    pub bounds_used: SearchConfig,
}

/// A running search: configuration, explicit depth-first stack, and
/// counters. Persistable at any node boundary via [`save_checkpoint`].
#[derive(Debug)]
pub struct SearchState {
    config: SearchConfig,
    target_num: BigUint,
    base_forced: BTreeSet<BigUint>,
    primes: Vec<u64>,
    stack: Vec<SearchNode>,
    candidates: Vec<CandidateSignature>,
    prune_counts: PruneCounts,
    nodes_expanded: u64,
    forcing_cache: HashMap<(u64, u32), BTreeSet<BigUint>>,
}

impl SearchState {
    pub fn new(config: SearchConfig) -> Result<Self, SearchError> {
        let root = SearchNode::root(&config)?;
        let target_num = config
            .target
            .numerator()
            .to_biguint()
            .expect("target exceeds 1, so its numerator is positive");
        let mut base_forced = bounded_prime_factors(
            &config
                .target
                .denominator()
                .to_biguint()
                .expect("denominators are normalized positive"),
        );
        if config.filters.require_five {
            base_forced.insert(BigUint::from(5u32));
        }
        let primes = primes_up_to(config.prime_limit);
        Ok(SearchState {
            config,
            target_num,
            base_forced,
            primes,
            stack: vec![root],
            candidates: Vec::new(),
            prune_counts: PruneCounts::default(),
            nodes_expanded: 0,
            forcing_cache: HashMap::new(),
        })
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn finished(&self) -> bool {
        self.stack.is_empty()
    }

    pub fn nodes_expanded(&self) -> u64 {
        self.nodes_expanded
    }

    /// Takes one node off the frontier, records it if it hits the target,
    /// prunes or expands it. Returns false once the frontier is empty.
    pub fn step(&mut self) -> bool {
        let Some(node) = self.stack.pop() else {
            return false;
        };
        self.nodes_expanded += 1;

        if node.current_abundancy == self.config.target {
            let recordable = !self.config.filters.require_five || node.signature.contains_prime(5);
            if recordable {
                self.candidates.push(node.signature.completed());
            }
        }

        match prune(&node, &self.config) {
            PruneDecision::Overshoot => self.prune_counts.overshoot += 1,
            PruneDecision::Cap => self.prune_counts.cap += 1,
            PruneDecision::ForcedConflict => self.prune_counts.forced_conflict += 1,
            PruneDecision::Keep => self.expand(&node),
        }
        true
    }

    /// Pushes all children of `node` in reverse, so pops ascend by prime
    /// and then exponent; the DFS visit order is therefore lexicographic
    /// in the signature path and independent of anything but the config.
    fn expand(&mut self, node: &SearchNode) {
        if node.slots_remaining == 0 {
            return;
        }
        // No child may skip past an unmet forced prime: signatures grow in
        // ascending prime order, so the smallest forced prime caps the
        // range. Pruning already certified every forced prime reachable.
        let mut high = self.config.prime_limit;
        if let Some(f) = node.forced.iter().next() {
            high = high.min(
                f.to_u64()
                    .expect("reachable forced primes fit the prime limit"),
            );
        }
        let low = self.primes.partition_point(|&p| p < node.prime_cursor);
        let high = self.primes.partition_point(|&p| p <= high);
        let exponents: Vec<u32> = (1..=self.config.max_exponent)
            .filter(|&e| self.config.admits_exponent(e))
            .collect();
        for i in (low..high).rev() {
            let p = self.primes[i];
            if !self.config.admits_prime(p) {
                continue;
            }
            for &e in exponents.iter().rev() {
                let mut entries = node.signature.entries.clone();
                entries.push((p, e));
                let child = self.make_node(entries);
                self.stack.push(child);
            }
        }
    }

    /// Builds a frontier node from scratch (signature, exact abundancy,
    /// forced set, cursor, slots). Checkpoint reload rebuilds nodes the
    /// same way, so persisted and in-memory frontiers cannot diverge.
    fn make_node(&mut self, entries: Vec<(u64, u32)>) -> SearchNode {
        let mut current_abundancy = ExactRatio::one();
        let mut forced = self.base_forced.clone();
        for &(p, e) in &entries {
            let prime = BigUint::from(p);
            let sigma = sigma_prime_power(&prime, e);
            current_abundancy = current_abundancy
                * ExactRatio::from_unsigned(sigma, prime.pow(e)).expect("prime power is nonzero");
            forced.extend(self.sigma_forced(p, e).iter().cloned());
        }
        forced.retain(|q| {
            q.to_u64()
                .map_or(true, |qv| !entries.iter().any(|&(p, _)| p == qv))
        });
        let prime_cursor = match entries.last() {
            Some(&(p, _)) => next_prime_after(p),
            None => 2,
        };
        let slots_remaining = self.config.max_distinct_primes - entries.len() as u32;
        SearchNode {
            signature: CandidateSignature::from_entries_unchecked(entries),
            current_abundancy,
            forced,
            slots_remaining,
            prime_cursor,
        }
    }

    fn sigma_forced(&mut self, p: u64, e: u32) -> &BTreeSet<BigUint> {
        let target_num = &self.target_num;
        self.forcing_cache.entry((p, e)).or_insert_with(|| {
            let sigma = sigma_prime_power(&BigUint::from(p), e);
            bounded_prime_factors(&sigma)
                .into_iter()
                .filter(|q| !(target_num % q).is_zero())
                .collect()
        })
    }

    /// Snapshot of the run so far. Candidates are reported in canonical
    /// signature order regardless of discovery order.
    pub fn outcome(&self) -> SearchOutcome {
        let mut candidates_found = self.candidates.clone();
        candidates_found.sort();
        SearchOutcome {
            candidates_found,
            nodes_expanded: self.nodes_expanded,
            prune_counts: self.prune_counts,
            exhausted: self.finished(),
            bounds_used: self.config.clone(),
        }
    }
}

/// Runs a search to exhaustion.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let mut state = SearchState::new(config.clone())?;
    while state.step() {}
    Ok(state.outcome())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_config(target: ExactRatio, k: u32, max_exponent: u32, prime_limit: u64) -> SearchConfig {
        SearchConfig {
            target,
            max_distinct_primes: k,
            max_exponent,
            prime_limit,
            checkpoint_interval: 100,
            filters: StructuralFilters::default(),
        }
    }

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    fn sig(entries: &[(u64, u32)]) -> CandidateSignature {
        CandidateSignature::new(entries.to_vec()).unwrap()
    }

    fn forced_u64(node: &SearchNode, target: &ExactRatio) -> Vec<u64> {
        forced_primes(node, target)
            .into_iter()
            .map(|q| q.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn forcing_on_known_signatures() {
        let config = plain_config(ratio(9, 5), 5, 20, 1000);
        let target = config.target.clone();

        let empty = SearchNode::from_signature(&sig(&[]), &config).unwrap();
        assert_eq!(forced_u64(&empty, &target), [5]);

        // sigma(5^2) = 31 and 31 does not divide 9.
        let five = SearchNode::from_signature(&sig(&[(5, 2)]), &config).unwrap();
        assert_eq!(forced_u64(&five, &target), [31]);

        // sigma(3^2) = 13, sigma(5^2) = 31; 5 itself is already present.
        let both = SearchNode::from_signature(&sig(&[(3, 2), (5, 2)]), &config).unwrap();
        assert_eq!(forced_u64(&both, &target), [13, 31]);
    }

    #[test]
    fn forcing_skips_primes_dividing_the_numerator() {
        // sigma(2) = 3 divides the numerator 9, so nothing is forced
        // beyond the denominator prime 5.
        let config = plain_config(ratio(9, 5), 3, 4, 50);
        let node = SearchNode::from_signature(&sig(&[(2, 1)]), &config).unwrap();
        assert_eq!(forced_u64(&node, &config.target), [5]);

        // For target 2, sigma(2) = 3 does not divide 2: forced.
        let config = plain_config(ratio(2, 1), 3, 4, 50);
        let node = SearchNode::from_signature(&sig(&[(2, 1)]), &config).unwrap();
        assert_eq!(forced_u64(&node, &config.target), [3]);
    }

    #[test]
    fn prune_overshoot_on_a_complete_five_prime_square() {
        let config = SearchConfig::friend_of_10();
        let node = SearchNode::from_signature(
            &sig(&[(5, 2), (7, 2), (11, 2), (13, 2), (17, 2)]),
            &config,
        )
        .unwrap();
        assert_eq!(node.slots_remaining, 0);
        assert!(node.current_abundancy > config.target);
        assert_eq!(prune(&node, &config), PruneDecision::Overshoot);
    }

    #[test]
    fn prune_cap_on_a_five_prime_square_with_29() {
        // cap({5,7,11,13,29}) = 4147/2304 < 9/5, so no exponent choice on
        // these primes reaches the target.
        let config = SearchConfig::friend_of_10();
        let node = SearchNode::from_signature(
            &sig(&[(5, 2), (7, 2), (11, 2), (13, 2), (29, 2)]),
            &config,
        )
        .unwrap();
        assert!(node.current_abundancy < config.target);
        assert_eq!(prune(&node, &config), PruneDecision::Cap);

        // The same shape with higher exponents still dies at the cap.
        let node = SearchNode::from_signature(
            &sig(&[(5, 4), (7, 6), (11, 2), (13, 4), (29, 2)]),
            &config,
        )
        .unwrap();
        assert_eq!(prune(&node, &config), PruneDecision::Cap);
    }

    #[test]
    fn prune_keeps_the_root() {
        let config = SearchConfig::friend_of_10();
        let root = SearchNode::root(&config).unwrap();
        assert_eq!(root.prime_cursor, 2);
        assert_eq!(root.slots_remaining, 5);
        assert_eq!(prune(&root, &config), PruneDecision::Keep);
    }

    #[test]
    fn prune_conflict_when_forced_primes_outnumber_slots() {
        // sigma(2^2) = 7 and sigma(5^2) = 31 are both forced for target
        // 5/2, but only one slot remains.
        let config = plain_config(ratio(5, 2), 3, 20, 1000);
        let node = SearchNode::from_signature(&sig(&[(2, 2), (5, 2)]), &config).unwrap();
        assert_eq!(forced_u64(&node, &config.target), [7, 31]);
        assert_eq!(node.slots_remaining, 1);
        assert_eq!(prune(&node, &config), PruneDecision::ForcedConflict);
    }

    #[test]
    fn prune_conflict_when_a_forced_prime_is_behind_the_cursor() {
        // Target 13/10 forces the denominator prime 2, which signatures
        // starting at 5 have already passed.
        let config = plain_config(ratio(13, 10), 6, 20, 1000);
        let node = SearchNode::from_signature(&sig(&[(5, 2), (29, 2)]), &config).unwrap();
        assert!(node.forced.contains(&BigUint::from(2u32)));
        assert_eq!(node.prime_cursor, 31);
        assert_eq!(prune(&node, &config), PruneDecision::ForcedConflict);
    }

    #[test]
    fn prune_conflict_when_a_forced_prime_exceeds_the_limit() {
        // sigma(5^4) = 781 = 11 * 71 forces 71 past a prime limit of 50.
        let config = plain_config(ratio(9, 5), 5, 20, 50);
        let node = SearchNode::from_signature(&sig(&[(5, 4)]), &config).unwrap();
        assert!(node.forced.contains(&BigUint::from(71u32)));
        assert!(node.current_abundancy < config.target);
        assert_eq!(prune(&node, &config), PruneDecision::ForcedConflict);
    }

    #[test]
    fn cap_equality_prunes() {
        // Only the prime 2 is available and I(2^e) increases to 2 without
        // reaching it, so the root cap product equals the target exactly
        // and the whole search dies at the root.
        let config = plain_config(ratio(2, 1), 1, 20, 2);
        let outcome = run_search(&config).unwrap();
        assert_eq!(outcome.nodes_expanded, 1);
        assert_eq!(outcome.prune_counts.cap, 1);
        assert!(outcome.candidates_found.is_empty());
        assert!(outcome.exhausted);
    }

    #[test]
    fn finds_the_three_perfect_numbers_below_the_bounds() {
        let config = plain_config(ratio(2, 1), 2, 4, 31);
        let outcome = run_search(&config).unwrap();
        let found: Vec<String> = outcome
            .candidates_found
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(found, ["2^1 * 3^1", "2^2 * 7^1", "2^4 * 31^1"]);
        assert!(outcome.exhausted);
        assert!(outcome.candidates_found.iter().all(|c| c.is_complete()));
        assert!(outcome
            .candidates_found
            .iter()
            .all(|c| c.abundancy() == config.target));
    }

    #[test]
    fn finds_ten_when_filters_are_off() {
        let config = plain_config(ratio(9, 5), 2, 1, 5);
        let outcome = run_search(&config).unwrap();
        let found: Vec<String> = outcome
            .candidates_found
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(found, ["2^1 * 5^1"]);
    }

    #[test]
    fn require_five_suppresses_candidates_without_5() {
        // The perfect numbers 6, 28, 496 all lack the prime 5.
        let mut config = plain_config(ratio(2, 1), 2, 4, 31);
        config.filters.require_five = true;
        let outcome = run_search(&config).unwrap();
        assert!(outcome.candidates_found.is_empty());
        assert!(outcome.exhausted);
    }

    #[test]
    fn friend_preset_has_no_candidates_at_reduced_bounds() {
        let mut config = SearchConfig::friend_of_10();
        config.prime_limit = 200;
        config.max_exponent = 10;
        let outcome = run_search(&config).unwrap();
        assert!(outcome.candidates_found.is_empty());
        assert!(outcome.exhausted);
        assert!(outcome.prune_counts.overshoot > 0);
        assert!(outcome.prune_counts.cap > 0);
        assert!(outcome.prune_counts.forced_conflict > 0);
    }

    #[test]
    fn identical_configs_give_identical_outcomes() {
        let config = plain_config(ratio(2, 1), 3, 4, 50);
        let first = run_search(&config).unwrap();
        let second = run_search(&config).unwrap();
        assert_eq!(first, second);
        assert!(first.nodes_expanded > 0);
    }

    #[test]
    fn signature_strings_round_trip() {
        for text in ["1", "2^1 * 5^1", "5^2 * 7^4 * 11^2"] {
            let parsed: CandidateSignature = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text);
        }
        assert!("4^2".parse::<CandidateSignature>().is_err());
        assert!("7^2 * 5^2".parse::<CandidateSignature>().is_err());
    }

    #[test]
    fn from_signature_rejects_out_of_bounds_entries() {
        let config = SearchConfig::friend_of_10();
        // Prime above the limit.
        assert!(SearchNode::from_signature(&sig(&[(1009, 2)]), &config).is_err());
        // Odd exponent under the square-only filter.
        assert!(SearchNode::from_signature(&sig(&[(5, 3)]), &config).is_err());
        // The excluded prime 3.
        assert!(SearchNode::from_signature(&sig(&[(3, 2)]), &config).is_err());
        // Too many distinct primes.
        let config = plain_config(ratio(2, 1), 1, 4, 50);
        assert!(SearchNode::from_signature(&sig(&[(2, 1), (3, 1)]), &config).is_err());
    }

    #[test]
    fn config_validation_rejects_degenerate_bounds() {
        let mut config = SearchConfig::friend_of_10();
        config.target = ratio(1, 1);
        assert!(matches!(
            SearchState::new(config),
            Err(SearchError::InvalidConfig(_))
        ));

        let mut config = SearchConfig::friend_of_10();
        config.max_exponent = 1; // square-only needs at least 2
        assert!(SearchState::new(config).is_err());

        let mut config = SearchConfig::friend_of_10();
        config.checkpoint_interval = 0;
        assert!(SearchState::new(config).is_err());

        let mut config = SearchConfig::friend_of_10();
        config.max_distinct_primes = 0;
        assert!(SearchState::new(config).is_err());
    }
}
