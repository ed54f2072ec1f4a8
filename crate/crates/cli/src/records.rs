//! Machine-readable output: one JSON record per result line, fields in
//! fixed order, exact values carried as "num/den" or factorization
//! strings so nothing is rounded. Identical invocations produce
//! byte-identical lines.

use serde::Serialize;

pub fn emit<T: Serialize>(record: &T) {
    println!("{}", serde_json::to_string(record).expect("records are plain data"));
}

#[derive(Serialize)]
pub struct ComputeRecord {
    pub command: &'static str,
    pub n: String,
    pub factorization: String,
    pub sigma: String,
    pub abundancy: String,
    pub decimal: String,
}

#[derive(Serialize)]
pub struct CheckRecord {
    pub command: &'static str,
    pub candidate: String,
    pub check: &'static str,
    pub required: bool,
    pub observed: bool,
    pub witness: String,
}

#[derive(Serialize)]
pub struct VerdictRecord {
    pub command: &'static str,
    pub candidate: String,
    pub verdict: String,
}

#[derive(Serialize)]
pub struct LedgerRecord {
    pub command: &'static str,
    pub label: &'static str,
    pub holds: bool,
    pub claim: &'static str,
    pub detail: String,
}

#[derive(Serialize)]
pub struct SearchRecord {
    pub command: &'static str,
    pub target: String,
    pub max_primes: u32,
    pub max_exponent: u32,
    pub prime_limit: u64,
    pub square_only: bool,
    pub exclude_three: bool,
    pub require_five: bool,
    pub exhausted: bool,
    pub nodes_expanded: u64,
    pub pruned_overshoot: u64,
    pub pruned_cap: u64,
    pub pruned_forced_conflict: u64,
    pub candidates: Vec<String>,
}

#[derive(Serialize)]
pub struct ClassRecord {
    pub command: &'static str,
    pub limit: u64,
    pub abundancy: String,
    pub members: Vec<u64>,
}

#[derive(Serialize)]
pub struct FriendsOfRecord {
    pub command: &'static str,
    pub of: u64,
    pub limit: u64,
    pub friends: Vec<u64>,
}

#[derive(Serialize)]
pub struct DensityRecord {
    pub command: &'static str,
    pub x: String,
    pub limit: u64,
    pub count: u64,
    pub ratio: String,
    pub decimal: String,
}

#[derive(Serialize)]
pub struct ProximityRecord {
    pub command: &'static str,
    pub m: u64,
    pub t: u32,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub growing: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_part: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
}

#[derive(Serialize)]
pub struct SequenceTermRecord {
    pub command: &'static str,
    pub p: u64,
    pub c: u64,
    pub k: u32,
    pub value: String,
    pub abundancy: String,
    pub decimal: String,
    pub gap: String,
    pub gap_decimal: String,
}

#[derive(Serialize)]
pub struct SequenceSummaryRecord {
    pub command: &'static str,
    pub p: u64,
    pub c: u64,
    pub terms: u32,
    pub target: String,
    pub target_decimal: String,
    pub proximity: usize,
}
