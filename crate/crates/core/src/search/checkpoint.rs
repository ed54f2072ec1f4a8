//! Checkpoint persistence for a running search.
//!
//! The format is line-delimited text, version-stamped and config-stamped:
//!
//! ```text
//! abundancy-search-checkpoint 1
//! config target=9/5 max-distinct-primes=5 ... require-five=true
//! nodes-expanded 42
//! pruned overshoot=7 cap=3 forced-conflict=1
//! candidate 2^1 * 5^1
//! node 5^2 * 7^2
//! node 5^4
//! end
//! ```
//!
//! Only signatures are persisted; abundancy, forced sets, cursor, and slot
//! counts are rebuilt on load by the same constructor the engine uses, so
//! a resumed run cannot diverge from an uninterrupted one. Saves go
//! through a sibling temp file and an atomic rename; a crash mid-save
//! leaves the previous checkpoint intact, and the `end` sentinel rejects
//! truncated files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{
    CandidateSignature, SearchConfig, SearchError, SearchNode, SearchOutcome, SearchState,
    StructuralFilters,
};

const VERSION_LINE: &str = "abundancy-search-checkpoint 1";
const VERSION_PREFIX: &str = "abundancy-search-checkpoint ";

/// Persists `state` to `path` atomically. The state must be between
/// steps, which every public entry point guarantees.
pub fn save_checkpoint(state: &SearchState, path: &Path) -> Result<(), SearchError> {
    let mut text = String::new();
    writeln!(text, "{VERSION_LINE}").expect("string writes cannot fail");
    writeln!(text, "{}", render_config(&state.config)).expect("string writes cannot fail");
    writeln!(text, "nodes-expanded {}", state.nodes_expanded).expect("string writes cannot fail");
    writeln!(
        text,
        "pruned overshoot={} cap={} forced-conflict={}",
        state.prune_counts.overshoot, state.prune_counts.cap, state.prune_counts.forced_conflict
    )
    .expect("string writes cannot fail");
    for candidate in &state.candidates {
        writeln!(text, "candidate {candidate}").expect("string writes cannot fail");
    }
    for node in &state.stack {
        writeln!(text, "node {}", node.signature).expect("string writes cannot fail");
    }
    writeln!(text, "end").expect("string writes cannot fail");

    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Loads a checkpoint written by [`save_checkpoint`], verifying both the
/// format version and that it was produced under exactly `config`.
pub fn load_checkpoint(path: &Path, config: &SearchConfig) -> Result<SearchState, SearchError> {
    let text = fs::read_to_string(path)?;
    let malformed = |msg: String| SearchError::CheckpointMalformed(msg);
    let mut lines = text.lines();

    let version = lines
        .next()
        .ok_or_else(|| malformed("empty checkpoint file".to_owned()))?;
    if version != VERSION_LINE {
        if let Some(found) = version.strip_prefix(VERSION_PREFIX) {
            return Err(SearchError::CheckpointVersionMismatch {
                found: found.to_owned(),
            });
        }
        return Err(malformed(format!("missing version header, got {version:?}")));
    }

    let config_line = lines
        .next()
        .ok_or_else(|| malformed("missing config line".to_owned()))?;
    let stored = parse_config(config_line)?;
    if stored != *config {
        return Err(SearchError::CheckpointConfigMismatch(format!(
            "checkpoint has [{}], this run has [{}]",
            render_config(&stored),
            render_config(config)
        )));
    }

    let nodes_line = lines
        .next()
        .ok_or_else(|| malformed("missing nodes-expanded line".to_owned()))?;
    let nodes_expanded = nodes_line
        .strip_prefix("nodes-expanded ")
        .and_then(|v| v.parse::<u64>().ok())
        .ok_or_else(|| malformed(format!("bad nodes-expanded line {nodes_line:?}")))?;

    let pruned_line = lines
        .next()
        .ok_or_else(|| malformed("missing pruned line".to_owned()))?;
    let mut prune_counts = super::PruneCounts::default();
    let pruned_fields = pruned_line
        .strip_prefix("pruned ")
        .ok_or_else(|| malformed(format!("bad pruned line {pruned_line:?}")))?;
    for field in pruned_fields.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| malformed(format!("bad pruned field {field:?}")))?;
        let value = value
            .parse::<u64>()
            .map_err(|_| malformed(format!("bad pruned count {field:?}")))?;
        match key {
            "overshoot" => prune_counts.overshoot = value,
            "cap" => prune_counts.cap = value,
            "forced-conflict" => prune_counts.forced_conflict = value,
            other => return Err(malformed(format!("unknown pruned field {other:?}"))),
        }
    }

    let mut candidates = Vec::new();
    let mut stack = Vec::new();
    let mut saw_end = false;
    for line in lines {
        if saw_end {
            return Err(malformed(format!("content after end sentinel: {line:?}")));
        }
        if line == "end" {
            saw_end = true;
        } else if let Some(sig) = line.strip_prefix("candidate ") {
            let parsed: CandidateSignature = sig
                .parse()
                .map_err(|e| malformed(format!("bad candidate line {sig:?}: {e}")))?;
            candidates.push(parsed.completed());
        } else if let Some(sig) = line.strip_prefix("node ") {
            let parsed: CandidateSignature = sig
                .parse()
                .map_err(|e| malformed(format!("bad node line {sig:?}: {e}")))?;
            let node = SearchNode::from_signature(&parsed, config)
                .map_err(|e| malformed(format!("node {sig:?} invalid under config: {e}")))?;
            stack.push(node);
        } else {
            return Err(malformed(format!("unrecognized line {line:?}")));
        }
    }
    if !saw_end {
        return Err(malformed(
            "missing end sentinel; file is truncated".to_owned(),
        ));
    }

    let mut state = SearchState::new(config.clone())?;
    state.stack = stack;
    state.candidates = candidates;
    state.prune_counts = prune_counts;
    state.nodes_expanded = nodes_expanded;
    Ok(state)
}

/// Runs to exhaustion, persisting to `path` every `checkpoint_interval`
/// nodes. If `path` already holds a checkpoint for this exact config, the
/// run resumes from it; the final (finished) checkpoint is left in place.
pub fn run_search_with_checkpoint(
    config: &SearchConfig,
    path: &Path,
) -> Result<SearchOutcome, SearchError> {
    let mut state = if path.exists() {
        load_checkpoint(path, config)?
    } else {
        SearchState::new(config.clone())?
    };
    loop {
        if state.finished() {
            save_checkpoint(&state, path)?;
            return Ok(state.outcome());
        }
        if state.nodes_expanded % state.config.checkpoint_interval == 0 {
            save_checkpoint(&state, path)?;
        }
        state.step();
    }
}

fn render_config(config: &SearchConfig) -> String {
    format!(
        "config target={} max-distinct-primes={} max-exponent={} prime-limit={} \
         checkpoint-interval={} square-only={} exclude-three={} require-five={}",
        config.target,
        config.max_distinct_primes,
        config.max_exponent,
        config.prime_limit,
        config.checkpoint_interval,
        config.filters.square_only,
        config.filters.exclude_three,
        config.filters.require_five
    )
}

fn parse_config(line: &str) -> Result<SearchConfig, SearchError> {
    let malformed = |msg: String| SearchError::CheckpointMalformed(msg);
    let fields = line
        .strip_prefix("config ")
        .ok_or_else(|| malformed(format!("bad config line {line:?}")))?;
    let mut target = None;
    let mut max_distinct_primes = None;
    let mut max_exponent = None;
    let mut prime_limit = None;
    let mut checkpoint_interval = None;
    let mut filters = StructuralFilters::default();
    let mut seen_flags = 0;
    for field in fields.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| malformed(format!("bad config field {field:?}")))?;
        let parse_bool = || match value {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(malformed(format!("bad boolean in {field:?}"))),
        };
        match key {
            "target" => {
                target = Some(
                    value
                        .parse()
                        .map_err(|e| malformed(format!("bad target {value:?}: {e}")))?,
                )
            }
            "max-distinct-primes" => {
                max_distinct_primes = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| malformed(format!("bad count in {field:?}")))?,
                )
            }
            "max-exponent" => {
                max_exponent = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| malformed(format!("bad count in {field:?}")))?,
                )
            }
            "prime-limit" => {
                prime_limit = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| malformed(format!("bad count in {field:?}")))?,
                )
            }
            "checkpoint-interval" => {
                checkpoint_interval = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| malformed(format!("bad count in {field:?}")))?,
                )
            }
            "square-only" => {
                filters.square_only = parse_bool()?;
                seen_flags += 1;
            }
            "exclude-three" => {
                filters.exclude_three = parse_bool()?;
                seen_flags += 1;
            }
            "require-five" => {
                filters.require_five = parse_bool()?;
                seen_flags += 1;
            }
            other => return Err(malformed(format!("unknown config key {other:?}"))),
        }
    }
    let (Some(target), Some(max_distinct_primes), Some(max_exponent), Some(prime_limit), Some(checkpoint_interval)) =
        (target, max_distinct_primes, max_exponent, prime_limit, checkpoint_interval)
    else {
        return Err(malformed(format!("config line missing fields: {line:?}")));
    };
    if seen_flags != 3 {
        return Err(malformed(format!("config line missing filter flags: {line:?}")));
    }
    Ok(SearchConfig {
        target,
        max_distinct_primes,
        max_exponent,
        prime_limit,
        checkpoint_interval,
        filters,
    })
}
