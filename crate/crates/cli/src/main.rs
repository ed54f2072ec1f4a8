//! Batch command-line frontend over the abundancy library: exact
//! divisor-sum computations, structural friend-of-10 verification, the
//! proof ledger, signature search, and the range-scan experiments.
//!
//! Exit codes: 0 success, 1 usage error (bad flags, malformed numbers,
//! invalid bounds), 2 computation aborted (factorization effort cap,
//! checkpoint or other I/O), 3 ledger check failed.

mod config;
mod records;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use abundancy::exactmath::{factorize, ExactRatio};
use abundancy::experiments::{SigmaSieve, MAX_SIEVE_LIMIT};
use abundancy::sequences::{geometric_theoretical_friend, search_theoretical_friend, FamilyBounds, SequencesError};
use abundancy::theorem::{check_friend_of_10, replicate_proof_ledger};
use abundancy::{
    run_search, run_search_with_checkpoint, SearchConfig, SearchOutcome, StructuralFilters,
};

use config::FileConfig;
use records::*;

#[derive(Parser)]
#[command(
    name = "abundancy",
    version,
    about = "Exact calculations around the abundancy index I(n) = sigma(n)/n"
)]
struct Cli {
    /// Output mode; records mode prints one JSON object per result line.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// key=value file supplying defaults for long flags; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Factor n and print sigma(n) and I(n), exact and approximate.
    Compute {
        /// Positive integer, any number of digits.
        n: String,
    },
    /// Run every structural friend-of-10 check against n.
    Verify {
        /// Positive integer, any number of digits.
        n: String,
    },
    /// Replay the finite verifications behind the structural theorem.
    Ledger,
    /// Enumerate prime signatures whose abundancy hits a target exactly.
    Search(SearchArgs),
    /// List friend classes below a limit, or the friends of one integer.
    Friends {
        /// Scan bound (flag or config key "limit").
        #[arg(long)]
        limit: Option<u64>,
        /// Report friends of this integer instead of whole classes.
        #[arg(long)]
        of: Option<u64>,
    },
    /// Count n below a limit with I(n) strictly above a threshold.
    Density {
        /// Threshold as a fraction u/v (flag or config key "x").
        #[arg(long)]
        x: Option<String>,
        /// Scan bound (flag or config key "limit").
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Search for a geometric family converging to I(m) within t primes.
    Proximity {
        /// Target integer (flag or config key "m").
        #[arg(long)]
        m: Option<u64>,
        /// Largest allowed prime-support size (flag or config key "t").
        #[arg(long)]
        t: Option<u32>,
    },
    /// Print the family p^k * c with exact gaps to its limiting value.
    Sequence {
        /// Growing prime (flag or config key "p").
        #[arg(long)]
        p: Option<u64>,
        /// Fixed cofactor, coprime to p (flag or config key "c").
        #[arg(long)]
        c: Option<u64>,
        /// How many terms to print, starting at k = 0.
        #[arg(long)]
        terms: Option<u32>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Target abundancy as a fraction u/v, strictly above 1.
    #[arg(long)]
    target: Option<String>,
    /// Distinct primes allowed in a candidate, forced ones included.
    #[arg(long)]
    max_primes: Option<u32>,
    /// Largest exponent tried per prime.
    #[arg(long)]
    max_exponent: Option<u32>,
    /// Largest prime admitted into a signature.
    #[arg(long)]
    prime_limit: Option<u64>,
    /// Persist resumable state here (relative paths go under
    /// $ABUNDANCY_CHECKPOINT_DIR when it is set).
    #[arg(long, value_name = "PATH")]
    checkpoint: Option<String>,
    /// Continue from the checkpoint file instead of refusing to touch it.
    #[arg(long)]
    resume: bool,
    /// Named configuration; explicit flags override its fields.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// Structural friend-of-10 hunt: target 9/5, squares only, no prime
    /// 3, prime 5 required, five distinct primes, exponents to 20,
    /// primes to 1000.
    #[value(name = "friend-of-10")]
    FriendOf10,
}

enum CliError {
    Usage(String),
    Aborted(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn aborted(err: impl std::fmt::Display) -> CliError {
    CliError::Aborted(err.to_string())
}

fn main() {
    // Die quietly when a downstream pipe closes, as any filter should,
    // instead of panicking mid-write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Aborted(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    let file = FileConfig::load(cli.config.as_deref()).map_err(usage)?;
    let format = match cli.format {
        Some(f) => f,
        None => match file.get("format") {
            Some("human") => OutputFormat::Human,
            Some("records") => OutputFormat::Records,
            Some(other) => return Err(usage(format!("config format: expected human or records, got {other:?}"))),
            None => OutputFormat::Human,
        },
    };
    match cli.command {
        Command::Compute { n } => run_compute(&n, format),
        Command::Verify { n } => run_verify(&n, format),
        Command::Ledger => run_ledger(format),
        Command::Search(args) => run_search_command(args, &file, format),
        Command::Friends { limit, of } => run_friends(limit, of, &file, format),
        Command::Density { x, limit } => run_density(x, limit, &file, format),
        Command::Proximity { m, t } => run_proximity(m, t, &file, format),
        Command::Sequence { p, c, terms } => run_sequence(p, c, terms, &file, format),
    }
}

/// Flag value if given, else the config-file entry, else none.
fn resolve<T>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
    parse: impl FnOnce(&str) -> Result<T, String>,
) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        Some(raw) => parse(raw)
            .map(Some)
            .map_err(|e| usage(format!("config key {key}: {e}"))),
        None => Ok(None),
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("missing --{flag} (or config key {flag:?})")))
}

fn parse_ratio(s: &str) -> Result<ExactRatio, String> {
    ExactRatio::from_str(s).map_err(|e| format!("invalid fraction {s:?}: {e}"))
}

fn parse_u64(s: &str) -> Result<u64, String> {
    s.parse().map_err(|e| format!("invalid integer {s:?}: {e}"))
}

fn parse_u32(s: &str) -> Result<u32, String> {
    s.parse().map_err(|e| format!("invalid integer {s:?}: {e}"))
}

fn parse_positive_biguint(s: &str) -> Result<BigUint, CliError> {
    let n = BigUint::from_str(s).map_err(|_| usage(format!("expected a decimal integer, got {s:?}")))?;
    if n == BigUint::from(0u32) {
        return Err(usage("n must be at least 1"));
    }
    Ok(n)
}

fn sieve_bound(limit: u64) -> Result<u64, CliError> {
    if (1..=MAX_SIEVE_LIMIT).contains(&limit) {
        Ok(limit)
    } else {
        Err(usage(format!(
            "--limit must be in 1..={MAX_SIEVE_LIMIT} (sieve scale), got {limit}"
        )))
    }
}

fn run_compute(n: &str, format: OutputFormat) -> Result<i32, CliError> {
    let n = parse_positive_biguint(n)?;
    let f = factorize(&n).map_err(aborted)?;
    let sigma = f.sigma();
    let abundancy = f.abundancy();
    match format {
        OutputFormat::Human => {
            println!("sigma={sigma} I={abundancy} (~{})", abundancy.to_decimal(6));
        }
        OutputFormat::Records => emit(&ComputeRecord {
            command: "compute",
            n: n.to_string(),
            factorization: f.to_string(),
            sigma: sigma.to_string(),
            abundancy: abundancy.to_string(),
            decimal: abundancy.to_decimal(6),
        }),
    }
    Ok(0)
}

fn run_verify(n: &str, format: OutputFormat) -> Result<i32, CliError> {
    let n = parse_positive_biguint(n)?;
    let report = check_friend_of_10(&n).map_err(aborted)?;
    match format {
        OutputFormat::Human => println!("{report}"),
        OutputFormat::Records => {
            let candidate = report.candidate.to_string();
            for check in &report.checks {
                emit(&CheckRecord {
                    command: "verify",
                    candidate: candidate.clone(),
                    check: check.name,
                    required: check.required,
                    observed: check.observed,
                    witness: check.witness.clone(),
                });
            }
            emit(&VerdictRecord {
                command: "verify",
                candidate,
                verdict: report.verdict.to_string(),
            });
        }
    }
    Ok(0)
}

fn run_ledger(format: OutputFormat) -> Result<i32, CliError> {
    let entries = replicate_proof_ledger();
    let holding = entries.iter().filter(|e| e.holds).count();
    match format {
        OutputFormat::Human => {
            for entry in &entries {
                let verdict = if entry.holds { "PASS" } else { "FAIL" };
                println!("{} {verdict} {} [{}]", entry.label, entry.claim, entry.detail);
            }
            println!("{holding}/{} checks hold", entries.len());
        }
        OutputFormat::Records => {
            for entry in &entries {
                emit(&LedgerRecord {
                    command: "ledger",
                    label: entry.label,
                    holds: entry.holds,
                    claim: entry.claim,
                    detail: entry.detail.clone(),
                });
            }
        }
    }
    Ok(if holding == entries.len() { 0 } else { 3 })
}

fn run_search_command(
    args: SearchArgs,
    file: &FileConfig,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let preset = match args.preset {
        Some(p) => Some(p),
        None => match file.get("preset") {
            Some("friend-of-10") => Some(Preset::FriendOf10),
            Some(other) => return Err(usage(format!("config key preset: unknown preset {other:?}"))),
            None => None,
        },
    };
    let mut config = match preset {
        Some(Preset::FriendOf10) => SearchConfig::friend_of_10(),
        None => SearchConfig {
            target: ExactRatio::new(2u32, 1u32).expect("nonzero"),
            max_distinct_primes: 3,
            max_exponent: 4,
            prime_limit: 50,
            checkpoint_interval: 1024,
            filters: StructuralFilters::default(),
        },
    };
    let target = resolve(args.target, file, "target", |s| Ok(s.to_string()))?;
    match target {
        Some(raw) => config.target = parse_ratio(&raw).map_err(usage)?,
        None if preset.is_none() => {
            return Err(usage("search needs --target u/v or --preset friend-of-10"))
        }
        None => {}
    }
    if let Some(v) = resolve(args.max_primes, file, "max-primes", parse_u32)? {
        config.max_distinct_primes = v;
    }
    if let Some(v) = resolve(args.max_exponent, file, "max-exponent", parse_u32)? {
        config.max_exponent = v;
    }
    if let Some(v) = resolve(args.prime_limit, file, "prime-limit", parse_u64)? {
        config.prime_limit = v;
    }
    let checkpoint = resolve(args.checkpoint, file, "checkpoint", |s| Ok(s.to_string()))?;

    let outcome = match checkpoint {
        None if args.resume => return Err(usage("--resume requires --checkpoint")),
        None => run_search(&config),
        Some(raw) => {
            let path = checkpoint_path(&raw);
            if path.exists() && !args.resume {
                return Err(aborted(format!(
                    "checkpoint {} already exists; pass --resume to continue it or remove the file",
                    path.display()
                )));
            }
            run_search_with_checkpoint(&config, &path)
        }
    };
    let outcome = outcome.map_err(|e| match e {
        abundancy::search::SearchError::InvalidConfig(msg) => usage(msg),
        other => aborted(other),
    })?;
    print_search_outcome(&outcome, format);
    Ok(0)
}

fn checkpoint_path(raw: &str) -> PathBuf {
    let path = Path::new(raw);
    if path.is_relative() {
        if let Ok(dir) = std::env::var("ABUNDANCY_CHECKPOINT_DIR") {
            if !dir.is_empty() {
                return Path::new(&dir).join(path);
            }
        }
    }
    path.to_path_buf()
}

fn print_search_outcome(outcome: &SearchOutcome, format: OutputFormat) {
    let config = &outcome.bounds_used;
    let candidates: Vec<String> = outcome
        .candidates_found
        .iter()
        .map(|sig| sig.to_string())
        .collect();
    match format {
        OutputFormat::Human => {
            println!(
                "target={} max-primes={} max-exponent={} prime-limit={} square-only={} exclude-three={} require-five={}",
                config.target,
                config.max_distinct_primes,
                config.max_exponent,
                config.prime_limit,
                config.filters.square_only,
                config.filters.exclude_three,
                config.filters.require_five,
            );
            println!(
                "exhausted={} nodes={} pruned overshoot={} cap={} forced-conflict={}",
                outcome.exhausted,
                outcome.nodes_expanded,
                outcome.prune_counts.overshoot,
                outcome.prune_counts.cap,
                outcome.prune_counts.forced_conflict,
            );
            println!("candidates ({}):", candidates.len());
            for candidate in &candidates {
                println!("  {candidate}");
            }
        }
        OutputFormat::Records => emit(&SearchRecord {
            command: "search",
            target: config.target.to_string(),
            max_primes: config.max_distinct_primes,
            max_exponent: config.max_exponent,
            prime_limit: config.prime_limit,
            square_only: config.filters.square_only,
            exclude_three: config.filters.exclude_three,
            require_five: config.filters.require_five,
            exhausted: outcome.exhausted,
            nodes_expanded: outcome.nodes_expanded,
            pruned_overshoot: outcome.prune_counts.overshoot,
            pruned_cap: outcome.prune_counts.cap,
            pruned_forced_conflict: outcome.prune_counts.forced_conflict,
            candidates,
        }),
    }
}

fn run_friends(
    limit: Option<u64>,
    of: Option<u64>,
    file: &FileConfig,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let limit = sieve_bound(require(resolve(limit, file, "limit", parse_u64)?, "limit")?)?;
    let of = resolve(of, file, "of", parse_u64)?;
    let sieve = SigmaSieve::new(limit);
    match of {
        Some(m) => {
            if m == 0 {
                return Err(usage("--of must be at least 1"));
            }
            let friends = sieve.friends_of(m).map_err(aborted)?;
            match format {
                OutputFormat::Human => {
                    let rendered = if friends.is_empty() {
                        "(none)".to_string()
                    } else {
                        join_u64(&friends)
                    };
                    println!("friends of {m} <= {limit}: {rendered}");
                }
                OutputFormat::Records => emit(&FriendsOfRecord {
                    command: "friends",
                    of: m,
                    limit,
                    friends,
                }),
            }
        }
        None => {
            for class in sieve.friend_classes() {
                match format {
                    OutputFormat::Human => {
                        println!("{}: {}", class.abundancy, join_u64(&class.members));
                    }
                    OutputFormat::Records => emit(&ClassRecord {
                        command: "friends",
                        limit,
                        abundancy: class.abundancy.to_string(),
                        members: class.members,
                    }),
                }
            }
        }
    }
    Ok(0)
}

fn join_u64(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_density(
    x: Option<String>,
    limit: Option<u64>,
    file: &FileConfig,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let x = require(resolve(x, file, "x", |s| Ok(s.to_string()))?, "x")?;
    let x = parse_ratio(&x).map_err(usage)?;
    let limit = sieve_bound(require(resolve(limit, file, "limit", parse_u64)?, "limit")?)?;
    let estimate = SigmaSieve::new(limit).density_estimate(&x);
    match format {
        OutputFormat::Human => println!(
            "count={} ratio={} (~{}) for I(n) > {} with n <= {}",
            estimate.count,
            estimate.ratio,
            estimate.ratio.to_decimal(6),
            estimate.x,
            estimate.limit,
        ),
        OutputFormat::Records => emit(&DensityRecord {
            command: "density",
            x: estimate.x.to_string(),
            limit: estimate.limit,
            count: estimate.count,
            ratio: estimate.ratio.to_string(),
            decimal: estimate.ratio.to_decimal(6),
        }),
    }
    Ok(0)
}

fn run_proximity(
    m: Option<u64>,
    t: Option<u32>,
    file: &FileConfig,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let m = require(resolve(m, file, "m", parse_u64)?, "m")?;
    let t = require(resolve(t, file, "t", parse_u32)?, "t")?;
    if m == 0 {
        return Err(usage("--m must be at least 1"));
    }
    if t == 0 {
        return Err(usage("--t must be at least 1"));
    }
    let bounds = FamilyBounds::default();
    let witness = search_theoretical_friend(m, t, &bounds).map_err(aborted)?;
    match (format, witness) {
        (OutputFormat::Human, Some(w)) => {
            let set = |values: &std::collections::BTreeSet<u64>| {
                values
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            println!(
                "support {{{}}} growing {{{}}} fixed {} limit {} (~{})",
                set(&w.support),
                set(&w.growing),
                w.fixed_part,
                w.limit,
                w.limit.to_decimal(6),
            );
        }
        (OutputFormat::Human, None) => println!(
            "no geometric family within bounds (primes <= {}, fixed exponents <= {}, support <= {t})",
            bounds.prime_limit, bounds.max_fixed_exponent,
        ),
        (OutputFormat::Records, witness) => {
            let found = witness.is_some();
            let (support, growing, fixed_part, limit) = match witness {
                Some(w) => (
                    Some(w.support.iter().copied().collect()),
                    Some(w.growing.iter().copied().collect()),
                    Some(w.fixed_part.to_string()),
                    Some(w.limit.to_string()),
                ),
                None => (None, None, None, None),
            };
            emit(&ProximityRecord {
                command: "proximity",
                m,
                t,
                found,
                support,
                growing,
                fixed_part,
                limit,
            });
        }
    }
    Ok(0)
}

fn run_sequence(
    p: Option<u64>,
    c: Option<u64>,
    terms: Option<u32>,
    file: &FileConfig,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let p = require(resolve(p, file, "p", parse_u64)?, "p")?;
    let c = require(resolve(c, file, "c", parse_u64)?, "c")?;
    let terms = require(resolve(terms, file, "terms", parse_u32)?, "terms")?;
    if terms == 0 {
        return Err(usage("--terms must be at least 1"));
    }
    let report = geometric_theoretical_friend(p, c, terms - 1).map_err(|e| match e {
        SequencesError::Factorize(inner) => aborted(inner),
        invalid => usage(invalid.to_string()),
    })?;
    match format {
        OutputFormat::Human => println!("{report}"),
        OutputFormat::Records => {
            for term in &report.terms {
                emit(&SequenceTermRecord {
                    command: "sequence",
                    p,
                    c,
                    k: term.index,
                    value: term.value.to_string(),
                    abundancy: term.abundancy.to_string(),
                    decimal: term.abundancy.to_decimal(6),
                    gap: term.gap.to_string(),
                    gap_decimal: term.gap.to_decimal(6),
                });
            }
            emit(&SequenceSummaryRecord {
                command: "sequence",
                p,
                c,
                terms,
                target: report.target_abundancy.to_string(),
                target_decimal: report.target_abundancy.to_decimal(6),
                proximity: report.proximity,
            });
        }
    }
    Ok(0)
}
