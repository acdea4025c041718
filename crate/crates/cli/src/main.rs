//! Command-line driver for the ensemble-search simulator.
//!
//! Subcommands expose the two search algorithms, the RSA and McEliece
//! ciphertext attacks, the measurement-noise sweep, and the Grover
//! comparator. Machine-readable output is a single JSON document per run
//! (`--json`) or CSV for the tabular commands; replaying a command with the
//! same flags and seed reproduces the bytes exactly, so wall-clock timings
//! are only emitted when asked for (`--timings`).
//!
//! Exit codes: 0 success, 2 verification or ambiguity failure, 64 usage
//! error, 65 malformed input data.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use spinsearch_core::crypto::{
    attack, AttackReport, CryptoError, McElieceEncryptor, McElieceKey, RsaKey,
};
use spinsearch_core::liouville::LiouvilleError;
use spinsearch_core::noise::{
    crossover, grover_queries, required_trials_for, success_curve, success_curve_csv,
};
use spinsearch_core::oracle::{make_copy_oracle, make_flip_oracle};
use spinsearch_core::search::{
    bruschweiler_search, one_query_search, EngineConfig, EngineMode, SearchError, SearchResult,
};

const SCHEMA_VERSION: u32 = 1;
const EXIT_OK: i32 = 0;
const EXIT_VERIFICATION: i32 = 2;
const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;

#[derive(Parser)]
#[command(
    name = "spinsearch",
    version,
    about = "Ensemble-search simulator: oracle search, toy ciphertext attacks, noise analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a marked element with either ensemble algorithm.
    Search(SearchArgs),
    /// Recover an RSA plaintext from its ciphertext and public key.
    AttackRsa(AttackRsaArgs),
    /// Recover a McEliece message and error vector from a ciphertext.
    AttackMceliece(AttackMcelieceArgs),
    /// Monte Carlo sweep of decode success over a grid of trial counts.
    NoiseSweep(NoiseSweepArgs),
    /// Tabulate query counts and crossover verdicts against Grover search.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoChoice {
    /// Value-copying oracle, one application, one measurement per ancilla.
    OneQuery,
    /// Flip oracle, one application and measurement per data bit.
    Bruschweiler,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineChoice {
    Streaming,
    Materialized,
}

#[derive(Args)]
struct SearchArgs {
    /// Width of the search domain in bits.
    #[arg(long)]
    bits: u32,
    /// Marked element; conflicts with --random.
    #[arg(long, conflicts_with = "random")]
    target: Option<u64>,
    /// Draw the marked element from the seeded generator.
    #[arg(long)]
    random: bool,
    #[arg(long, value_enum, default_value = "one-query")]
    algo: AlgoChoice,
    #[arg(long, value_enum, default_value = "streaming")]
    engine: EngineChoice,
    /// Engine partitions; 0 picks one per available core.
    #[arg(long, default_value_t = 0)]
    partitions: u64,
    /// Largest data width the materialized engine will expand.
    #[arg(long, default_value_t = 20)]
    materialize_cap: u32,
    /// Upper limit accepted for --bits.
    #[arg(long, default_value_t = 30)]
    bits_cap: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit a single JSON document instead of text.
    #[arg(long)]
    json: bool,
    /// Include wall-clock time in the JSON counters (breaks byte replay).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct AttackRsaArgs {
    /// Public exponent.
    #[arg(long, short = 'e')]
    e: Option<u64>,
    /// Public modulus.
    #[arg(long)]
    modulus: Option<u64>,
    /// JSON file holding {"e": ..., "modulus": ...}; alternative to flags.
    #[arg(long, conflicts_with_all = ["e", "modulus"])]
    key_json: Option<PathBuf>,
    #[arg(long)]
    ciphertext: u64,
    #[arg(long, default_value_t = 0)]
    partitions: u64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct AttackMcelieceArgs {
    /// Generator matrix file: one row per line, characters '0'/'1'.
    #[arg(long)]
    matrix: PathBuf,
    /// Maximum error-vector weight.
    #[arg(long)]
    t_prime: u32,
    /// Ciphertext as a bitstring, most significant bit first.
    #[arg(long)]
    ciphertext: String,
    #[arg(long, default_value_t = 0)]
    partitions: u64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct NoiseSweepArgs {
    /// Data bits n (ensemble scale M = 2^n).
    #[arg(long)]
    bits: u32,
    /// Single-trial error exponent: delta = 2^-k.
    #[arg(long)]
    k: u32,
    /// Comma-separated trial counts, e.g. "1,4,16,64".
    #[arg(long)]
    trials_grid: String,
    /// Monte Carlo repetitions per grid point.
    #[arg(long)]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Domain-size exponents, e.g. "30" or "20..40" (N = 2^exponent).
    #[arg(long)]
    n_range: String,
    /// Single-trial measurement error.
    #[arg(long)]
    delta: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let exit = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return exit;
        }
    };
    match cli.command {
        Command::Search(args) => cmd_search(args),
        Command::AttackRsa(args) => cmd_attack_rsa(args),
        Command::AttackMceliece(args) => cmd_attack_mceliece(args),
        Command::NoiseSweep(args) => cmd_noise_sweep(args),
        Command::Compare(args) => cmd_compare(args),
    }
}

// ---------------------------------------------------------------------------
// shared output plumbing

fn engine_config(choice: EngineChoice, partitions: u64, materialize_cap: u32) -> EngineConfig {
    EngineConfig {
        mode: match choice {
            EngineChoice::Streaming => EngineMode::Streaming,
            EngineChoice::Materialized => EngineMode::Materialized,
        },
        partition_count: if partitions == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            partitions as usize
        },
        materialize_cap,
    }
}

fn counters_value(queries: u64, points: u64, wall_ms: Option<f64>) -> Value {
    let mut counters = json!({
        "queries_used": queries,
        "domain_points_evaluated": points,
    });
    if let Some(ms) = wall_ms {
        counters["wall_time_ms"] = json!(ms);
    }
    counters
}

fn print_record(subcommand: &str, params: &Value, result: Value, counters: Value, seed: Option<u64>) {
    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "params": params,
        "result": result,
        "counters": counters,
        "seed": seed,
    });
    println!("{}", serde_json::to_string_pretty(&record).expect("serializable record"));
}

fn print_error_record(
    subcommand: &str,
    params: &Value,
    kind: &str,
    message: &str,
    seed: Option<u64>,
) {
    let record = json!({
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "params": params,
        "error": { "kind": kind, "message": message },
        "seed": seed,
    });
    println!("{}", serde_json::to_string_pretty(&record).expect("serializable record"));
}

/// Classification of a failed run: JSON error kind plus process exit code.
fn classify_search_error(err: &SearchError) -> (&'static str, i32) {
    match err {
        SearchError::VerificationFailed { .. } => ("verification_failed", EXIT_VERIFICATION),
        SearchError::State(LiouvilleError::AmbiguousMarking { .. }) => {
            ("ambiguous_marking", EXIT_VERIFICATION)
        }
        _ => ("usage", EXIT_USAGE),
    }
}

fn classify_crypto_error(err: &CryptoError) -> (&'static str, i32) {
    match err {
        CryptoError::Search(inner) => classify_search_error(inner),
        CryptoError::InvalidRecoveredIndex(_) => ("verification_failed", EXIT_VERIFICATION),
        CryptoError::MatrixParse { .. } | CryptoError::WeightViolation { .. } => {
            ("input_data", EXIT_DATA)
        }
        _ => ("usage", EXIT_USAGE),
    }
}

fn fail(
    json: bool,
    subcommand: &str,
    params: &Value,
    seed: Option<u64>,
    kind: &str,
    message: String,
    exit: i32,
) -> i32 {
    if json {
        print_error_record(subcommand, params, kind, &message, seed);
    } else {
        eprintln!("error: {message}");
    }
    exit
}

fn usage_error(json: bool, subcommand: &str, params: &Value, seed: Option<u64>, message: String) -> i32 {
    fail(json, subcommand, params, seed, "usage", message, EXIT_USAGE)
}

fn bit_string(value: u64, width: u32) -> String {
    format!("{value:0width$b}", width = width as usize)
}

fn intensity_values(result: &[spinsearch_core::liouville::IntensityReading]) -> Vec<i64> {
    result.iter().map(|r| r.value).collect()
}

fn write_output(path: Option<&Path>, content: &str, rows: usize) -> Result<(), String> {
    match path {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|err| format!("cannot write {}: {err}", path.display()))?;
            println!("wrote {rows} rows to {}", path.display());
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// search

fn cmd_search(args: SearchArgs) -> i32 {
    let params = json!({
        "bits": args.bits,
        "target": args.target,
        "random": args.random,
        "algo": match args.algo { AlgoChoice::OneQuery => "one-query", AlgoChoice::Bruschweiler => "bruschweiler" },
        "engine": match args.engine { EngineChoice::Streaming => "streaming", EngineChoice::Materialized => "materialized" },
        "partitions": args.partitions,
        "materialize_cap": args.materialize_cap,
    });
    let seed = Some(args.seed);
    let sub = "search";

    if args.bits == 0 || args.bits > args.bits_cap {
        return usage_error(
            args.json,
            sub,
            &params,
            seed,
            format!("--bits must lie in 1..={}", args.bits_cap),
        );
    }
    let domain = 1u64 << args.bits;
    let target = match (args.target, args.random) {
        (Some(t), false) if t < domain => t,
        (Some(t), false) => {
            return usage_error(
                args.json,
                sub,
                &params,
                seed,
                format!("--target {t} does not fit in {} bits", args.bits),
            );
        }
        (None, true) => ChaCha8Rng::seed_from_u64(args.seed).random_range(0..domain),
        (None, false) => {
            return usage_error(
                args.json,
                sub,
                &params,
                seed,
                "either --target or --random is required".into(),
            );
        }
        (Some(_), true) => unreachable!("clap conflicts_with"),
    };

    let config = engine_config(args.engine, args.partitions, args.materialize_cap);
    let started = Instant::now();
    let outcome = match args.algo {
        AlgoChoice::OneQuery => {
            make_copy_oracle(target, args.bits)
                .map_err(SearchError::from)
                .and_then(|oracle| one_query_search(&oracle, &config))
        }
        AlgoChoice::Bruschweiler => {
            make_flip_oracle(target, args.bits)
                .map_err(SearchError::from)
                .and_then(|oracle| bruschweiler_search(&oracle, &config))
        }
    };
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    match outcome {
        Ok(result) => {
            if args.json {
                print_record(
                    sub,
                    &params,
                    search_result_value(target, args.bits, &result),
                    counters_value(
                        result.queries_used,
                        result.domain_points_evaluated,
                        args.timings.then_some(wall_ms),
                    ),
                    seed,
                );
            } else {
                print_search_text(target, args.bits, &result, args.algo);
            }
            EXIT_OK
        }
        Err(err) => {
            let (kind, exit) = classify_search_error(&err);
            fail(args.json, sub, &params, seed, kind, err.to_string(), exit)
        }
    }
}

fn search_result_value(target: u64, bits: u32, result: &SearchResult) -> Value {
    json!({
        "target": target,
        "target_bits": bit_string(target, bits),
        "found": result.found,
        "found_bits": bit_string(result.found, bits),
        "verified": result.verified,
        "intensities": result.intensities,
    })
}

fn print_search_text(target: u64, bits: u32, result: &SearchResult, algo: AlgoChoice) {
    let label = match algo {
        AlgoChoice::OneQuery => "one-query",
        AlgoChoice::Bruschweiler => "bruschweiler",
    };
    println!("algorithm: {label}");
    println!("target: {target} ({})", bit_string(target, bits));
    println!("found: {} ({})", result.found, bit_string(result.found, bits));
    println!("verified: {}", result.verified);
    let intensity_label = match algo {
        AlgoChoice::OneQuery => "ancilla intensities",
        AlgoChoice::Bruschweiler => "per-query intensities",
    };
    println!("{intensity_label}: {:?}", intensity_values(&result.intensities));
    println!("queries used: {}", result.queries_used);
    println!("domain points evaluated: {}", result.domain_points_evaluated);
}

// ---------------------------------------------------------------------------
// attack-rsa

fn cmd_attack_rsa(args: AttackRsaArgs) -> i32 {
    let sub = "attack-rsa";
    let params = json!({
        "e": args.e,
        "modulus": args.modulus,
        "key_json": args.key_json.as_ref().map(|p| p.display().to_string()),
        "ciphertext": args.ciphertext,
        "partitions": args.partitions,
    });

    let key = match load_rsa_key(&args) {
        Ok(key) => key,
        Err((kind, exit, message)) => {
            return fail(args.json, sub, &params, None, kind, message, exit)
        }
    };
    if key.message_bits() > 30 {
        return usage_error(
            args.json,
            sub,
            &params,
            None,
            format!("modulus of {} bits exceeds the 30-bit attack cap", key.message_bits()),
        );
    }

    let config = engine_config(EngineChoice::Streaming, args.partitions, 20);
    let started = Instant::now();
    let outcome = attack(&key, args.ciphertext, &config);
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    match outcome {
        Ok(report) => {
            if args.json {
                print_record(
                    sub,
                    &params,
                    attack_report_value(&report, None),
                    counters_value(
                        report.queries_used,
                        report.domain_points_evaluated,
                        args.timings.then_some(wall_ms),
                    ),
                    None,
                );
            } else {
                println!(
                    "public key: e={} N={} (message bits: {})",
                    key.exponent,
                    key.modulus,
                    key.message_bits()
                );
                println!("ciphertext: {}", args.ciphertext);
                print_attack_text(&report, None);
            }
            EXIT_OK
        }
        Err(err) => {
            let (kind, exit) = classify_crypto_error(&err);
            fail(args.json, sub, &params, None, kind, err.to_string(), exit)
        }
    }
}

fn load_rsa_key(args: &AttackRsaArgs) -> Result<RsaKey, (&'static str, i32, String)> {
    if let Some(path) = &args.key_json {
        let text = std::fs::read_to_string(path)
            .map_err(|err| ("input_data", EXIT_DATA, format!("cannot read {}: {err}", path.display())))?;
        let key: RsaKey = serde_json::from_str(&text)
            .map_err(|err| ("input_data", EXIT_DATA, format!("invalid key file: {err}")))?;
        RsaKey::new(key.exponent, key.modulus)
            .map_err(|err| ("input_data", EXIT_DATA, err.to_string()))
    } else {
        match (args.e, args.modulus) {
            (Some(e), Some(n)) => {
                RsaKey::new(e, n).map_err(|err| ("usage", EXIT_USAGE, err.to_string()))
            }
            _ => Err((
                "usage",
                EXIT_USAGE,
                "provide --e and --modulus, or --key-json".into(),
            )),
        }
    }
}

fn attack_report_value(report: &AttackReport, domain: Option<&McElieceEncryptor>) -> Value {
    let randomness = report.recovered_randomness.map(|r| {
        json!({
            "index": r.index,
            "vector": r.vector,
            "vector_bits": domain
                .map(|enc| bit_string(r.vector, enc.key().code_length()))
                .unwrap_or_else(|| format!("{:b}", r.vector)),
        })
    });
    let mut result = json!({
        "recovered_message": report.recovered_message,
        "recovered_message_bits": bit_string(report.recovered_message, report.message_bits),
        "recovered_randomness": randomness,
        "reencrypts_to_ciphertext": report.reencrypts_to_ciphertext,
        "message_bits": report.message_bits,
        "randomness_bits": report.randomness_bits,
        "mixture_size": report.mixture_size,
        "intensities": report.intensities,
    });
    if let Some(enc) = domain {
        result["error_domain"] = json!({
            "count": enc.domain().count(),
            "index_bits": enc.domain().index_bits(),
            "sentinel_count": enc.domain().padded().sentinel_count(),
        });
    }
    result
}

fn print_attack_text(report: &AttackReport, encryptor: Option<&McElieceEncryptor>) {
    println!(
        "recovered message: {} ({})",
        report.recovered_message,
        bit_string(report.recovered_message, report.message_bits)
    );
    if let Some(randomness) = report.recovered_randomness {
        let vector_bits = encryptor
            .map(|enc| bit_string(randomness.vector, enc.key().code_length()))
            .unwrap_or_else(|| format!("{:b}", randomness.vector));
        println!(
            "recovered error vector: {vector_bits} (index {})",
            randomness.index
        );
    }
    println!("re-encrypts to ciphertext: {}", report.reencrypts_to_ciphertext);
    println!(
        "message-ancilla intensities: {:?}",
        &intensity_values(&report.intensities)[..report.message_bits as usize]
    );
    println!("mixture size: {}", report.mixture_size);
    println!("queries used: {}", report.queries_used);
    println!("domain points evaluated: {}", report.domain_points_evaluated);
}

// ---------------------------------------------------------------------------
// attack-mceliece

fn cmd_attack_mceliece(args: AttackMcelieceArgs) -> i32 {
    let sub = "attack-mceliece";
    let params = json!({
        "matrix": args.matrix.display().to_string(),
        "t_prime": args.t_prime,
        "ciphertext": args.ciphertext,
        "partitions": args.partitions,
    });

    let text = match std::fs::read_to_string(&args.matrix) {
        Ok(text) => text,
        Err(err) => {
            return fail(
                args.json,
                sub,
                &params,
                None,
                "input_data",
                format!("cannot read {}: {err}", args.matrix.display()),
                EXIT_DATA,
            )
        }
    };
    let key = match McElieceKey::from_text(&text, args.t_prime) {
        Ok(key) => key,
        Err(err) => {
            let (kind, exit) = classify_crypto_error(&err);
            return fail(args.json, sub, &params, None, kind, err.to_string(), exit);
        }
    };
    let ciphertext = match parse_bitstring(&args.ciphertext, key.code_length()) {
        Ok(c) => c,
        Err(message) => return usage_error(args.json, sub, &params, None, message),
    };
    let encryptor = match McElieceEncryptor::new(key) {
        Ok(enc) => enc,
        Err(err) => {
            let (kind, exit) = classify_crypto_error(&err);
            return fail(args.json, sub, &params, None, kind, err.to_string(), exit);
        }
    };
    let width = encryptor.key().dimension() + encryptor.domain().index_bits();
    if width > 30 {
        return usage_error(
            args.json,
            sub,
            &params,
            None,
            format!("k + index bits = {width} exceeds the 30-bit attack cap"),
        );
    }

    let config = engine_config(EngineChoice::Streaming, args.partitions, 20);
    let started = Instant::now();
    let outcome = attack(&encryptor, ciphertext, &config);
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    match outcome {
        Ok(report) => {
            if args.json {
                print_record(
                    sub,
                    &params,
                    attack_report_value(&report, Some(&encryptor)),
                    counters_value(
                        report.queries_used,
                        report.domain_points_evaluated,
                        args.timings.then_some(wall_ms),
                    ),
                    None,
                );
            } else {
                println!(
                    "matrix: {}x{}, t' = {}",
                    encryptor.key().dimension(),
                    encryptor.key().code_length(),
                    encryptor.key().max_error_weight()
                );
                println!(
                    "error-vector domain: {} vectors, {} index bits, {} sentinels",
                    encryptor.domain().count(),
                    encryptor.domain().index_bits(),
                    encryptor.domain().padded().sentinel_count()
                );
                println!("ciphertext: {}", args.ciphertext);
                print_attack_text(&report, Some(&encryptor));
            }
            EXIT_OK
        }
        Err(err) => {
            let (kind, exit) = classify_crypto_error(&err);
            fail(args.json, sub, &params, None, kind, err.to_string(), exit)
        }
    }
}

fn parse_bitstring(s: &str, expected_len: u32) -> Result<u64, String> {
    if s.len() != expected_len as usize {
        return Err(format!(
            "ciphertext has {} bits, matrix rows have {expected_len}",
            s.len()
        ));
    }
    let mut value = 0u64;
    for c in s.chars() {
        value = (value << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                other => return Err(format!("invalid bit {other:?} in ciphertext")),
            };
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// noise-sweep

fn cmd_noise_sweep(args: NoiseSweepArgs) -> i32 {
    let params = json!({});
    let sub = "noise-sweep";
    if args.reps == 0 {
        return usage_error(false, sub, &params, Some(args.seed), "--reps must be at least 1".into());
    }
    if args.bits == 0 || args.bits > 30 {
        return usage_error(false, sub, &params, Some(args.seed), "--bits must lie in 1..=30".into());
    }
    let grid: Result<Vec<u64>, _> = args
        .trials_grid
        .split(',')
        .map(|part| part.trim().parse::<u64>())
        .collect();
    let grid = match grid {
        Ok(grid) if !grid.is_empty() && grid.iter().all(|&t| t >= 1) => grid,
        _ => {
            return usage_error(
                false,
                sub,
                &params,
                Some(args.seed),
                "--trials-grid must be a comma-separated list of positive integers".into(),
            )
        }
    };

    match success_curve(args.bits, args.k, &grid, args.reps, args.seed) {
        Ok(points) => {
            let csv = success_curve_csv(&points);
            match write_output(args.csv.as_deref(), &csv, points.len()) {
                Ok(()) => EXIT_OK,
                Err(message) => {
                    eprintln!("error: {message}");
                    EXIT_DATA
                }
            }
        }
        Err(err) => usage_error(false, sub, &params, Some(args.seed), err.to_string()),
    }
}

// ---------------------------------------------------------------------------
// compare

fn cmd_compare(args: CompareArgs) -> i32 {
    let params = json!({});
    let sub = "compare";
    let (lo, hi) = match parse_exponent_range(&args.n_range) {
        Ok(range) => range,
        Err(message) => return usage_error(false, sub, &params, None, message),
    };
    if args.delta.is_nan() || args.delta <= 0.0 {
        return usage_error(false, sub, &params, None, "--delta must be positive".into());
    }

    let mut csv = String::from(
        "log2_n,domain_size,grover_queries,one_query_trials,bruschweiler_queries,\
         one_query_side,bruschweiler_side,error_side,ours_beats_grover,bruschweiler_beats_grover\n",
    );
    for exponent in lo..=hi {
        let domain_size = 1u64 << exponent;
        let record = match crossover(domain_size, args.delta) {
            Ok(record) => record,
            Err(err) => return usage_error(false, sub, &params, None, err.to_string()),
        };
        let trials = required_trials_for(args.delta, domain_size);
        let bruschweiler_queries = u128::from(exponent) * trials;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{:.6e},{:.6e},{:.6e},{},{}",
            exponent,
            domain_size,
            grover_queries(domain_size),
            trials,
            bruschweiler_queries,
            record.one_query_side,
            record.bruschweiler_side,
            record.error_side,
            record.ours_beats_grover,
            record.bruschweiler_beats_grover,
        );
    }
    let rows = (hi - lo + 1) as usize;
    match write_output(args.csv.as_deref(), &csv, rows) {
        Ok(()) => EXIT_OK,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_DATA
        }
    }
}

fn parse_exponent_range(s: &str) -> Result<(u32, u32), String> {
    let parse_one = |part: &str| {
        part.trim()
            .parse::<u32>()
            .map_err(|_| format!("invalid exponent {part:?} in --n-range"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse_one(lo)?, parse_one(hi)?),
        None => {
            let single = parse_one(s)?;
            (single, single)
        }
    };
    if lo == 0 || hi < lo || hi > 62 {
        return Err("--n-range exponents must satisfy 1 <= lo <= hi <= 62".into());
    }
    Ok((lo, hi))
}
