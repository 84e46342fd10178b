//! Batch command-line interface over the skein library.
//!
//! Exit codes: 0 success, 1 verification failure (a relation check
//! found a counterexample), 2 input error (parse failure, malformed
//! diagram, out-of-range request), 3 internal inconsistency (oracle
//! mismatch or rank cross-check disagreement).

mod checks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use skein::braid::{act, act_left, act_right};
use skein::bracket::{kauffman_bracket, state_sum_oracle_with_cap};
use skein::diagram::{parse_braid, parse_tangle, TangleDiagram};
use skein::glue::quotient_rank;
use skein::tlskein::{parse_skein, reduce, SkeinVector};
use skein::Error;

type V = SkeinVector<BigInt>;

const VERIFY_N_CAP: usize = 4;
const QUOTIENT_N_CAP: usize = 3;
const ORACLE_CROSSING_CAP: usize = 24;

/// A finished run: output lines plus the process exit code.
struct Outcome {
    lines: Vec<String>,
    json: serde_json::Value,
    code: u8,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistency(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult = Result<Outcome, Failure>;

#[derive(Parser)]
#[command(
    name = "skein-cli",
    about = "Kauffman bracket skein computations: bracket evaluation, skein reduction, braid actions, relation verification, quotient ranks"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    /// word on 2n strands acting on the disk boundary
    Disk,
    /// word on n strands acting on the bottom of the rectangle
    Left,
    /// word on n strands acting on the top of the rectangle
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relations {
    Braiding,
    Bigon,
    Conjugation,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    /// two balls glued along a sphere
    TwoBall,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Kauffman bracket of a closed diagram file
    Bracket {
        file: PathBuf,
        /// cross-check against the exhaustive state-sum oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Reduce a tangle diagram to the crossingless-matching basis
    Reduce { file: PathBuf },
    /// Apply a framed braid word to a skein vector file
    Act {
        /// braid word, e.g. "s1 t2^-1 s3"
        word: String,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Side::Disk)]
        side: Side,
    },
    /// Exhaustively verify gluing/trace kernel relations
    Verify {
        #[arg(long, value_enum, default_value_t = Relations::All)]
        relations: Relations,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long = "word-cutoff", default_value_t = 4)]
        word_cutoff: usize,
    },
    /// Rank of the glued-module quotient by the braiding and bigon relations
    Quotient {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Model::TwoBall)]
        model: Model,
        #[arg(long = "word-cutoff", default_value_t = 4)]
        word_cutoff: usize,
    },
}

fn env_cap(var: &str, default: usize) -> usize {
    std::env::var(var).ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn input_err(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

fn read_diagram(path: &PathBuf) -> Result<TangleDiagram, Failure> {
    Ok(parse_tangle(&read_file(path)?)?)
}

/// Vector file format: an optional `n <k>` line fixing the level,
/// followed by a skein-vector expression (possibly spread over several
/// lines); `#` starts a comment. Without an `n` line the level is
/// inferred from the largest boundary point mentioned.
fn read_vector(path: &PathBuf) -> Result<V, Failure> {
    let raw = read_file(path)?;
    let mut level: Option<usize> = None;
    let mut expr = String::new();
    for line in raw.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n ") {
            level = Some(
                rest.trim().parse().map_err(|_| input_err(format!("bad level `{rest}`")))?,
            );
            continue;
        }
        expr.push_str(line);
        expr.push(' ');
    }
    let n = match level {
        Some(n) => n,
        None => {
            let max_point = expr
                .split(|c: char| !c.is_ascii_digit())
                .filter(|s| !s.is_empty())
                .filter_map(|s| s.parse::<usize>().ok())
                .max()
                .ok_or_else(|| input_err("vector file has no boundary points and no `n` line".into()))?;
            max_point.div_ceil(2)
        }
    };
    Ok(parse_skein::<BigInt>(expr.trim(), n)?)
}

fn vector_outcome(v: &V) -> Outcome {
    Outcome {
        lines: vec![v.to_string()],
        json: json!({ "n": v.n(), "vector": v.to_string(), "terms": v.to_json() }),
        code: 0,
    }
}

fn cmd_bracket(file: &PathBuf, oracle: bool) -> CliResult {
    let d = read_diagram(file)?;
    let value = kauffman_bracket::<BigInt>(&d)?;
    let mut oracle_checked = false;
    if oracle {
        let cap = env_cap("SKEIN_ORACLE_CAP", ORACLE_CROSSING_CAP);
        if d.crossing_count() > cap {
            return Err(input_err(format!(
                "oracle refuses {} crossings (cap {cap}; set SKEIN_ORACLE_CAP to override)",
                d.crossing_count()
            )));
        }
        let reference = state_sum_oracle_with_cap::<BigInt>(&d, cap)?;
        if reference != value {
            return Err(Failure {
                code: 3,
                message: format!(
                    "state-sum oracle disagrees with bracket: oracle {reference}, bracket {value}"
                ),
            });
        }
        oracle_checked = true;
    }
    Ok(Outcome {
        lines: vec![value.to_string()],
        json: json!({
            "bracket": value.to_string(),
            "coefficients": value.to_json(),
            "crossings": d.crossing_count(),
            "oracle_checked": oracle_checked,
        }),
        code: 0,
    })
}

fn cmd_reduce(file: &PathBuf) -> CliResult {
    let d = read_diagram(file)?;
    let v: V = reduce(&d)?;
    Ok(vector_outcome(&v))
}

fn cmd_act(word_text: &str, file: &PathBuf, side: Side) -> CliResult {
    let v = read_vector(file)?;
    let strands = match side {
        Side::Disk => 2 * v.n(),
        Side::Left | Side::Right => v.n(),
    };
    let word = parse_braid(word_text, strands)?;
    let out = match side {
        Side::Disk => act(&word, &v)?,
        Side::Left => act_left(&word, &v)?,
        Side::Right => act_right(&word, &v)?,
    };
    Ok(vector_outcome(&out))
}

fn cmd_verify(relations: Relations, n_max: usize, word_cutoff: usize) -> CliResult {
    let cap = env_cap("SKEIN_VERIFY_CAP", VERIFY_N_CAP);
    if n_max > cap {
        return Err(input_err(format!(
            "n-max {n_max} exceeds verification cap {cap} (set SKEIN_VERIFY_CAP to override)"
        )));
    }
    if n_max < 1 || word_cutoff < 1 {
        return Err(input_err("n-max and word-cutoff must be at least 1".into()));
    }
    let mut outcomes = Vec::new();
    for n in 1..=n_max {
        if matches!(relations, Relations::Braiding | Relations::All) {
            outcomes.push(checks::verify_braiding(n, word_cutoff)?);
        }
        if matches!(relations, Relations::Bigon | Relations::All) {
            outcomes.push(checks::verify_bigon(n)?);
        }
        if matches!(relations, Relations::Conjugation | Relations::All) {
            outcomes.push(checks::verify_conjugation(n, word_cutoff)?);
        }
    }
    let failed = outcomes.iter().any(|o| o.witness.is_some());
    let mut lines: Vec<String> = outcomes
        .iter()
        .map(|o| {
            let status = if o.witness.is_some() { "fail" } else { "pass" };
            let witness = o
                .witness
                .as_ref()
                .map(|w| format!(" witness={w:?}"))
                .unwrap_or_default();
            format!(
                "relation={} n={} checked={} status={status}{witness}",
                o.relation, o.n, o.checked
            )
        })
        .collect();
    lines.push(format!("overall={}", if failed { "fail" } else { "pass" }));
    let json = json!({
        "n_max": n_max,
        "word_cutoff": word_cutoff,
        "results": outcomes.iter().map(|o| json!({
            "relation": o.relation,
            "n": o.n,
            "checked": o.checked,
            "status": if o.witness.is_some() { "fail" } else { "pass" },
            "witness": o.witness,
        })).collect::<Vec<_>>(),
        "overall": if failed { "fail" } else { "pass" },
    });
    Ok(Outcome { lines, json, code: if failed { 1 } else { 0 } })
}

fn cmd_quotient(n_max: usize, _model: Model, word_cutoff: usize) -> CliResult {
    let cap = env_cap("SKEIN_QUOTIENT_CAP", QUOTIENT_N_CAP);
    if n_max > cap {
        return Err(input_err(format!(
            "n-max {n_max} exceeds quotient cap {cap} (set SKEIN_QUOTIENT_CAP to override)"
        )));
    }
    let report = quotient_rank::<BigInt>(n_max, word_cutoff)?;
    Ok(Outcome {
        lines: vec![
            format!("model=two-ball n_max={n_max} word_cutoff={word_cutoff}"),
            format!(
                "dimension={} relation_rank={} rows_generated={} rank={}",
                report.dimension, report.relation_rank, report.rows_generated, report.rank
            ),
        ],
        json: json!({
            "model": "two-ball",
            "n_max": n_max,
            "word_cutoff": word_cutoff,
            "dimension": report.dimension,
            "relation_rank": report.relation_rank,
            "rows_generated": report.rows_generated,
            "rank": report.rank,
        }),
        code: 0,
    })
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Bracket { file, oracle } => cmd_bracket(file, *oracle),
        Command::Reduce { file } => cmd_reduce(file),
        Command::Act { word, file, side } => cmd_act(word, file, *side),
        Command::Verify { relations, n_max, word_cutoff } => {
            cmd_verify(*relations, *n_max, *word_cutoff)
        }
        Command::Quotient { n_max, model, word_cutoff } => {
            cmd_quotient(*n_max, *model, *word_cutoff)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Text => {
                    for line in &outcome.lines {
                        println!("{line}");
                    }
                }
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.json).unwrap()),
            }
            ExitCode::from(outcome.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
