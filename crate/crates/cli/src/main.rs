use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use swgeo::checklist::{run_checklist, ChecklistConfig};
use swgeo::functionals::{bounds_table, keen_f64, verify_keen_minimum, BetaParam, BoundsInputs, DEFAULT_GRID_SIZE, MIN_GRID_SIZE};
use swgeo::homeo::{exotic_pair_search, freedman_type, FamilyRanges, KStrategy};
use swgeo::obstructions::{obstruct, Criterion, Verdict};
use swgeo::rational::parse_rat;
use swgeo::{Error, SurfaceSpec};

mod render;

const SCHEMA: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "swgeo", version, about = "Characteristic numbers, curvature bounds and Einstein obstructions for 4-manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Noether,
    MinThreshold,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characteristic numbers of a surface spec, e.g. `hypersurface(9) + 117*CP2bar`.
    Info { spec: String },
    /// Evaluate every obstruction criterion on a spec.
    Obstruct {
        spec: String,
        /// Treat the base as having a nonzero Seiberg-Witten invariant (e.g. symplectic).
        #[arg(long)]
        assume_sw: bool,
    },
    /// Table of curvature bounds for `X + k*CP2bar` with X minimal of general type.
    Bounds {
        spec: String,
        /// Normalized scalar energy, a rational >= 1.
        #[arg(long, default_value = "576/361")]
        beta: String,
        /// Weyl weight for I_eps, a rational >= 0.
        #[arg(long, default_value = "1/3")]
        eps: String,
    },
    /// Brute-force certificate for the minimum of the Weyl/scalar quadratic.
    VerifyMinimum {
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
    },
    /// Homeomorphism types of two specs.
    Homeo { first: String, second: String },
    /// Search for homeomorphic pairs with one side obstructed and one Kähler-Einstein.
    SearchExotic {
        /// Inclusive hypersurface degree range `a..b`, or `none`.
        #[arg(long, default_value = "9..20")]
        l_range: String,
        /// Inclusive double-plane degree range `a..b`, or `none`.
        #[arg(long, default_value = "27..40")]
        m_range: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::Noether)]
        strategy: StrategyArg,
    },
    /// Run the reproduction checklist of worked examples.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        lemma_samples: usize,
    },
    /// CSV samples of the Weyl/scalar quadratic on [1, 16/9] for plotting.
    KeenSamples {
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidParameter(_) => 2,
            Error::Inapplicable(_)
            | Error::Unsupported(_)
            | Error::Unclassified(_)
            | Error::Precondition(_)
            | Error::OutOfRange(_) => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

/// A rendered result plus the exit code it should produce.
struct Outcome {
    body: Value,
    code: u8,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, code: 0 }
    }
}

fn parse_spec(text: &str) -> Result<SurfaceSpec, Failure> {
    Ok(text.parse::<SurfaceSpec>()?)
}

fn parse_range(text: &str) -> Result<Option<RangeInclusive<u64>>, Failure> {
    if text == "none" {
        return Ok(None);
    }
    let bad = || Failure { code: 2, message: format!("invalid range {text:?}; expected a..b") };
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(Some(lo..=hi))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Info { spec } => {
            let spec = parse_spec(&spec)?;
            let numbers = spec.evaluate()?;
            Ok(Outcome::ok(json!({ "command": "info", "spec": spec.to_string(), "invariants": to_value(&numbers) })))
        }
        Command::Obstruct { spec, assume_sw } => {
            let spec = parse_spec(&spec)?;
            let report = obstruct(&spec, assume_sw)?;
            let code = if report.verdict(Criterion::New) == Verdict::Inapplicable { 3 } else { 0 };
            Ok(Outcome { body: json!({ "command": "obstruct", "report": to_value(&report) }), code })
        }
        Command::Bounds { spec, beta, eps } => {
            let spec = parse_spec(&spec)?;
            let beta = BetaParam::new(parse_rat(&beta)?).map_err(|e| Failure { code: 2, message: e.to_string() })?;
            let eps = parse_rat(&eps)?;
            let x = spec.unblown().evaluate()?;
            let inputs = BoundsInputs::for_blow_up(&x, spec.blowups(), beta, eps)?;
            let table = bounds_table(&inputs)?;
            Ok(Outcome::ok(json!({
                "command": "bounds",
                "spec": spec.to_string(),
                "inputs": to_value(&inputs),
                "bounds": to_value(&table),
            })))
        }
        Command::VerifyMinimum { grid } => {
            let cert = verify_keen_minimum(grid)?;
            let code = if cert.passed { 0 } else { 4 };
            Ok(Outcome { body: json!({ "command": "verify-minimum", "certificate": to_value(&cert) }), code })
        }
        Command::Homeo { first, second } => {
            let (a, b) = (parse_spec(&first)?, parse_spec(&second)?);
            let ta = freedman_type(&a.evaluate()?)?;
            let tb = freedman_type(&b.evaluate()?)?;
            Ok(Outcome::ok(json!({
                "command": "homeo",
                "first": { "spec": a.to_string(), "type": to_value(&ta), "display": ta.to_string() },
                "second": { "spec": b.to_string(), "type": to_value(&tb), "display": tb.to_string() },
                "homeomorphic": ta == tb,
            })))
        }
        Command::SearchExotic { l_range, m_range, strategy } => {
            let ranges = FamilyRanges { hypersurface: parse_range(&l_range)?, double_plane: parse_range(&m_range)? };
            let strategy = match strategy {
                StrategyArg::Noether => KStrategy::NoetherMatch,
                StrategyArg::MinThreshold => KStrategy::MinThreshold,
            };
            let pairs = exotic_pair_search(&ranges, strategy);
            Ok(Outcome::ok(json!({
                "command": "search-exotic",
                "strategy": to_value(&strategy),
                "rule": strategy.describe(),
                "count": pairs.len(),
                "pairs": to_value(&pairs),
            })))
        }
        Command::VerifyPaper { grid, seed, lemma_samples } => {
            let report = run_checklist(&ChecklistConfig { grid_size: grid, seed, lemma_samples })?;
            let code = if report.passed { 0 } else { 4 };
            for failed in report.failures() {
                eprintln!("FAIL {}: expected {:?}, got {:?}", failed.name, failed.expected, failed.actual);
            }
            Ok(Outcome { body: json!({ "command": "verify-paper", "report": to_value(&report) }), code })
        }
        Command::KeenSamples { .. } => unreachable!("handled before JSON rendering"),
    }
}

fn keen_csv(points: usize) -> Result<String, Failure> {
    if points < 2 {
        return Err(Failure { code: 2, message: "need at least 2 points".into() });
    }
    let mut out = String::from("beta,f\n");
    for i in 0..points {
        let beta = 1.0 + (7.0 / 9.0) * i as f64 / (points - 1) as f64;
        out.push_str(&format!("{beta:.12},{:.12}\n", keen_f64(beta)));
    }
    Ok(out)
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::VerifyMinimum { grid } | Command::VerifyPaper { grid, .. } = &cli.command {
        if *grid < MIN_GRID_SIZE {
            eprintln!("error: grid size must be at least {MIN_GRID_SIZE}");
            return ExitCode::from(2);
        }
    }
    if let Command::KeenSamples { points } = cli.command {
        return match keen_csv(points) {
            Ok(csv) => {
                emit(&csv);
                ExitCode::SUCCESS
            }
            Err(f) => {
                eprintln!("error: {}", f.message);
                ExitCode::from(f.code)
            }
        };
    }
    match run(cli.command) {
        Ok(outcome) => {
            let mut body = outcome.body;
            if let Value::Object(map) = &mut body {
                map.insert("schema".into(), Value::String(SCHEMA.into()));
            }
            match cli.format {
                Format::Json => emit(&format!("{}\n", serde_json::to_string_pretty(&body).expect("json value"))),
                Format::Markdown => emit(&render::markdown(&body)),
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
