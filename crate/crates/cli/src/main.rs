//! `magnus`: generate Magnus and BCH series, verify them numerically and
//! check the permutation Hopf algebra identities.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use magnus_core::format::{
    bch_brackets_to_string, bch_words_to_string, rnested_to_string, words_to_string, BchDocument,
    SeriesDocument, Style,
};
use magnus_core::hopf::axioms::{check_all, CheckConfig, Selection};
use magnus_core::magnus::bch::{bch_brackets, bch_words};
use magnus_core::magnus::rnested::omega_rnested;
use magnus_core::magnus::{omega_word, DEFAULT_ORDER_CAP};
use magnus_core::numerics::report::{verify, VerifyConfig};
use magnus_core::numerics::Evaluator;
use magnus_core::{Anchor, Error, OrderCap, Rational};

/// Environment variable overriding the default order cap.
const CAP_ENV: &str = "MAGNUS_CAP";

const EXIT_VERIFY: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "magnus", version, about = "Magnus expansion series in the permutation basis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate Ω_n in the word or right-nested commutator basis.
    Gen(GenArgs),
    /// Propagate a builtin problem and compare with a reference solution.
    Verify(VerifyArgs),
    /// Generate the homogeneous BCH term Z_n(X, Y).
    Bch(BchArgs),
    /// Check the Hopf algebra identities on permutations.
    HopfCheck(HopfArgs),
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Largest order generated; defaults to $MAGNUS_CAP or 9.
    #[arg(long)]
    cap: Option<usize>,
    /// Ignore the order cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value_t = BasisArg::Words)]
    basis: BasisArg,
    #[arg(long, value_enum, default_value_t = AnchorArg::Last)]
    anchor: AnchorArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Also write the JSON document to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    cap: CapArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    order: usize,
    /// Final time; the problem's horizon by default.
    #[arg(long)]
    t: Option<f64>,
    /// Substep length; min(t, 0.1) by default.
    #[arg(long)]
    step: Option<f64>,
    #[arg(long, value_enum, default_value_t = EvaluatorArg::Exact)]
    evaluator: EvaluatorArg,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    cap: CapArgs,
}

#[derive(Args, Debug)]
struct BchArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Words in X, Y or right-nested brackets (text and LaTeX only).
    #[arg(long, value_enum, default_value_t = FormArg::Words)]
    form: FormArg,
    #[arg(long)]
    json: Option<PathBuf>,
    #[command(flatten)]
    cap: CapArgs,
}

#[derive(Args, Debug)]
struct HopfArgs {
    #[arg(long, default_value_t = 4)]
    max_grade: usize,
    #[arg(long, value_enum, default_value_t = StructureArg::Both)]
    structure: StructureArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random cases per identity and grade above the exhaustive cutoffs.
    #[arg(long, default_value_t = 32)]
    random_cases: usize,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    Words,
    Rnested,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AnchorArg {
    First,
    Last,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Words,
    Brackets,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EvaluatorArg {
    Exact,
    Mc,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StructureArg {
    Both,
    Star,
    Starprime,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::InvalidOrder { .. }
            | Error::UnknownProblem(_)
            | Error::InvalidStep(_)
            | Error::OutOfRange { .. }
            | Error::Evaluator(_) => EXIT_USAGE,
            _ => EXIT_VERIFY,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Gen(args) => gen(args),
        Command::Verify(args) => verify_cmd(args),
        Command::Bch(args) => bch(args),
        Command::HopfCheck(args) => hopf_check(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(f) => {
            eprintln!("magnus: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn order_cap(args: &CapArgs) -> Result<OrderCap, Failure> {
    if args.force {
        return Ok(OrderCap::NONE);
    }
    if let Some(cap) = args.cap {
        return Ok(OrderCap(cap));
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(OrderCap)
            .map_err(|_| Failure::usage(format!("{CAP_ENV} must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(OrderCap(DEFAULT_ORDER_CAP)),
    }
}

fn positive_order(order: usize) -> Result<(), Failure> {
    if order == 0 {
        return Err(Error::InvalidOrder { order, min: 1 }.into());
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

fn write_json(path: &Path, json: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{json}\n"))
        .map_err(|e| Failure { code: EXIT_VERIFY, message: format!("cannot write {}: {e}", path.display()) })
}

/// Prints `human` unless the format is JSON, in which case the document
/// goes to stdout; the document is also written to `path` when given.
fn emit(format: FormatArg, human: impl FnOnce(Style) -> String, json: &str, path: Option<&Path>) -> Result<(), Failure> {
    match format {
        FormatArg::Json => println!("{json}"),
        FormatArg::Text => println!("{}", human(Style::Text)),
        FormatArg::Latex => println!("{}", human(Style::Latex)),
    }
    if let Some(p) = path {
        write_json(p, json)?;
    }
    Ok(())
}

fn latex_lhs(format: FormatArg, lhs: String, body: String) -> String {
    if format == FormatArg::Latex {
        format!("{lhs} = {body}")
    } else {
        body
    }
}

fn gen(args: GenArgs) -> Outcome {
    positive_order(args.order)?;
    let cap = order_cap(&args.cap)?;
    let n = args.order;
    match args.basis {
        BasisArg::Words => {
            let w = omega_word::<Rational>(n, cap)?;
            let doc = to_json(&SeriesDocument::from_words(n, &w));
            let human = |s| latex_lhs(args.format, format!("\\Omega_{{{n}}}"), words_to_string(&w, s));
            emit(args.format, human, &doc, args.json.as_deref())?;
        }
        BasisArg::Rnested => {
            let anchor = match args.anchor {
                AnchorArg::First => Anchor::First,
                AnchorArg::Last => Anchor::Last,
            };
            let r = omega_rnested::<Rational>(n, anchor, cap)?;
            let doc = to_json(&SeriesDocument::from_rnested(&r));
            let human = |s| latex_lhs(args.format, format!("\\Omega_{{{n}}}"), rnested_to_string(&r, s));
            emit(args.format, human, &doc, args.json.as_deref())?;
        }
    }
    Ok(true)
}

fn verify_cmd(args: VerifyArgs) -> Outcome {
    positive_order(args.order)?;
    let evaluator = match args.evaluator {
        EvaluatorArg::Exact => Evaluator::Exact,
        EvaluatorArg::Mc => {
            if args.samples == 0 {
                return Err(Failure::usage("--samples must be positive"));
            }
            Evaluator::MonteCarlo { samples: args.samples, seed: args.seed }
        }
    };
    if let Some(t) = args.t {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Failure::usage(format!("--t must be finite and non-negative, got {t}")));
        }
    }
    let cfg = VerifyConfig {
        problem: args.problem,
        order: args.order,
        t: args.t,
        step: args.step,
        evaluator,
        cap: order_cap(&args.cap)?,
    };
    let report = verify(&cfg)?;
    let json = to_json(&report);
    println!("{json}");
    if let Some(p) = args.json.as_deref() {
        write_json(p, &json)?;
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("magnus: check '{}' failed: {:e} vs bound {:e}", c.name, c.value, c.bound);
    }
    Ok(report.passed)
}

fn bch(args: BchArgs) -> Outcome {
    positive_order(args.order)?;
    if args.form == FormArg::Brackets && args.format == FormatArg::Json {
        return Err(Failure::usage("--form brackets has no JSON document; use --format text or latex"));
    }
    let cap = order_cap(&args.cap)?;
    let n = args.order;
    let z = bch_words::<Rational>(n, cap)?;
    let doc = to_json(&BchDocument::new(n, &z));
    let brackets = match args.form {
        FormArg::Brackets => Some(bch_brackets::<Rational>(n, cap)?),
        FormArg::Words => None,
    };
    let human = |s| {
        let body = match &brackets {
            Some(b) => bch_brackets_to_string(b, s),
            None => bch_words_to_string(&z, s),
        };
        latex_lhs(args.format, format!("Z_{{{n}}}"), body)
    };
    emit(args.format, human, &doc, args.json.as_deref())?;
    Ok(true)
}

fn hopf_check(args: HopfArgs) -> Outcome {
    let selection = match args.structure {
        StructureArg::Both => Selection::Both,
        StructureArg::Star => Selection::Star,
        StructureArg::Starprime => Selection::StarPrime,
    };
    let report = check_all(&CheckConfig {
        max_grade: args.max_grade,
        selection,
        seed: args.seed,
        random_cases: args.random_cases,
    });
    let json = to_json(&report);
    println!("{json}");
    if let Some(p) = args.json.as_deref() {
        write_json(p, &json)?;
    }
    for c in report.failures() {
        eprintln!(
            "magnus: {} failed at grade {}: {}",
            c.identity,
            c.grade,
            c.counterexample.as_deref().unwrap_or("")
        );
    }
    Ok(report.passed)
}
