//! `hus`: classify, evaluate, compare, sweep and verify stability constants
//! for `x^Δ = λx` on the two-step time scale.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 no constant applies,
//! 4 empirical verification failure.

mod output;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use hus_core::classifier::classify_tol;
use hus_core::constants::theorem_constant_tol;
use hus_core::{
    adversarial_lower_bound, builtin_examples, compare_table, CaseTag, Error, HusReason,
    SearchMode, StepPair, Tolerances, VerifyReport,
};
use output::{sink, OutputFormat};
use render::{
    ClassifyDoc, CompareDoc, ConstantDoc, ExampleRowDoc, ExamplesDoc, RowDoc, SweepDoc, VerifyDoc,
};
use std::process::ExitCode;

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_APPLICABLE: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser)]
#[command(name = "hus", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => OutputFormat::HumanTable,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Auto,
    Bruteforce,
    Greedy,
    Alternating,
}

/// Flags shared by every subcommand.
#[derive(clap::Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = false)]
    format: FormatArg,
    /// Write the document to a file instead of standard out.
    #[arg(long, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    /// Tolerance for detecting a non-regressive λ.
    #[arg(long, default_value_t = 1e-12)]
    regressive_tol: f64,
    /// Tolerance for snapping λ onto the exceptional values.
    #[arg(long, default_value_t = 1e-9)]
    snap_tol: f64,
}

impl CommonArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances::new(self.regressive_tol, self.snap_tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Place (α, β, λ) in the eleven-case stability partition.
    Classify {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        /// λ as a decimal or an exact fraction "p/q".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate the per-case stability constant.
    Constant {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compare the case constant against the sup-plus-integral constant.
    Compare {
        #[arg(long, required_unless_present = "examples")]
        alpha: Option<f64>,
        #[arg(long, required_unless_present = "examples")]
        beta: Option<f64>,
        /// Comma-separated λ values (decimals or "p/q" fractions).
        #[arg(long, allow_hyphen_values = true, required_unless_present = "examples")]
        lambda: Option<String>,
        /// Run the built-in reference points and print deltas.
        #[arg(long)]
        examples: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate both constants over an evenly spaced λ range.
    Sweep {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda_max: f64,
        #[arg(long)]
        samples: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the claimed constant against an adversarial lower bound.
    Verify {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Number of grid points in the search horizon.
        #[arg(long, default_value_t = 13)]
        n: usize,
        /// Search strategy; auto picks exhaustive search when it fits.
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<u8, (u8, String)>;

fn invalid<E: std::fmt::Display>(e: E) -> (u8, String) {
    (EXIT_INVALID, e.to_string())
}

/// Parse λ as a decimal or an exact "p/q" fraction.
fn parse_lambda(s: &str) -> Result<f64, (u8, String)> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|_| invalid(format!("bad fraction numerator {num:?}")))?;
        let d: f64 = den.trim().parse().map_err(|_| invalid(format!("bad fraction denominator {den:?}")))?;
        if d == 0.0 {
            return Err(invalid("fraction denominator is zero"));
        }
        Ok(n / d)
    } else {
        s.parse().map_err(|_| invalid(format!("bad lambda {s:?}")))
    }
}

fn parse_lambda_list(s: &str) -> Result<Vec<f64>, (u8, String)> {
    let values: Vec<f64> = s
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(parse_lambda)
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(invalid("empty lambda list"));
    }
    Ok(values)
}

fn steps(alpha: f64, beta: f64) -> Result<StepPair, (u8, String)> {
    StepPair::new(alpha, beta).map_err(invalid)
}

fn emit<T: serde::Serialize>(
    doc: &T,
    table: String,
    csv: String,
    common: &CommonArgs,
) -> CmdResult {
    let format = OutputFormat::from(common.format);
    let rendered = match format {
        OutputFormat::HumanTable => table,
        OutputFormat::Json => {
            serde_json::to_string(doc).map_err(|e| (EXIT_INVALID, e.to_string()))?
        }
        OutputFormat::Csv => csv,
    };
    sink(&rendered, common.out.as_deref()).map_err(|e| (EXIT_INVALID, e.to_string()))?;
    Ok(0)
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Classify { alpha, beta, lambda, common } => {
            let s = steps(alpha, beta)?;
            let lambda = parse_lambda(&lambda)?;
            let label = classify_tol(&s, lambda, &common.tolerances()).map_err(invalid)?;
            let doc = ClassifyDoc::from_label(lambda, &label);
            emit(&doc, doc.table(), doc.csv(), &common)
        }
        Command::Constant { alpha, beta, lambda, common } => {
            let s = steps(alpha, beta)?;
            let lambda = parse_lambda(&lambda)?;
            let verdict =
                theorem_constant_tol(&s, lambda, &common.tolerances()).map_err(invalid)?;
            let doc = ConstantDoc::from_verdict(lambda, &verdict);
            let applicable = verdict.reason == HusReason::HasConstant;
            emit(&doc, doc.table(), doc.csv(), &common)?;
            Ok(if applicable { 0 } else { EXIT_NOT_APPLICABLE })
        }
        Command::Compare { alpha, beta, lambda, examples, common } => {
            if examples {
                let rows: Vec<ExampleRowDoc> = builtin_examples()
                    .iter()
                    .map(|ex| {
                        let s = StepPair::new(ex.alpha, ex.beta).expect("built-in steps");
                        let row = compare_table(&s, &[ex.lambda]).remove(0);
                        ExampleRowDoc::new(ex, &row)
                    })
                    .collect();
                let doc = ExamplesDoc { rows };
                return emit(&doc, doc.table(), doc.csv(), &common);
            }
            let s = steps(alpha.unwrap(), beta.unwrap())?;
            let lambdas = parse_lambda_list(&lambda.unwrap())?;
            let rows: Vec<RowDoc> = compare_table(&s, &lambdas).iter().map(RowDoc::new).collect();
            let doc = CompareDoc { alpha: s.alpha(), beta: s.beta(), rows };
            emit(&doc, doc.table(), doc.csv(), &common)
        }
        Command::Sweep { alpha, beta, lambda_min, lambda_max, samples, common } => {
            let s = steps(alpha, beta)?;
            if !(lambda_min < lambda_max) {
                return Err(invalid(format!("need lambda-min < lambda-max, got {lambda_min} and {lambda_max}")));
            }
            if samples < 2 {
                return Err(invalid(format!("need at least 2 samples, got {samples}")));
            }
            let step = (lambda_max - lambda_min) / (samples - 1) as f64;
            let lambdas: Vec<f64> =
                (0..samples).map(|i| lambda_min + step * i as f64).collect();
            let rows: Vec<RowDoc> = compare_table(&s, &lambdas).iter().map(RowDoc::new).collect();
            let doc = SweepDoc { alpha: s.alpha(), beta: s.beta(), rows };
            emit(&doc, doc.table(), doc.csv(), &common)
        }
        Command::Verify { alpha, beta, lambda, n, mode, common } => {
            let s = steps(alpha, beta)?;
            let lambda = parse_lambda(&lambda)?;
            let report = run_verify(&s, lambda, n, mode, &common)?;
            let doc = VerifyDoc::new(lambda, n, &report);
            emit(&doc, doc.table(), doc.csv(), &common)?;
            Ok(if report.pass { 0 } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn run_verify(
    s: &StepPair,
    lambda: f64,
    n: usize,
    mode: ModeArg,
    common: &CommonArgs,
) -> Result<VerifyReport, (u8, String)> {
    let to_exit = |e: Error| match e {
        Error::NotApplicable { .. } => (EXIT_NOT_APPLICABLE, e.to_string()),
        _ => invalid(e),
    };
    let forced = match mode {
        ModeArg::Auto => return hus_core::verify_case(s, lambda, n).map_err(to_exit),
        ModeArg::Bruteforce => SearchMode::BruteForce,
        ModeArg::Greedy => SearchMode::Greedy,
        ModeArg::Alternating => SearchMode::AlternatingBest,
    };
    let verdict = theorem_constant_tol(s, lambda, &common.tolerances()).map_err(invalid)?;
    match verdict.reason {
        HusReason::NotRegressive => Ok(VerifyReport {
            case: CaseTag::K,
            claimed_constant: None,
            empirical_lower_bound: 0.0,
            margin: 0.0,
            pass: true,
        }),
        HusReason::NoHus => {
            let short = adversarial_lower_bound(s, lambda, n, forced).map_err(to_exit)?;
            let long = adversarial_lower_bound(s, lambda, 2 * n, forced).map_err(to_exit)?;
            Ok(VerifyReport {
                case: verdict.case.tag,
                claimed_constant: None,
                empirical_lower_bound: long.ratio,
                margin: long.ratio - short.ratio,
                pass: long.ratio > short.ratio,
            })
        }
        HusReason::HasConstant => {
            let claimed = verdict.constant.expect("constant present");
            let bound = adversarial_lower_bound(s, lambda, n, forced).map_err(to_exit)?;
            Ok(VerifyReport {
                case: verdict.case.tag,
                claimed_constant: Some(claimed),
                empirical_lower_bound: bound.ratio,
                margin: claimed - bound.ratio,
                pass: bound.ratio <= claimed * (1.0 + 1e-9),
            })
        }
    }
}
