//! Command-line front end: kernel ingestion, norm computation,
//! verification suites, uniform-boundedness experiments, report
//! emission.
//!
//! Exit codes: 0 success, 1 property failure, 2 parse/argument error,
//! 3 domain mismatch, 4 cone violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use maxkernel::norms::{
    empirical_lip_seminorm, empirical_op_norm, exact_norm_continuous, exact_norm_finite,
    NormEstimate, NormWitness,
};
use maxkernel::verify::{
    run_axiom_suite, run_suite, ubp_experiment, FamilyGenerator, FamilySpec, PropertyReport,
    PropertyStatus, PropertyWitness, SuiteReport,
};
use maxkernel::{formats, ConeOperator, Error, KernelOperator, SampledFunction};

/// Normality constant of the positive cone under the sup norm.
const NORMALITY_CONSTANT: f64 = 1.0;

#[derive(Parser)]
#[command(name = "maxkernel")]
#[command(about = "Max-type kernel operators: application, norms, and property verification")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a sampled function and write the result
    Apply {
        #[command(flatten)]
        operator: OperatorArgs,
        /// Input function (SampledFunction JSON)
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the exact operator norm and its empirical estimate
    Norm {
        #[command(flatten)]
        operator: OperatorArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compute the exact Lipschitz seminorm and its empirical estimate
    Lipschitz {
        #[command(flatten)]
        operator: OperatorArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full property suite on an operator
    Verify {
        #[command(flatten)]
        operator: OperatorArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Swap in a known-bad test double (harness self-test)
        #[cfg(debug_assertions)]
        #[arg(long, value_name = "NAME")]
        inject_bad: Option<String>,
    },
    /// Run the uniform-boundedness experiment on a generated family
    Ubp {
        /// Family generator: uniform, zero, or mixed
        #[arg(long, default_value = "uniform")]
        gen: String,
        /// Number of operators in the family
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Cap applied to every kernel entry
        #[arg(long, default_value_t = 1.0)]
        bound: f64,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OperatorArgs {
    /// Finite kernel CSV (m rows x m columns of nonnegative decimals)
    #[arg(long)]
    kernel: Option<PathBuf>,
    /// Continuous kernel spec JSON
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct SamplingArgs {
    /// Number of random trials per estimator or check
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Base seed; every report records it
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format
    #[arg(long, default_value = "json", value_parser = ["json", "text"])]
    format: String,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error carrying its CLI exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn args(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DomainMismatch { .. } => 3,
            Error::ConeViolation { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Flags echoed into every report so a run can be reproduced from its
/// own output.
#[derive(Serialize)]
struct ConfigEcho {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    gen: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inject_bad: Option<String>,
    trials: usize,
    seed: u64,
    format: String,
}

impl ConfigEcho {
    fn new(command: &'static str, sampling: &SamplingArgs, output: &OutputArgs) -> Self {
        ConfigEcho {
            command,
            kernel: None,
            spec: None,
            gen: None,
            count: None,
            bound: None,
            inject_bad: None,
            trials: sampling.trials,
            seed: sampling.seed,
            format: output.format.clone(),
        }
    }

    fn with_operator(mut self, args: &OperatorArgs) -> Self {
        self.kernel = args.kernel.as_ref().map(|p| p.display().to_string());
        self.spec = args.spec.as_ref().map(|p| p.display().to_string());
        self
    }
}

#[derive(Serialize)]
struct NormReport<'a> {
    config: &'a ConfigEcho,
    exact: f64,
    empirical: &'a NormEstimate,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a ConfigEcho,
    #[serde(flatten)]
    suite: &'a SuiteReport,
}

#[derive(Serialize)]
struct UbpReport<'a> {
    config: &'a ConfigEcho,
    probe_bounds: &'a [f64],
    certified_bound: f64,
    sup_lip_seminorm: f64,
    report: &'a PropertyReport,
    overall: PropertyStatus,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Apply {
            operator,
            input,
            output,
        } => cmd_apply(&operator, &input, &output),
        Command::Norm {
            operator,
            sampling,
            output,
        } => cmd_norm_or_lipschitz("norm", &operator, &sampling, &output),
        Command::Lipschitz {
            operator,
            sampling,
            output,
        } => cmd_norm_or_lipschitz("lipschitz", &operator, &sampling, &output),
        Command::Verify {
            operator,
            sampling,
            output,
            #[cfg(debug_assertions)]
            inject_bad,
        } => {
            #[cfg(not(debug_assertions))]
            let inject_bad: Option<String> = None;
            cmd_verify(&operator, &sampling, &output, inject_bad)
        }
        Command::Ubp {
            gen,
            count,
            bound,
            sampling,
            output,
        } => cmd_ubp(&gen, count, bound, &sampling, &output),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::args(format!("cannot read {}: {e}", path.display())))
}

fn load_operator(args: &OperatorArgs) -> Result<KernelOperator, Failure> {
    match (&args.kernel, &args.spec) {
        (Some(path), None) => {
            let kernel = formats::parse_finite_kernel_csv(&read_file(path)?)?;
            Ok(KernelOperator::finite(kernel))
        }
        (None, Some(path)) => {
            let spec = formats::parse_continuous_spec_json(&read_file(path)?)?;
            Ok(KernelOperator::continuous(spec))
        }
        _ => Err(Failure::args(
            "exactly one of --kernel or --spec is required",
        )),
    }
}

fn emit(output: &OutputArgs, rendered: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Failure::args(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

fn cmd_apply(
    operator: &OperatorArgs,
    input: &Path,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let op = load_operator(operator)?;
    let f = formats::parse_function_json(&read_file(input)?)?;
    let result = op.apply(&f)?;
    let rendered = match output.format.as_str() {
        "json" => to_json(&result),
        _ => render_function_text(&result),
    };
    emit(output, rendered)?;
    Ok(0)
}

fn cmd_norm_or_lipschitz(
    command: &'static str,
    operator: &OperatorArgs,
    sampling: &SamplingArgs,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let op = load_operator(operator)?;
    let exact = match &op {
        KernelOperator::Finite(k) => exact_norm_finite(k),
        KernelOperator::Continuous(c) => exact_norm_continuous(c.spec(), c.mask()),
    };
    let empirical = if command == "norm" {
        empirical_op_norm(&op, sampling.trials, sampling.seed)?
    } else {
        empirical_lip_seminorm(&op, sampling.trials, sampling.seed)?
    };
    let config = ConfigEcho::new(command, sampling, output).with_operator(operator);
    let report = NormReport {
        config: &config,
        exact,
        empirical: &empirical,
    };
    let rendered = match output.format.as_str() {
        "json" => to_json(&report),
        _ => render_norm_text(command, &report),
    };
    emit(output, rendered)?;
    Ok(0)
}

fn cmd_verify(
    operator: &OperatorArgs,
    sampling: &SamplingArgs,
    output: &OutputArgs,
    inject_bad: Option<String>,
) -> Result<u8, Failure> {
    let op = load_operator(operator)?;
    let suite = match &inject_bad {
        Some(name) => {
            // self-test path: the double replaces the operator for the
            // axiom checks; the exact-norm checks do not apply to it
            let kind: maxkernel::verify::doubles::BadOperatorKind = name.parse()?;
            let double = kind.build(op.domain().size())?;
            run_axiom_suite(double.as_ref(), sampling.trials, sampling.seed)?
        }
        None => run_suite(&op, sampling.trials, sampling.seed, NORMALITY_CONSTANT)?,
    };
    let mut config = ConfigEcho::new("verify", sampling, output).with_operator(operator);
    config.inject_bad = inject_bad;
    let report = VerifyReport {
        config: &config,
        suite: &suite,
    };
    let rendered = match output.format.as_str() {
        "json" => to_json(&report),
        _ => render_suite_text(&suite),
    };
    emit(output, rendered)?;
    Ok(if suite.overall.is_pass() { 0 } else { 1 })
}

fn cmd_ubp(
    gen: &str,
    count: usize,
    bound: f64,
    sampling: &SamplingArgs,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let generator: FamilyGenerator = gen.parse()?;
    let family = FamilySpec::new(count, generator, sampling.seed, bound)?;
    let report = ubp_experiment(&family, NORMALITY_CONSTANT)?;
    let (probe_bounds, certified_bound, sup_lip_seminorm) = match &report.witness {
        PropertyWitness::Family {
            probe_bounds,
            certified_bound,
            sup_lip_seminorm,
        } => (probe_bounds.clone(), *certified_bound, *sup_lip_seminorm),
        _ => unreachable!("family experiment always yields a family witness"),
    };
    let mut config = ConfigEcho::new("ubp", sampling, output);
    config.gen = Some(gen.to_string());
    config.count = Some(count);
    config.bound = Some(bound);
    let ubp = UbpReport {
        config: &config,
        probe_bounds: &probe_bounds,
        certified_bound,
        sup_lip_seminorm,
        report: &report,
        overall: report.status,
    };
    let rendered = match output.format.as_str() {
        "json" => to_json(&ubp),
        _ => render_ubp_text(&ubp),
    };
    emit(output, rendered)?;
    Ok(if report.status.is_pass() { 0 } else { 1 })
}

fn status_word(status: PropertyStatus) -> &'static str {
    if status.is_pass() {
        "pass"
    } else {
        "fail"
    }
}

fn render_function_text(f: &SampledFunction) -> String {
    let values: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
    format!("{}: [{}]\n", f.domain(), values.join(", "))
}

fn render_norm_text(command: &str, report: &NormReport<'_>) -> String {
    let label = if command == "norm" {
        "operator norm"
    } else {
        "Lipschitz seminorm"
    };
    let mut text = String::new();
    text.push_str(&format!("exact {label}: {}\n", report.exact));
    text.push_str(&format!(
        "empirical {label}: {} (trials {}, seed {})\n",
        report.empirical.value, report.empirical.trials, report.empirical.seed
    ));
    match &report.empirical.witness {
        NormWitness::Point(f) => {
            text.push_str(&format!("witness: {}", render_function_text(f)))
        }
        NormWitness::Pair(f, g) => {
            text.push_str(&format!("witness lhs: {}", render_function_text(f)));
            text.push_str(&format!("witness rhs: {}", render_function_text(g)));
        }
    }
    text
}

fn render_suite_text(suite: &SuiteReport) -> String {
    let mut text = format!("operator: {}\n", suite.operator);
    for report in &suite.reports {
        text.push_str(&format!(
            "{}: {} (worst violation {:e}, tolerance {:e}, trials {}, seed {})\n",
            report.property,
            status_word(report.status),
            report.worst_violation,
            report.tolerance,
            report.trials,
            report.seed
        ));
    }
    text.push_str(&format!(
        "{}: {} (implied by {})\n",
        suite.derived.property,
        suite.derived.status,
        suite.derived.implied_by.join(", ")
    ));
    text.push_str(&format!("overall: {}\n", status_word(suite.overall)));
    text
}

fn render_ubp_text(ubp: &UbpReport<'_>) -> String {
    let bounds: Vec<String> = ubp.probe_bounds.iter().map(|b| b.to_string()).collect();
    format!(
        "family: {} operators, entry cap {}, seed {}\n\
         probe bounds: [{}]\n\
         certified uniform bound: {}\n\
         sup Lipschitz seminorm: {}\n\
         overall: {}\n",
        ubp.config.count.unwrap_or(0),
        ubp.config.bound.unwrap_or(0.0),
        ubp.config.seed,
        bounds.join(", "),
        ubp.certified_bound,
        ubp.sup_lip_seminorm,
        status_word(ubp.overall)
    )
}
