//! Command-line frontend: count, encode, verify.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use trapcount::analysis::{eval_state, is_trap_space, trap_spaces};
use trapcount::asp::AspProgram;
use trapcount::bnet::{
    parse_bnet, parse_perturbables, parse_phenotype, PerturbationSet, Phenotype,
};
use trapcount::count::approx::{count_approx, ApproxParams};
use trapcount::count::{
    auto_plan, count_exact, family3_robustness, phenotype_perturbable_overlap, ratio_string,
    ratio_to_decimal_3, validate_inputs, CountMode, CountOutcome, Plan, Problem,
};
use trapcount::encode::cnf::{encode_fix_cnf, render_dimacs, CnfFormula};
use trapcount::encode::{
    encode_fasp, encode_phenotype, encode_tsconj, perturb_transform, projection_atoms,
    render_asp, EncodeMode, ProjectionSet,
};
use trapcount::{BooleanNetwork, Caps, Error};

#[derive(Parser)]
#[command(
    name = "trapcount",
    version,
    about = "Count minimal trap spaces and fixed points of Boolean networks",
    long_about = "Counts minimal trap spaces and fixed points of Boolean networks, exactly at \
                  desk scale or approximately with a probabilistic (epsilon, delta) guarantee, \
                  and emits solver-ready ASP/CNF encodings for external counters.\n\nThe \
                  TRAPCOUNT_CAPS environment variable overrides the brute-force caps, e.g. \
                  TRAPCOUNT_CAPS=subspace=16,state=24,oracle=22,dnf=100000,perturb=8,conflicts=1000000."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count solutions of one of the six problems
    Count(CountArgs),
    /// Emit a solver-ready encoding (ASP rules or DIMACS CNF)
    Encode(EncodeArgs),
    /// Check one subspace: trap space, minimality, fixed point, phenotype
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Exact within caps, otherwise approximate (fixed points) or delegated
    Auto,
    /// Exhaustive enumeration, failing when a cap is exceeded
    Exact,
    /// Hashing-based counting for fixed points; trap-space problems emit
    /// their encoding for an external counter
    Approx,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    /// Answer-set program (trap spaces or fixed points)
    Asp,
    /// DIMACS CNF with `c ind` projection lines (fixed points only)
    Cnf,
}

#[derive(Args)]
struct CountArgs {
    /// Network in .bnet format
    network: PathBuf,
    /// Problem: mts1, mts2, mts3, fix1, fix2, or fix3
    #[arg(long)]
    problem: String,
    /// Phenotype file, one `variable = value` line each, values 0/1/*
    #[arg(long)]
    phenotype: Option<PathBuf>,
    /// Perturbable-variable file, one name per line
    #[arg(long)]
    perturb: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    /// Approximation tolerance, in (0, 1)
    #[arg(long, default_value_t = 0.8)]
    epsilon: f64,
    /// Approximation failure probability, in (0, 1)
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    /// Seed for the approximate counter's constraint stream
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report (or delegated encoding) to a file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Ingest the answer-set count an external counter produced for a
    /// delegated trap-space problem (decimal)
    #[arg(long)]
    external_count: Option<String>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Network in .bnet format
    network: PathBuf,
    /// Problem: mts1, mts2, mts3, fix1, fix2, or fix3
    #[arg(long)]
    problem: String,
    #[arg(long, value_enum)]
    target: TargetArg,
    /// Phenotype file, one `variable = value` line each, values 0/1/*
    #[arg(long)]
    phenotype: Option<PathBuf>,
    /// Perturbable-variable file, one name per line
    #[arg(long)]
    perturb: Option<PathBuf>,
    /// Write the encoding to a file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Network in .bnet format
    network: PathBuf,
    /// Subspace over {0,1,*}, one character per variable in declaration order
    subspace: String,
    /// Phenotype file to check the subspace against
    #[arg(long)]
    phenotype: Option<PathBuf>,
}

fn main() -> std::process::ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion =>
        {
            e.exit()
        }
        Err(e) => {
            let _ = e.print();
            return std::process::ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> std::process::ExitCode {
    let code = match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded(_)) | Some(Error::DnfCapExceeded { .. }) => 2,
        Some(Error::BudgetExhausted) | Some(Error::ApproxFailed(_)) => 3,
        _ => 1,
    };
    std::process::ExitCode::from(code)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mut caps = Caps::default();
    if let Some(spec) = std::env::var_os("TRAPCOUNT_CAPS") {
        let spec = spec
            .to_str()
            .ok_or_else(|| Error::InvalidInput("TRAPCOUNT_CAPS is not valid UTF-8".into()))?;
        caps = caps.with_overrides(spec)?;
    }
    match cli.command {
        Command::Count(args) => cmd_count(args, &caps),
        Command::Encode(args) => cmd_encode(args, &caps),
        Command::Verify(args) => cmd_verify(args, &caps),
    }
}

fn read_network(path: &Path) -> anyhow::Result<BooleanNetwork> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading network file {}", path.display()))?;
    parse_bnet(&text).with_context(|| format!("parsing network file {}", path.display()))
}

fn read_phenotype(path: &Path) -> anyhow::Result<Phenotype> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading phenotype file {}", path.display()))?;
    parse_phenotype(&text).with_context(|| format!("parsing phenotype file {}", path.display()))
}

fn read_perturbables(path: &Path) -> anyhow::Result<PerturbationSet> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading perturbable-variable file {}", path.display()))?;
    parse_perturbables(&text)
        .with_context(|| format!("parsing perturbable-variable file {}", path.display()))
}

fn write_out(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display())),
        None => {
            write_stdout(text);
            Ok(())
        }
    }
}

/// Writes to stdout, exiting quietly when the reader closed the pipe early
/// (e.g. `trapcount ... | head`) instead of panicking on the broken pipe.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing to stdout: {e}");
        std::process::exit(1);
    }
}

/// The report fields in their serialization order (alphabetical, matching
/// the JSON object order).
struct Report {
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    #[allow(clippy::too_many_arguments)]
    fn new(
        problem: Problem,
        mode: CountMode,
        count: &BigUint,
        robustness: Option<&BigRational>,
        approx: Option<&ApproxParams>,
        provenance_external: bool,
        elapsed_ms: u64,
    ) -> Report {
        let mut fields: Vec<(&'static str, Value)> = vec![
            ("count", json!(count.to_string())),
            (
                "delta",
                approx.map_or(Value::Null, |p| json!(p.delta)),
            ),
            ("elapsed_ms", json!(elapsed_ms)),
            (
                "epsilon",
                approx.map_or(Value::Null, |p| json!(p.epsilon)),
            ),
            ("mode", json!(mode.to_string())),
            ("problem", json!(problem.canonical_name())),
        ];
        if provenance_external {
            fields.push(("provenance", json!("external")));
        }
        if problem.family() == 3 {
            fields.push((
                "robustness",
                robustness.map_or(Value::Null, |r| json!(ratio_string(r))),
            ));
            fields.push((
                "robustness_decimal",
                robustness.map_or(Value::Null, |r| json!(ratio_to_decimal_3(r))),
            ));
        }
        fields.push(("seed", approx.map_or(Value::Null, |p| json!(p.seed))));
        Report { fields }
    }

    fn to_json(&self) -> String {
        let map: serde_json::Map<String, Value> = self
            .fields
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("valid JSON");
        text.push('\n');
        text
    }

    fn to_tsv(&self) -> String {
        let header: Vec<&str> = self.fields.iter().map(|(k, _)| *k).collect();
        let cells: Vec<String> = self
            .fields
            .iter()
            .map(|(_, v)| match v {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        format!("{}\n{}\n", header.join("\t"), cells.join("\t"))
    }

    fn render(&self, format: FormatArg) -> String {
        match format {
            FormatArg::Json => self.to_json(),
            FormatArg::Tsv => self.to_tsv(),
        }
    }
}

fn cmd_count(args: CountArgs, caps: &Caps) -> anyhow::Result<()> {
    let started = Instant::now();
    let problem = Problem::parse(&args.problem)?;
    let network = read_network(&args.network)?;
    let phenotype = args.phenotype.as_deref().map(read_phenotype).transpose()?;
    let perturbables = args.perturb.as_deref().map(read_perturbables).transpose()?;
    let beta = phenotype.as_ref();
    let x = perturbables.as_ref();

    validate_inputs(problem, &network, beta, x)?;
    if let (Some(beta), Some(x)) = (beta, x) {
        let shared = phenotype_perturbable_overlap(beta, x);
        if !shared.is_empty() {
            eprintln!(
                "warning: phenotype constrains perturbable variable(s): {}",
                shared.join(", ")
            );
        }
    }

    if let Some(text) = args.external_count.as_deref() {
        if problem.is_fix() {
            return Err(Error::InvalidInput(
                "--external-count ingests a delegated trap-space count; fixed-point problems \
                 are counted locally"
                    .into(),
            )
            .into());
        }
        if args.mode == ModeArg::Exact {
            return Err(Error::InvalidInput(
                "--external-count is an approximate result and cannot be combined with \
                 --mode exact"
                    .into(),
            )
            .into());
        }
        let count: BigUint = text.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("--external-count `{text}` is not a decimal integer"))
        })?;
        let robustness = match problem {
            Problem::Mts3 => family3_robustness(&count, x.unwrap()),
            _ => None,
        };
        let report = Report::new(
            problem,
            CountMode::Approx,
            &count,
            robustness.as_ref(),
            None,
            true,
            started.elapsed().as_millis() as u64,
        );
        return write_out(&report.render(args.format), args.output.as_deref());
    }

    let plan = match args.mode {
        ModeArg::Exact => Plan::Exact,
        ModeArg::Approx => {
            if problem.is_fix() {
                Plan::Approx
            } else {
                Plan::DelegateMts
            }
        }
        ModeArg::Auto => auto_plan(problem, &network, x, caps),
    };

    match plan {
        Plan::Exact => {
            let out = count_exact(problem, &network, beta, x, caps)?;
            let report = report_for(&out, None, started);
            write_out(&report.render(args.format), args.output.as_deref())
        }
        Plan::Approx => {
            let params = ApproxParams {
                epsilon: args.epsilon,
                delta: args.delta,
                seed: args.seed,
            };
            let out = count_approx(problem, &network, beta, x, caps, &params)?;
            let report = report_for(&out, Some(&params), started);
            write_out(&report.render(args.format), args.output.as_deref())
        }
        Plan::DelegateMts => {
            eprintln!(
                "note: {problem} needs an external answer-set counter at this size; emitting \
                 its encoding instead. Run a counter on the encoding and rerun with \
                 --external-count <count> to finish the report."
            );
            let (program, projection) = build_asp(problem, &network, beta, x, caps)?;
            write_out(
                &render_asp(&program, projection.as_ref()),
                args.output.as_deref(),
            )
        }
    }
}

fn report_for(out: &CountOutcome, approx: Option<&ApproxParams>, started: Instant) -> Report {
    Report::new(
        out.problem,
        out.mode,
        &out.count,
        out.robustness.as_ref(),
        approx,
        false,
        started.elapsed().as_millis() as u64,
    )
}

/// Builds the answer-set encoding for a problem: trap-space or fixed-point
/// rules, phenotype constraints, and for family 3 the perturbed network with
/// its projection set.
fn build_asp(
    problem: Problem,
    network: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: Option<&PerturbationSet>,
    caps: &Caps,
) -> anyhow::Result<(AspProgram, Option<ProjectionSet>)> {
    let (base, projection) = if problem.family() == 3 {
        let x = x.unwrap();
        (perturb_transform(network, x)?, Some(projection_atoms(x)))
    } else {
        (network.clone(), None)
    };
    let mut program = if problem.is_fix() {
        encode_fasp(&base)
    } else {
        encode_tsconj(&base, caps)?
    };
    if let Some(beta) = beta {
        let mode = if problem.is_fix() {
            EncodeMode::FixedPoints
        } else {
            EncodeMode::TrapSpaces
        };
        program.extend(encode_phenotype(beta, &base, mode)?);
    }
    Ok((program, projection))
}

/// Builds the CNF whose projected models are the fixed points; family 3
/// projects onto the perturbation helper variables.
fn build_cnf(
    problem: Problem,
    network: &BooleanNetwork,
    beta: Option<&Phenotype>,
    x: Option<&PerturbationSet>,
) -> anyhow::Result<CnfFormula> {
    if problem.family() == 3 {
        let x = x.unwrap();
        let g = perturb_transform(network, x)?;
        let delta: Vec<usize> = projection_atoms(x)
            .delta
            .iter()
            .map(|name| g.position(name).expect("helper variable exists") + 1)
            .collect();
        Ok(encode_fix_cnf(&g, beta)?.with_support(delta))
    } else {
        Ok(encode_fix_cnf(network, beta)?)
    }
}

fn cmd_encode(args: EncodeArgs, caps: &Caps) -> anyhow::Result<()> {
    let problem = Problem::parse(&args.problem)?;
    let network = read_network(&args.network)?;
    let phenotype = args.phenotype.as_deref().map(read_phenotype).transpose()?;
    let perturbables = args.perturb.as_deref().map(read_perturbables).transpose()?;
    let beta = phenotype.as_ref();
    let x = perturbables.as_ref();
    validate_inputs(problem, &network, beta, x)?;

    let text = match args.target {
        TargetArg::Asp => {
            let (program, projection) = build_asp(problem, &network, beta, x, caps)?;
            render_asp(&program, projection.as_ref())
        }
        TargetArg::Cnf => {
            if !problem.is_fix() {
                return Err(Error::InvalidInput(format!(
                    "{problem} counts trap spaces, which the CNF encoding cannot express; \
                     use --target asp"
                ))
                .into());
            }
            render_dimacs(&build_cnf(problem, &network, beta, x)?)
        }
    };
    write_out(&text, args.output.as_deref())
}

fn cmd_verify(args: VerifyArgs, caps: &Caps) -> anyhow::Result<()> {
    let network = read_network(&args.network)?;
    let phenotype = args.phenotype.as_deref().map(read_phenotype).transpose()?;
    let m = network.subspace(&args.subspace)?;

    let mut lines = vec![format!("subspace: {m}")];
    let trap = is_trap_space(&network, &m)?;
    lines.push(format!("trap space: {}", yes_no(trap)));

    let minimal = if !trap {
        Some(false)
    } else {
        match trap_spaces(&network, caps) {
            Ok(all) => Some(!all.iter().any(|t| *t != m && t.le_spec(&m))),
            Err(Error::CapExceeded(_)) => None,
            Err(e) => return Err(e.into()),
        }
    };
    lines.push(match minimal {
        Some(b) => format!("minimal trap space: {}", yes_no(b)),
        None => "minimal trap space: not computed (cap exceeded)".to_string(),
    });

    let fixed = match m.to_state() {
        Some(s) => {
            let mut all = true;
            for (i, (_, expr)) in network.functions().enumerate() {
                if eval_state(expr, &s)? != s.values()[i] {
                    all = false;
                    break;
                }
            }
            all
        }
        None => false,
    };
    lines.push(format!("fixed point: {}", yes_no(fixed)));

    if let Some(beta) = phenotype.as_ref() {
        lines.push(format!(
            "phenotype satisfied: {}",
            yes_no(beta.satisfied_by(&m)?)
        ));
    }

    write_stdout(&format!("{}\n", lines.join("\n")));
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
