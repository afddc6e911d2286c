//! Command-line front end. Exit status mirrors the verdict: 0 holds,
//! 1 refuted, 2 unknown; 64 usage error, 65 malformed input, 70 numeric
//! failure.

use std::ffi::OsString;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::distributions::{
    default_gamma_grid, gamma_convolution_cdf, nb_convolution, write_grid_survival_csv, write_pmf_survival_csv,
    ConvolutionSpec, Family, DEFAULT_TAIL_CAP,
};
use crate::error::Error;
use crate::harness::{
    examine_candidate, explore_counterexamples, gamma_pair_residual, gamma_single_residual, nb_mixture_residual,
    nb_pair_residual, parameter_pairs, run_scenario, verify_theorem_instance, write_reports, Agreement,
    IdentityResidual, Order, ScenarioKind, VerifyOptions,
};
use crate::rc_order::{decide_wrc, verify_rc_chain, ChainMode, DecideOptions, RcChain};
use crate::verdict::OrderVerdict;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;

pub const TAIL_CAP_ENV: &str = "STOCHORD_TAIL_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "stochord",
    version,
    about = "Parameter orders and stochastic-order certificates for gamma and negative binomial convolutions"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Slack for numeric order checks.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Certified tail mass per distribution [env: STOCHORD_TAIL_CAP].
    #[arg(long, global = true)]
    tail_cap: Option<f64>,
    /// Points on gamma CDF grids.
    #[arg(long, global = true, default_value_t = 256)]
    grid_points: usize,
    /// Search budget for the parameter-order decision.
    #[arg(long, global = true, default_value_t = 20_000)]
    budget: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Conv,
    St,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Conv => Order::Conv,
            OrderArg::St => Order::St,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Prop {
    NbMixture,
    NbPair,
    GammaSingle,
    GammaPair,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the weak reverse-coupled order on the parameter pairs of a
    /// pair file.
    CheckOrder {
        pair_file: PathBuf,
        /// Parameter coordinates: scales (conv) or log scales (st).
        #[arg(long, value_enum, default_value = "conv")]
        order: OrderArg,
        /// Decide the strict order instead of the weak one.
        #[arg(long)]
        strict: bool,
        /// Write the witness chain here when the order holds.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        /// Check this witness chain instead of searching.
        #[arg(long, conflicts_with = "emit_witness")]
        verify_witness: Option<PathBuf>,
    },
    /// Parameter order plus numeric certificate for a pair file.
    Verify {
        pair_file: PathBuf,
        #[arg(long, value_enum)]
        order: OrderArg,
    },
    /// Residual of a mixture identity.
    Identity {
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Outer success probability (nb-mixture) or latent success (gamma-single).
        #[arg(long, default_value_t = 0.5)]
        p1: f64,
        /// Latent success probability (nb-mixture).
        #[arg(long, default_value_t = 0.4)]
        p2: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.6)]
        c0: f64,
        /// Spread of the mixed pair.
        #[arg(long, default_value_t = 0.1)]
        small: f64,
        /// Spread of the target pair.
        #[arg(long, default_value_t = 0.3)]
        big: f64,
        /// Residual above which the identity is reported as failed.
        #[arg(long, default_value_t = 1e-9)]
        max_residual: f64,
    },
    /// Generate and verify scenario instances, one JSON report per line.
    Harness {
        #[arg(long, value_parser = parse_scenario)]
        scenario: ScenarioKind,
        /// Seed range `A..B` (B exclusive).
        #[arg(long, value_parser = parse_seeds)]
        seeds: Range<u64>,
        #[arg(long, short, default_value_t = 3)]
        n: usize,
        /// Append reports to this file instead of printing them.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for weakly ordered gamma pairs whose latent quotient is negative.
    Explore {
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Survival curve of a spec file as CSV.
    ExportSurvival {
        spec_file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_scenario(s: &str) -> Result<ScenarioKind, String> {
    s.parse().map_err(|e: Error| {
        let names: Vec<_> = ScenarioKind::ALL.iter().map(|k| k.name()).collect();
        format!("{e}; expected one of {}", names.join(", "))
    })
}

fn parse_seeds(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: u64 = a.parse().map_err(|e| format!("bad start {a:?}: {e}"))?;
    let b: u64 = b.parse().map_err(|e| format!("bad end {b:?}: {e}"))?;
    if a >= b {
        return Err(format!("empty seed range {a}..{b}"));
    }
    Ok(a..b)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    config1: ConvolutionSpec,
    config2: ConvolutionSpec,
}

/// Exit status for a library error.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) | Error::SupportTooLarge { .. } => EXIT_SOFTWARE,
        _ => EXIT_DATA,
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code_for(&e), e.to_string())
    }
}

type CliResult = std::result::Result<i32, Failure>;

fn read_to_string(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn read_pair(path: &Path) -> std::result::Result<PairFile, Failure> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn write_output(
    path: Option<&Path>,
    out: &mut dyn Write,
    bytes: &[u8],
    append: bool,
) -> std::result::Result<(), Failure> {
    let io = |e: std::io::Error| Failure(EXIT_DATA, e.to_string());
    match path {
        Some(p) => {
            let mut f = OpenOptions::new()
                .create(true)
                .write(true)
                .append(append)
                .truncate(!append)
                .open(p)
                .map_err(io)?;
            f.write_all(bytes).map_err(io)
        }
        None => out.write_all(bytes).map_err(io),
    }
}

fn json_line(v: &impl serde::Serialize) -> std::result::Result<String, Failure> {
    Ok(serde_json::to_string(v).map_err(Error::from)? + "\n")
}

fn options(g: &Global) -> std::result::Result<VerifyOptions, Failure> {
    let tail_cap = match g.tail_cap {
        Some(t) => t,
        None => match std::env::var(TAIL_CAP_ENV) {
            Ok(s) => s
                .parse()
                .map_err(|e| Failure(EXIT_USAGE, format!("{TAIL_CAP_ENV}={s:?}: {e}")))?,
            Err(_) => DEFAULT_TAIL_CAP,
        },
    };
    if !(tail_cap > 0.0 && tail_cap < 1.0) {
        return Err(Failure(EXIT_USAGE, format!("tail cap {tail_cap} must lie in (0, 1)")));
    }
    if !(g.tol > 0.0) {
        return Err(Failure(EXIT_USAGE, format!("tolerance {} must be positive", g.tol)));
    }
    Ok(VerifyOptions {
        tol: g.tol,
        tail_cap,
        budget: g.budget,
        grid_points: g.grid_points,
    })
}

fn check_order(
    path: &Path,
    order: Order,
    strict: bool,
    emit: Option<&Path>,
    verify: Option<&Path>,
    opts: &VerifyOptions,
    out: &mut dyn Write,
) -> CliResult {
    let pair = read_pair(path)?;
    let (p1, p2) = parameter_pairs(&pair.config1, &pair.config2, order)?;
    if let Some(w) = verify {
        let chain =
            RcChain::from_json(&read_to_string(w)?).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", w.display())))?;
        let accepted = verify_rc_chain(&chain)
            && crate::arrangement::check_pair_equal_a(chain.first(), &p1)?
            && crate::arrangement::check_pair_equal_a(chain.last(), &p2)?;
        let line = json_line(&serde_json::json!({ "witness_accepted": accepted, "moves": chain.num_moves() }))?;
        write_output(None, out, line.as_bytes(), false)?;
        return Ok(if accepted { 0 } else { 1 });
    }
    let mode = if strict { ChainMode::Strict } else { ChainMode::Weak };
    let verdict = decide_wrc(&p1, &p2, mode, DecideOptions { budget: opts.budget })?;
    if let (Some(path), OrderVerdict::Holds { evidence }) = (emit, &verdict) {
        write_output(Some(path), out, (evidence.to_json()? + "\n").as_bytes(), false)?;
    }
    write_output(None, out, json_line(&verdict)?.as_bytes(), false)?;
    Ok(verdict.exit_code())
}

fn identity(cmd: &Command, opts: &VerifyOptions, out: &mut dyn Write) -> CliResult {
    let Command::Identity {
        prop,
        alpha,
        p1,
        p2,
        beta,
        c0,
        small,
        big,
        max_residual,
    } = *cmd
    else {
        unreachable!()
    };
    let r: IdentityResidual = match prop {
        Prop::NbMixture => nb_mixture_residual(alpha, p1, p2, opts.tail_cap)?,
        Prop::NbPair => nb_pair_residual(alpha, c0, small, big, opts.tail_cap)?,
        Prop::GammaSingle => gamma_single_residual(alpha, p1, beta, opts.tail_cap)?,
        Prop::GammaPair => gamma_pair_residual(alpha, c0, small, big, opts.tail_cap)?,
    };
    write_output(None, out, json_line(&r)?.as_bytes(), false)?;
    Ok(if r.residual <= max_residual { 0 } else { 1 })
}

fn harness(
    kind: ScenarioKind,
    seeds: Range<u64>,
    n: usize,
    path: Option<&Path>,
    opts: &VerifyOptions,
    out: &mut dyn Write,
) -> CliResult {
    let mut reports = Vec::new();
    for r in run_scenario(kind, n, seeds, opts) {
        reports.push(r?);
    }
    let mut buf = Vec::new();
    write_reports(&mut buf, &reports)?;
    write_output(path, out, &buf, true)?;
    let worst = reports
        .iter()
        .map(|r| match r.agreement {
            Agreement::Agree => 0,
            Agreement::Discrepancy => 1,
            Agreement::NumericInconclusive | Agreement::NoClaim => 2,
        })
        .max();
    Ok(match worst {
        Some(1) => 1,
        Some(2) => 2,
        _ => 0,
    })
}

fn explore(budget: usize, seed: u64, opts: &VerifyOptions, out: &mut dyn Write) -> CliResult {
    if budget == 0 {
        return Err(Failure(EXIT_USAGE, "budget must be at least 1".into()));
    }
    let found = explore_counterexamples(budget, seed, opts)?;
    let mut buf = String::new();
    for c in &found {
        // re-verify before emitting
        if examine_candidate(&c.spec1, &c.spec2, &c.witness, opts)?.is_some() {
            buf += &json_line(c)?;
        }
    }
    write_output(None, out, buf.as_bytes(), false)?;
    Ok(0)
}

fn export_survival(path: &Path, dest: Option<&Path>, opts: &VerifyOptions, out: &mut dyn Write) -> CliResult {
    let text = read_to_string(path)?;
    let spec: ConvolutionSpec =
        serde_json::from_str(&text).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", path.display())))?;
    let mut buf = Vec::new();
    match spec.family() {
        Family::NegBin => write_pmf_survival_csv(&mut buf, &nb_convolution(&spec, opts.tail_cap)?)?,
        Family::Gamma => {
            let grid = default_gamma_grid(&spec, &spec, opts.grid_points, opts.tail_cap)?;
            write_grid_survival_csv(&mut buf, &gamma_convolution_cdf(&spec, &grid, opts.tail_cap)?)?
        }
    }
    write_output(dest, out, &buf, false)?;
    Ok(0)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    let opts = options(&cli.global)?;
    match &cli.command {
        Command::CheckOrder {
            pair_file,
            order,
            strict,
            emit_witness,
            verify_witness,
        } => check_order(
            pair_file,
            (*order).into(),
            *strict,
            emit_witness.as_deref(),
            verify_witness.as_deref(),
            &opts,
            out,
        ),
        Command::Verify { pair_file, order } => {
            let pair = read_pair(pair_file)?;
            let r = verify_theorem_instance(&pair.config1, &pair.config2, (*order).into(), &opts)?;
            write_output(None, out, json_line(&r)?.as_bytes(), false)?;
            Ok(r.exit_code())
        }
        cmd @ Command::Identity { .. } => identity(cmd, &opts, out),
        Command::Harness {
            scenario,
            seeds,
            n,
            out: path,
        } => harness(*scenario, seeds.clone(), *n, path.as_deref(), &opts, out),
        Command::Explore { budget, seed } => explore(*budget, *seed, &opts, out),
        Command::ExportSurvival { spec_file, out: path } => export_survival(spec_file, path.as_deref(), &opts, out),
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
