//! `dnastore`: capacity calculators, channel simulation, codec roundtrips
//! and sweeps for the shuffling-sampling channel.

mod format;
mod parse;
mod presets;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dnastore_core::capacity::{
    dmc_capacity_ba, noise_free_capacity, noisy_capacity, sdmc_capacity, tradeoff_point, DEFAULT_BA_MAX_ITER,
    DEFAULT_BA_TOL,
};
use dnastore_core::channel::{q0_of, ChannelParams, SamplingSpec};
use dnastore_core::codec::CodecConfig;
use dnastore_core::montecarlo::{
    rate_vs_capacity_sweep, region_sweep, run, run_with_threads, tradeoff_sweep, write_csv, write_jsonl,
    ExperimentKind, ExperimentResult, ExperimentSpec, RateSweep, SweepAxis,
};
use dnastore_core::CapacityResult;
use presets::Preset;

/// Base seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 1729;

#[derive(Parser)]
#[command(
    name = "dnastore",
    version,
    about = "Shuffling-sampling channel toolkit for DNA storage"
)]
struct Cli {
    /// Significant digits for printed numbers.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u16).range(1..=17))]
    precision: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a capacity formula.
    Capacity(CapacityArgs),
    /// Minimum beta of the characterized region over a grid of p, as CSV.
    Region(RegionArgs),
    /// Storage/recovery rate tradeoff at a coverage depth, or a CSV boundary.
    Tradeoff(TradeoffArgs),
    /// Run a channel or bound experiment.
    Simulate(SimulateArgs),
    /// Encode random messages, send them through the channel and decode.
    Roundtrip(RoundtripArgs),
    /// Capacity, achieved rate and decode success along a parameter grid, as CSV.
    Sweep(SweepArgs),
    /// List the named presets.
    Presets,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    NoiseFree,
    Noisy,
    Sdmc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct CapacityArgs {
    /// Which capacity formula to evaluate.
    #[arg(long, value_enum)]
    model: Model,
    /// Probability a molecule is never sampled (noise-free model).
    #[arg(long)]
    q0: Option<f64>,
    /// Erasure probability (Bernoulli sampling).
    #[arg(long)]
    q: Option<f64>,
    /// Poisson coverage depth; sets the erasure probability to e^-lambda.
    #[arg(long)]
    lambda: Option<f64>,
    /// PCR amplification parameter; with --lambda, compound-Poisson sampling.
    #[arg(long, requires = "lambda")]
    alpha: Option<f64>,
    /// BSC crossover probability (noisy model).
    #[arg(long)]
    p: Option<f64>,
    /// Molecule length over log2 of the molecule count.
    #[arg(long)]
    beta: f64,
    /// Per-read channel for the sdmc model: bsc:<p> or file:<path>.
    #[arg(long)]
    matrix: Option<String>,
    /// Output as key=value text or a JSON object.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RegionArgs {
    /// Crossover grid, start:stop:step or a comma list.
    #[arg(long)]
    p_grid: String,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TradeoffArgs {
    /// Molecule length over log2 of the molecule count; must exceed 1.
    #[arg(long)]
    beta: f64,
    /// Single coverage depth.
    #[arg(long, conflicts_with = "lambda_grid", required_unless_present = "lambda_grid")]
    lambda: Option<f64>,
    /// Depth grid, start:stop:step or a comma list; emits CSV.
    #[arg(long)]
    lambda_grid: Option<String>,
    /// CSV destination for --lambda-grid; standard output when absent.
    #[arg(long, requires = "lambda_grid")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunOpts {
    /// Base seed; trial i uses a seed derived from it and i.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of trials; presets supply their own default.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    trials: Option<u64>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, env = "DNASTORE_THREADS", default_value_t = 0)]
    threads: usize,
    /// JSON-lines destination for per-trial records.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON destination for the run summary.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Exit with status 1 when a preset verdict fails.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimKind {
    /// Unseen fraction; needs --m, --beta or --l, --sampling.
    Q0,
    /// Repetition-index scheme; needs --m, --l, --sampling.
    Short,
    /// Per-read flip tail; needs --l, --p, --delta.
    Chernoff,
    /// Distinct coupons in lambda M draws; needs --m, --lambda, --delta.
    Coupon,
}

#[derive(Args)]
struct SimulateArgs {
    /// Named experiment with a pass/fail verdict (see `presets`).
    #[arg(long, value_enum, conflicts_with = "kind")]
    preset: Option<Preset>,
    /// Experiment to run when no preset is given.
    #[arg(long, value_enum, required_unless_present = "preset")]
    kind: Option<SimKind>,
    /// Number of molecules (or coupons).
    #[arg(long)]
    m: Option<usize>,
    /// Sets L = ceil(beta log2 M).
    #[arg(long, conflicts_with = "l")]
    beta: Option<f64>,
    /// Bits per molecule.
    #[arg(long)]
    l: Option<usize>,
    /// BSC crossover probability.
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// bernoulli:<q>, poisson:<lambda> or pcr:<lambda>,<alpha>.
    #[arg(long)]
    sampling: Option<String>,
    /// Tail threshold offset.
    #[arg(long)]
    delta: Option<f64>,
    /// Draws per coupon.
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Args)]
struct RoundtripArgs {
    /// Named coding experiment with a pass/fail verdict.
    #[arg(long, value_enum, conflicts_with_all = ["m", "l", "inner", "outer_k"])]
    preset: Option<Preset>,
    /// Number of molecules.
    #[arg(long, required_unless_present = "preset")]
    m: Option<usize>,
    /// Bits per molecule.
    #[arg(long, required_unless_present = "preset")]
    l: Option<usize>,
    /// identity, rep:<r> or table:<k>[:<seed>].
    #[arg(long, default_value = "identity")]
    inner: String,
    /// Outer Reed-Solomon dimension.
    #[arg(long, required_unless_present = "preset")]
    outer_k: Option<usize>,
    /// bernoulli:<q>, poisson:<lambda> or pcr:<lambda>,<alpha>.
    #[arg(long, default_value = "bernoulli:0")]
    sampling: String,
    /// BSC crossover probability.
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[command(flatten)]
    run: RunOpts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Axis {
    Lambda,
    Q,
    P,
}

#[derive(Args)]
struct SweepArgs {
    /// Channel parameter to vary.
    #[arg(long, value_enum)]
    axis: Axis,
    /// Grid for the axis, start:stop:step or a comma list.
    #[arg(long)]
    grid: String,
    /// Number of molecules.
    #[arg(long)]
    m: usize,
    /// Bits per molecule.
    #[arg(long)]
    l: usize,
    /// identity, rep:<r> or table:<k>[:<seed>].
    #[arg(long, default_value = "identity")]
    inner: String,
    /// Outer Reed-Solomon dimension.
    #[arg(long)]
    outer_k: usize,
    /// Erasure probability when the axis is not q or lambda.
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Crossover when the axis is not p.
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    /// Trials per grid point; 0 skips simulation.
    #[arg(long, default_value_t = 200)]
    trials: u64,
    /// Base seed; grid point i uses a seed derived from it and i.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = move |x: f64| format::num(x, cli.precision as usize);
    match dispatch(cli.command, &fmt) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means a verdict failed under `--strict`.
fn dispatch(command: Command, fmt: &dyn Fn(f64) -> String) -> Result<bool> {
    match command {
        Command::Capacity(a) => capacity(a, fmt).map(|_| true),
        Command::Region(a) => region(a).map(|_| true),
        Command::Tradeoff(a) => tradeoff(a, fmt).map(|_| true),
        Command::Simulate(a) => simulate(a, fmt),
        Command::Roundtrip(a) => roundtrip(a, fmt),
        Command::Sweep(a) => sweep(a).map(|_| true),
        Command::Presets => {
            for p in Preset::value_variants() {
                let help = p.to_possible_value().and_then(|v| v.get_help().map(|h| h.to_string()));
                println!("{:<16} {}", p.name(), help.unwrap_or_default());
            }
            Ok(true)
        }
    }
}

/// Erasure probability from exactly one of `--q`, `--q0` or `--lambda`
/// (optionally with `--alpha`).
fn erasure_probability(a: &CapacityArgs) -> Result<f64> {
    let from_lambda = match (a.lambda, a.alpha) {
        (Some(l), Some(alpha)) => Some(q0_of(&SamplingSpec::poisson_pcr(l, alpha)?)),
        (Some(l), None) => Some(q0_of(&SamplingSpec::poisson(l)?)),
        _ => None,
    };
    match (a.q0, a.q, from_lambda) {
        (Some(v), None, None) | (None, Some(v), None) | (None, None, Some(v)) => Ok(v),
        (None, None, None) => bail!("give one of --q0, --q or --lambda"),
        _ => bail!("--q0, --q and --lambda are mutually exclusive"),
    }
}

fn capacity(a: CapacityArgs, fmt: &dyn Fn(f64) -> String) -> Result<()> {
    let q = erasure_probability(&a)?;
    let mut extra = Vec::new();
    let (name, res): (&str, CapacityResult) = match a.model {
        Model::NoiseFree => {
            if a.p.is_some() || a.matrix.is_some() {
                bail!("--p and --matrix do not apply to the noise-free model");
            }
            ("noise-free", noise_free_capacity(q, a.beta)?)
        }
        Model::Noisy => {
            let Some(p) = a.p else {
                bail!("the noisy model needs --p")
            };
            if a.matrix.is_some() {
                bail!("--matrix applies only to the sdmc model");
            }
            ("noisy", noisy_capacity(q, p, a.beta)?)
        }
        Model::Sdmc => {
            let Some(spec) = &a.matrix else {
                bail!("the sdmc model needs --matrix")
            };
            if a.p.is_some() {
                bail!("--p does not apply to the sdmc model; use --matrix bsc:<p>");
            }
            let m = parse::matrix(spec)?;
            let c = dmc_capacity_ba(&m, DEFAULT_BA_TOL, DEFAULT_BA_MAX_ITER)?.capacity;
            extra.push(("c_dmc", c));
            ("sdmc", sdmc_capacity(&m, q, a.beta)?)
        }
    };
    match a.format {
        Format::Text => {
            let mut line = format!("capacity={} valid={}", fmt(res.value), res.valid);
            if let Some(m) = res.condition_margin {
                line += &format!(" margin={}", fmt(m));
            }
            for (k, v) in &extra {
                line += &format!(" {k}={}", fmt(*v));
            }
            if res.clamped {
                line += " clamped=true";
            }
            println!("{line}");
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "model": name,
                "capacity": res.value,
                "valid": res.valid,
                "condition_margin": res.condition_margin,
                "clamped": res.clamped,
            });
            for (k, v) in extra {
                obj[k] = v.into();
            }
            println!("{obj}");
        }
    }
    Ok(())
}

fn region(a: RegionArgs) -> Result<()> {
    let (rows, skipped) = region_sweep(&parse::grid(&a.p_grid)?);
    for p in skipped {
        eprintln!("warning: skipping p = {p}: the region is only characterized for 0 <= p < 1/4");
    }
    emit_csv(&rows, a.out.as_deref())
}

fn tradeoff(a: TradeoffArgs, fmt: &dyn Fn(f64) -> String) -> Result<()> {
    if let Some(lambda) = a.lambda {
        let t = tradeoff_point(lambda, a.beta)?;
        println!("rs={} rr={}", fmt(t.rs_max), fmt(t.rr_max));
        return Ok(());
    }
    let grid = parse::grid(a.lambda_grid.as_deref().expect("clap requires a lambda or a grid"))?;
    emit_csv(&tradeoff_sweep(a.beta, &grid)?, a.out.as_deref())
}

fn emit_csv<S: serde::Serialize>(rows: &[S], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(rows, BufWriter::new(file))?;
        }
        None => write_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str, what: &str) -> Result<T> {
    v.with_context(|| format!("{what} needs {flag}"))
}

fn simulate(a: SimulateArgs, fmt: &dyn Fn(f64) -> String) -> Result<bool> {
    if let Some(preset) = a.preset {
        return run_preset(preset, &a.run, fmt);
    }
    let kind = match a.kind.expect("clap requires a kind or a preset") {
        SimKind::Q0 => {
            let m = need(a.m, "--m", "q0")?;
            let sampling = parse::sampling(&need(a.sampling, "--sampling", "q0")?)?;
            let channel = match (a.beta, a.l) {
                (Some(beta), None) => ChannelParams::new(m, beta, a.p, sampling)?,
                (None, Some(l)) => ChannelParams::with_length(m, l, a.p, sampling)?,
                _ => bail!("q0 needs --beta or --l"),
            };
            ExperimentKind::EstimateQ0 { channel }
        }
        SimKind::Short => {
            let sampling = parse::sampling(&need(a.sampling, "--sampling", "short")?)?;
            ExperimentKind::ShortMolecule {
                channel: ChannelParams::with_length(
                    need(a.m, "--m", "short")?,
                    need(a.l, "--l", "short")?,
                    a.p,
                    sampling,
                )?,
            }
        }
        SimKind::Chernoff => ExperimentKind::BoundCheck {
            l: need(a.l, "--l", "chernoff")?,
            p: a.p,
            delta: need(a.delta, "--delta", "chernoff")?,
        },
        SimKind::Coupon => ExperimentKind::CouponTail {
            m: need(a.m, "--m", "coupon")?,
            lambda: need(a.lambda, "--lambda", "coupon")?,
            delta: need(a.delta, "--delta", "coupon")?,
        },
    };
    let spec = ExperimentSpec::new(kind, a.run.trials.unwrap_or(100), a.run.seed);
    finish(&spec, &a.run, None, fmt)
}

fn roundtrip(a: RoundtripArgs, fmt: &dyn Fn(f64) -> String) -> Result<bool> {
    if let Some(preset) = a.preset {
        if !preset.is_decode() {
            bail!(
                "preset {} is not a coding experiment; run it with simulate",
                preset.name()
            );
        }
        return run_preset(preset, &a.run, fmt);
    }
    let (m, l) = (a.m.expect("required"), a.l.expect("required"));
    let codec = CodecConfig::new(m, l, parse::inner(&a.inner)?, a.outer_k.expect("required"))?;
    let channel = ChannelParams::with_length(m, l, a.p, parse::sampling(&a.sampling)?)?;
    let spec = ExperimentSpec::new(
        ExperimentKind::DecodeSuccess { codec, channel },
        a.run.trials.unwrap_or(100),
        a.run.seed,
    );
    finish(&spec, &a.run, None, fmt)
}

fn run_preset(preset: Preset, opts: &RunOpts, fmt: &dyn Fn(f64) -> String) -> Result<bool> {
    let built = preset.build()?;
    let spec = ExperimentSpec::new(built.kind.clone(), opts.trials.unwrap_or(built.trials), opts.seed);
    finish(&spec, opts, Some((preset, &built)), fmt)
}

fn finish(
    spec: &ExperimentSpec,
    opts: &RunOpts,
    preset: Option<(Preset, &presets::PresetRun)>,
    fmt: &dyn Fn(f64) -> String,
) -> Result<bool> {
    let ExperimentResult { records, summary: s } = if opts.threads == 0 {
        run(spec)?
    } else {
        run_with_threads(spec, opts.threads)?
    };
    if let Some(path) = &opts.out {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        write_jsonl(&records, &mut w)?;
        w.flush()?;
    }
    let mut stdout = io::stdout().lock();
    let name = preset.map(|(p, _)| format!(" preset={}", p.name())).unwrap_or_default();
    writeln!(
        stdout,
        "kind={}{name} trials={} seed={}",
        s.kind, s.trials, spec.base_seed
    )?;
    writeln!(
        stdout,
        "{}={} stderr={} ci95=[{}, {}]",
        s.metric,
        fmt(s.mean),
        fmt(s.stderr),
        fmt(s.ci95[0]),
        fmt(s.ci95[1])
    )?;
    if let (Some(correct), Some(undetected)) = (s.correct_rate, s.undetected_errors) {
        writeln!(stdout, "correct_rate={} undetected={undetected}", fmt(correct))?;
    }
    if s.errors > 0 {
        writeln!(stdout, "trial_errors={}", s.errors)?;
    }
    let verdict = preset.map(|(_, run)| run.judge(&s, fmt));
    if let Some(v) = &verdict {
        writeln!(
            stdout,
            "verdict={} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        )?;
    }
    if let Some(path) = &opts.summary {
        let mut obj = serde_json::json!({ "spec": spec, "summary": s });
        if let Some(v) = &verdict {
            obj["verdict"] = serde_json::json!({ "pass": v.pass, "criterion": v.detail });
        }
        std::fs::write(path, format!("{obj}\n")).with_context(|| format!("writing {}", path.display()))?;
    }
    let passed = verdict.is_none_or(|v| v.pass);
    Ok(passed || !opts.strict)
}

fn sweep(a: SweepArgs) -> Result<()> {
    let grid = parse::grid(&a.grid)?;
    let axis = match a.axis {
        Axis::Lambda => SweepAxis::Lambda(grid),
        Axis::Q => SweepAxis::Q(grid),
        Axis::P => SweepAxis::P(grid),
    };
    let rows = rate_vs_capacity_sweep(&RateSweep {
        axis,
        m: a.m,
        l: a.l,
        inner: parse::inner(&a.inner)?,
        outer_k: a.outer_k,
        q: a.q,
        p: a.p,
        trials: a.trials,
        base_seed: a.seed,
    })?;
    emit_csv(&rows, a.out.as_deref())
}
