//! `dualfft` command-line front end.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing check, 2 for
//! usage errors. Every nonzero exit writes one diagnostic line to stderr.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use dualfft::analysis::verify::{run_checks, Fault};
use dualfft::analysis::{reproduce_table2_at, to_csv, CsvRecord};
use dualfft::fmt::g17;
use dualfft::twiddle::{theta, DEFAULT_CLAMP_EPS};
use dualfft::{
    measure_error, reproduce_table1, BoundReport, ErrorReport, Metric, Precision, Strategy, TwiddlePath,
    TwiddleTable,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dualfft", version, about = "Twiddle tables, error bounds and accuracy measurements for FMA FFT butterflies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the twiddle table for one size and strategy.
    Twiddles {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "dual", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Replacement for a zero sine in Linzer-Feig tables.
        #[arg(long)]
        clamp_eps: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Ratio bounds, singularities and per-butterfly FP16 bounds per strategy.
    Stats {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Cumulative bounds over log2(n) passes.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "fp32", value_parser = parse_precision)]
        precision: Precision,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Measure relative L2 error over seeded random inputs.
    Error {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "dual", value_parser = parse_strategy)]
        strategy: Strategy,
        #[arg(long, default_value = "fp32", value_parser = parse_precision)]
        precision: Precision,
        /// roundtrip | forward
        #[arg(long, default_value = "roundtrip", value_parser = parse_metric)]
        metric: Metric,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run the self-checks up to a maximum size.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectedFault>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Human,
}

#[derive(Clone, Copy, ValueEnum)]
enum InjectedFault {
    RatioSign,
}

fn parse_strategy(s: &str) -> Result<Strategy, dualfft::Error> {
    s.parse()
}

fn parse_precision(s: &str) -> Result<Precision, dualfft::Error> {
    s.parse()
}

fn parse_metric(s: &str) -> Result<Metric, dualfft::Error> {
    s.parse()
}

enum Failure {
    Usage(String),
    Verify(String),
    Io(io::Error),
}

impl From<dualfft::Error> for Failure {
    fn from(e: dualfft::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            eprintln!("error: missing subcommand (twiddles, stats, bounds, error, verify); see --help");
            return ExitCode::from(2);
        }
        Err(e) => {
            // clap's message runs until the first blank line; fold it onto one.
            let rendered = e.render().to_string();
            let line: Vec<&str> = rendered.lines().map(str::trim).take_while(|l| !l.is_empty()).collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(2);
        }
    };

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(msg)) => {
            let _ = out.flush();
            eprintln!("error: verification failed: {msg}");
            ExitCode::from(1)
        }
        // Closed pipe downstream (e.g. `| head`) is not an error.
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> CmdResult {
    match command {
        Command::Twiddles { n, strategy, clamp_eps, format } => cmd_twiddles(out, n, strategy, clamp_eps, format),
        Command::Stats { n, format } => cmd_stats(out, n, format),
        Command::Bounds { n, precision, format } => cmd_bounds(out, n, precision, format),
        Command::Error { n, strategy, precision, metric, trials, seed, format } => {
            let report = measure_error(n, strategy, precision, metric, trials, seed)?;
            write_error_report(out, &report, format)
        }
        Command::Verify { max_n, inject_fault } => {
            let fault = inject_fault.map(|InjectedFault::RatioSign| Fault::FlipRatioSign);
            cmd_verify(out, max_n, fault)
        }
    }
}

#[derive(Serialize)]
struct TwiddleRow {
    k: usize,
    theta: f64,
    omega_r: f64,
    omega_i: f64,
    path: Option<TwiddlePath>,
    multiplier: f64,
    ratio: f64,
    clamped: bool,
}

fn cmd_twiddles(out: &mut impl Write, n: usize, strategy: Strategy, clamp_eps: Option<f64>, format: Format) -> CmdResult {
    let table = TwiddleTable::with_clamp(n, strategy, clamp_eps.unwrap_or(DEFAULT_CLAMP_EPS))?;
    match format {
        Format::Csv => table.write_csv(out)?,
        Format::Json => {
            let rows: Vec<TwiddleRow> = table
                .entries()
                .iter()
                .enumerate()
                .map(|(k, e)| TwiddleRow {
                    k,
                    theta: theta(k, n),
                    omega_r: e.omega_r,
                    omega_i: e.omega_i,
                    path: e.path,
                    multiplier: e.multiplier,
                    ratio: e.ratio,
                    clamped: e.clamped,
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Human => {
            writeln!(out, "{strategy} twiddles, n = {n}")?;
            writeln!(out, "{:>6}  {:>13}  {:>13}  {:>4}  {:>13}  {:>13}", "k", "omega_r", "omega_i", "path", "multiplier", "ratio")?;
            for (k, e) in table.entries().iter().enumerate() {
                let path = e.path.map_or("-", TwiddlePath::name);
                let mark = if e.clamped { "  (clamped)" } else { "" };
                writeln!(
                    out,
                    "{k:>6}  {:>13.6e}  {:>13.6e}  {path:>4}  {:>13.6e}  {:>13.6e}{mark}",
                    e.omega_r, e.omega_i, e.multiplier, e.ratio
                )?;
            }
        }
    }
    Ok(())
}

/// One `stats` row: ratio statistics joined with the FP16 per-butterfly bound.
#[derive(Serialize)]
struct StatsRow {
    strategy: Strategy,
    t_max: f64,
    argmax_k: usize,
    singular_count: usize,
    cos_path_count: usize,
    sin_path_count: usize,
    per_butterfly_bound: f64,
    divergent: bool,
}

impl CsvRecord for StatsRow {
    fn csv_header() -> &'static str {
        "strategy,t_max,argmax_k,singular_count,cos_path_count,sin_path_count,per_butterfly_bound,divergent"
    }

    fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.strategy,
            g17(self.t_max),
            self.argmax_k,
            self.singular_count,
            self.cos_path_count,
            self.sin_path_count,
            g17(self.per_butterfly_bound),
            self.divergent
        )
    }
}

fn cmd_stats(out: &mut impl Write, n: usize, format: Format) -> CmdResult {
    let rows = reproduce_table1(n)?
        .into_iter()
        .map(|r| {
            let stats = TwiddleTable::new(n, r.strategy)?.stats();
            Ok(StatsRow {
                strategy: r.strategy,
                t_max: r.t_max,
                argmax_k: stats.argmax_k,
                singular_count: r.singular_count,
                cos_path_count: stats.cos_path_count,
                sin_path_count: stats.sin_path_count,
                per_butterfly_bound: r.per_butterfly_bound,
                divergent: r.divergent,
            })
        })
        .collect::<dualfft::Result<Vec<_>>>()?;
    match format {
        Format::Csv => out.write_all(to_csv(&rows).as_bytes())?,
        Format::Json => json(out, &rows)?,
        Format::Human => {
            writeln!(out, "ratio statistics, n = {n}, FP16 eps = 2^-11")?;
            writeln!(out, "{:<11} {:>12} {:>7} {:>5} {:>11} {:>12}", "strategy", "t_max", "at k", "sing", "cos/sin", "eps * t_max")?;
            for r in &rows {
                let bound = if r.divergent { "divergent".to_string() } else { format!("{:.3e}", r.per_butterfly_bound) };
                writeln!(
                    out,
                    "{:<11} {:>12} {:>7} {:>5} {:>11} {:>12}",
                    r.strategy.name(),
                    human_ratio(r.t_max),
                    r.argmax_k,
                    r.singular_count,
                    format!("{}/{}", r.cos_path_count, r.sin_path_count),
                    bound
                )?;
            }
        }
    }
    Ok(())
}

fn human_ratio(t: f64) -> String {
    if t >= 1e6 {
        format!("{t:.3e}")
    } else {
        format!("{t:.3}")
    }
}

fn cmd_bounds(out: &mut impl Write, n: usize, precision: Precision, format: Format) -> CmdResult {
    let rows: Vec<BoundReport> = reproduce_table2_at(n, precision)?;
    match format {
        Format::Csv => out.write_all(to_csv(&rows).as_bytes())?,
        Format::Json => json(out, &rows)?,
        Format::Human => {
            let m = n.trailing_zeros();
            writeln!(out, "cumulative bounds, n = {n}, m = {m} passes, {precision} eps = {:e}", precision.machine_epsilon())?;
            writeln!(out, "{:<11} {:>10} {:>12} {:>12} {:>12}", "strategy", "t_max", "per-bfly", "cumulative", "improvement")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<11} {:>10.3} {:>12.3e} {:>12.3e} {:>11.1}x",
                    r.strategy.name(),
                    r.t_max,
                    r.per_butterfly_bound,
                    r.cumulative_bound,
                    r.improvement_vs_baseline
                )?;
            }
        }
    }
    Ok(())
}

fn write_error_report(out: &mut impl Write, report: &ErrorReport, format: Format) -> CmdResult {
    match format {
        Format::Csv => out.write_all(to_csv(std::slice::from_ref(report)).as_bytes())?,
        Format::Json => json(out, report)?,
        Format::Human => {
            writeln!(
                out,
                "{} {} {} n = {}, {} trials, seed {}",
                report.strategy, report.precision, report.metric, report.n, report.trials, report.seed
            )?;
            writeln!(out, "  rel L2 median  {:.4e}", report.rel_l2_median)?;
            writeln!(out, "  rel L2 max     {:.4e}", report.rel_l2_max)?;
            if report.nonfinite_trials > 0 {
                writeln!(out, "  non-finite     {} of {}", report.nonfinite_trials, report.trials)?;
            }
        }
    }
    Ok(())
}

fn cmd_verify(out: &mut impl Write, max_n: usize, fault: Option<Fault>) -> CmdResult {
    let outcomes = run_checks(max_n, fault)?;
    for o in &outcomes {
        writeln!(out, "{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail)?;
    }
    match outcomes.iter().find(|o| !o.passed) {
        Some(o) => Err(Failure::Verify(format!("{}: {}", o.name, o.detail))),
        None => Ok(()),
    }
}

fn json<T: Serialize + ?Sized>(out: &mut impl Write, value: &T) -> CmdResult {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}
