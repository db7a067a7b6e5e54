use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qes_core::curves::{bound_e, ridge_c, ridge_i, DEFAULT_RIDGE_TOL};
use qes_core::pipeline::joint_histogram;
use qes_core::verify::{
    check_appendix, check_bound, check_extrema, check_param_oracle, check_ridge_empirical, check_routes,
    VerificationReport, RIDGE_MIN_SAMPLES,
};
use qes_core::{Axis, EnsembleKind, EnsembleSpec, Joint2DHistogram, RunSpec, SeedSpec};

/// Monte Carlo over random two-qubit pure states: concurrence versus
/// post-measurement mutual information.
#[derive(Parser)]
#[command(name = "qes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an ensemble and write the joint (C, I) histogram.
    Sample(SampleArgs),
    /// Slice statistics of p(C|I) from a histogram file.
    Table(TableArgs),
    /// Ridge and entanglement curves on a uniform C grid.
    Curve(CurveArgs),
    /// Marginal or conditional density from a histogram file.
    Density(DensityArgs),
    /// Run verification checks and print JSON lines.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, default_value = "real-s3", value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[arg(long, default_value = "10000000", value_parser = parse_count)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bin width for both axes.
    #[arg(long, default_value_t = 0.01)]
    bins: f64,
    #[arg(long)]
    delta_c: Option<f64>,
    #[arg(long)]
    delta_i: Option<f64>,
    /// Defaults to the number of logical cores.
    #[arg(long, env = "QES_WORKERS")]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    hist: PathBuf,
    /// Comma-separated slice centers in I.
    #[arg(long, value_delimiter = ',', default_value = "0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    centers: Vec<f64>,
    #[arg(long, default_value_t = 0.005)]
    halfwidth: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    hist: PathBuf,
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// Condition on the other axis lying in `lo,hi`.
    #[arg(long, value_delimiter = ',')]
    slice: Option<Vec<f64>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxisArg {
    C,
    I,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "check", required_unless_present = "check")]
    all: bool,
    #[arg(long, value_enum)]
    check: Option<Check>,
    /// Ensemble for `bound` and `routes`; both real-s3 and complex-s7 when omitted.
    #[arg(long, value_parser = parse_ensemble)]
    ensemble: Option<EnsembleKind>,
    #[arg(long, default_value = "1000000", value_parser = parse_count)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for the ridge check, which needs at least 10^7.
    #[arg(long, default_value = "10000000", value_parser = parse_count)]
    ridge_n: u64,
    #[arg(long, env = "QES_WORKERS")]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Bound,
    Appendix,
    Param,
    Extrema,
    Routes,
    Ridge,
}

/// Accepts plain integers and integral scientific notation such as `1e6`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("`{s}` is not a non-negative integer")),
    }
}

fn parse_ensemble(s: &str) -> Result<EnsembleKind, String> {
    s.parse().map_err(|e: qes_core::Error| e.to_string())
}

/// Failure classes, mapped onto the process exit code.
enum Failure {
    Check,
    Usage(anyhow::Error),
    Io(anyhow::Error),
}

impl From<qes_core::Error> for Failure {
    fn from(e: qes_core::Error) -> Self {
        match e {
            qes_core::Error::Io(_) | qes_core::Error::Parse { .. } => Failure::Io(e.into()),
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => cmd_sample(a),
        Command::Table(a) => cmd_table(a),
        Command::Curve(a) => cmd_curve(a),
        Command::Density(a) => cmd_density(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display())).map_err(Failure::Io)?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_histogram(path: &Path) -> Result<Joint2DHistogram, Failure> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display())).map_err(Failure::Io)?;
    Joint2DHistogram::read_csv(BufReader::new(f))
        .map(|(h, _)| h)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Io)
}

fn workers(requested: Option<usize>) -> Result<usize, Failure> {
    match requested {
        Some(0) => Err(usage("workers must be at least 1")),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, NonZeroUsize::get)),
    }
}

fn cmd_sample(a: SampleArgs) -> CmdResult {
    let spec = RunSpec {
        ensemble: EnsembleSpec::new(a.ensemble, a.n, SeedSpec::new(a.seed, 0))?,
        delta_c: a.delta_c.unwrap_or(a.bins),
        delta_i: a.delta_i.unwrap_or(a.bins),
        workers: workers(a.workers)?,
    };
    // Validate the binning before spending time on sampling.
    Joint2DHistogram::new(spec.delta_c, spec.delta_i)?;
    let h = joint_histogram::<f64>(&spec)?;
    let mut w = output(a.out.as_deref())?;
    match a.format {
        Format::Csv => {
            let meta = [("ensemble", a.ensemble.to_string()), ("seed", a.seed.to_string()), ("n", a.n.to_string())];
            h.write_csv(&mut w, &meta)?;
        }
        Format::Json => {
            let mut bins = Vec::new();
            for c in 0..h.bins_c() {
                for i in 0..h.bins_i() {
                    let n = h.count(c, i);
                    if n > 0 {
                        bins.push([c as u64, i as u64, n]);
                    }
                }
            }
            let doc = serde_json::json!({
                "ensemble": a.ensemble.to_string(),
                "seed": a.seed,
                "n": a.n,
                "delta_c": h.delta_c(),
                "delta_i": h.delta_i(),
                "total": h.total(),
                "bins": bins,
            });
            serde_json::to_writer(&mut w, &doc).map_err(|e| Failure::Io(e.into()))?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_table(a: TableArgs) -> CmdResult {
    if a.halfwidth.is_nan() || a.halfwidth <= 0.0 {
        return Err(usage("halfwidth must be positive"));
    }
    let h = read_histogram(&a.hist)?;
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "{},ridge_c,status", qes_core::SliceStats::CSV_HEADER)?;
    for &i in &a.centers {
        let inverse = match ridge_c(i, DEFAULT_RIDGE_TOL) {
            Ok(c) => c.value().to_string(),
            Err(_) => String::new(),
        };
        match h.slice_stats(i, a.halfwidth) {
            Ok(s) => writeln!(w, "{},{inverse},ok", s.csv_row())?,
            Err(qes_core::Error::EmptySlice { .. } | qes_core::Error::OutOfRange { .. }) => {
                writeln!(w, "{i},,,,0,{inverse},empty")?
            }
            Err(e) => return Err(e.into()),
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_curve(a: CurveArgs) -> CmdResult {
    if a.points < 2 {
        return Err(usage("points must be at least 2"));
    }
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "c,ridge_i,bound_e")?;
    let last = (a.points - 1) as f64;
    for k in 0..a.points {
        let c = k as f64 / last;
        writeln!(w, "{c},{},{}", ridge_i(c)?.value(), bound_e(c)?.value())?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_density(a: DensityArgs) -> CmdResult {
    let h = read_histogram(&a.hist)?;
    let d = match (a.axis, a.slice.as_deref()) {
        (AxisArg::C, None) => h.marginal(Axis::C)?,
        (AxisArg::I, None) => h.marginal(Axis::I)?,
        (AxisArg::C, Some(&[lo, hi])) => h.conditional_slice(lo, hi)?,
        (AxisArg::I, Some(&[lo, hi])) => h.conditional_slice_given_c(lo, hi)?,
        (_, Some(_)) => return Err(usage("--slice takes exactly two values")),
    };
    let mut w = output(a.out.as_deref())?;
    d.write_csv(&mut w)?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    if a.n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let selected = |c: Check| a.all || a.check == Some(c);
    let ensembles: Vec<EnsembleKind> = match a.ensemble {
        Some(k) => vec![k],
        None => vec![EnsembleKind::RealS3, EnsembleKind::ComplexS7],
    };
    for &k in &ensembles {
        if !matches!(k, EnsembleKind::RealS3 | EnsembleKind::ComplexS7)
            && (selected(Check::Bound) || selected(Check::Routes))
        {
            return Err(usage(format!("bound and routes checks take real-s3 or complex-s7, not {k}")));
        }
    }
    let seed = |stream| SeedSpec::new(a.seed, stream);

    let mut reports: Vec<VerificationReport> = Vec::new();
    let stdout = io::stdout();
    let mut emit = |r: VerificationReport| -> io::Result<()> {
        let mut out = stdout.lock();
        writeln!(out, "{}", r.to_json_line())?;
        out.flush()?;
        reports.push(r);
        Ok(())
    };
    if selected(Check::Bound) {
        for (j, &k) in ensembles.iter().enumerate() {
            emit(check_bound(a.n, seed(j as u64), k)?)?;
        }
    }
    if selected(Check::Appendix) {
        emit(check_appendix(a.n, seed(10))?)?;
    }
    if selected(Check::Param) {
        emit(check_param_oracle(a.n, seed(11))?)?;
    }
    if selected(Check::Extrema) {
        emit(check_extrema(a.n, seed(12))?)?;
    }
    if selected(Check::Routes) {
        for (j, &k) in ensembles.iter().enumerate() {
            emit(check_routes(a.n, seed(20 + j as u64), k)?)?;
        }
    }
    if selected(Check::Ridge) {
        if a.ridge_n < RIDGE_MIN_SAMPLES {
            return Err(usage(format!("ridge check needs --ridge-n >= {RIDGE_MIN_SAMPLES}")));
        }
        let spec = RunSpec {
            ensemble: EnsembleSpec::new(EnsembleKind::RealS3, a.ridge_n, seed(30))?,
            delta_c: 0.01,
            delta_i: 0.01,
            workers: workers(a.workers)?,
        };
        emit(check_ridge_empirical(&joint_histogram::<f64>(&spec)?)?)?;
    }
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
