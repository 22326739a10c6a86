//! Command-line front end. Every subcommand writes its artifacts into
//! `--output-dir` and returns a one-line JSON summary.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::explicit::{residual_scan, truncation_fluctuation, DEFAULT_EPS};
use crate::limiting::{
    beta, beta_truncated, characteristic_curve, invert_density, log_density_s, tail_mass,
    DistributionSummary,
};
use crate::random_model::{sample_x, sum_r_squared, tail_bound_report, TailOptions, DEFAULT_SEED};
use crate::sieve::{mertens_series_with, SeriesKind, SieveOptions, DEFAULT_SEGMENT_LEN, DEFAULT_STRIDE};
use crate::stats;
use crate::zeta::{self, ZeroSet};

/// Environment variable naming the default zero table.
pub const ZEROS_ENV: &str = "MERTENS_ZEROS";

#[derive(Debug, Parser)]
#[command(name = "mertens", version, about = "Mertens function laboratory")]
pub struct Cli {
    /// Worker threads (count, default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory receiving the CSV/JSON artifacts.
    #[arg(long, global = true, default_value = ".")]
    pub output_dir: PathBuf,

    /// Format of the tabular artifacts (the zero cache is always CSV).
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sieve M(x) or L(x) and write checkpoints to series.csv.
    Sieve(SieveArgs),
    /// Ingest a zero table, compute zeta'(rho), write zero_cache.csv and moments.csv.
    Zeros(ZerosArgs),
    /// Compare M(x) with the truncated zero sum; writes residuals.csv.
    Explicit(ExplicitArgs),
    /// Build the characteristic function and density; writes nu_hat.csv and density.csv.
    Dist(DistArgs),
    /// Monte Carlo of the random model with Montgomery's bounds; writes tail_report.json.
    Randmodel(RandArgs),
    /// Integral statistics, phi distribution and growth records of M(x).
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    /// An array of row objects keyed by column name.
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Moebius,
    Liouville,
}

impl From<Kind> for SeriesKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Moebius => SeriesKind::Moebius,
            Kind::Liouville => SeriesKind::Liouville,
        }
    }
}

#[derive(Debug, Args)]
pub struct ZeroSource {
    /// Zero table (one ordinate per line) or a zero_cache.csv.
    #[arg(long, env = ZEROS_ENV)]
    pub zeros: Option<PathBuf>,

    /// Use only the first N zeros (count, default: all).
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SieveArgs {
    /// Largest x sieved (integer).
    #[arg(long)]
    pub x_max: u64,
    /// Checkpoint spacing (integers).
    #[arg(long, default_value_t = DEFAULT_STRIDE)]
    pub stride: u64,
    /// Arithmetic function summed.
    #[arg(long, value_enum, default_value = "moebius")]
    pub kind: Kind,
    /// Sieve segment length (integers per segment).
    #[arg(long, default_value_t = DEFAULT_SEGMENT_LEN)]
    pub segment_len: usize,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    #[command(flatten)]
    pub source: ZeroSource,
}

#[derive(Debug, Args)]
pub struct ExplicitArgs {
    /// Zero table; `--n` selects the cutoff T = gamma_n, the whole table is still loaded.
    #[command(flatten)]
    pub source: ZeroSource,
    /// Zero cutoff T (ordinate; overrides --n; default: last zero).
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Left end of the x-grid (real, x >= 2).
    #[arg(long, default_value_t = 10.0)]
    pub x_min: f64,
    /// Right end of the x-grid (real x).
    #[arg(long, default_value_t = 1e4)]
    pub x_max: f64,
    /// Number of grid points (count).
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Upper zero ordinate X of the truncation-fluctuation integral (ordinate; default: last zero).
    #[arg(long = "fluct-X")]
    pub fluct_x: Option<f64>,
    /// Left end Z of the truncation-fluctuation integral over [Z, eZ] (real, Z >= 2).
    #[arg(long = "fluct-Z", default_value_t = 100.0)]
    pub fluct_z: f64,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub source: ZeroSource,
    /// Half-width of the density grid (units of phi).
    #[arg(long, default_value_t = 2.5)]
    pub x_max: f64,
    /// Density grid points (count).
    #[arg(long, default_value_t = 2001)]
    pub x_count: usize,
}

#[derive(Debug, Args)]
pub struct RandArgs {
    #[command(flatten)]
    pub source: ZeroSource,
    /// Tail threshold V (units of phi).
    #[arg(long = "V")]
    pub v: f64,
    /// Plain Monte Carlo draws of X (count).
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Importance-sampled draws per tail probability (count).
    #[arg(long, default_value_t = 20_000)]
    pub tail_samples: usize,
    /// RNG seed (64-bit integer).
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Override the split K of the upper bound (count).
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Also write the plain samples as little-endian f64 to samples.bin.
    #[arg(long)]
    pub dump_samples: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Largest x sieved (integer).
    #[arg(long, default_value_t = 10_000_000)]
    pub x_max: u64,
    /// Histogram bins for the phi distribution (count).
    #[arg(long, default_value_t = 400)]
    pub bins: usize,
    /// Zero table for the KS comparison against the inverted density (optional).
    #[arg(long, env = ZEROS_ENV)]
    pub zeros: Option<PathBuf>,
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

struct Out<'a> {
    dir: &'a Path,
    format: Format,
}

impl Out<'_> {
    /// Write a table rendered as CSV to `stem.csv`, or converted to `stem.json`.
    fn table<F>(&self, stem: &str, render: F) -> Result<()>
    where
        F: FnOnce(&mut Vec<u8>) -> Result<()>,
    {
        let mut buf = Vec::new();
        render(&mut buf)?;
        match self.format {
            Format::Csv => fs::write(self.dir.join(format!("{stem}.csv")), buf)?,
            Format::Json => {
                let mut w = create(self.dir, &format!("{stem}.json"))?;
                serde_json::to_writer(&mut w, &csv_to_json(&buf))?;
                writeln!(w)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn csv_to_json(csv: &[u8]) -> Value {
    let text = String::from_utf8_lossy(csv);
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    lines
        .map(|line| {
            let row: serde_json::Map<String, Value> = header
                .iter()
                .zip(line.split(','))
                .map(|(k, cell)| (k.to_string(), cell_value(cell)))
                .collect();
            Value::Object(row)
        })
        .collect()
}

fn cell_value(cell: &str) -> Value {
    if cell.is_empty() {
        Value::Null
    } else if let Ok(i) = cell.parse::<i64>() {
        json!(i)
    } else if let Ok(x) = cell.parse::<f64>() {
        json!(x)
    } else {
        json!(cell)
    }
}

fn positive(what: &str, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive")))
    }
}

/// Read either a plain zero table or a cache written by `zeros`.
pub fn load_zero_file(path: &Path, limit: Option<usize>) -> Result<ZeroSet> {
    let file = File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => e.into(),
    })?;
    let mut reader = BufReader::new(file);
    let is_cache = reader.fill_buf()?.starts_with(b"gamma,");
    if is_cache {
        let set = ZeroSet::read_cache(reader)?;
        match limit {
            Some(n) => set.truncated(n),
            None => Ok(set),
        }
    } else {
        ZeroSet::parse(reader, limit)
    }
}

fn zeros_from(source: &ZeroSource) -> Result<ZeroSet> {
    let path = source
        .zeros
        .as_ref()
        .ok_or_else(|| Error::MissingFile(PathBuf::from(format!("<--zeros or ${ZEROS_ENV}>"))))?;
    if let Some(n) = source.n {
        positive("--n", n > 0)?;
    }
    load_zero_file(path, source.n)
}

/// Execute one subcommand and return its JSON summary.
pub fn run(cli: &Cli) -> Result<Value> {
    if let Some(t) = cli.threads {
        positive("--threads", t > 0)?;
        // ignored if the global pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let dir = cli.output_dir.as_path();
    fs::create_dir_all(dir)?;
    let out = Out {
        dir,
        format: cli.format,
    };
    match &cli.command {
        Command::Sieve(a) => run_sieve(a, &out),
        Command::Zeros(a) => run_zeros(a, &out),
        Command::Explicit(a) => run_explicit(a, &out),
        Command::Dist(a) => run_dist(a, &out),
        Command::Randmodel(a) => run_randmodel(a, &out),
        Command::Stats(a) => run_stats(a, &out),
    }
}

fn run_sieve(a: &SieveArgs, out: &Out) -> Result<Value> {
    positive("--x-max", a.x_max > 0)?;
    positive("--stride", a.stride > 0)?;
    positive("--segment-len", a.segment_len > 0)?;
    let opts = SieveOptions {
        segment_len: a.segment_len,
    };
    let series = mertens_series_with(a.x_max, a.stride, a.kind.into(), opts)?;
    out.table("series", |w| series.write_csv(w))?;
    Ok(json!({
        "command": "sieve",
        "kind": series.kind(),
        "x_max": series.x_max(),
        "stride": series.stride(),
        "checkpoints": series.len(),
        "value_at_x_max": series.last(),
    }))
}

fn run_zeros(a: &ZerosArgs, out: &Out) -> Result<Value> {
    let zeros = zeros_from(&a.source)?;
    let mut cache = create(out.dir, "zero_cache.csv")?;
    zeros.write_cache(&mut cache)?;
    cache.flush()?;
    let t_max = zeros.t_max();
    out.table("moments", |w| {
        writeln!(w, "T,N,main_term,J_half,J_one,a,b")?;
        let mut t = 50.0;
        while t <= t_max {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                crate::fmt17(t),
                zeta::zero_count(t, &zeros)?,
                crate::fmt17(zeta::zero_count_main_term(t)),
                crate::fmt17(zeta::discrete_moment(0.5, t, &zeros)?),
                crate::fmt17(zeta::discrete_moment(1.0, t, &zeros)?),
                crate::fmt17(zeta::a_of_t(t, &zeros)?),
                crate::fmt17(zeta::b_of_t(t, &zeros)?),
            )?;
            t += 50.0;
        }
        Ok(())
    })?;
    Ok(json!({
        "command": "zeros",
        "n_zeros": zeros.len(),
        "t_max": t_max,
        "J_one_over_T": zeta::discrete_moment(1.0, t_max, &zeros)? / t_max,
        "a_t_max": zeta::a_of_t(t_max, &zeros)?,
        "b_tail_beyond_table": zeta::b_tail_beyond_table(&zeros),
        "beta": beta(&zeros),
    }))
}

fn run_explicit(a: &ExplicitArgs, out: &Out) -> Result<Value> {
    positive("--count", a.count > 0)?;
    let zeros = zeros_from(&ZeroSource {
        zeros: a.source.zeros.clone(),
        n: None,
    })?;
    let t = match (a.t, a.source.n) {
        (Some(t), _) => t,
        (None, Some(n)) => zeros
            .gamma(n)
            .ok_or(Error::OutOfRange {
                what: "--n",
                value: n as f64,
                limit: zeros.len() as f64,
            })?,
        (None, None) => zeros.t_max(),
    };
    let x_top = a.x_max.floor();
    if !(x_top >= 2.0) {
        return Err(Error::Domain(format!("--x-max = {} must be >= 2", a.x_max)));
    }
    let series = mertens_series_with(x_top as u64, 1, SeriesKind::Moebius, SieveOptions::default())?;
    let report = residual_scan(a.count, a.x_min, a.x_max, t, &series, &zeros)?;
    out.table("residuals", |w| report.write_csv(w))?;
    let fluct_x = a.fluct_x.unwrap_or_else(|| zeros.t_max());
    let fluct = truncation_fluctuation(a.fluct_z, t.min(fluct_x), fluct_x, &zeros)?;
    Ok(json!({
        "command": "explicit",
        "T": report.t_cutoff,
        "max_abs": report.max_abs,
        "rms": report.rms,
        "n_points": report.x_grid.len(),
        "eps": DEFAULT_EPS,
        "truncation_fluctuation": fluct,
    }))
}

fn run_dist(a: &DistArgs, out: &Out) -> Result<Value> {
    positive("--x-max", a.x_max > 0.0)?;
    let zeros = zeros_from(&a.source)?;
    let n = zeros.len();
    let curve = characteristic_curve(&zeros, n, a.x_max)?;
    let density = invert_density(&curve, a.x_max, a.x_count)?;
    out.table("nu_hat", |w| curve.write_csv(w))?;
    out.table("density", |w| density.write_csv(w))?;
    let summary = DistributionSummary {
        n_zeros: n,
        xi_max: curve.xi_max(),
        total_mass: density.total_mass,
        beta: beta(&zeros),
        clipped_mass: density.clipped_mass,
    };
    let mut v = serde_json::to_value(summary)?;
    v["command"] = json!("dist");
    v["beta_truncated"] = json!(beta_truncated(&zeros, n));
    v["second_moment"] = json!(density.moment(2));
    v["tail_mass_at_1"] = json!(tail_mass(1.0, &density)?);
    Ok(v)
}

fn run_randmodel(a: &RandArgs, out: &Out) -> Result<Value> {
    positive("--samples", a.samples > 0)?;
    positive("--tail-samples", a.tail_samples > 0)?;
    let zeros = zeros_from(&a.source)?;
    let n = zeros.len();
    let opts = TailOptions {
        n_zeros: n,
        n_samples: a.tail_samples,
        seed: a.seed,
        k: a.k,
    };
    let report = tail_bound_report(&zeros, a.v, opts)?;
    let samples = sample_x(&zeros, n, a.samples, a.seed)?;
    if a.dump_samples {
        let mut w = create(out.dir, "samples.bin")?;
        samples.write_binary(&mut w)?;
        w.flush()?;
    }
    let mut w = create(out.dir, "tail_report.json")?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    writeln!(w)?;
    w.flush()?;
    let (plain, plain_err) = samples.tail(a.v);
    let mut v = serde_json::to_value(&report)?;
    v["command"] = json!("randmodel");
    v["sandwiched"] = json!(report.sandwiched());
    v["sample_mean"] = json!(samples.mean());
    v["sample_variance"] = json!(samples.variance());
    v["exact_variance"] = json!(sum_r_squared(&zeros, n) / 2.0);
    v["plain_tail"] = json!(plain);
    v["plain_tail_stderr"] = json!(plain_err);
    v["plain_samples"] = json!(samples.len());
    Ok(v)
}

fn run_stats(a: &StatsArgs, out: &Out) -> Result<Value> {
    if a.x_max < 10 {
        return Err(Error::Domain(format!("--x-max = {} must be >= 10", a.x_max)));
    }
    let series = mertens_series_with(a.x_max, 1, SeriesKind::Moebius, SieveOptions::default())?;
    let x_max = a.x_max as f64;
    let mut endpoints: Vec<f64> = (1..)
        .map(|k| 10f64.powi(k))
        .take_while(|&x| x < x_max)
        .collect();
    endpoints.push(x_max);
    let weak = endpoints
        .iter()
        .map(|&x| stats::weak_mertens_ratio(&series, x))
        .collect::<Result<Vec<_>>>()?;
    let cramer = endpoints
        .iter()
        .map(|&x| stats::cramer_ratio(&series, x))
        .collect::<Result<Vec<_>>>()?;
    out.table("weak_mertens", |w| stats::write_integral_csv(&weak, w))?;
    out.table("cramer", |w| stats::write_integral_csv(&cramer, w))?;
    let y = x_max.ln();
    let phi = stats::empirical_phi_distribution(&series, y, a.bins)?;
    out.table("phi_cdf", |w| phi.write_csv(w))?;
    let records = stats::growth_records(&series)?;
    out.table("records", |w| stats::write_records_csv(&records, w))?;
    let max_abs = records
        .iter()
        .map(|r| r.over_sqrt.abs())
        .fold(0.0, f64::max);
    let mut v = json!({
        "command": "stats",
        "x_max": a.x_max,
        "weak_mertens_ratio": weak.last().map(|r| r.ratio),
        "cramer_ratio": cramer.last().map(|r| r.ratio),
        "mean_ratio": stats::mean_ratio(&series, y)?,
        "log_density": log_density_s(&series)?,
        "max_abs_over_sqrt": max_abs,
        "records": records.len(),
    });
    if let Some(path) = &a.zeros {
        let zeros = load_zero_file(path, None)?;
        let curve = characteristic_curve(&zeros, zeros.len(), 2.5)?;
        let density = invert_density(&curve, 2.5, 2001)?;
        v["beta"] = json!(beta(&zeros));
        v["phi_ks"] = json!(phi.ks_distance(&density));
    }
    Ok(v)
}

/// Machine-readable error object printed on failure.
pub fn error_json(e: &Error) -> Value {
    json!({
        "error": e.kind(),
        "message": e.to_string(),
        "exit_code": e.exit_code(),
    })
}
