//! Command-line frontend behind the `rabi` binary.
//!
//! Exit codes: 0 success, 2 numerical or I/O failure, 64 usage error,
//! 65 data error (a Juddian constraint that does not hold).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{enumerate_zhang, nearest_zhang, AnalyticLevel, Branch, Subspectrum};
use crate::bargmann::judd_cross_check;
use crate::eigen::converge_spectrum;
use crate::error::Error;
use crate::io::{
    claimed_csv, figure_svg, fmt_g12, spectrum_csv, summary_csv, write_atomic, Panel, Series,
    SpectrumRow, BLUE, RED,
};
use crate::model::{ModelParams, Parity};
use crate::recurrence::{classify_energy, EnergyClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

/// Tolerance on λ² + 4g² − 1 accepted by `judd`.
pub const JUDD_INPUT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "rabi",
    version,
    about = "Quantum Rabi model spectra and the JC/AJC ladder comparison"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Converged lowest levels of both parities over a g grid, as CSV.
    Spectrum(SweepArgs),
    /// True spectrum against the JC/AJC ladders: CSVs, summary and a figure.
    Compare(SweepArgs),
    /// Cross-check the exact solution on the circle λ² + 4g² = 1 (ω = 1).
    Judd(PointArgs),
    /// Decide whether an energy belongs to the spectrum.
    Classify(PointArgs),
}

#[derive(Debug, Args, Default)]
struct SweepArgs {
    /// λ/ω; `compare` accepts a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Single coupling instead of a grid.
    #[arg(long)]
    g: Option<f64>,
    #[arg(long = "g-start")]
    g_start: Option<f64>,
    #[arg(long = "g-stop")]
    g_stop: Option<f64>,
    #[arg(long = "g-step")]
    g_step: Option<f64>,
    /// Levels per parity.
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long = "rel-tol")]
    rel_tol: Option<f64>,
    /// Output file for `spectrum` (stdout if absent), directory for `compare`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    /// Energy to classify.
    #[arg(long, allow_hyphen_values = true)]
    energy: Option<f64>,
    /// Miller defect threshold for `classify`.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Model(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Model(e) => model_exit_code(e),
            CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

fn model_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_)
        | Error::Tolerance(_)
        | Error::LevelCount { .. }
        | Error::ParityBroken(_) => EXIT_USAGE,
        Error::ConstraintViolated { .. } | Error::LambdaZero => EXIT_DATA,
        _ => EXIT_NUMERIC,
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Reads `key = value` lines; `#` starts a comment. Keys may use `-` or `_`.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", i + 1)))?;
        map.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(map)
}

fn load_config(path: Option<&Path>, known: &[&str]) -> Result<BTreeMap<String, String>, CliError> {
    let Some(path) = path else {
        return Ok(BTreeMap::new());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    let map = parse_config(&text)?;
    if let Some(k) = map.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("unknown config key `{k}`")));
    }
    Ok(map)
}

fn cfg_num<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    map.get(key)
        .map(|v| {
            v.parse()
                .map_err(|_| CliError::Usage(format!("config `{key}`: cannot parse `{v}`")))
        })
        .transpose()
}

fn parse_lambdas(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("bad lambda `{t}`")))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if ![self.start, self.stop, self.step]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(CliError::Usage("g grid must be finite".into()));
        }
        if !(self.step > 0.0) {
            return Err(CliError::Usage(format!(
                "g step must be > 0, got {}",
                self.step
            )));
        }
        if self.start > self.stop {
            return Err(CliError::Usage(format!(
                "empty g grid: start {} > stop {}",
                self.start, self.stop
            )));
        }
        if self.start < 0.0 {
            return Err(CliError::Usage("g must be >= 0".into()));
        }
        Ok(())
    }

    /// Grid points, each rounded to 12 significant digits so the values
    /// written to CSV are exactly the values computed with.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let g = self.start + i as f64 * self.step;
                fmt_g12(g).parse().expect("formatted float parses")
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub lambdas: Vec<f64>,
    pub grid: GridSpec,
    pub levels: usize,
    pub rel_tol: f64,
    pub out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            lambdas: vec![0.3],
            grid: GridSpec {
                start: 0.0,
                stop: 1.0,
                step: 0.01,
            },
            levels: 6,
            rel_tol: 1e-10,
            out: None,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.grid.validate()?;
        if self.lambdas.is_empty() || self.lambdas.iter().any(|l| !l.is_finite()) {
            return Err(CliError::Usage("lambda must be finite".into()));
        }
        if self.levels == 0 {
            return Err(CliError::Usage("levels must be >= 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(CliError::Usage(format!(
                "rel-tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        Ok(())
    }
}

const SWEEP_KEYS: &[&str] = &[
    "lambda", "g", "g_start", "g_stop", "g_step", "levels", "rel_tol", "out",
];

fn resolve_sweep(a: &SweepArgs, default_lambdas: &[f64]) -> Result<SweepConfig, CliError> {
    let file = load_config(a.config.as_deref(), SWEEP_KEYS)?;
    let mut cfg = SweepConfig {
        lambdas: default_lambdas.to_vec(),
        ..SweepConfig::default()
    };
    if let Some(l) = a
        .lambda
        .as_deref()
        .or(file.get("lambda").map(String::as_str))
    {
        cfg.lambdas = parse_lambdas(l)?;
    }
    let single = a.g.or(cfg_num(&file, "g")?);
    if let Some(g) = single {
        cfg.grid = GridSpec {
            start: g,
            stop: g,
            step: 1.0,
        };
    }
    if let Some(v) = a.g_start.or(cfg_num(&file, "g_start")?) {
        cfg.grid.start = v;
    }
    if let Some(v) = a.g_stop.or(cfg_num(&file, "g_stop")?) {
        cfg.grid.stop = v;
    }
    if let Some(v) = a.g_step.or(cfg_num(&file, "g_step")?) {
        cfg.grid.step = v;
    }
    if let Some(v) = a.levels.or(cfg_num(&file, "levels")?) {
        cfg.levels = v;
    }
    if let Some(v) = a.rel_tol.or(cfg_num(&file, "rel_tol")?) {
        cfg.rel_tol = v;
    }
    cfg.out = a.out.clone().or(file.get("out").map(PathBuf::from));
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub g: f64,
    pub rows: Vec<SpectrumRow>,
    pub n_max: usize,
}

fn spectrum_at(lambda: f64, g: f64, levels: usize, rel_tol: f64) -> Result<GridPoint, Error> {
    let params = ModelParams::symmetric(1.0, g, lambda)?;
    let conv = converge_spectrum(&params, levels, rel_tol)?;
    let mut rows = Vec::with_capacity(2 * levels);
    for p in Parity::BOTH {
        for (index, energy) in conv.spectrum.sector(p).into_iter().take(levels).enumerate() {
            rows.push(SpectrumRow {
                g,
                parity: p,
                index,
                energy,
            });
        }
    }
    Ok(GridPoint {
        g,
        rows,
        n_max: conv.trunc.n_max,
    })
}

/// Converged spectra over the grid. Points run in parallel; results come
/// back in grid order, and the first failing g (in that order) is reported.
pub fn sweep_spectrum(lambda: f64, cfg: &SweepConfig) -> Result<Vec<GridPoint>, (f64, Error)> {
    let results: Vec<(f64, Result<GridPoint, Error>)> = cfg
        .grid
        .points()
        .into_par_iter()
        .map(|g| (g, spectrum_at(lambda, g, cfg.levels, cfg.rel_tol)))
        .collect();
    results
        .into_iter()
        .map(|(g, r)| r.map_err(|e| (g, e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub lambda: f64,
    pub truth: Vec<GridPoint>,
    pub claimed: Vec<(f64, AnalyticLevel)>,
    /// Per g: largest distance from any shown true level to the nearest
    /// claimed level.
    pub summary: Vec<(f64, f64)>,
}

pub fn compare_lambda(lambda: f64, cfg: &SweepConfig) -> Result<Comparison, (f64, Error)> {
    let truth = sweep_spectrum(lambda, cfg)?;
    type PerG = (Vec<(f64, AnalyticLevel)>, (f64, f64));
    let per_g: Vec<PerG> = truth
        .par_iter()
        .map(|pt| {
            let params = ModelParams::symmetric(1.0, pt.g, lambda).expect("validated above");
            let top = pt
                .rows
                .iter()
                .map(|r| r.energy)
                .fold(f64::NEG_INFINITY, f64::max);
            let claimed = enumerate_zhang(&params, top)
                .into_iter()
                .map(|l| (pt.g, l))
                .collect();
            let worst = pt
                .rows
                .iter()
                .map(|r| nearest_zhang(&params, r.energy).1)
                .fold(0.0f64, f64::max);
            (claimed, (pt.g, worst))
        })
        .collect();
    let mut claimed = Vec::new();
    let mut summary = Vec::with_capacity(per_g.len());
    for (c, s) in per_g {
        claimed.extend(c);
        summary.push(s);
    }
    Ok(Comparison {
        lambda,
        truth,
        claimed,
        summary,
    })
}

fn energy_range(c: &Comparison) -> (f64, f64) {
    let (lo, hi) = c
        .truth
        .iter()
        .flat_map(|p| p.rows.iter().map(|r| r.energy))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), e| {
            (a.min(e), b.max(e))
        });
    let pad = 0.05 * (hi - lo).max(1.0);
    (lo - pad, hi + pad)
}

fn g_range(c: &Comparison) -> (f64, f64) {
    let lo = c.truth.first().map(|p| p.g).unwrap_or(0.0);
    let hi = c.truth.last().map(|p| p.g).unwrap_or(1.0);
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

fn truth_panel(c: &Comparison) -> Panel {
    let mut lines: BTreeMap<(i8, usize), Vec<(f64, f64)>> = BTreeMap::new();
    for pt in &c.truth {
        for r in &pt.rows {
            lines
                .entry((r.parity.sign() as i8, r.index))
                .or_default()
                .push((r.g, r.energy));
        }
    }
    Panel {
        title: format!("exact spectrum, λ/ω = {}", fmt_g12(c.lambda)),
        x_range: g_range(c),
        y_range: energy_range(c),
        series: lines
            .into_iter()
            .map(|((p, _), points)| Series {
                color: if p > 0 { RED } else { BLUE },
                points,
            })
            .collect(),
    }
}

fn claimed_panel(c: &Comparison) -> Panel {
    type Key = (Subspectrum, usize, Option<Branch>);
    let mut lines: BTreeMap<Key, Vec<(f64, f64)>> = BTreeMap::new();
    for (g, l) in &c.claimed {
        lines
            .entry((l.subspectrum, l.n, l.branch))
            .or_default()
            .push((*g, l.energy));
    }
    Panel {
        title: format!("JC/AJC ladders, λ/ω = {}", fmt_g12(c.lambda)),
        x_range: g_range(c),
        y_range: energy_range(c),
        series: lines
            .into_iter()
            .map(|((sub, _, _), points)| Series {
                color: match sub {
                    Subspectrum::II => RED,
                    Subspectrum::I => BLUE,
                },
                points,
            })
            .collect(),
    }
}

/// Exact spectra on the top row, claimed ladders below, one column per λ.
pub fn comparison_figure(all: &[Comparison]) -> String {
    let mut panels: Vec<Panel> = all.iter().map(truth_panel).collect();
    panels.extend(all.iter().map(claimed_panel));
    figure_svg(&panels, all.len())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    write_atomic(path, text).map_err(|e| io_err(path, e))
}

fn metadata(command: &str, cfg: &SweepConfig, n_max: usize) -> String {
    let meta = serde_json::json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "omega": 1.0,
        "lambdas": cfg.lambdas,
        "grid": cfg.grid,
        "levels_per_parity": cfg.levels,
        "rel_tol": cfg.rel_tol,
        "largest_truncation": n_max,
    });
    let mut s = serde_json::to_string_pretty(&meta).expect("plain json");
    s.push('\n');
    s
}

fn sweep_failed(err: &mut dyn Write, lambda: f64, (g, e): (f64, Error)) -> CliError {
    let _ = writeln!(
        err,
        "failed at lambda = {}, g = {}",
        fmt_g12(lambda),
        fmt_g12(g)
    );
    CliError::Model(e)
}

fn cmd_spectrum(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = resolve_sweep(a, &[0.3])?;
    if cfg.lambdas.len() != 1 {
        return Err(CliError::Usage("spectrum takes a single lambda".into()));
    }
    let lambda = cfg.lambdas[0];
    let pts = sweep_spectrum(lambda, &cfg).map_err(|f| sweep_failed(err, lambda, f))?;
    let rows: Vec<SpectrumRow> = pts.iter().flat_map(|p| p.rows.iter().copied()).collect();
    let csv = spectrum_csv(&rows);
    match &cfg.out {
        Some(path) => {
            let n_max = pts.iter().map(|p| p.n_max).max().unwrap_or(0);
            write_file(path, &csv)?;
            let mut meta = path.clone().into_os_string();
            meta.push(".meta.json");
            write_file(Path::new(&meta), &metadata("spectrum", &cfg, n_max))?;
        }
        None => out
            .write_all(csv.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(())
}

fn cmd_compare(a: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = resolve_sweep(a, &[0.3, 0.5])?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut all = Vec::with_capacity(cfg.lambdas.len());
    for &lambda in &cfg.lambdas {
        all.push(compare_lambda(lambda, &cfg).map_err(|f| sweep_failed(err, lambda, f))?);
    }

    let mut files: Vec<(PathBuf, String)> = Vec::new();
    for c in &all {
        let tag = fmt_g12(c.lambda);
        let rows: Vec<SpectrumRow> = c
            .truth
            .iter()
            .flat_map(|p| p.rows.iter().copied())
            .collect();
        files.push((
            dir.join(format!("spectrum_lambda{tag}.csv")),
            spectrum_csv(&rows),
        ));
        files.push((
            dir.join(format!("claimed_lambda{tag}.csv")),
            claimed_csv(&c.claimed),
        ));
        files.push((
            dir.join(format!("summary_lambda{tag}.csv")),
            summary_csv(&c.summary),
        ));
    }
    files.push((dir.join("figure.svg"), comparison_figure(&all)));
    let n_max = all
        .iter()
        .flat_map(|c| c.truth.iter().map(|p| p.n_max))
        .max()
        .unwrap_or(0);
    files.push((dir.join("metadata.json"), metadata("compare", &cfg, n_max)));

    fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
    for (path, text) in &files {
        write_file(path, text)?;
    }
    for (path, _) in &files {
        let _ = writeln!(out, "{}", path.display());
    }
    Ok(())
}

const POINT_KEYS: &[&str] = &["lambda", "g", "energy", "tol", "out"];

struct Point {
    lambda: f64,
    g: f64,
    energy: Option<f64>,
    tol: Option<f64>,
    out: Option<PathBuf>,
}

fn resolve_point(a: &PointArgs) -> Result<Point, CliError> {
    let file = load_config(a.config.as_deref(), POINT_KEYS)?;
    let lambda = a
        .lambda
        .or(cfg_num(&file, "lambda")?)
        .ok_or_else(|| CliError::Usage("--lambda is required".into()))?;
    let g =
        a.g.or(cfg_num(&file, "g")?)
            .ok_or_else(|| CliError::Usage("--g is required".into()))?;
    Ok(Point {
        lambda,
        g,
        energy: a.energy.or(cfg_num(&file, "energy")?),
        tol: a.tol.or(cfg_num(&file, "tol")?),
        out: a.out.clone().or(file.get("out").map(PathBuf::from)),
    })
}

fn emit_json<T: Serialize>(
    value: &T,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    match path {
        Some(p) => write_file(p, &s),
        None => out
            .write_all(s.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JuddJson {
    pub constraint_residual: f64,
    pub energy: f64,
    pub found_in_parity_plus: bool,
    pub found_in_parity_minus: bool,
    pub miller_defect: f64,
    pub nearest_zhang_distance: f64,
    pub ode_residual_max: f64,
    pub pass: bool,
}

/// Accepts inputs within [`JUDD_INPUT_TOL`] of the circle, then checks the
/// exact point at the same λ, so a printed `g` like 0.4330127019 works.
pub fn judd_report(lambda: f64, g: f64) -> Result<JuddJson, CliError> {
    if !(lambda.is_finite() && g.is_finite() && g >= 0.0) {
        return Err(CliError::Usage(
            "lambda and g must be finite, g >= 0".into(),
        ));
    }
    let residual = lambda * lambda + 4.0 * g * g - 1.0;
    if residual.abs() > JUDD_INPUT_TOL {
        return Err(CliError::Data(format!(
            "constraint violated: lambda^2 + 4 g^2 - 1 = {residual:e}"
        )));
    }
    let g_exact = (1.0 - lambda * lambda).max(0.0).sqrt() / 2.0;
    let r = judd_cross_check(lambda, g_exact)?;
    Ok(JuddJson {
        constraint_residual: residual,
        energy: r.energy,
        found_in_parity_plus: r.found_in_parity_plus,
        found_in_parity_minus: r.found_in_parity_minus,
        miller_defect: r.miller_defect,
        nearest_zhang_distance: r.nearest_zhang_distance,
        ode_residual_max: r.ode_residual_max,
        pass: r.pass,
    })
}

fn cmd_judd(a: &PointArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let p = resolve_point(a)?;
    let report = judd_report(p.lambda, p.g)?;
    if !report.pass {
        let _ = writeln!(err, "cross-check failed");
    }
    emit_json(&report, p.out.as_deref(), out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyJson {
    pub class: EnergyClass,
    pub defect: f64,
    pub nearest_eigenvalue: f64,
    pub distance: f64,
    pub criteria_agree: bool,
}

fn cmd_classify(a: &PointArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let p = resolve_point(a)?;
    let e = p
        .energy
        .ok_or_else(|| CliError::Usage("--energy is required".into()))?;
    if !e.is_finite() {
        return Err(CliError::Usage("energy must be finite".into()));
    }
    let tol = p.tol.unwrap_or(1e-6);
    let params = ModelParams::symmetric(1.0, p.g, p.lambda)?;
    let c = classify_energy(&params, e, tol)?;
    if !c.criteria_agree {
        let _ = writeln!(
            err,
            "warning: criteria disagree (defect says {}, spectrum says {})",
            c.defect_says_spectral, c.spectrum_says_spectral
        );
    }
    emit_json(
        &ClassifyJson {
            class: c.class,
            defect: c.defect,
            nearest_eigenvalue: c.nearest_eigenvalue,
            distance: c.distance,
            criteria_agree: c.criteria_agree,
        },
        p.out.as_deref(),
        out,
    )
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.cmd {
        Command::Spectrum(a) => cmd_spectrum(a, out, err),
        Command::Compare(a) => cmd_compare(a, out, err),
        Command::Judd(a) => cmd_judd(a, out, err),
        Command::Classify(a) => cmd_classify(a, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "rabi: {e}");
            e.exit_code()
        }
    }
}
