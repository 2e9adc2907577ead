//! Command-line front end: tables, sweeps, volumes, scenes and the bound.
//!
//! Exit codes: 0 when every check passes, 1 on a tolerance miss or a
//! failed computation, 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::coxeter::{build_orthoscheme, SchlafliSymbol};
use crate::error::{Error, Result};
use crate::horoball::polar_point;
use crate::packing::{self, certify_optimum, configuration, density, family, linspace, sweep};
use crate::reference;
use crate::volume::{bf_series, monte_carlo_volume_with, MonteCarloConfig, BF_PERIODS};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "horopack", version, about = "Horoball packings in asymptotic Coxeter tilings")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Override the pinned tolerance of every check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed of the Monte Carlo streams.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Monte Carlo samples per cell.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Machine-readable output; plain text when omitted (sweep defaults to csv).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout, with a manifest alongside.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal densities of the four tilings.
    Table2,
    /// Densities along a one-parameter family.
    Sweep(SweepArgs),
    /// Closed-form and Monte Carlo cell volumes.
    Volumes,
    /// OBJ scene of a cataloged arrangement.
    Scene(SceneArgs),
    /// The Böröczky–Florian series.
    Bf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Tiling, e.g. 336 or "(4,3,6)".
    #[arg(long)]
    pub tiling: SchlafliSymbol,
    /// Family name; defaults to the first family of the tiling.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 51)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct SceneArgs {
    #[arg(long)]
    pub tiling: SchlafliSymbol,
    /// Catalog label such as B2.
    #[arg(long, default_value = "")]
    pub config: String,
    #[arg(long, default_value_t = 64)]
    pub phi_steps: usize,
    #[arg(long, default_value_t = 32)]
    pub theta_steps: usize,
}

/// Sidecar written next to every output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub command_line: Vec<String>,
    pub seed: u64,
    pub samples: u64,
    pub tolerance_override: Option<f64>,
    pub tolerances: serde_json::Value,
    pub library_version: &'static str,
    pub wall_time_s: f64,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Output of one subcommand.
struct Outcome {
    body: String,
    pass: bool,
    tolerances: serde_json::Value,
}

/// Float with 15 significant digits.
pub fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let start = Instant::now();
    let g = &cli.global;
    let result = match &cli.command {
        Command::Table2 => cmd_table2(g),
        Command::Sweep(a) => cmd_sweep(g, a),
        Command::Volumes => cmd_volumes(g),
        Command::Scene(a) => cmd_scene(a),
        Command::Bf => cmd_bf(g),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &g.out {
        Some(path) => {
            let manifest = RunManifest {
                schema_version: SCHEMA_VERSION,
                command_line: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
                seed: g.seed,
                samples: g.samples,
                tolerance_override: g.tol,
                tolerances: outcome.tolerances.clone(),
                library_version: env!("CARGO_PKG_VERSION"),
                wall_time_s: start.elapsed().as_secs_f64(),
            };
            write_with_manifest(path, &outcome.body, &manifest)
        }
        None => stdout.write_all(outcome.body.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_MISS;
    }
    if outcome.pass {
        EXIT_OK
    } else {
        let _ = writeln!(stderr, "tolerance check failed");
        EXIT_MISS
    }
}

fn write_with_manifest(path: &Path, body: &str, manifest: &RunManifest) -> Result<()> {
    std::fs::write(path, body)?;
    let m = serde_json::to_string_pretty(manifest)?;
    std::fs::write(manifest_path(path), m + "\n")?;
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::UnsupportedSymbol(_)
        | Error::NotFullyAsymptotic(_)
        | Error::UnknownFamily { .. }
        | Error::UnknownConfiguration { .. }
        | Error::OutsideInterval { .. } => EXIT_USAGE,
        _ => EXIT_MISS,
    }
}

fn json_body(v: serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn cmd_table2(g: &GlobalOpts) -> Result<Outcome> {
    let bf = bf_series(BF_PERIODS).value;
    let mut rows = Vec::new();
    let mut pass = true;
    for target in reference::OPTIMAL_DENSITIES {
        let cert = certify_optimum(target.tiling)?;
        let best = cert.optima[0].density;
        let labels: Vec<String> = cert.optima.iter().map(|r| r.config.label.clone()).collect();
        let tol = g.tol.unwrap_or(target.tol);
        let ok = (best - target.value).abs() <= tol;
        pass &= ok;
        rows.push((target, best, labels, (best - bf).abs() <= 1e-6, tol, ok));
    }
    let body = match g.format {
        Some(Format::Json) => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "table2",
            "bf_constant": bf,
            "rows": rows.iter().map(|(t, d, l, star, tol, ok)| json!({
                "tiling": t.tiling.to_string(),
                "density": d,
                "optimal_labels": l,
                "equals_bf": star,
                "target": t.value,
                "tol": tol,
                "pass": ok,
            })).collect::<Vec<_>>(),
        }))?,
        Some(Format::Csv) => {
            let mut s = String::from("tiling,density,optimal_labels,equals_bf,target,tol,pass\n");
            for (t, d, l, star, tol, ok) in &rows {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{},{},{},{},{}",
                    t.tiling,
                    sig15(*d),
                    l.join(" "),
                    star,
                    sig15(t.value),
                    sig15(*tol),
                    ok
                );
            }
            s
        }
        None => {
            let mut s = format!("{:<9} {:<12} {:<12} {:<10} status\n", "tiling", "density", "optima", "target");
            for (t, d, l, star, _, ok) in &rows {
                let shown = format!("{d:.6}{}", if *star { "*" } else { "" });
                let _ = writeln!(
                    s,
                    "{:<9} {:<12} {:<12} {:<10} {}",
                    t.tiling.to_string(),
                    shown,
                    l.join(","),
                    t.value,
                    if *ok { "ok" } else { "MISS" }
                );
            }
            s.push_str("* equals the Böröczky–Florian bound\n");
            s
        }
    };
    let tolerances = json!(rows
        .iter()
        .map(|r| (r.0.tiling.to_string(), r.4))
        .collect::<std::collections::BTreeMap<_, _>>());
    Ok(Outcome { body, pass, tolerances })
}

fn cmd_sweep(g: &GlobalOpts, a: &SweepArgs) -> Result<Outcome> {
    let fam = match &a.family {
        Some(name) => family(a.tiling, name)?,
        None => packing::families(a.tiling)?.remove(0),
    };
    let (lo, hi) = fam.range();
    let from = a.from.unwrap_or(lo);
    let to = a.to.unwrap_or(hi);
    if a.steps == 0 || from > to || from < lo - 1e-12 || to > hi + 1e-12 {
        return Err(Error::InvalidInput(format!(
            "bad range [{from}, {to}] with {} steps; the {} family of {} spans [{lo}, {hi}]",
            a.steps,
            fam.name(),
            a.tiling
        )));
    }
    let points = sweep(a.tiling, fam.name(), &linspace(from, to, a.steps))?;
    let n = points.first().map_or(0, |p| p.report.sector_volumes.len());
    let body = match g.format {
        Some(Format::Json) => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "tiling": a.tiling.to_string(),
            "family": fam.name(),
            "rows": points.iter().map(|p| json!({
                "s": p.s,
                "x": p.x,
                "density": p.report.density,
                "sector_volumes": p.report.sector_volumes,
            })).collect::<Vec<_>>(),
        }))?,
        _ => {
            let mut s = String::from("s,x,density");
            for i in 0..n {
                let _ = write!(s, ",sector_{i}");
            }
            s.push('\n');
            for p in &points {
                let _ = write!(s, "{},{},{}", sig15(p.s), sig15(p.x), sig15(p.report.density));
                for v in &p.report.sector_volumes {
                    let _ = write!(s, ",{}", sig15(*v));
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome {
        body,
        pass: true,
        tolerances: json!({}),
    })
}

#[derive(Debug, Serialize)]
struct VolumeRow {
    tiling: String,
    orthoscheme: String,
    orthoscheme_volume: f64,
    orthoschemes_per_cell: u32,
    cell_volume: f64,
    monte_carlo: f64,
    monte_carlo_stderr: f64,
    sigma_distance: f64,
    reference: Option<f64>,
    reference_rel_error: Option<f64>,
    pass: bool,
}

fn cmd_volumes(g: &GlobalOpts) -> Result<Outcome> {
    let cfg = MonteCarloConfig::new(g.samples, g.seed);
    let mut rows = Vec::new();
    for t in SchlafliSymbol::ASYMPTOTIC {
        let cell = packing::cell(t)?;
        let (o, k) = t.cell_orthoscheme()?;
        let ortho = build_orthoscheme(o)?;
        let mc = monte_carlo_volume_with(cell.polytope(), &cfg)?;
        let sigma = (mc.value - cell.volume).abs() / mc.stderr;
        let target = reference::cell_volume(t);
        let rel = target.map(|r| (cell.volume - r.value).abs() / r.value);
        let tol = g.tol.or(target.map(|r| r.tol));
        let ok_ref = match (rel, tol) {
            (Some(e), Some(tol)) => e <= tol,
            _ => true,
        };
        rows.push(VolumeRow {
            tiling: t.to_string(),
            orthoscheme: o.to_string(),
            orthoscheme_volume: ortho.volume,
            orthoschemes_per_cell: k,
            cell_volume: cell.volume,
            monte_carlo: mc.value,
            monte_carlo_stderr: mc.stderr,
            sigma_distance: sigma,
            reference: target.map(|r| r.value),
            reference_rel_error: rel,
            pass: ok_ref && sigma <= 3.0,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    let opt = |x: Option<f64>| x.map(sig15).unwrap_or_default();
    let body = match g.format {
        Some(Format::Json) => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "volumes",
            "seed": g.seed,
            "samples": g.samples,
            "rows": rows,
        }))?,
        Some(Format::Csv) => {
            let mut s = String::from(
                "tiling,orthoscheme,orthoscheme_volume,orthoschemes_per_cell,cell_volume,monte_carlo,monte_carlo_stderr,sigma_distance,reference,reference_rel_error,pass\n",
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "\"{}\",\"{}\",{},{},{},{},{},{},{},{},{}",
                    r.tiling,
                    r.orthoscheme,
                    sig15(r.orthoscheme_volume),
                    r.orthoschemes_per_cell,
                    sig15(r.cell_volume),
                    sig15(r.monte_carlo),
                    sig15(r.monte_carlo_stderr),
                    sig15(r.sigma_distance),
                    opt(r.reference),
                    opt(r.reference_rel_error),
                    r.pass
                );
            }
            s
        }
        None => {
            let mut s = format!(
                "{:<9} {:<16} {:>5} {:<16} {:<26} {:<10} status\n",
                "tiling", "orthoscheme", "count", "cell volume", "monte carlo", "printed"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<9} {:<16.12} {:>5} {:<16.12} {:<26} {:<10} {}",
                    r.tiling,
                    r.orthoscheme_volume,
                    r.orthoschemes_per_cell,
                    r.cell_volume,
                    format!("{:.6} ± {:.1e}", r.monte_carlo, r.monte_carlo_stderr),
                    r.reference.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                    if r.pass { "ok" } else { "MISS" }
                );
            }
            let _ = writeln!(s, "seed {} samples {}", g.seed, g.samples);
            s
        }
    };
    Ok(Outcome {
        body,
        pass,
        tolerances: json!({ "reference_rel": g.tol.unwrap_or(1e-4), "monte_carlo_sigma": 3.0 }),
    })
}

/// OBJ text: the absolute, the cell edges and one mesh per horoball.
pub fn scene_obj(tiling: SchlafliSymbol, label: &str, phi_steps: usize, theta_steps: usize) -> Result<String> {
    if phi_steps < 3 || theta_steps < 2 {
        return Err(Error::InvalidInput("grid needs at least 3 × 2 steps".into()));
    }
    let cfg = configuration(tiling, label)?;
    let cell = packing::cell(tiling)?;
    let mut s = format!("# horopack scene {tiling} {}\n", cfg.label);
    let mut base = 0usize;

    let sphere = |s: &mut String, base: &mut usize, pts: &mut dyn FnMut(f64, f64) -> [f64; 3]| {
        let first = *base + 1;
        let p = pts(0.0, 0.0);
        let _ = writeln!(s, "v {:.12} {:.12} {:.12}", p[0], p[1], p[2]);
        for k in 1..theta_steps {
            let th = std::f64::consts::PI * k as f64 / theta_steps as f64;
            for m in 0..phi_steps {
                let ph = std::f64::consts::TAU * m as f64 / phi_steps as f64;
                let p = pts(th, ph);
                let _ = writeln!(s, "v {:.12} {:.12} {:.12}", p[0], p[1], p[2]);
            }
        }
        let p = pts(std::f64::consts::PI, 0.0);
        let _ = writeln!(s, "v {:.12} {:.12} {:.12}", p[0], p[1], p[2]);
        let rings = theta_steps - 1;
        let last = first + 1 + rings * phi_steps;
        let at = |k: usize, m: usize| first + 1 + k * phi_steps + m % phi_steps;
        for m in 0..phi_steps {
            let _ = writeln!(s, "f {} {} {}", first, at(0, m), at(0, m + 1));
        }
        for k in 0..rings - 1 {
            for m in 0..phi_steps {
                let _ = writeln!(s, "f {} {} {} {}", at(k, m), at(k + 1, m), at(k + 1, m + 1), at(k, m + 1));
            }
        }
        for m in 0..phi_steps {
            let _ = writeln!(s, "f {} {} {}", at(rings - 1, m + 1), at(rings - 1, m), last);
        }
        *base = last;
    };

    s.push_str("o absolute\n");
    sphere(&mut s, &mut base, &mut |th, ph| {
        [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
    });

    s.push_str("o cell_edges\n");
    let first = base + 1;
    for v in &cell.vertices {
        let c = v.chart().expect("ideal vertices lie in the chart");
        let _ = writeln!(s, "v {:.12} {:.12} {:.12}", c[0], c[1], c[2]);
    }
    for &(i, j) in &cell.edges {
        let _ = writeln!(s, "l {} {}", first + i, first + j);
    }
    base += cell.n();

    for (i, h) in cfg.horoballs()?.iter().enumerate() {
        let _ = writeln!(s, "o horoball_E{i}");
        sphere(&mut s, &mut base, &mut |th, ph| {
            let c = polar_point(h, th, ph).chart().expect("finite chart point");
            [c[0], c[1], c[2]]
        });
    }
    Ok(s)
}

fn cmd_scene(a: &SceneArgs) -> Result<Outcome> {
    Ok(Outcome {
        body: scene_obj(a.tiling, &a.config, a.phi_steps, a.theta_steps)?,
        pass: true,
        tolerances: json!({}),
    })
}

fn cmd_bf(g: &GlobalOpts) -> Result<Outcome> {
    let series = bf_series(BF_PERIODS);
    let d = density(&configuration(SchlafliSymbol::TETRAHEDRAL, "B1")?)?.density;
    let value_tol = g.tol.unwrap_or(1e-7);
    let match_tol = g.tol.unwrap_or(1e-6);
    let checks = [
        (series.value - reference::BF_PRINTED).abs() <= value_tol,
        (series.value - d).abs() <= match_tol,
        series.value_bound < 1e-10,
    ];
    let pass = checks.iter().all(|&c| c);
    let body = match g.format {
        Some(Format::Json) => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "bf",
            "value": series.value,
            "sum": series.sum,
            "periods": series.periods,
            "sum_bound": series.sum_bound,
            "value_bound": series.value_bound,
            "tetrahedral_density": d,
            "difference": series.value - d,
            "pass": pass,
        }))?,
        Some(Format::Csv) => format!(
            "value,sum,periods,sum_bound,value_bound,tetrahedral_density,difference,pass\n{},{},{},{},{},{},{},{}\n",
            sig15(series.value),
            sig15(series.sum),
            series.periods,
            sig15(series.sum_bound),
            sig15(series.value_bound),
            sig15(d),
            sig15(series.value - d),
            pass
        ),
        None => format!(
            "bound      {:.15}\nsum        {:.15}\nperiods    {}\ntail bound {:.3e} (on the bound)\n(3,3,6) B1 {:.15}\ndifference {:.3e}\n{}\n",
            series.value,
            series.sum,
            series.periods,
            series.value_bound,
            d,
            series.value - d,
            if pass { "ok" } else { "MISS" }
        ),
    };
    Ok(Outcome {
        body,
        pass,
        tolerances: json!({ "value": value_tol, "match": match_tol, "truncation": 1e-10 }),
    })
}
