//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 when a computation fails, 2 for argument errors.

mod args;
mod config;
mod output;

use clap::error::ErrorKind;
use clap::Parser;
use num_complex::Complex64;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

pub use args::{Cli, Command, Format};

use crate::error::Error;
use crate::oracle::{cubic_levels, cubic_wavefunction, moments, CubicOptions, Observable};
use crate::potentials::{Family, PotentialSpec};
use crate::scattering::{
    amplitudes_v2_as_printed, amplitudes, default_pole_range, find_poles, transfer_matrix,
    POLE_THRESHOLD,
};
use crate::spectra::{levels_for, wavefunction, EnergyLevel, ScanOptions, RESIDUAL_TOL};
use crate::validate;
use args::{LevelSelect, ObservableArg, PotentialArgs};
use output::{complex, grid_csv, json_text, level_json, level_summary, levels_csv, num, Csv};

/// Environment variable capping the worker threads (0 or unset: automatic).
pub const THREADS_ENV: &str = "BESSELWELL_THREADS";

enum Failure {
    Args(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Payload for stdout/--output plus a human summary for stderr.
struct Report {
    body: String,
    summary: Option<String>,
    ok: bool,
}

fn args_err(msg: impl Into<String>) -> Failure {
    Failure::Args(msg.into())
}

fn positive(name: &str, v: f64) -> Result<(), Failure> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(args_err(format!("--{name} must be a positive number, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<(), Failure> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(args_err(format!("--{name} must be finite, got {v}")))
    }
}

fn ordered(lo_name: &str, lo: f64, hi_name: &str, hi: f64) -> Result<(), Failure> {
    finite(lo_name, lo)?;
    finite(hi_name, hi)?;
    if lo < hi {
        Ok(())
    } else {
        Err(args_err(format!("--{lo_name} ({lo}) must be below --{hi_name} ({hi})")))
    }
}

fn potential(p: &PotentialArgs) -> Result<PotentialSpec, Failure> {
    positive("v0", p.v0)?;
    positive("a", p.a)?;
    Ok(PotentialSpec::new(p.family.into(), p.v0, p.a)?)
}

fn scan_options(select: &LevelSelect) -> Result<ScanOptions, Failure> {
    if let Some(c) = select.ceiling {
        positive("ceiling", c)?;
    }
    Ok(ScanOptions {
        energy_ceiling: select.ceiling,
        ..ScanOptions::default()
    })
}

fn select_levels(
    spec: &PotentialSpec,
    select: &LevelSelect,
    n: Option<usize>,
) -> Result<Vec<EnergyLevel>, Failure> {
    if n == Some(0) {
        return Err(args_err("--n must be at least 1"));
    }
    let opts = scan_options(select)?;
    Ok(levels_for(
        spec,
        select.parity.map(Into::into),
        n,
        select.nonphysical,
        &opts,
    )?)
}

fn pick_level(spec: &PotentialSpec, select: &LevelSelect, index: usize) -> Result<EnergyLevel, Failure> {
    let levels = select_levels(spec, select, None)?;
    levels.get(index).copied().ok_or_else(|| {
        Failure::Compute(Error::Domain(format!(
            "level {index} requested but only {} found",
            levels.len()
        )))
    })
}

fn meta() -> Value {
    json!({
        "tolerances": {
            "bisection_rel_width": ScanOptions::default().rel_width,
            "residual": RESIDUAL_TOL,
        },
        "scan_points": ScanOptions::default().points,
    })
}

fn levels_report(
    format: Format,
    head: Value,
    levels: &[EnergyLevel],
    extra_meta: Value,
) -> Report {
    let body = match format {
        Format::Csv => levels_csv(levels),
        Format::Json => {
            let mut doc = head;
            let mut m = meta();
            if let (Some(m), Value::Object(extra)) = (m.as_object_mut(), extra_meta) {
                m.extend(extra);
            }
            doc["levels"] = Value::Array(levels.iter().map(level_json).collect());
            doc["meta"] = m;
            json_text(&doc)
        }
    };
    Report {
        body,
        summary: Some(level_summary(levels)),
        ok: true,
    }
}

fn spectrum(format: Format, p: &PotentialArgs, select: &LevelSelect, n: Option<usize>) -> Result<Report, Failure> {
    let spec = potential(p)?;
    let levels = select_levels(&spec, select, n)?;
    let mut extra = json!({});
    if spec.family.is_valley_family() {
        let ceiling = select
            .ceiling
            .unwrap_or_else(|| crate::spectra::default_valley_ceiling(spec.v0, spec.a));
        extra = json!({ "energy_ceiling": ceiling });
    }
    Ok(levels_report(
        format,
        json!({"family": spec.family, "v0": spec.v0, "a": spec.a}),
        &levels,
        extra,
    ))
}

#[allow(clippy::too_many_arguments)]
fn scatter(
    format: Format,
    family: Family,
    v0: f64,
    a: f64,
    emin: f64,
    emax: f64,
    steps: usize,
    as_printed: bool,
) -> Result<Report, Failure> {
    positive("v0", v0)?;
    positive("a", a)?;
    ordered("emin", emin, "emax", emax)?;
    if steps == 0 {
        return Err(args_err("--steps must be at least 1"));
    }
    if as_printed && family != Family::V2 {
        return Err(args_err("--as-printed applies to --family v2 only"));
    }
    let energies: Vec<f64> = (0..steps)
        .map(|i| {
            if steps == 1 {
                emin
            } else {
                emin + (emax - emin) * i as f64 / (steps - 1) as f64
            }
        })
        .collect();
    let results = energies
        .iter()
        .map(|&e| {
            let r = if as_printed {
                amplitudes_v2_as_printed(e, v0, a)?
            } else {
                amplitudes(family, e, v0, a)?
            };
            if r.amp_a.norm() < POLE_THRESHOLD {
                return Err(Error::Pole {
                    energy: e,
                    abs_a: r.amp_a.norm(),
                });
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let body = match format {
        Format::Csv => {
            let mut csv = Csv::new(&["E", "ReA", "ImA", "ReB", "ImB", "R", "T"]);
            for r in &results {
                csv.row(&[
                    num(r.energy),
                    num(r.amp_a.re),
                    num(r.amp_a.im),
                    num(r.amp_b.re),
                    num(r.amp_b.im),
                    num(r.r),
                    num(r.t),
                ]);
            }
            csv.finish()
        }
        Format::Json => json_text(&json!({
            "family": family,
            "v0": v0,
            "a": a,
            "form": if as_printed { "as_printed" } else { "derived" },
            "points": results.iter().map(|r| json!({
                "E": r.energy,
                "A": complex(r.amp_a),
                "B": complex(r.amp_b),
                "R": r.r,
                "T": r.t,
            })).collect::<Vec<_>>(),
        })),
    };
    let worst = results
        .iter()
        .map(|r| r.unitarity_defect().abs())
        .fold(0.0, f64::max);
    Ok(Report {
        body,
        summary: Some(format!(
            "{} energies, max | |A|^2 - |B|^2 - 1 | = {worst:.3e}",
            results.len()
        )),
        ok: true,
    })
}

#[allow(clippy::too_many_arguments)]
fn wavefunction_cmd(
    format: Format,
    p: &PotentialArgs,
    select: &LevelSelect,
    level: usize,
    xmin: f64,
    xmax: f64,
    points: usize,
    flip: bool,
) -> Result<Report, Failure> {
    let spec = potential(p)?;
    ordered("xmin", xmin, "xmax", xmax)?;
    if points < 2 {
        return Err(args_err("--points must be at least 2"));
    }
    let l = pick_level(&spec, select, level)?;
    let g = wavefunction(&spec, &l, xmin, xmax, points, flip)?;
    let body = match format {
        Format::Csv => grid_csv(&g),
        Format::Json => json_text(&json!({
            "family": spec.family,
            "v0": spec.v0,
            "a": spec.a,
            "level": level_json(&l),
            "normalized": g.normalized,
            "sign_flip_at_origin": g.sign_flip_at_origin,
            "x": g.xs,
            "psi": g.psi,
        })),
    };
    Ok(Report {
        body,
        summary: Some(format!("E = {:.3} ({}, {}), {} points", l.energy, l.parity, l.condition, points)),
        ok: true,
    })
}

fn transfer(format: Format, v0: f64, a: f64, energy: Option<f64>, level: Option<usize>) -> Result<Report, Failure> {
    positive("v0", v0)?;
    positive("a", a)?;
    let spec = PotentialSpec::new(Family::V4, v0, a)?;
    let (e, label) = match energy {
        Some(e) => {
            finite("energy", e)?;
            (e, None)
        }
        None => {
            let select = LevelSelect {
                parity: None,
                nonphysical: false,
                ceiling: None,
            };
            let l = pick_level(&spec, &select, level.unwrap_or(0))?;
            (l.energy, Some(l))
        }
    };
    let r = amplitudes(Family::V4, e, v0, a)?;
    let m = transfer_matrix(&r);
    let one = Complex64::new(1.0, 0.0);
    let image = m.apply([one, one]);
    let det = m.det();
    let eig = m.eigenvalues();
    let body = match format {
        Format::Csv => {
            let mut csv = Csv::new(&["entry", "re", "im"]);
            for (name, z) in [
                ("m11", m.m11),
                ("m12", m.m12),
                ("m21", m.m21),
                ("m22", m.m22),
                ("det", det),
                ("m_ones_1", image[0]),
                ("m_ones_2", image[1]),
                ("eigenvalue_1", eig[0]),
                ("eigenvalue_2", eig[1]),
            ] {
                csv.row(&[name.to_string(), num(z.re), num(z.im)]);
            }
            csv.finish()
        }
        Format::Json => json_text(&json!({
            "family": Family::V4,
            "v0": v0,
            "a": a,
            "E": e,
            "level": label.as_ref().map(level_json),
            "m11": complex(m.m11),
            "m12": complex(m.m12),
            "m21": complex(m.m21),
            "m22": complex(m.m22),
            "det": complex(det),
            "m_times_ones": [complex(image[0]), complex(image[1])],
            "eigenvalues": [complex(eig[0]), complex(eig[1])],
        })),
    };
    Ok(Report {
        body,
        summary: Some(format!(
            "E = {e:.3}: M (1,1) = ({:.3}{:+.3}i, {:.3}{:+.3}i), det M = {:.3}{:+.3}i",
            image[0].re, image[0].im, image[1].re, image[1].im, det.re, det.im
        )),
        ok: true,
    })
}

#[allow(clippy::too_many_arguments)]
fn poles(
    format: Format,
    family: Family,
    v0: f64,
    a: f64,
    flip: bool,
    emin: Option<f64>,
    emax: Option<f64>,
    n: usize,
) -> Result<Report, Failure> {
    positive("v0", v0)?;
    positive("a", a)?;
    if !flip {
        return Err(args_err(
            "poles searches the potential with V0 -> -V0; pass --flip-sign",
        ));
    }
    if n == 0 {
        return Err(args_err("--n must be at least 1"));
    }
    let (dlo, dhi) = default_pole_range(family, v0, a);
    let range = (emin.unwrap_or(dlo), emax.unwrap_or(dhi));
    ordered("emin", range.0, "emax", range.1)?;
    let levels = find_poles(family, v0, a, true, range, n)?;
    Ok(levels_report(
        format,
        json!({"family": family, "v0": v0, "a": a, "flip_sign": true}),
        &levels,
        json!({"energy_range": [range.0, range.1]}),
    ))
}

fn cubic(
    format: Format,
    n: usize,
    x_right: Option<f64>,
    x_left: f64,
    step: f64,
    dump: Option<usize>,
) -> Result<Report, Failure> {
    if n == 0 {
        return Err(args_err("--n must be at least 1"));
    }
    positive("step", step)?;
    if let Some(x) = x_right {
        positive("x-right", x)?;
    }
    if !(x_left.is_finite() && x_left < 0.0) {
        return Err(args_err(format!("--x-left must be negative, got {x_left}")));
    }
    let opts = CubicOptions {
        x_right,
        x_left,
        step,
    };
    let wanted = dump.map_or(n, |k| n.max(k + 1));
    let levels = cubic_levels(wanted, &opts)?;
    if let Some(k) = dump {
        let g = cubic_wavefunction(&levels[k], &opts)?;
        let body = match format {
            Format::Csv => grid_csv(&g),
            Format::Json => json_text(&json!({
                "family": Family::Cubic,
                "level": level_json(&levels[k]),
                "normalized": g.normalized,
                "x": g.xs,
                "psi": g.psi,
            })),
        };
        return Ok(Report {
            body,
            summary: Some(format!("E{k} = {:.3}", levels[k].energy)),
            ok: true,
        });
    }
    Ok(levels_report(
        format,
        json!({"family": Family::Cubic}),
        &levels[..n],
        json!({"x_left": x_left, "step": step}),
    ))
}

/// Grid step giving 40 points per local wavelength anywhere on [-L, L].
fn moment_step(spec: &PotentialSpec, energy: f64, cutoff: f64) -> f64 {
    let k = [-cutoff, 0.0, cutoff]
        .iter()
        .map(|&x| (energy - spec.evaluate(x)).max(0.0).sqrt())
        .fold(1.0 / spec.a, f64::max);
    (2.0 * PI / k / 40.0).min(spec.a / 100.0)
}

#[allow(clippy::too_many_arguments)]
fn moments_cmd(
    format: Format,
    p: &PotentialArgs,
    select: &LevelSelect,
    level: usize,
    observable: ObservableArg,
    power: u32,
    cutoff: f64,
    step: Option<f64>,
) -> Result<Report, Failure> {
    let spec = potential(p)?;
    positive("cutoff", cutoff)?;
    if power == 0 {
        return Err(args_err("--power must be at least 1"));
    }
    if let Some(s) = step {
        positive("step", s)?;
    }
    let l = pick_level(&spec, select, level)?;
    let h = step.unwrap_or_else(|| moment_step(&spec, l.energy, cutoff));
    let n = ((2.0 * cutoff / h).ceil() as usize + 1) | 1;
    if n > 20_000_001 {
        return Err(Failure::Compute(Error::Resolution(format!(
            "cutoff {cutoff} needs {n} grid points; use a smaller cutoff or a larger --step"
        ))));
    }
    let g = wavefunction(&spec, &l, -cutoff, cutoff, n, false)?;
    let obs = match observable {
        ObservableArg::X => Observable::X,
        ObservableArg::P => Observable::P,
    };
    let m = moments(&g, obs, power, cutoff)?;
    let name = match observable {
        ObservableArg::X => "x",
        ObservableArg::P => "p",
    };
    let body = match format {
        Format::Csv => {
            let mut csv = Csv::new(&["E", "observable", "power", "cutoff", "points", "value"]);
            csv.row(&[
                num(l.energy),
                name.into(),
                power.to_string(),
                num(cutoff),
                n.to_string(),
                num(m.value),
            ]);
            csv.finish()
        }
        Format::Json => json_text(&json!({
            "family": spec.family,
            "v0": spec.v0,
            "a": spec.a,
            "level": level_json(&l),
            "observable": name,
            "power": power,
            "cutoff": cutoff,
            "points": n,
            "value": m.value,
            "note": m.note,
        })),
    };
    let mut summary = format!("<{name}^{power}> = {:.3} on |x| <= {cutoff}", m.value);
    if let Some(note) = &m.note {
        summary.push_str(&format!(" ({note})"));
    }
    Ok(Report {
        body,
        summary: Some(summary),
        ok: true,
    })
}

fn validate_cmd(format: Format) -> Report {
    let checks = validate::run();
    let diags = validate::diagnostics();
    let passed = checks.iter().filter(|c| c.passed).count();
    let body = match format {
        Format::Csv => {
            let mut csv = Csv::new(&["name", "passed", "max_deviation", "tolerance"]);
            for c in &checks {
                csv.row(&[
                    c.name.clone(),
                    c.passed.to_string(),
                    num(c.max_deviation),
                    num(c.tolerance),
                ]);
            }
            csv.finish()
        }
        Format::Json => json_text(&json!({
            "passed": passed,
            "total": checks.len(),
            "checks": checks,
            "diagnostics": diags,
        })),
    };
    let mut summary = format!("{passed}/{} checks passed", checks.len());
    for c in checks.iter().filter(|c| !c.passed) {
        summary.push_str(&format!("\nFAILED {}: {:e} (tolerance {:e}) {}", c.name, c.max_deviation, c.tolerance, c.detail));
    }
    for d in &diags {
        summary.push_str(&format!("\nnote {}: {:.3e} ({})", d.name, d.value, d.detail));
    }
    Report {
        body,
        summary: Some(summary),
        ok: passed == checks.len(),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Spectrum { potential, select, n } => spectrum(f, potential, select, *n),
        Command::Scatter {
            family,
            v0,
            a,
            emin,
            emax,
            steps,
            as_printed,
        } => scatter(f, (*family).into(), *v0, *a, *emin, *emax, *steps, *as_printed),
        Command::Wavefunction {
            potential,
            select,
            level,
            xmin,
            xmax,
            points,
            cosmetic_flip,
        } => wavefunction_cmd(f, potential, select, *level, *xmin, *xmax, *points, *cosmetic_flip),
        Command::Transfer { v0, a, energy, level } => transfer(f, *v0, *a, *energy, *level),
        Command::Poles {
            family,
            v0,
            a,
            flip_sign,
            emin,
            emax,
            n,
        } => poles(f, (*family).into(), *v0, *a, *flip_sign, *emin, *emax, *n),
        Command::Cubic {
            n,
            x_right,
            x_left,
            step,
            wavefunction,
        } => cubic(f, *n, *x_right, *x_left, *step, *wavefunction),
        Command::Moments {
            potential,
            select,
            level,
            observable,
            power,
            cutoff,
            step,
        } => moments_cmd(f, potential, select, *level, *observable, *power, *cutoff, *step),
        Command::Validate => Ok(validate_cmd(f)),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("{THREADS_ENV} must be a non-negative integer, got '{v}'"))?;
    if n > 0 {
        // a pool that already exists (repeated in-process runs) is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs the CLI on `argv` (program name first), writing results to `out`
/// (unless `--output` is given) and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match config::merge(argv) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let msg = e.to_string();
                    let first = msg.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(err, "{first}");
                    2
                }
            };
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(err, "error: {msg}");
        return 2;
    }
    let started = Instant::now();
    if cli.verbose {
        let _ = writeln!(err, "besselwell {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(err, "threads: {}", rayon::current_num_threads());
        let _ = writeln!(err, "command: {:?}", cli.command);
    }
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(Failure::Args(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &report.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out
            .write_all(report.body.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(err, "error: {msg}");
        return 1;
    }
    if let Some(s) = &report.summary {
        let _ = writeln!(err, "{s}");
    }
    if cli.verbose {
        let _ = writeln!(err, "elapsed: {:.3} s", started.elapsed().as_secs_f64());
    }
    if report.ok {
        0
    } else {
        1
    }
}
