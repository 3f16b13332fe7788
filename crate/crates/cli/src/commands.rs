//! The five subcommands: section export, tile measurement, overlap sweeps,
//! the conformance suite, and the variance witness.
//!
//! All file outputs are deterministic — fixed float formatting with 17
//! significant digits in CSV, structural serialization for JSON — and are
//! written to a temporary name first, then atomically renamed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;
use subplanck::analysis::{find_zero_lattice, variance_witness, TileReport};
use subplanck::conformance::run_suite_with;
use subplanck::sensitivity::{
    compass_baseline, compass_overlap_raw, equal_shift_baseline, equal_shift_overlap_raw,
    find_minimum_shift, overlap_curve, overlap_displaced_numeric, OverlapCurve, OverlapModel,
};
use subplanck::states::Displacement;
use subplanck::wigner_analytic::{gaussian_markers, section, Grid2D};
use subplanck::Error;

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;

/// Maps a computation-phase library error to the numeric exit class.
fn numeric(e: Error) -> CliError {
    CliError::Numeric(e.to_string())
}

/// Writes `bytes` to `dir/name` via a temporary file and an atomic rename,
/// so readers never observe a partial file.
fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| {
        CliError::Io(format!("cannot create output directory {}: {e}", dir.display()))
    })?;
    let final_path = dir.join(name);
    let tmp_path = dir.join(format!("{name}.tmp"));
    std::fs::write(&tmp_path, bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", tmp_path.display())))?;
    std::fs::rename(&tmp_path, &final_path)
        .map_err(|e| CliError::Io(format!("cannot rename to {}: {e}", final_path.display())))?;
    Ok(final_path)
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text.into_bytes())
}

/// Formats one float with 17 significant digits (round-trip exact).
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Renders a section grid as CSV: header `axis1,axis2,w`, row-major with
/// axis 1 fastest.
fn grid_csv(grid: &Grid2D) -> String {
    let n1 = grid.spec.n1;
    let n2 = grid.spec.n2;
    let mut out = String::with_capacity(n1 * n2 * 64 + 16);
    out.push_str("axis1,axis2,w\n");
    for i2 in 0..n2 {
        for i1 in 0..n1 {
            let _ = writeln!(
                out,
                "{},{},{}",
                num(grid.axis1[i1]),
                num(grid.axis2[i2]),
                num(grid.value(i1, i2))
            );
        }
    }
    out
}

/// JSON summary of a section grid; embeds the sample arrays only in
/// all-JSON output mode.
#[derive(Serialize)]
struct GridSummary {
    plane: String,
    fixed: [f64; 2],
    range1: [f64; 2],
    range2: [f64; 2],
    n1: usize,
    n2: usize,
    peak_abs_w: f64,
    peak_location: [f64; 2],
    min_w: f64,
    min_location: [f64; 2],
    markers: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axis1: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    axis2: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
}

fn summarize(grid: &Grid2D, embed_data: bool) -> GridSummary {
    let mut peak = (0.0_f64, 0, 0);
    let mut min = (f64::INFINITY, 0, 0);
    for i2 in 0..grid.spec.n2 {
        for i1 in 0..grid.spec.n1 {
            let v = grid.value(i1, i2);
            if v.abs() > peak.0 {
                peak = (v.abs(), i1, i2);
            }
            if v < min.0 {
                min = (v, i1, i2);
            }
        }
    }
    GridSummary {
        plane: grid.spec.plane.to_string(),
        fixed: grid.spec.fixed,
        range1: [grid.spec.range1.0, grid.spec.range1.1],
        range2: [grid.spec.range2.0, grid.spec.range2.1],
        n1: grid.spec.n1,
        n2: grid.spec.n2,
        peak_abs_w: peak.0,
        peak_location: [grid.axis1[peak.1], grid.axis2[peak.2]],
        min_w: min.0,
        min_location: [grid.axis1[min.1], grid.axis2[min.2]],
        markers: gaussian_markers(grid.spec.plane, &grid.params),
        axis1: embed_data.then(|| grid.axis1.clone()),
        axis2: embed_data.then(|| grid.axis2.clone()),
        values: embed_data.then(|| grid.values.clone()),
    }
}

/// `section`: samples the Wigner function over the configured plane and
/// writes the grid (CSV plus JSON sidecar, or a single JSON document).
pub fn cmd_section(cfg: &RunConfig) -> Result<i32, CliError> {
    let grid = section(cfg.spec, &cfg.state).map_err(numeric)?;
    let plane = cfg.spec.plane;
    let summary = summarize(&grid, cfg.format == OutputFormat::Json);
    let json_path = write_atomic(
        &cfg.out_dir,
        &format!("section_{plane}.json"),
        &to_json(&summary)?,
    )?;
    if cfg.format == OutputFormat::Csv {
        let csv_path = write_atomic(
            &cfg.out_dir,
            &format!("section_{plane}.csv"),
            grid_csv(&grid).as_bytes(),
        )?;
        println!("section {plane}: wrote {} and {}", csv_path.display(), json_path.display());
    } else {
        println!("section {plane}: wrote {}", json_path.display());
    }
    println!(
        "peak |W| = {:.6e} at ({:.4}, {:.4}); min W = {:.6e}; {} packet markers",
        summary.peak_abs_w,
        summary.peak_location[0],
        summary.peak_location[1],
        summary.min_w,
        summary.markers.len()
    );
    Ok(0)
}

#[derive(Serialize)]
struct TileOutcome {
    lattice_found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<TileReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

/// `tile`: measures the interference zero lattice of the configured
/// section. Exit 4 when `--expect-lattice` is set and none is found.
pub fn cmd_tile(cfg: &RunConfig, expect_lattice: bool) -> Result<i32, CliError> {
    let grid = section(cfg.spec, &cfg.state).map_err(numeric)?;
    let plane = cfg.spec.plane;
    let name = format!("tile_{plane}.json");
    match find_zero_lattice(&grid) {
        Ok(report) => {
            println!(
                "tile {plane}: area {:.8} vs predicted {:.8} (relative error {:.3e})",
                report.tile_area, report.predicted_area, report.relative_error
            );
            let out =
                TileOutcome { lattice_found: true, report: Some(report), detail: None };
            write_atomic(&cfg.out_dir, &name, &to_json(&out)?)?;
            Ok(0)
        }
        Err(e @ (Error::NoLattice { .. } | Error::ScanTooCoarse { .. })) => {
            let out = TileOutcome {
                lattice_found: false,
                report: None,
                detail: Some(e.to_string()),
            };
            write_atomic(&cfg.out_dir, &name, &to_json(&out)?)?;
            if expect_lattice {
                Err(CliError::Expectation(format!("expected a zero lattice on {plane}: {e}")))
            } else {
                println!("tile {plane}: no lattice ({e})");
                Ok(0)
            }
        }
        Err(e) => Err(numeric(e)),
    }
}

#[derive(Serialize)]
struct OverlapPoint {
    model: String,
    s: f64,
    overlap: f64,
    baseline: f64,
    normalized: f64,
}

#[derive(Serialize)]
struct CurveMinima {
    model: String,
    samples: usize,
    max_shift: f64,
    minima: Vec<f64>,
}

#[derive(Serialize)]
struct MinimaReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    s_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s1_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    curves: Vec<CurveMinima>,
}

fn curve_csv(curves: &[OverlapCurve]) -> String {
    let mut out = String::from("s,overlap,model\n");
    for curve in curves {
        for (s, overlap) in curve.shifts.iter().zip(&curve.overlaps) {
            let _ = writeln!(out, "{},{},{}", num(*s), num(*overlap), curve.model);
        }
    }
    out
}

/// Evaluates one model's squared overlap at a single shift, together with
/// its Gaussian kick baseline.
fn overlap_at(cfg: &RunConfig, model: OverlapModel, s: f64) -> Result<OverlapPoint, CliError> {
    let state = &cfg.state;
    let (overlap, baseline) = match model {
        OverlapModel::EntangledEqualShift => {
            (equal_shift_overlap_raw(state, s), equal_shift_baseline(s))
        }
        OverlapModel::SingleCompass => (compass_overlap_raw(state, s), compass_baseline(s)),
        OverlapModel::NumericGeneral => {
            let kick = Displacement::equal(Complex64::new(0.0, s));
            (
                overlap_displaced_numeric(state, kick, cfg.nodes).map_err(numeric)?,
                equal_shift_baseline(s),
            )
        }
    };
    Ok(OverlapPoint {
        model: model.to_string(),
        s,
        overlap,
        baseline,
        normalized: overlap / baseline,
    })
}

/// `overlap`: with `--s`, evaluates one model at one shift; otherwise
/// sweeps the displacement overlap curves (both closed models by default)
/// and reports their first minima.
pub fn cmd_overlap(
    cfg: &RunConfig,
    model: Option<OverlapModel>,
    s: Option<f64>,
) -> Result<i32, CliError> {
    if let Some(sv) = s {
        if !sv.is_finite() {
            return Err(CliError::Config(format!("--s must be finite, got {sv}")));
        }
        let point = overlap_at(cfg, model.unwrap_or(OverlapModel::EntangledEqualShift), sv)?;
        println!(
            "overlap[{}](s = {}) = {:.17e} (baseline {:.6e}, normalized {:.6e})",
            point.model, point.s, point.overlap, point.baseline, point.normalized
        );
        write_atomic(&cfg.out_dir, "overlap_point.json", &to_json(&point)?)?;
        return Ok(0);
    }

    let models = match model {
        Some(m) => vec![m],
        None => vec![OverlapModel::EntangledEqualShift, OverlapModel::SingleCompass],
    };
    let mut curves = Vec::new();
    for m in &models {
        let nodes = if *m == OverlapModel::NumericGeneral { cfg.nodes } else { 0 };
        curves.push(overlap_curve(*m, &cfg.state, nodes).map_err(numeric)?);
    }

    let mut s_star = None;
    let mut s1_star = None;
    let mut minima = Vec::new();
    for curve in &curves {
        let first = find_minimum_shift(curve).ok();
        match curve.model {
            OverlapModel::SingleCompass => s1_star = first,
            _ => s_star = first,
        }
        minima.push(CurveMinima {
            model: curve.model.to_string(),
            samples: curve.shifts.len(),
            max_shift: *curve.shifts.last().expect("curves are never empty"),
            minima: curve.minima.clone(),
        });
    }
    let ratio = match (s_star, s1_star) {
        (Some(a), Some(b)) => Some(a / b),
        _ => None,
    };
    let report = MinimaReport { s_star, s1_star, ratio, curves: minima };

    let csv_path = write_atomic(&cfg.out_dir, "overlap.csv", curve_csv(&curves).as_bytes())?;
    let json_path = write_atomic(&cfg.out_dir, "overlap_minima.json", &to_json(&report)?)?;
    println!("overlap sweep: wrote {} and {}", csv_path.display(), json_path.display());
    match (report.s_star, report.s1_star, report.ratio) {
        (Some(a), Some(b), Some(r)) => {
            println!("first minima: s* = {a:.10}, s1* = {b:.10}, ratio {r:.6}");
        }
        (Some(a), None, _) => println!("first minimum: s* = {a:.10}"),
        (None, Some(b), _) => println!("first minimum: s1* = {b:.10}"),
        _ => println!("no interior minimum found in the sweep range"),
    }
    Ok(0)
}

/// `validate`: runs the conformance suite and writes its report. Exit 0
/// only when every mandatory check passes; exit 5 otherwise.
pub fn cmd_validate(cfg: &RunConfig) -> Result<i32, CliError> {
    let report = run_suite_with(&cfg.state, cfg.nodes, cfg.half_width);
    for check in &report.checks {
        let flag = if check.passed { "PASS" } else { "FAIL" };
        let class = if check.mandatory { "" } else { " (informational)" };
        println!(
            "{flag} {}{class}: measured {:.6e} vs tolerance {:.6e} — {}",
            check.name, check.measured, check.tolerance, check.note
        );
    }
    write_atomic(&cfg.out_dir, "validation.json", &to_json(&report)?)?;
    if report.all_mandatory_passed {
        println!("all mandatory checks passed");
        Ok(0)
    } else {
        eprintln!("error: one or more mandatory conformance checks failed");
        Ok(5)
    }
}

#[derive(Serialize)]
struct WitnessOutput {
    note: String,
    report: subplanck::analysis::WitnessReport,
}

/// `witness`: computes the collective-variance separability witness. The
/// verdict is data, not an error — always exit 0 when the computation
/// succeeds.
pub fn cmd_witness(cfg: &RunConfig) -> Result<i32, CliError> {
    let report = variance_witness(&cfg.state, cfg.nodes).map_err(numeric)?;
    let out = WitnessOutput {
        note: "branch weights are normalized internally; weight_fraction_a and \
               weight_fraction_b are the |A|^2 and |B|^2 shares of the normalized state"
            .to_string(),
        report,
    };
    write_atomic(&cfg.out_dir, "witness.json", &to_json(&out)?)?;
    println!(
        "witness: value {:.12} vs separability threshold {:.1} — consistent with separable: {}",
        report.duan_value, report.threshold, report.separable_consistent
    );
    println!(
        "normalized weight fractions: |A|^2 = {:.6}, |B|^2 = {:.6}",
        report.weight_fraction_a, report.weight_fraction_b
    );
    Ok(0)
}
