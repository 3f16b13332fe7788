//! Self-checking validation suite.
//!
//! Every closed-form quantity the crate exposes is re-derived here by an
//! independent route — direct quadrature, the correlation-integral oracle,
//! or a frozen regression constant — and the outcome is collected into a
//! serializable report. Mandatory checks gate the `validate` verdict;
//! informational checks measure how far the transcribed variant expressions
//! (kept verbatim in [`crate::wigner_analytic::variants`] and
//! [`crate::sensitivity::variants`]) sit from the authoritative forms
//! without affecting the verdict.

use crate::analysis::{checkerboard_detect, find_zero_lattice, marginal_position, variance_witness};
use crate::quadrature::{GaussLegendre, QuadratureSpec, Rule};
use crate::sensitivity::{
    self, compass_baseline, compass_overlap, compass_overlap_normalized, compass_overlap_numeric,
    equal_shift_baseline, equal_shift_overlap, find_minimum_shift, overlap_curve,
    overlap_displaced_numeric, OverlapModel,
};
use crate::states::{
    bipartite_state, even_momentum_state, even_position_state, Displacement, NormalizedState,
    StateParams,
};
use crate::wigner_analytic::{
    decomposition, dominant_section, peak_bound, section, variants, Grid2D, PhasePoint, Plane,
    SectionSpec,
};
use crate::wigner_oracle::{
    default_half_width, normalization_4d, normalization_domains, reality_threshold,
    wigner_numeric_2mode,
};
use crate::{Complex64, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Frozen reference value of the variance-witness combination at the
/// default parameter set (x0 = p0 = 5, delta = hbar = 1, equal weights with
/// `A* B = -i`). Regression anchor, re-derived by `variance_witness` tests.
pub const REFERENCE_DUAN: f64 = 51.999_999_998_611_205_6;

/// One validation check: a measured deviation against its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    /// Stable snake_case identifier.
    pub name: &'static str,
    /// Whether the check met its tolerance (always true for informational
    /// checks that executed).
    pub passed: bool,
    /// Mandatory checks gate the overall verdict; informational ones only
    /// record a measurement.
    pub mandatory: bool,
    /// The measured deviation (NaN when the check errored before measuring).
    pub measured: f64,
    /// The bound `measured` is held to (infinite for informational checks).
    pub tolerance: f64,
    /// Human-readable context: what was compared, or the error that
    /// prevented the comparison.
    pub note: String,
}

impl Check {
    fn bounded(name: &'static str, measured: f64, tolerance: f64, note: String) -> Self {
        Check { name, passed: measured <= tolerance, mandatory: true, measured, tolerance, note }
    }

    fn informational(name: &'static str, measured: f64, note: String) -> Self {
        Check {
            name,
            passed: measured.is_finite(),
            mandatory: false,
            measured,
            tolerance: f64::INFINITY,
            note,
        }
    }
}

/// Outcome of [`run_suite`].
#[derive(Debug, Clone, Serialize)]
pub struct ConformanceReport {
    /// Every check that ran, in execution order.
    pub checks: Vec<Check>,
    /// True when every mandatory check passed.
    pub all_mandatory_passed: bool,
}

/// Wraps a fallible check body so that quadrature or parameter errors are
/// surfaced as a failed check instead of aborting the suite.
fn guarded(
    name: &'static str,
    mandatory: bool,
    body: impl FnOnce() -> Result<Check>,
) -> Check {
    match body() {
        Ok(check) => check,
        Err(e) => Check {
            name,
            passed: false,
            mandatory,
            measured: f64::NAN,
            tolerance: f64::NAN,
            note: format!("did not run: {e}"),
        },
    }
}

/// Symmetric per-axis section ranges sized to contain the packet centers
/// plus interference structure.
fn plane_ranges(plane: Plane, p: &StateParams) -> ((f64, f64), (f64, f64)) {
    let (k1, k2) = plane.axis_kinds();
    let half = |k: crate::wigner_analytic::AxisKind| match k {
        crate::wigner_analytic::AxisKind::Position => p.x0.abs() + 2.5 * p.delta,
        crate::wigner_analytic::AxisKind::Momentum => p.p0.abs() + 2.5 * p.hbar / p.delta,
    };
    ((-half(k1), half(k1)), ((-half(k2)), half(k2)))
}

fn plane_grid(plane: Plane, s: &NormalizedState, n: usize) -> Result<Grid2D> {
    let (r1, r2) = plane_ranges(plane, &s.params);
    section(SectionSpec::new(plane, [0.0, 0.0], r1, r2, n, n)?, s)
}

fn gl_line(half_width: f64, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let gl = GaussLegendre::new(nodes);
    (
        gl.nodes.iter().map(|t| t * half_width).collect(),
        gl.weights.iter().map(|w| w * half_width).collect(),
    )
}

struct OracleScan {
    max_rel_dev: f64,
    max_imag: f64,
    max_abs_w: f64,
    points: usize,
}

fn scan_oracle(
    s: &NormalizedState,
    nodes: usize,
    count: usize,
    half_width: Option<f64>,
) -> Result<OracleScan> {
    let p = &s.params;
    let quad = QuadratureSpec::new(
        half_width.unwrap_or_else(|| default_half_width(p)),
        nodes,
        Rule::GaussLegendre,
    )?;
    let xr = p.x0.abs() + 2.0 * p.delta;
    let pr = p.p0.abs() + 2.0 * p.hbar / p.delta;
    let mut rng = ChaCha8Rng::seed_from_u64(0x00C0_FFEE);
    let peak = peak_bound(p.hbar);
    let mut scan = OracleScan { max_rel_dev: 0.0, max_imag: 0.0, max_abs_w: 0.0, points: count };
    for _ in 0..count {
        let pt = PhasePoint::new(
            rng.gen_range(-xr..=xr),
            rng.gen_range(-pr..=pr),
            rng.gen_range(-xr..=xr),
            rng.gen_range(-pr..=pr),
        );
        let closed = crate::wigner_analytic::wigner_total(pt, s)?.total;
        let oracle = wigner_numeric_2mode(pt, s, &quad)?;
        scan.max_rel_dev = scan.max_rel_dev.max((closed - oracle.value).abs() / peak);
        scan.max_imag = scan.max_imag.max(oracle.imag_residual);
        scan.max_abs_w = scan.max_abs_w.max(oracle.value.abs()).max(closed.abs());
    }
    Ok(scan)
}

/// Runs the full validation suite for one state at one quadrature size.
///
/// The suite never returns an error: anything that prevents a check from
/// producing a measurement (too few nodes, degenerate weights, ...) is
/// reported as that check failing, so callers can always render the report.
pub fn run_suite(s: &NormalizedState, nodes: usize) -> ConformanceReport {
    run_suite_with(s, nodes, None)
}

/// [`run_suite`] with an explicit truncation half-width for the oracle's
/// correlation integral; `None` selects the parameter-derived default.
pub fn run_suite_with(
    s: &NormalizedState,
    nodes: usize,
    oracle_half_width: Option<f64>,
) -> ConformanceReport {
    let p = s.params;
    let peak = peak_bound(p.hbar);
    let (lx, _lp) = normalization_domains(&p);
    let mut checks: Vec<Check> = Vec::new();

    // --- Wavefunction normalization by direct quadrature. ---------------
    checks.push(guarded("unit_norm_psi", true, || {
        let (xs, ws) = gl_line(lx, nodes);
        let integral: f64 =
            xs.iter().zip(&ws).map(|(x, w)| even_position_state(*x, &p).powi(2) * w).sum();
        Ok(Check::bounded(
            "unit_norm_psi",
            (integral - 1.0).abs(),
            1e-9,
            format!("position-cat norm integral = {integral:.16e}"),
        ))
    }));

    checks.push(guarded("unit_norm_phi", true, || {
        let (xs, ws) = gl_line(lx, nodes);
        let integral: f64 =
            xs.iter().zip(&ws).map(|(x, w)| even_momentum_state(*x, &p).powi(2) * w).sum();
        Ok(Check::bounded(
            "unit_norm_phi",
            (integral - 1.0).abs(),
            1e-9,
            format!("momentum-cat norm integral = {integral:.16e}"),
        ))
    }));

    checks.push(guarded("unit_norm_bipartite", true, || {
        let (xs, ws) = gl_line(lx, nodes);
        let mut integral = 0.0;
        for (x1, w1) in xs.iter().zip(&ws) {
            for (x2, w2) in xs.iter().zip(&ws) {
                integral += bipartite_state(*x1, *x2, s).norm_sqr() * w1 * w2;
            }
        }
        Ok(Check::bounded(
            "unit_norm_bipartite",
            (integral - 1.0).abs(),
            1e-9,
            format!("two-mode norm integral = {integral:.16e}"),
        ))
    }));

    checks.push(guarded("cross_overlap_quadrature", true, || {
        let (xs, ws) = gl_line(lx, nodes);
        let integral: f64 = xs
            .iter()
            .zip(&ws)
            .map(|(x, w)| even_position_state(*x, &p) * even_momentum_state(*x, &p) * w)
            .sum();
        Ok(Check::bounded(
            "cross_overlap_quadrature",
            (integral - s.cross_overlap).abs(),
            1e-10,
            format!(
                "quadrature overlap {integral:.16e} vs closed form {:.16e}",
                s.cross_overlap
            ),
        ))
    }));

    // --- Wigner-function axioms. -----------------------------------------
    checks.push(guarded("normalization_4d", true, || {
        let v = normalization_4d(s, nodes)?;
        Ok(Check::bounded(
            "normalization_4d",
            (v - 1.0).abs(),
            1e-3,
            format!("phase-space integral of W = {v:.16e}"),
        ))
    }));

    let oracle_scan = scan_oracle(s, nodes, 64, oracle_half_width);
    match &oracle_scan {
        Ok(scan) => {
            checks.push(Check::bounded(
                "oracle_agreement",
                scan.max_rel_dev,
                1e-6,
                format!(
                    "max |closed - oracle| / peak over {} random phase points",
                    scan.points
                ),
            ));
            checks.push(Check::bounded(
                "reality_residual",
                scan.max_imag,
                reality_threshold(p.hbar),
                "max imaginary residual of the oracle quadrature sum".into(),
            ));
        }
        Err(e) => {
            for name in ["oracle_agreement", "reality_residual"] {
                checks.push(Check {
                    name,
                    passed: false,
                    mandatory: true,
                    measured: f64::NAN,
                    tolerance: f64::NAN,
                    note: format!("did not run: {e}"),
                });
            }
        }
    }

    let grid_ref = plane_grid(Plane::X1P1, s, 513);
    checks.push(guarded("wigner_bound", true, || {
        let mut max_abs = if let Ok(scan) = &oracle_scan { scan.max_abs_w } else { 0.0 };
        let grid = grid_ref.as_ref().map_err(|e| clone_err(e))?;
        for v in &grid.values {
            max_abs = max_abs.max(v.abs());
        }
        Ok(Check::bounded(
            "wigner_bound",
            max_abs,
            peak + 1e-9,
            "max |W| over the sampled section and oracle points vs 1/(pi hbar)^2".into(),
        ))
    }));

    checks.push(guarded("parity_symmetry", true, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0DD_5EED);
        let xr = p.x0.abs() + 2.0 * p.delta;
        let pr = p.p0.abs() + 2.0 * p.hbar / p.delta;
        let mut worst = 0.0f64;
        for _ in 0..32 {
            let pt = PhasePoint::new(
                rng.gen_range(-xr..=xr),
                rng.gen_range(-pr..=pr),
                rng.gen_range(-xr..=xr),
                rng.gen_range(-pr..=pr),
            );
            let mirrored = PhasePoint::new(-pt.x1, -pt.p1, -pt.x2, -pt.p2);
            let a = crate::wigner_analytic::wigner_total(pt, s)?.total;
            let b = crate::wigner_analytic::wigner_total(mirrored, s)?.total;
            worst = worst.max((a - b).abs() / (a.abs() + b.abs() + peak * 1e-300 + 1e-300));
        }
        Ok(Check::bounded(
            "parity_symmetry",
            worst,
            1e-12,
            "max relative |W(q) - W(-q)| over 32 random points".into(),
        ))
    }));

    checks.push(guarded("exchange_symmetry", true, || {
        let swapped = NormalizedState::new(StateParams { a: p.b, b: p.a, ..p })?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5A5A);
        let xr = p.x0.abs() + 2.0 * p.delta;
        let pr = p.p0.abs() + 2.0 * p.hbar / p.delta;
        let mut worst = 0.0f64;
        for _ in 0..32 {
            let pt = PhasePoint::new(
                rng.gen_range(-xr..=xr),
                rng.gen_range(-pr..=pr),
                rng.gen_range(-xr..=xr),
                rng.gen_range(-pr..=pr),
            );
            let exchanged = PhasePoint::new(pt.x2, pt.p2, pt.x1, pt.p1);
            let a = crate::wigner_analytic::wigner_total(pt, s)?.total;
            let b = crate::wigner_analytic::wigner_total(exchanged, &swapped)?.total;
            worst = worst.max((a - b).abs() / (a.abs() + b.abs() + 1e-300));
        }
        Ok(Check::bounded(
            "exchange_symmetry",
            worst,
            1e-12,
            "W with swapped weights at mode-exchanged points, 32 samples".into(),
        ))
    }));

    checks.push(guarded("marginal_match", true, || {
        let half = p.x0.abs() + 1.0 * p.delta;
        let grid = marginal_position(s, (-half, half), 11, nodes)?;
        let mut worst = 0.0f64;
        for (i1, x1) in grid.axis1.iter().enumerate() {
            for (i2, x2) in grid.axis2.iter().enumerate() {
                let density = bipartite_state(*x1, *x2, s).norm_sqr();
                worst = worst.max((grid.value(i1, i2) - density).abs());
            }
        }
        Ok(Check::bounded(
            "marginal_match",
            worst,
            1e-5,
            "momentum-integrated W vs |Psi|^2 on an 11 x 11 position grid".into(),
        ))
    }));

    // --- Interference-lattice geometry. ----------------------------------
    checks.push(guarded("tile_area", true, || {
        let grid = grid_ref.as_ref().map_err(|e| clone_err(e))?;
        let tile = find_zero_lattice(grid)?;
        Ok(Check::bounded(
            "tile_area",
            tile.relative_error.abs(),
            0.05,
            format!(
                "detected tile {:.6e} vs predicted {:.6e}",
                tile.tile_area, tile.predicted_area
            ),
        ))
    }));

    checks.push(guarded("model_zero_locations", true, || {
        let (r1, r2) = plane_ranges(Plane::X2P1, &p);
        let grid =
            dominant_section(SectionSpec::new(Plane::X2P1, [0.0, 0.0], r1, r2, 513, 513)?, s)?;
        let tile = find_zero_lattice(&grid)?;
        let target1 = std::f64::consts::PI * p.hbar / (4.0 * p.p0.abs());
        let target2 = std::f64::consts::PI * p.hbar / (4.0 * p.x0.abs());
        let first_pos = |zeros: &[f64]| {
            zeros.iter().copied().filter(|t| *t > 0.0).fold(f64::INFINITY, f64::min)
        };
        let dev1 = (first_pos(&tile.zeros_axis1) - target1).abs();
        let dev2 = (first_pos(&tile.zeros_axis2) - target2).abs();
        Ok(Check::bounded(
            "model_zero_locations",
            dev1.max(dev2),
            1e-3,
            format!(
                "first positive oscillation zeros vs ({target1:.6e}, {target2:.6e}) on the x2/p1 axes"
            ),
        ))
    }));

    checks.push(guarded("checkerboard_gating", true, || {
        let a_nonzero = p.a.norm_sqr() > 0.0;
        let b_nonzero = p.b.norm_sqr() > 0.0;
        let expect_ref = a_nonzero && b_nonzero;
        let grid = grid_ref.as_ref().map_err(|e| clone_err(e))?;
        let rep_ref = checkerboard_detect(grid);

        // Drop the second branch (or use the remaining one) and probe the
        // diagonal plane (must lose the checkerboard) and that branch's
        // mixed plane (must keep its interference lattice).
        let (single, mixed_plane) = if a_nonzero {
            (NormalizedState::new(StateParams { b: Complex64::new(0.0, 0.0), ..p })?, Plane::X2P1)
        } else {
            (*s, Plane::X1P2)
        };
        let rep_single = checkerboard_detect(&plane_grid(Plane::X1P1, &single, 513)?);
        let rep_mixed = checkerboard_detect(&plane_grid(mixed_plane, &single, 513)?);

        let wrong = usize::from(rep_ref.checkerboard != expect_ref)
            + usize::from(rep_single.checkerboard)
            + usize::from(!rep_mixed.checkerboard);
        Ok(Check::bounded(
            "checkerboard_gating",
            wrong as f64,
            0.5,
            format!(
                "x1p1 = {} (expected {expect_ref}, contrast {:.3}), single-branch x1p1 = {} \
                 (expected false), single-branch {mixed_plane} = {} (expected true)",
                rep_ref.checkerboard, rep_ref.contrast, rep_single.checkerboard,
                rep_mixed.checkerboard
            ),
        ))
    }));

    // --- Displacement sensitivity. ----------------------------------------
    checks.push(guarded("sensitivity_minima", true, || {
        let entangled = overlap_curve(OverlapModel::EntangledEqualShift, s, 0)?;
        let compass = overlap_curve(OverlapModel::SingleCompass, s, 0)?;
        let s_star = find_minimum_shift(&entangled)?;
        let s1_star = find_minimum_shift(&compass)?;
        let t_star = std::f64::consts::PI * p.delta / (4.0 * p.x0);
        let t1_star = std::f64::consts::PI * p.delta / (2.0 * p.x0);
        let ratio = s_star / s1_star;
        let depth = equal_shift_overlap(s, s_star);
        let score = ((s_star - t_star).abs() / 1e-4)
            .max((s1_star - t1_star).abs() / 1e-4)
            .max((ratio - 0.5).abs() / 1e-3)
            .max(depth / 1e-6);
        Ok(Check::bounded(
            "sensitivity_minima",
            score,
            1.0,
            format!(
                "s* = {s_star:.6e} (target {t_star:.6e}), s1* = {s1_star:.6e} (target \
                 {t1_star:.6e}), ratio = {ratio:.6}, normalized depth = {depth:.3e}; \
                 score = max(deviation / tolerance)"
            ),
        ))
    }));

    checks.push(guarded("overlap_shape_twomode", true, || {
        let period = std::f64::consts::PI * p.delta / (2.0 * p.x0);
        let mut worst = 0.0f64;
        for i in 0..=100 {
            let sv = period * (i as f64) / 100.0;
            let raw =
                overlap_displaced_numeric(s, Displacement::equal(Complex64::new(0.0, sv)), nodes)?;
            let shape = raw / equal_shift_baseline(sv);
            let model = 0.5 * (1.0 + (4.0 * p.x0 * sv / p.delta).cos());
            worst = worst.max((shape - model).abs());
        }
        Ok(Check::bounded(
            "overlap_shape_twomode",
            worst,
            1e-4,
            "envelope-corrected quadrature overlap vs (1 + cos(4 x0 s)) / 2 over one period"
                .into(),
        ))
    }));

    checks.push(guarded("overlap_shape_compass", true, || {
        let period = std::f64::consts::PI * p.delta / p.x0;
        let mut worst = 0.0f64;
        for i in 0..=100 {
            let sv = period * (i as f64) / 100.0;
            let raw = compass_overlap_numeric(s, sv, nodes)?;
            let shape = raw / compass_baseline(sv);
            let model = compass_overlap_normalized(sv, p.x0 / p.delta);
            worst = worst.max((shape - model).abs());
        }
        Ok(Check::bounded(
            "overlap_shape_compass",
            worst,
            1e-3,
            "envelope-corrected single-mode overlap vs ((1 + cos(2 x0 s)) / 2)^2 over one period"
                .into(),
        ))
    }));

    // --- Variance witness regression. --------------------------------------
    checks.push(guarded("witness_regression", true, || {
        let witness = variance_witness(s, nodes)?;
        if p == StateParams::reference() {
            Ok(Check::bounded(
                "witness_regression",
                (witness.duan_value - REFERENCE_DUAN).abs(),
                1e-6,
                format!(
                    "duan value {:.16e} vs frozen reference {REFERENCE_DUAN:.16e}",
                    witness.duan_value
                ),
            ))
        } else {
            Ok(Check::bounded(
                "witness_regression",
                0.0,
                1e-6,
                format!(
                    "no frozen value for these parameters; measured duan value {:.16e} \
                     (threshold {:.1})",
                    witness.duan_value, witness.threshold
                ),
            ))
        }
    }));

    // --- Informational: transcribed-variant deviations. --------------------
    // The halved hyperbolic weights only matter where those terms are not
    // exponentially suppressed, so the samples include a point on the
    // packet lobes (x1 near x0, p2 near p0) besides the central ones.
    let sample_points = [
        PhasePoint::new(0.0, 0.0, 0.0, 0.0),
        PhasePoint::new(0.3, -0.2, 0.15, 0.4),
        PhasePoint::new(1.0, 0.5, -0.7, 0.25),
        PhasePoint::new(-0.45, 0.95, 1.3, -0.6),
        PhasePoint::new(p.x0, 0.3, 0.2, p.p0),
        PhasePoint::new(-p.x0, -0.1, 0.35, p.p0),
    ];

    checks.push(guarded("variant_diagonal_deviation", false, || {
        let mut worst = 0.0f64;
        for pt in sample_points {
            let exact = decomposition(pt, s);
            let variant = variants::diagonal_first(pt, s) + variants::diagonal_second(pt, s);
            let authoritative = exact.wd1 + exact.wd2;
            worst = worst
                .max((variant - authoritative).abs() / (authoritative.abs().max(1.0)));
        }
        Ok(Check::informational(
            "variant_diagonal_deviation",
            worst,
            "transcribed diagonal terms vs exact bracket products (relative); the \
             transcription halves the oscillation-free terms"
                .into(),
        ))
    }));

    checks.push(guarded("variant_cross_deviation", false, || {
        let mut worst = 0.0f64;
        for pt in sample_points {
            let exact = decomposition(pt, s);
            let variant = variants::cross_first(pt, s) + variants::cross_second(pt, s);
            let authoritative = exact.wc1 + exact.wc2;
            worst = worst.max((variant - authoritative).norm() / (authoritative.norm().max(1.0)));
        }
        Ok(Check::informational(
            "variant_cross_deviation",
            worst,
            "transcribed interference terms (real-weight form) vs exact complex pair \
             (relative)"
                .into(),
        ))
    }));

    checks.push(guarded("variant_overlap_deviation", false, || {
        let mut worst = 0.0f64;
        for sv in [0.0, 0.08, 0.157] {
            let gamma = Complex64::new(0.0, sv);
            let printed = sensitivity::variants::general_overlap_printed(s, gamma, gamma);
            let numeric = overlap_displaced_numeric(s, Displacement::equal(gamma), nodes)?;
            worst = worst.max((printed - numeric).abs());
        }
        Ok(Check::informational(
            "variant_overlap_deviation",
            worst,
            "transcribed general displaced overlap vs quadrature overlap at equal \
             imaginary shifts (absolute)"
                .into(),
        ))
    }));

    checks.push(guarded("scale_equal_shift_closed_form", false, || {
        let printed = sensitivity::variants::equal_shift_printed(s, 0.0);
        Ok(Check::informational(
            "scale_equal_shift_closed_form",
            (printed - 1.0).abs(),
            format!(
                "zero-shift value of the transcribed two-mode overlap is {printed:.6}; a \
                 unit-normalized fidelity would be 1, so only the shape is anchored"
            ),
        ))
    }));

    checks.push(guarded("scale_compass_closed_form", false, || {
        let printed = compass_overlap(0.0, p.x0 / p.delta);
        Ok(Check::informational(
            "scale_compass_closed_form",
            (printed - 1.0).abs(),
            format!(
                "zero-shift value of the transcribed compass overlap is {printed:.6}; the \
                 normalized shape divides this out"
            ),
        ))
    }));

    let all_mandatory_passed = checks.iter().filter(|c| c.mandatory).all(|c| c.passed);
    ConformanceReport { checks, all_mandatory_passed }
}

/// `crate::Error` is not `Clone`; checks that share a cached grid result
/// rebuild a descriptive error instead.
fn clone_err(e: &crate::Error) -> crate::Error {
    crate::Error::InvalidParams(format!("section grid unavailable: {e}"))
}
