//! Quantitative structure extraction from section grids: interference zero
//! lattices and their fundamental tile area, checkerboard gating, position
//! marginals, and the two-mode variance witness.

use crate::quadrature::GaussLegendre;
use crate::states::{
    even_momentum_state, even_momentum_state_derivative, even_position_state,
    even_position_state_derivative, NormalizedState,
};
use crate::wigner_analytic::{
    envelope_constant, peak_cross_kernel, peak_momentum_cat, peak_position_cat, AxisKind,
    Grid2D, GridContent, Plane, SectionSpec,
};
use crate::wigner_oracle::normalization_domains;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Zero-lattice measurement of one section grid.
#[derive(Debug, Clone, Serialize)]
pub struct TileReport {
    /// Interpolated sign-change locations along the axis-1 center line.
    pub zeros_axis1: Vec<f64>,
    /// Interpolated sign-change locations along the axis-2 center line.
    pub zeros_axis2: Vec<f64>,
    /// Estimated full oscillation period along axis 1 (twice the median
    /// zero spacing).
    pub period1: f64,
    /// Estimated full oscillation period along axis 2.
    pub period2: f64,
    /// `period1 * period2`.
    pub tile_area: f64,
    /// `(2 pi hbar)^2 / (4 x0 p0)`.
    pub predicted_area: f64,
    /// `|tile_area - predicted_area| / predicted_area`.
    pub relative_error: f64,
}

/// Checkerboard gate result for one section grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckerboardReport {
    /// True when both center lines alternate sign at least four times inside
    /// the central window and the raw-value contrast exceeds one half.
    pub checkerboard: bool,
    /// `(max - min) / (|max| + |min|)` over the raw values in the central
    /// window (1 when the sign flips, small for a single-signed blob).
    pub contrast: f64,
    /// Sign alternations found along the axis-1 center line.
    pub axis1_alternations: usize,
    /// Sign alternations found along the axis-2 center line.
    pub axis2_alternations: usize,
}

/// Second moments of the bipartite state.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SecondMoments {
    /// `<x1^2>`.
    pub x1_sq: f64,
    /// `<x2^2>`.
    pub x2_sq: f64,
    /// `<p1^2>`.
    pub p1_sq: f64,
    /// `<p2^2>`.
    pub p2_sq: f64,
    /// `<x1 x2>`.
    pub x1x2: f64,
    /// `<p1 p2>`.
    pub p1p2: f64,
}

/// Variance-based separability witness for the collective quadratures.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WitnessReport {
    /// Variance of `x1 - x2`.
    pub var_xminus: f64,
    /// Variance of `p1 + p2`.
    pub var_pplus: f64,
    /// Variance of `x1 + x2`.
    pub var_xplus: f64,
    /// Variance of `p1 - p2`.
    pub var_pminus: f64,
    /// Minimum over the two conjugate pairings of the summed variances.
    pub duan_value: f64,
    /// Separability bound `2 hbar` for the summed variances.
    pub threshold: f64,
    /// True when `duan_value >= threshold`, i.e. the witness does NOT flag
    /// entanglement.
    pub separable_consistent: bool,
    /// The second moments behind the variances.
    pub moments: SecondMoments,
    /// Largest absolute first moment (diagnostic; zero by parity).
    pub first_moment_max_abs: f64,
    /// `|A|^2 / (|A|^2 + |B|^2)`.
    pub weight_fraction_a: f64,
    /// `|B|^2 / (|A|^2 + |B|^2)`.
    pub weight_fraction_b: f64,
}

/// Extracts the center line of a grid along the given axis (1 or 2): the
/// row/column through the middle sample of the other axis.
fn center_line(grid: &Grid2D, axis: u8) -> (Vec<f64>, Vec<f64>) {
    match axis {
        1 => {
            let i2 = (grid.spec.n2 - 1) / 2;
            let vs = (0..grid.spec.n1).map(|i1| grid.value(i1, i2)).collect();
            (grid.axis1.clone(), vs)
        }
        2 => {
            let i1 = (grid.spec.n1 - 1) / 2;
            let vs = (0..grid.spec.n2).map(|i2| grid.value(i1, i2)).collect();
            (grid.axis2.clone(), vs)
        }
        _ => unreachable!("axis index is 1 or 2"),
    }
}

/// Restricts a line to the central window `|t - t_mid| <= 2 T`, whitens
/// Wigner content by the axis envelope, and subtracts the midrange so that
/// touching zeros of non-negative oscillations become strict crossings.
fn windowed_oscillation(
    ts: &[f64],
    vs: &[f64],
    kind: AxisKind,
    content: GridContent,
    grid: &Grid2D,
) -> (Vec<f64>, Vec<f64>) {
    let t_mid = ts[(ts.len() - 1) / 2];
    let period = kind.predicted_period(&grid.params);
    let half_window = 2.0 * period;
    let mut wt = Vec::new();
    let mut wv = Vec::new();
    for (t, v) in ts.iter().zip(vs) {
        if !(t - t_mid).abs().le(&half_window) {
            continue;
        }
        let value = if content == GridContent::WignerTotal {
            // Divide out the Gaussian envelope so the oscillation amplitude
            // is flat across the window. Whitening after windowing keeps the
            // inverse envelope bounded.
            v / kind.envelope_factor(*t, &grid.params)
        } else {
            *v
        };
        wt.push(*t);
        wv.push(value);
    }
    if wv.is_empty() {
        return (wt, wv);
    }
    let max = wv.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = wv.iter().cloned().fold(f64::INFINITY, f64::min);
    let midrange = 0.5 * (max + min);
    for v in &mut wv {
        *v -= midrange;
    }
    (wt, wv)
}

/// Strict sign changes with linear interpolation of the crossing location.
fn strict_crossings(ts: &[f64], vs: &[f64]) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..ts.len().saturating_sub(1) {
        if vs[i] * vs[i + 1] < 0.0 {
            let frac = vs[i] / (vs[i] - vs[i + 1]);
            out.push(ts[i] + frac * (ts[i + 1] - ts[i]));
        }
    }
    out
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn check_sampling(grid: &Grid2D) -> Result<()> {
    let (k1, k2) = grid.spec.plane.axis_kinds();
    for (kind, range, n) in [
        (k1, grid.spec.range1, grid.spec.n1),
        (k2, grid.spec.range2, grid.spec.n2),
    ] {
        let period = kind.predicted_period(&grid.params);
        let spacing = (range.1 - range.0) / ((n - 1) as f64);
        let samples_per_period = period / spacing;
        if samples_per_period < 8.0 {
            return Err(Error::ScanTooCoarse { samples_per_period });
        }
    }
    Ok(())
}

/// Locates the interference zero lattice of a section grid and measures its
/// fundamental tile.
///
/// Walks the two center lines of the grid, divides out the Gaussian envelope
/// (for full-Wigner grids), subtracts the midrange, and collects strict sign
/// changes inside the central window of two predicted periods. Fails with
/// [`Error::ScanTooCoarse`] below eight samples per predicted period and
/// with [`Error::NoLattice`] when either axis yields fewer than four
/// crossings.
pub fn find_zero_lattice(grid: &Grid2D) -> Result<TileReport> {
    check_sampling(grid)?;
    let (k1, k2) = grid.spec.plane.axis_kinds();
    let mut zeros = [Vec::new(), Vec::new()];
    for (slot, axis, kind) in [(0usize, 1u8, k1), (1, 2, k2)] {
        let (ts, vs) = center_line(grid, axis);
        let (wt, wv) = windowed_oscillation(&ts, &vs, kind, grid.content, grid);
        let crossings = strict_crossings(&wt, &wv);
        if crossings.len() < 4 {
            return Err(Error::NoLattice { axis, crossings: crossings.len() });
        }
        zeros[slot] = crossings;
    }
    let [zeros_axis1, zeros_axis2] = zeros;
    let period_of = |zs: &[f64]| {
        let mut spacings: Vec<f64> = zs.windows(2).map(|w| w[1] - w[0]).collect();
        spacings.sort_by(|a, b| a.partial_cmp(b).unwrap());
        2.0 * median(&spacings)
    };
    let period1 = period_of(&zeros_axis1);
    let period2 = period_of(&zeros_axis2);
    let tile_area = period1 * period2;
    let p = &grid.params;
    let predicted_area =
        (2.0 * std::f64::consts::PI * p.hbar).powi(2) / (4.0 * p.x0 * p.p0);
    let relative_error = (tile_area - predicted_area).abs() / predicted_area;
    Ok(TileReport {
        zeros_axis1,
        zeros_axis2,
        period1,
        period2,
        tile_area,
        predicted_area,
        relative_error,
    })
}

/// Checkerboard gate: sign alternation along both center lines plus a
/// contrast requirement on the raw values in the central window.
///
/// Never fails; degenerate or under-sampled grids report `false`.
pub fn checkerboard_detect(grid: &Grid2D) -> CheckerboardReport {
    let (k1, k2) = grid.spec.plane.axis_kinds();

    // Raw-value contrast over the central 2D window.
    let t1_mid = grid.axis1[(grid.spec.n1 - 1) / 2];
    let t2_mid = grid.axis2[(grid.spec.n2 - 1) / 2];
    let w1 = 2.0 * k1.predicted_period(&grid.params);
    let w2 = 2.0 * k2.predicted_period(&grid.params);
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for (i2, t2) in grid.axis2.iter().enumerate() {
        if (t2 - t2_mid).abs() > w2 {
            continue;
        }
        for (i1, t1) in grid.axis1.iter().enumerate() {
            if (t1 - t1_mid).abs() > w1 {
                continue;
            }
            let v = grid.value(i1, i2);
            max = max.max(v);
            min = min.min(v);
        }
    }
    let contrast = if max.is_finite() && min.is_finite() && (max.abs() + min.abs()) > 0.0 {
        (max - min) / (max.abs() + min.abs())
    } else {
        0.0
    };

    if check_sampling(grid).is_err() {
        return CheckerboardReport {
            checkerboard: false,
            contrast,
            axis1_alternations: 0,
            axis2_alternations: 0,
        };
    }

    let mut alternations = [0usize; 2];
    for (slot, axis, kind) in [(0usize, 1u8, k1), (1, 2, k2)] {
        let (ts, vs) = center_line(grid, axis);
        let (wt, wv) = windowed_oscillation(&ts, &vs, kind, grid.content, grid);
        alternations[slot] = strict_crossings(&wt, &wv).len();
    }
    CheckerboardReport {
        checkerboard: alternations[0] >= 4 && alternations[1] >= 4 && contrast > 0.5,
        contrast,
        axis1_alternations: alternations[0],
        axis2_alternations: alternations[1],
    }
}

/// Position marginal `M(x1, x2) = ∫∫ W dp1 dp2` on a uniform grid over
/// `[range.0, range.1]^2`, computed by collapsing the momentum integrals of
/// the factored closed form into per-sample one-dimensional quadratures.
///
/// For a valid Wigner function this must equal `|Psi(x1, x2)|^2`; the
/// conformance suite asserts exactly that. `p_nodes` must resolve the
/// momentum-axis oscillation `cos(2 x0 p / hbar)`.
pub fn marginal_position(
    s: &NormalizedState,
    range: (f64, f64),
    n: usize,
    p_nodes: usize,
) -> Result<Grid2D> {
    let p = &s.params;
    let (_, lp) = normalization_domains(p);
    let required = (8.0 * lp * (2.0 * p.x0.abs()) / (std::f64::consts::PI * p.hbar))
        .ceil()
        .max(16.0) as usize;
    if p_nodes < required {
        return Err(Error::ResolutionTooLow { required, got: p_nodes });
    }
    // The fixed coordinates are meaningless for a marginal (the momenta are
    // integrated out, not frozen); zeros keep the section spec serializable.
    let spec = SectionSpec::new(Plane::X1X2, [0.0, 0.0], range, range, n, n)?;
    let xs = spec.axis1_samples();

    let gl = GaussLegendre::new(p_nodes);
    let ps: Vec<f64> = gl.nodes.iter().map(|t| t * lp).collect();
    let wp: Vec<f64> = gl.weights.iter().map(|w| w * lp).collect();

    // Per-sample momentum integrals of the three peak-form kernels.
    let mut int_psi = vec![0.0_f64; n];
    let mut int_phi = vec![0.0_f64; n];
    let mut int_cross = vec![Complex64::new(0.0, 0.0); n];
    for (i, x) in xs.iter().enumerate() {
        let mut a = 0.0;
        let mut b = 0.0;
        let mut c = Complex64::new(0.0, 0.0);
        for (pp, w) in ps.iter().zip(&wp) {
            a += w * peak_position_cat(*x, *pp, p);
            b += w * peak_momentum_cat(*x, *pp, p);
            c += peak_cross_kernel(*x, *pp, p) * *w;
        }
        int_psi[i] = a;
        int_phi[i] = b;
        int_cross[i] = c;
    }

    let k = 4.0 * envelope_constant(s);
    let ab = p.a.conj() * p.b;
    let mut values = vec![0.0_f64; n * n];
    for i2 in 0..n {
        for i1 in 0..n {
            let cross = int_cross[i1] * int_cross[i2].conj();
            values[i2 * n + i1] = k
                * (p.a.norm_sqr() * int_psi[i1] * int_phi[i2]
                    + p.b.norm_sqr() * int_phi[i1] * int_psi[i2]
                    + 0.5 * (ab.re * cross.re - ab.im * cross.im));
        }
    }
    Ok(Grid2D {
        spec,
        params: *p,
        content: GridContent::PositionDensity,
        axis1: xs.clone(),
        axis2: xs,
        values,
    })
}

/// Computes the variance witness of the collective quadratures by
/// two-dimensional position-space quadrature.
///
/// Position moments come from `|Psi|^2`; momentum moments use the gradient
/// form `<p_i p_j> = hbar^2 Re ∫ (∂_i Psi)* (∂_j Psi)`, which avoids any
/// oscillatory momentum integral. `nodes` is the per-axis Gauss–Legendre
/// count and must resolve the `cos(2 p0 x / hbar)` density oscillation.
pub fn variance_witness(s: &NormalizedState, nodes: usize) -> Result<WitnessReport> {
    let p = &s.params;
    let (lx, _) = normalization_domains(p);
    let required =
        (8.0 * lx * (2.0 * p.p0.abs()) / (std::f64::consts::PI * p.hbar)).ceil().max(16.0) as usize;
    if nodes < required {
        return Err(Error::ResolutionTooLow { required, got: nodes });
    }
    let gl = GaussLegendre::new(nodes);
    let xs: Vec<f64> = gl.nodes.iter().map(|t| t * lx).collect();
    let ws: Vec<f64> = gl.weights.iter().map(|w| w * lx).collect();

    // Per-axis wavefunction caches; both axes share the same sample set.
    let psi: Vec<f64> = xs.iter().map(|x| even_position_state(*x, p)).collect();
    let phi: Vec<f64> = xs.iter().map(|x| even_momentum_state(*x, p)).collect();
    let dpsi: Vec<f64> = xs.iter().map(|x| even_position_state_derivative(*x, p)).collect();
    let dphi: Vec<f64> = xs.iter().map(|x| even_momentum_state_derivative(*x, p)).collect();

    let n = xs.len();
    let mut norm = 0.0;
    let mut mean_x1 = 0.0;
    let mut mean_x2 = 0.0;
    let mut mean_p1 = 0.0;
    let mut mean_p2 = 0.0;
    let mut x1_sq = 0.0;
    let mut x2_sq = 0.0;
    let mut x1x2 = 0.0;
    let mut p1_sq = 0.0;
    let mut p2_sq = 0.0;
    let mut p1p2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = ws[i] * ws[j];
            let value = (p.a * (psi[i] * phi[j]) + p.b * (phi[i] * psi[j])) * s.norm_const;
            let d1 = (p.a * (dpsi[i] * phi[j]) + p.b * (dphi[i] * psi[j])) * s.norm_const;
            let d2 = (p.a * (psi[i] * dphi[j]) + p.b * (phi[i] * dpsi[j])) * s.norm_const;
            let density = value.norm_sqr();
            norm += w * density;
            mean_x1 += w * density * xs[i];
            mean_x2 += w * density * xs[j];
            // <p> = hbar Im ∫ Psi* ∂Psi.
            mean_p1 += w * (value.conj() * d1).im;
            mean_p2 += w * (value.conj() * d2).im;
            x1_sq += w * density * xs[i] * xs[i];
            x2_sq += w * density * xs[j] * xs[j];
            x1x2 += w * density * xs[i] * xs[j];
            p1_sq += w * d1.norm_sqr();
            p2_sq += w * d2.norm_sqr();
            p1p2 += w * (d1.conj() * d2).re;
        }
    }
    let h = p.hbar;
    mean_p1 *= h;
    mean_p2 *= h;
    p1_sq *= h * h;
    p2_sq *= h * h;
    p1p2 *= h * h;
    // Guard against a silently wrong quadrature domain.
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidQuadrature(format!(
            "witness quadrature does not normalize the state: ∫|Psi|^2 = {norm}"
        )));
    }

    let var_xminus = x1_sq + x2_sq - 2.0 * x1x2 - (mean_x1 - mean_x2).powi(2);
    let var_xplus = x1_sq + x2_sq + 2.0 * x1x2 - (mean_x1 + mean_x2).powi(2);
    let var_pplus = p1_sq + p2_sq + 2.0 * p1p2 - (mean_p1 + mean_p2).powi(2);
    let var_pminus = p1_sq + p2_sq - 2.0 * p1p2 - (mean_p1 - mean_p2).powi(2);
    let duan_value = (var_xminus + var_pplus).min(var_xplus + var_pminus);
    let threshold = 2.0 * p.hbar;
    let total_weight = p.a.norm_sqr() + p.b.norm_sqr();
    Ok(WitnessReport {
        var_xminus,
        var_pplus,
        var_xplus,
        var_pminus,
        duan_value,
        threshold,
        separable_consistent: duan_value >= threshold,
        moments: SecondMoments { x1_sq, x2_sq, p1_sq, p2_sq, x1x2, p1p2 },
        first_moment_max_abs: mean_x1
            .abs()
            .max(mean_x2.abs())
            .max(mean_p1.abs())
            .max(mean_p2.abs()),
        weight_fraction_a: p.a.norm_sqr() / total_weight,
        weight_fraction_b: p.b.norm_sqr() / total_weight,
    })
}
