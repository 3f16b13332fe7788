//! Brute-force numeric Wigner transform, the ground truth for every
//! closed-form expression in this crate.
//!
//! The two-mode value is the double integral
//!
//! ```text
//! W(x1, p1, x2, p2) = (2 pi hbar)^{-2}
//!     ∫∫ Psi*(x1 + a/2, x2 + b/2) Psi(x1 - a/2, x2 - b/2)
//!        e^{ i (p1 a + p2 b) / hbar }  da db
//! ```
//!
//! evaluated by tensor-product quadrature over the shift variables `(a, b)`,
//! with nothing shared with the closed-form assembly except the wavefunction
//! itself. Agreement between the two paths is the central mutual check of
//! the crate.

use crate::quadrature::{GaussLegendre, QuadratureSpec};
use crate::states::{bipartite_state, NormalizedState, StateParams};
use crate::wigner_analytic::{
    envelope_constant, peak_cross_kernel, peak_momentum_cat, peak_position_cat, PhasePoint,
};
use crate::{Error, Result};
use num_complex::Complex64;

/// Result of one numeric Wigner evaluation, with its quality diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct OracleValue {
    /// The Wigner value (real part of the quadrature sum).
    pub value: f64,
    /// Magnitude of the imaginary part of the sum, in the same units as
    /// `value`; must be at rounding level for a converged evaluation.
    pub imag_residual: f64,
    /// True when the correlation integrand has decayed below `1e-12` of its
    /// interior peak at the truncation boundary.
    pub truncation_ok: bool,
    /// Ratio of the boundary integrand magnitude to the interior peak.
    pub boundary_ratio: f64,
}

/// Default truncation half-width `H = 2 (2 x0 + 10 delta)`: every Gaussian
/// factor of the correlation is below `1e-20` at the boundary for phase
/// points within the plotting window.
pub fn default_half_width(p: &StateParams) -> f64 {
    2.0 * (2.0 * p.x0 + 10.0 * p.delta)
}

/// Two-mode correlation `Psi*(x1 + a/2, x2 + b/2) Psi(x1 - a/2, x2 - b/2)`.
pub fn correlation(x1: f64, a: f64, x2: f64, b: f64, s: &NormalizedState) -> Complex64 {
    bipartite_state(x1 + 0.5 * a, x2 + 0.5 * b, s).conj()
        * bipartite_state(x1 - 0.5 * a, x2 - 0.5 * b, s)
}

/// Largest imaginary residual a converged oracle evaluation may carry:
/// `1e-9` relative to the peak scale `1/(pi hbar)^2` (plus 1 so the bound
/// stays meaningful for tiny peak values).
pub fn reality_threshold(hbar: f64) -> f64 {
    1e-9 * (1.0 + 1.0 / (std::f64::consts::PI * hbar).powi(2))
}

/// Numeric two-mode Wigner value at `pt`.
///
/// Preconditions: `quad` must resolve the fastest phase oscillation,
/// `max(|p1|, |p2|, p0)` ([`Error::ResolutionTooLow`] otherwise). The
/// imaginary residual of the sum must stay below `1e-9` (scaled by the
/// Wigner peak bound), else [`Error::AssemblyResidual`] — for an even grid
/// the residual cancels pairwise, so a violation means the quadrature or the
/// wavefunction is broken.
///
/// The per-axis wavefunction values are cached, so the cost is
/// `O(nodes^2)` complex multiplies plus `O(nodes)` wavefunction calls.
pub fn wigner_numeric_2mode(
    pt: PhasePoint,
    s: &NormalizedState,
    quad: &QuadratureSpec,
) -> Result<OracleValue> {
    if !pt.is_finite() {
        return Err(Error::InvalidParams("phase point must be finite".into()));
    }
    let p = &s.params;
    let fastest = pt.p1.abs().max(pt.p2.abs()).max(p.p0.abs());
    quad.check_resolves(p.hbar, fastest)?;

    let (pts, wts) = quad.line();
    let n = pts.len();
    use crate::states::{even_momentum_state, even_position_state};
    let psi_p1: Vec<f64> = pts.iter().map(|a| even_position_state(pt.x1 + 0.5 * a, p)).collect();
    let phi_p1: Vec<f64> = pts.iter().map(|a| even_momentum_state(pt.x1 + 0.5 * a, p)).collect();
    let psi_m1: Vec<f64> = pts.iter().map(|a| even_position_state(pt.x1 - 0.5 * a, p)).collect();
    let phi_m1: Vec<f64> = pts.iter().map(|a| even_momentum_state(pt.x1 - 0.5 * a, p)).collect();
    let psi_p2: Vec<f64> = pts.iter().map(|b| even_position_state(pt.x2 + 0.5 * b, p)).collect();
    let phi_p2: Vec<f64> = pts.iter().map(|b| even_momentum_state(pt.x2 + 0.5 * b, p)).collect();
    let psi_m2: Vec<f64> = pts.iter().map(|b| even_position_state(pt.x2 - 0.5 * b, p)).collect();
    let phi_m2: Vec<f64> = pts.iter().map(|b| even_momentum_state(pt.x2 - 0.5 * b, p)).collect();
    let ea: Vec<Complex64> = pts
        .iter()
        .zip(&wts)
        .map(|(a, w)| Complex64::from_polar(1.0, pt.p1 * a / p.hbar) * *w)
        .collect();
    let eb: Vec<Complex64> = pts
        .iter()
        .zip(&wts)
        .map(|(b, w)| Complex64::from_polar(1.0, pt.p2 * b / p.hbar) * *w)
        .collect();

    // The wavefunctions are real, so the conjugation of the `+` factor only
    // conjugates the weights A, B.
    let a_conj = p.a.conj() * s.norm_const;
    let b_conj = p.b.conj() * s.norm_const;
    let a_fwd = p.a * s.norm_const;
    let b_fwd = p.b * s.norm_const;

    let mut acc = Complex64::new(0.0, 0.0);
    let mut max_interior = 0.0_f64;
    let mut max_boundary = 0.0_f64;
    for i in 0..n {
        let cp1 = a_conj * psi_p1[i];
        let cp2 = b_conj * phi_p1[i];
        let cm1 = a_fwd * psi_m1[i];
        let cm2 = b_fwd * phi_m1[i];
        let i_edge = i == 0 || i == n - 1;
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let plus = cp1 * phi_p2[j] + cp2 * psi_p2[j];
            let minus = cm1 * phi_m2[j] + cm2 * psi_m2[j];
            let prod = plus * minus;
            let mag = prod.norm_sqr();
            if i_edge || j == 0 || j == n - 1 {
                if mag > max_boundary {
                    max_boundary = mag;
                }
            } else if mag > max_interior {
                max_interior = mag;
            }
            row += prod * eb[j];
        }
        acc += ea[i] * row;
    }

    let scale = (2.0 * std::f64::consts::PI * p.hbar).powi(2);
    let value = acc.re / scale;
    let imag_residual = acc.im.abs() / scale;
    if imag_residual > reality_threshold(p.hbar) {
        return Err(Error::AssemblyResidual {
            residual: imag_residual,
            x1: pt.x1,
            p1: pt.p1,
            x2: pt.x2,
            p2: pt.p2,
        });
    }
    let boundary_ratio = if max_boundary == 0.0 {
        0.0
    } else if max_interior == 0.0 {
        f64::INFINITY
    } else {
        (max_boundary / max_interior).sqrt()
    };
    Ok(OracleValue { value, imag_residual, truncation_ok: boundary_ratio <= 1e-12, boundary_ratio })
}

/// Numeric one-mode Wigner value
/// `W(x, p) = (2 pi hbar)^{-1} ∫ f*(x + a/2) f(x - a/2) e^{i p a / hbar} da`.
///
/// `internal_momentum` is the largest momentum content of `f` itself (zero
/// for a packet without phase oscillation); it enters the resolution
/// precondition together with `|p|`.
pub fn wigner_numeric_1mode<F>(
    f: F,
    x: f64,
    p: f64,
    hbar: f64,
    quad: &QuadratureSpec,
    internal_momentum: f64,
) -> Result<OracleValue>
where
    F: Fn(f64) -> Complex64,
{
    if !x.is_finite() || !p.is_finite() {
        return Err(Error::InvalidParams("phase point must be finite".into()));
    }
    quad.check_resolves(hbar, p.abs().max(internal_momentum.abs()))?;
    let (pts, wts) = quad.line();
    let n = pts.len();
    let fp: Vec<Complex64> = pts.iter().map(|a| f(x + 0.5 * a)).collect();
    let fm: Vec<Complex64> = pts.iter().map(|a| f(x - 0.5 * a)).collect();

    let mut acc = Complex64::new(0.0, 0.0);
    let mut max_interior = 0.0_f64;
    let mut max_boundary = 0.0_f64;
    for i in 0..n {
        let prod = fp[i].conj() * fm[i];
        let mag = prod.norm_sqr();
        if i == 0 || i == n - 1 {
            if mag > max_boundary {
                max_boundary = mag;
            }
        } else if mag > max_interior {
            max_interior = mag;
        }
        acc += prod * Complex64::from_polar(1.0, p * pts[i] / hbar) * wts[i];
    }

    let scale = 2.0 * std::f64::consts::PI * hbar;
    let value = acc.re / scale;
    let imag_residual = acc.im.abs() / scale;
    if imag_residual > 1e-9 * (1.0 + 1.0 / (std::f64::consts::PI * hbar)) {
        return Err(Error::AssemblyResidual {
            residual: imag_residual,
            x1: x,
            p1: p,
            x2: f64::NAN,
            p2: f64::NAN,
        });
    }
    let boundary_ratio = if max_boundary == 0.0 {
        0.0
    } else if max_interior == 0.0 {
        f64::INFINITY
    } else {
        (max_boundary / max_interior).sqrt()
    };
    Ok(OracleValue { value, imag_residual, truncation_ok: boundary_ratio <= 1e-12, boundary_ratio })
}

/// Integration domains of the phase-space normalization integral: the
/// Gaussian envelope confines the support to
/// `|x| <= x0 + 8 delta`, `|p| <= p0 + 8 hbar / delta`.
pub fn normalization_domains(p: &StateParams) -> (f64, f64) {
    (p.x0.abs() + 8.0 * p.delta, p.p0.abs() + 8.0 * p.hbar / p.delta)
}

/// Per-axis resolution requirement of the normalization integral: the
/// diagonal brackets oscillate as `cos(2 p0 x / hbar)` along positions and
/// `cos(2 x0 p / hbar)` along momenta.
fn normalization_required_nodes(p: &StateParams) -> usize {
    let (lx, lp) = normalization_domains(p);
    let rx = 8.0 * lx * (2.0 * p.p0.abs()) / (std::f64::consts::PI * p.hbar);
    let rp = 8.0 * lp * (2.0 * p.x0.abs()) / (std::f64::consts::PI * p.hbar);
    rx.max(rp).max(16.0).ceil() as usize
}

/// Factored phase-space sums of the three peak-form kernels over one mode's
/// `(x, p)` plane.
fn mode_plane_sums(s: &NormalizedState, nodes: usize) -> (f64, f64, Complex64) {
    let p = &s.params;
    let (lx, lp) = normalization_domains(p);
    let gl = GaussLegendre::new(nodes);
    let xs: Vec<f64> = gl.nodes.iter().map(|t| t * lx).collect();
    let wx: Vec<f64> = gl.weights.iter().map(|w| w * lx).collect();
    let ps: Vec<f64> = gl.nodes.iter().map(|t| t * lp).collect();
    let wp: Vec<f64> = gl.weights.iter().map(|w| w * lp).collect();
    let mut s_psi = 0.0;
    let mut s_phi = 0.0;
    let mut s_cross = Complex64::new(0.0, 0.0);
    for (x, wxi) in xs.iter().zip(&wx) {
        for (pp, wpj) in ps.iter().zip(&wp) {
            let w = wxi * wpj;
            s_psi += w * peak_position_cat(*x, *pp, p);
            s_phi += w * peak_momentum_cat(*x, *pp, p);
            s_cross += peak_cross_kernel(*x, *pp, p) * w;
        }
    }
    (s_psi, s_phi, s_cross)
}

fn normalization_4d_from_sums(s: &NormalizedState, sums: (f64, f64, Complex64)) -> f64 {
    let p = &s.params;
    let (s_psi, s_phi, s_cross) = sums;
    let k = 4.0 * envelope_constant(s);
    let ab = p.a.conj() * p.b;
    // The cross term integrates to |S_cross|^2, which is real, so only
    // Re(A* B) survives.
    k * (s_psi * s_phi * (p.a.norm_sqr() + p.b.norm_sqr()) + 0.5 * ab.re * s_cross.norm_sqr())
}

/// Four-dimensional normalization integral of the closed-form Wigner
/// function, `∫ W d x1 d p1 d x2 d p2`, computed as a tensor quadrature.
///
/// The integrand factorizes exactly over the two modes, so the 4D sum
/// collapses to 2D plane sums of the three peak-form kernels; the collapse
/// is validated against the honest nested sum in the tests.
pub fn normalization_4d(s: &NormalizedState, nodes: usize) -> Result<f64> {
    let required = normalization_required_nodes(&s.params);
    if nodes < required {
        return Err(Error::ResolutionTooLow { required, got: nodes });
    }
    Ok(normalization_4d_from_sums(s, mode_plane_sums(s, nodes)))
}

/// Honest `O(nodes^4)` nested normalization sum over the same per-axis
/// rules. Diagnostic only (exercised by the factorization test): no
/// resolution validation, cost grows fast.
#[cfg(test)]
fn normalization_4d_nested(s: &NormalizedState, nodes: usize) -> f64 {
    let p = &s.params;
    let (lx, lp) = normalization_domains(p);
    let gl = GaussLegendre::new(nodes);
    let xs: Vec<f64> = gl.nodes.iter().map(|t| t * lx).collect();
    let wx: Vec<f64> = gl.weights.iter().map(|w| w * lx).collect();
    let ps: Vec<f64> = gl.nodes.iter().map(|t| t * lp).collect();
    let wp: Vec<f64> = gl.weights.iter().map(|w| w * lp).collect();
    let mut acc = 0.0;
    for (x1, w1) in xs.iter().zip(&wx) {
        for (p1, w2) in ps.iter().zip(&wp) {
            for (x2, w3) in xs.iter().zip(&wx) {
                for (p2, w4) in ps.iter().zip(&wp) {
                    let pt = PhasePoint::new(*x1, *p1, *x2, *p2);
                    let w = crate::wigner_analytic::decomposition(pt, s).total;
                    acc += w1 * w2 * w3 * w4 * w;
                }
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Rule;
    use crate::states::{even_position_state, StateParams};
    use crate::wigner_analytic::{wigner_position_cat, wigner_total};

    fn reference() -> NormalizedState {
        NormalizedState::reference()
    }

    fn gl_spec(half_width: f64, nodes: usize) -> QuadratureSpec {
        QuadratureSpec::new(half_width, nodes, Rule::GaussLegendre).unwrap()
    }

    #[test]
    fn correlation_at_zero_shift_is_density() {
        let s = reference();
        for (x1, x2) in [(0.0, 0.0), (1.3, -0.4), (5.0, 2.0)] {
            let c = correlation(x1, 0.0, x2, 0.0, &s);
            let density = bipartite_state(x1, x2, &s).norm_sqr();
            assert!((c.re - density).abs() <= 1e-15 * (1.0 + density));
            assert_eq!(c.im, 0.0);
        }
    }

    #[test]
    fn correlation_hermiticity() {
        let s = reference();
        for (x1, a, x2, b) in [(0.4, 1.7, -0.9, 2.3), (1.0, -3.1, 0.5, 0.8)] {
            let fwd = correlation(x1, a, x2, b, &s);
            let rev = correlation(x1, -a, x2, -b, &s).conj();
            assert!((fwd - rev).norm() <= 1e-15 * (1.0 + fwd.norm()));
        }
    }

    #[test]
    fn correlation_gaussian_decay_bound() {
        let s = reference();
        let p = &s.params;
        let d2 = p.delta * p.delta;
        // |Psi| is bounded by its largest packet value; 1 is a generous
        // stand-in at these parameters.
        let log_max_density = 0.0;
        // log K from expanding the packet envelopes:
        // 4 x0^2/d^2 covers the cosh growth of both shifted arguments,
        // plus the section-point dependent offset.
        let (x1, x2) = (0.7_f64, -0.3_f64);
        let log_k = (4.0 * p.x0 * p.x0
            + 2.0 * p.x0 * (x1.abs() + x2.abs())
            + x1 * x1
            + x2 * x2)
            / d2
            + 3.0; // margin for the weight constants
        for r in [20.0_f64, 30.0, 40.0] {
            for (a, b) in [(r, r), (r, -r), (r, 0.0), (0.0, r)] {
                let c = correlation(x1, a, x2, b, &s).norm();
                if c == 0.0 {
                    continue; // underflowed; trivially inside the bound
                }
                let log_bound = log_max_density + log_k - (a * a + b * b) / (8.0 * d2);
                assert!(
                    c.ln() <= log_bound,
                    "correlation at shift ({a}, {b}) breaks the Gaussian decay bound: \
                     ln|c| = {} > {log_bound}",
                    c.ln()
                );
            }
        }
    }

    #[test]
    fn hoisted_sum_matches_naive_quadrature() {
        let s = reference();
        // Deliberately truncated domain: both paths see the same integrand,
        // so they must agree regardless of truncation quality.
        let quad = gl_spec(2.0, 32);
        let pt = PhasePoint::new(0.3, 1.2, -0.4, 0.7);
        let hoisted = wigner_numeric_2mode(pt, &s, &quad).unwrap();
        assert!(!hoisted.truncation_ok, "H = 2 cannot contain the packets");

        let (pts, wts) = quad.line();
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, wa) in pts.iter().zip(&wts) {
            for (b, wb) in pts.iter().zip(&wts) {
                let phase = Complex64::from_polar(1.0, (pt.p1 * a + pt.p2 * b) / s.params.hbar);
                acc += correlation(pt.x1, *a, pt.x2, *b, &s) * phase * (wa * wb);
            }
        }
        let naive = acc.re / (2.0 * std::f64::consts::PI * s.params.hbar).powi(2);
        assert!(
            (hoisted.value - naive).abs() <= 1e-14 * (1.0 + naive.abs()),
            "hoisted {} vs naive {naive}",
            hoisted.value
        );
    }

    #[test]
    fn gaussian_ground_state_peaks() {
        // x0 = p0 = 0 with B = 0 degenerates to the two-mode Gaussian ground
        // state; its Wigner peak is 1/(pi hbar) per mode.
        let params = StateParams::new(
            0.0,
            0.0,
            1.0,
            1.0,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let s = NormalizedState::new(params).unwrap();
        let quad = gl_spec(12.0, 64);
        let got = wigner_numeric_2mode(PhasePoint::new(0.0, 0.0, 0.0, 0.0), &s, &quad).unwrap();
        let want = 1.0 / (std::f64::consts::PI * params.hbar).powi(2);
        assert!(got.truncation_ok);
        assert!((got.value - want).abs() < 1e-10, "{} vs {want}", got.value);

        let f = move |x: f64| {
            Complex64::new(std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp(), 0.0)
        };
        let got1 = wigner_numeric_1mode(f, 0.0, 0.0, 1.0, &quad, 0.0).unwrap();
        let want1 = 1.0 / (std::f64::consts::PI * params.hbar);
        assert!((got1.value - want1).abs() < 1e-12);
    }

    #[test]
    fn one_mode_cat_sign_change_near_quarter_period() {
        let p = StateParams::reference();
        let quad = gl_spec(2.0 * (p.x0 + 8.0 * p.delta), 96);
        let f = move |x: f64| Complex64::new(even_position_state(x, &p), 0.0);
        let scan = std::f64::consts::PI * p.hbar / (4.0 * p.x0);
        let lo = wigner_numeric_1mode(&f, 0.0, 0.9 * scan, p.hbar, &quad, 0.0).unwrap();
        let hi = wigner_numeric_1mode(&f, 0.0, 1.1 * scan, p.hbar, &quad, 0.0).unwrap();
        assert!(lo.value > 0.0 && hi.value < 0.0, "{} / {}", lo.value, hi.value);
        // And both agree with the closed form.
        for (v, pp) in [(lo, 0.9 * scan), (hi, 1.1 * scan)] {
            let want = wigner_position_cat(0.0, pp, &p);
            assert!((v.value - want).abs() < 1e-10);
        }
    }

    #[test]
    fn two_mode_oracle_matches_closed_form() {
        let s = reference();
        let quad = gl_spec(default_half_width(&s.params), 768);
        let pts = [
            PhasePoint::new(0.0, 0.0, 0.0, 0.0),
            PhasePoint::new(0.3, -0.2, 0.1, 0.4),
            PhasePoint::new(1.0, 0.5, -0.7, 0.2),
            PhasePoint::new(std::f64::consts::PI / 10.0, std::f64::consts::PI / 10.0, 0.0, 0.0),
            PhasePoint::new(5.0, 0.3, -0.2, 4.8),
        ];
        for pt in pts {
            let oracle = wigner_numeric_2mode(pt, &s, &quad).unwrap();
            assert!(oracle.truncation_ok, "truncation at {pt:?}: ratio {}", oracle.boundary_ratio);
            let closed = wigner_total(pt, &s).unwrap().total;
            assert!(
                (oracle.value - closed).abs() < 1e-9,
                "at {pt:?}: oracle {} vs closed {closed}",
                oracle.value
            );
        }
    }

    #[test]
    fn node_doubling_is_converged() {
        let s = reference();
        let pt = PhasePoint::new(0.4, -1.1, 1.7, 0.9);
        let base = wigner_numeric_2mode(pt, &s, &gl_spec(40.0, 640)).unwrap();
        let fine = wigner_numeric_2mode(pt, &s, &gl_spec(40.0, 1280)).unwrap();
        assert!(
            (base.value - fine.value).abs() < 1e-10,
            "doubling moved the value by {}",
            (base.value - fine.value).abs()
        );
    }

    #[test]
    fn parity_of_numeric_values() {
        let s = reference();
        let quad = gl_spec(40.0, 640);
        let pt = PhasePoint::new(0.8, 0.6, -0.3, 1.1);
        let flipped = PhasePoint::new(-0.8, -0.6, -0.3, 1.1);
        let a = wigner_numeric_2mode(pt, &s, &quad).unwrap().value;
        let b = wigner_numeric_2mode(flipped, &s, &quad).unwrap().value;
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn resolution_precondition_is_enforced() {
        let s = reference();
        let quad = gl_spec(40.0, 128);
        let err = wigner_numeric_2mode(PhasePoint::new(0.0, 0.0, 0.0, 0.0), &s, &quad).unwrap_err();
        match err {
            Error::ResolutionTooLow { required, got } => {
                assert!(required > 128 && got == 128);
            }
            other => panic!("expected resolution error, got {other:?}"),
        }
    }

    #[test]
    fn truncation_flag_trips_on_small_domain() {
        let s = reference();
        let quad = gl_spec(6.0, 96);
        let v = wigner_numeric_2mode(PhasePoint::new(0.0, 0.0, 0.0, 0.0), &s, &quad).unwrap();
        assert!(!v.truncation_ok);
        assert!(v.boundary_ratio > 1e-12);
    }

    #[test]
    fn normalization_factored_equals_nested() {
        // The 4D integrand factorizes over the modes; the collapsed 2D sums
        // must reproduce the honest nested sum at identical nodes.
        let s = NormalizedState::new(StateParams {
            a: Complex64::new(0.9, -0.2),
            b: Complex64::new(0.4, 0.7),
            ..StateParams::reference()
        })
        .unwrap();
        let nested = normalization_4d_nested(&s, 16);
        let factored = normalization_4d_from_sums(&s, mode_plane_sums(&s, 16));
        assert!(
            (nested - factored).abs() <= 1e-12 * (1.0 + nested.abs()),
            "nested {nested} vs factored {factored}"
        );
    }

    #[test]
    fn normalization_is_one_when_resolved() {
        for (a, b) in [
            (Complex64::new(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
             Complex64::new(std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2)),
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            (Complex64::new(0.6, 0.3), Complex64::new(-0.2, 0.9)),
        ] {
            let s = NormalizedState::new(StateParams { a, b, ..StateParams::reference() }).unwrap();
            let v = normalization_4d(&s, 384).unwrap();
            assert!((v - 1.0).abs() < 1e-8, "norm = {v} for weights {a}, {b}");
        }
    }

    #[test]
    fn normalization_enforces_resolution() {
        let s = reference();
        assert!(matches!(
            normalization_4d(&s, 64),
            Err(Error::ResolutionTooLow { .. })
        ));
    }
}
