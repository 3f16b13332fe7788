//! Wavefunctions of the bipartite compass state.
//!
//! Single-mode building blocks:
//!
//! ```text
//! psi(x) = [ e^{-(x+x0)^2 / 2 d^2} + e^{-(x-x0)^2 / 2 d^2} ]
//!          / ( sqrt(2) pi^{1/4} d^{1/2} (1 + e_x)^{1/2} )      e_x = e^{-x0^2/d^2}
//! phi(x) = 2 cos(p0 x / hbar) e^{-x^2 / 2 d^2}
//!          / ( sqrt(2) pi^{1/4} d^{1/2} (1 + e_p)^{1/2} )      e_p = e^{-p0^2 d^2 / hbar^2}
//! ```
//!
//! and the entangled two-mode superposition
//! `Psi = N [ A psi(x1) phi(x2) + B phi(x1) psi(x2) ]` with
//! `N = (|A|^2 + |B|^2 + 2 Re(A* B) g^2)^{-1/2}` and `g = <psi|phi>`.

use crate::{Error, Result};
use num_complex::Complex64;

/// Physical parameters of the construction.
///
/// `x0` is the position-cat half-separation, `p0` the momentum-cat
/// half-separation, `delta` the Gaussian width, `hbar` the action scale, and
/// `a`, `b` the complex superposition weights (not necessarily normalized;
/// the overall scale of `(a, b)` cancels in every observable).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateParams {
    /// Position-cat half-separation.
    pub x0: f64,
    /// Momentum-cat half-separation.
    pub p0: f64,
    /// Gaussian width of every packet.
    pub delta: f64,
    /// Action scale.
    pub hbar: f64,
    /// Weight of the `psi(x1) phi(x2)` branch.
    pub a: Complex64,
    /// Weight of the `phi(x1) psi(x2)` branch.
    pub b: Complex64,
}

impl StateParams {
    /// Validated constructor.
    pub fn new(x0: f64, p0: f64, delta: f64, hbar: f64, a: Complex64, b: Complex64) -> Result<Self> {
        let fields = [x0, p0, delta, hbar, a.re, a.im, b.re, b.im];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if delta <= 0.0 {
            return Err(Error::InvalidParams(format!("delta must be positive, got {delta}")));
        }
        if hbar <= 0.0 {
            return Err(Error::InvalidParams(format!("hbar must be positive, got {hbar}")));
        }
        if a.norm_sqr() + b.norm_sqr() == 0.0 {
            return Err(Error::InvalidParams("weights A and B cannot both vanish".into()));
        }
        Ok(Self { x0, p0, delta, hbar, a, b })
    }

    /// The reference regime used throughout the validation suite:
    /// `x0 = p0 = 5`, `delta = hbar = 1`, and the balanced complex weights
    /// `A = (1 + i)/sqrt(2)`, `B = (1 - i)/sqrt(2)` (so `|A| = |B| = 1` and
    /// `Re(A* B) = 0`).
    pub fn reference() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            x0: 5.0,
            p0: 5.0,
            delta: 1.0,
            hbar: 1.0,
            a: Complex64::new(r, r),
            b: Complex64::new(r, -r),
        }
    }

    /// `e_x = exp(-x0^2 / delta^2)`, the position-cat overlap factor.
    pub fn ex(&self) -> f64 {
        (-self.x0 * self.x0 / (self.delta * self.delta)).exp()
    }

    /// `e_p = exp(-p0^2 delta^2 / hbar^2)`, the momentum-cat overlap factor.
    pub fn ep(&self) -> f64 {
        let v = self.p0 * self.delta / self.hbar;
        (-v * v).exp()
    }

    /// Normalization prefactor of `psi`.
    pub fn position_norm(&self) -> f64 {
        1.0 / (std::f64::consts::SQRT_2
            * std::f64::consts::PI.powf(0.25)
            * self.delta.sqrt()
            * (1.0 + self.ex()).sqrt())
    }

    /// Normalization prefactor of `phi` (without the leading factor 2,
    /// which is kept in the wavefunction itself).
    pub fn momentum_norm(&self) -> f64 {
        1.0 / (std::f64::consts::SQRT_2
            * std::f64::consts::PI.powf(0.25)
            * self.delta.sqrt()
            * (1.0 + self.ep()).sqrt())
    }
}

/// Even position cat `psi(x)`: two Gaussians at `±x0`.
pub fn even_position_state(x: f64, p: &StateParams) -> f64 {
    let d2 = 2.0 * p.delta * p.delta;
    let plus = (-(x + p.x0) * (x + p.x0) / d2).exp();
    let minus = (-(x - p.x0) * (x - p.x0) / d2).exp();
    p.position_norm() * (plus + minus)
}

/// Derivative `psi'(x)`.
pub fn even_position_state_derivative(x: f64, p: &StateParams) -> f64 {
    let d2 = 2.0 * p.delta * p.delta;
    let dd = p.delta * p.delta;
    let plus = (-(x + p.x0) * (x + p.x0) / d2).exp();
    let minus = (-(x - p.x0) * (x - p.x0) / d2).exp();
    p.position_norm() * (-(x + p.x0) / dd * plus - (x - p.x0) / dd * minus)
}

/// Even momentum cat `phi(x) = 2 cos(p0 x / hbar) * Gaussian`.
pub fn even_momentum_state(x: f64, p: &StateParams) -> f64 {
    let d2 = 2.0 * p.delta * p.delta;
    p.momentum_norm() * 2.0 * (p.p0 * x / p.hbar).cos() * (-x * x / d2).exp()
}

/// Derivative `phi'(x)`.
pub fn even_momentum_state_derivative(x: f64, p: &StateParams) -> f64 {
    let d2 = 2.0 * p.delta * p.delta;
    let dd = p.delta * p.delta;
    let gauss = (-x * x / d2).exp();
    let k = p.p0 / p.hbar;
    p.momentum_norm() * 2.0 * gauss * (-k * (k * x).sin() - (x / dd) * (k * x).cos())
}

/// Closed-form overlap `g = <psi|phi>`:
///
/// ```text
/// g = 2 e^{-(x0^2/d^2 + p0^2 d^2/hbar^2)/4} cos(x0 p0 / 2 hbar)
///     / sqrt((1 + e_x)(1 + e_p))
/// ```
pub fn cross_overlap(p: &StateParams) -> f64 {
    let u = p.x0 / p.delta;
    let v = p.p0 * p.delta / p.hbar;
    2.0 * (-(u * u + v * v) / 4.0).exp() * (p.x0 * p.p0 / (2.0 * p.hbar)).cos()
        / ((1.0 + p.ex()) * (1.0 + p.ep())).sqrt()
}

/// Normalization constant `N` of the two-mode superposition.
///
/// Fails with [`Error::DegenerateState`] when the radicand
/// `|A|^2 + |B|^2 + 2 Re(A* B) g^2` is not strictly positive.
pub fn normalization_constant(p: &StateParams) -> Result<f64> {
    let g = cross_overlap(p);
    let radicand = p.a.norm_sqr() + p.b.norm_sqr() + 2.0 * (p.a.conj() * p.b).re * g * g;
    if !radicand.is_finite() || radicand <= 0.0 {
        return Err(Error::DegenerateState { radicand });
    }
    Ok(radicand.powf(-0.5))
}

/// A parameter set together with its derived normalization data.
#[derive(Debug, Clone, Copy)]
pub struct NormalizedState {
    /// The defining parameters.
    pub params: StateParams,
    /// Normalization constant `N`.
    pub norm_const: f64,
    /// Single-mode overlap `g = <psi|phi>`.
    pub cross_overlap: f64,
}

impl NormalizedState {
    /// Validates parameters and computes `N` and `g`.
    pub fn new(params: StateParams) -> Result<Self> {
        // Re-run field validation so states built from raw struct literals
        // are still checked.
        let params = StateParams::new(params.x0, params.p0, params.delta, params.hbar, params.a, params.b)?;
        let norm_const = normalization_constant(&params)?;
        Ok(Self { params, norm_const, cross_overlap: cross_overlap(&params) })
    }

    /// Reference-regime state (see [`StateParams::reference`]).
    pub fn reference() -> Self {
        Self::new(StateParams::reference()).expect("reference parameters are valid")
    }
}

/// Two-mode wavefunction `Psi(x1, x2)`.
pub fn bipartite_state(x1: f64, x2: f64, s: &NormalizedState) -> Complex64 {
    let p = &s.params;
    let psi1 = even_position_state(x1, p);
    let phi1 = even_momentum_state(x1, p);
    let psi2 = even_position_state(x2, p);
    let phi2 = even_momentum_state(x2, p);
    (p.a * (psi1 * phi2) + p.b * (phi1 * psi2)) * s.norm_const
}

/// Gradient `(dPsi/dx1, dPsi/dx2)` of the two-mode wavefunction.
pub fn bipartite_state_gradient(x1: f64, x2: f64, s: &NormalizedState) -> (Complex64, Complex64) {
    let p = &s.params;
    let psi1 = even_position_state(x1, p);
    let phi1 = even_momentum_state(x1, p);
    let psi2 = even_position_state(x2, p);
    let phi2 = even_momentum_state(x2, p);
    let dpsi1 = even_position_state_derivative(x1, p);
    let dphi1 = even_momentum_state_derivative(x1, p);
    let dpsi2 = even_position_state_derivative(x2, p);
    let dphi2 = even_momentum_state_derivative(x2, p);
    let d1 = (p.a * (dpsi1 * phi2) + p.b * (dphi1 * psi2)) * s.norm_const;
    let d2 = (p.a * (psi1 * dphi2) + p.b * (phi1 * dpsi2)) * s.norm_const;
    (d1, d2)
}

/// A phase-space displacement of the two modes, parameterized by the complex
/// shifts `alpha` (mode 1) and `beta` (mode 2).
///
/// The convention maps a complex shift `gamma` to the position/momentum
/// displacement pair
///
/// ```text
/// x_d = 2 delta Re(gamma),      p_d = 2 hbar Im(gamma) / delta,
/// ```
///
/// so a purely imaginary shift is a pure momentum kick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement {
    /// Complex shift applied to mode 1.
    pub alpha: Complex64,
    /// Complex shift applied to mode 2.
    pub beta: Complex64,
}

impl Displacement {
    /// Equal shift of both modes.
    pub fn equal(gamma: Complex64) -> Self {
        Self { alpha: gamma, beta: gamma }
    }

    /// `(x_d, p_d)` for a complex shift under the crate convention.
    pub fn to_xp(gamma: Complex64, params: &StateParams) -> (f64, f64) {
        (2.0 * params.delta * gamma.re, 2.0 * params.hbar * gamma.im / params.delta)
    }
}

/// Applies a phase-space displacement to a one-mode wavefunction:
///
/// ```text
/// (D f)(x) = e^{ i p_d (x - x_d/2) / hbar } f(x - x_d)
/// ```
///
/// with `(x_d, p_d)` derived from `shift` by [`Displacement::to_xp`]. The
/// symmetric half-shift phase makes `D` exactly unitary.
pub fn displace<F>(f: F, shift: Complex64, params: &StateParams) -> impl Fn(f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (xd, pd) = Displacement::to_xp(shift, params);
    let hbar = params.hbar;
    move |x: f64| Complex64::from_polar(1.0, pd * (x - 0.5 * xd) / hbar) * f(x - xd)
}
