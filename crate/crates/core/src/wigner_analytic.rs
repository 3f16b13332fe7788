//! Closed-form four-dimensional Wigner function of the bipartite state.
//!
//! With `Psi = N [A psi(x1) phi(x2) + B phi(x1) psi(x2)]` the Wigner
//! transform splits into two diagonal products and one interference pair:
//!
//! ```text
//! W = N^2 [ |A|^2 Wpsi(1) Wphi(2) + |B|^2 Wphi(1) Wpsi(2)
//!           + 2 Re( A* B  Wxc(1) conj(Wxc(2)) ) ]
//! ```
//!
//! where `Wpsi`/`Wphi` are the single-mode cat Wigner functions and `Wxc` is
//! the cross-Wigner kernel of the pair `(psi, phi)`. Every factor is
//! evaluated here in a "peak form" — a sum of completed-square Gaussian
//! terms, each bounded by one — so the assembly never overflows and keeps
//! full relative accuracy far from the origin.
//!
//! The same quantities are also exposed in the factored shape
//!
//! ```text
//! W = envelope * ( wd1 + wd2 + sup * Re(wc1 + wc2) )
//! ```
//!
//! (`envelope` a common Gaussian prefactor, `sup` the interference
//! suppression scale) through [`WignerDecomposition`]; the factored
//! components can exceed `f64` range at extreme phase points, which is
//! documented on the struct.

use crate::states::{NormalizedState, StateParams};
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;

/// A point of the two-mode phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    /// Mode-1 position.
    pub x1: f64,
    /// Mode-1 momentum.
    pub p1: f64,
    /// Mode-2 position.
    pub x2: f64,
    /// Mode-2 momentum.
    pub p2: f64,
}

impl PhasePoint {
    /// Convenience constructor.
    pub fn new(x1: f64, p1: f64, x2: f64, p2: f64) -> Self {
        Self { x1, p1, x2, p2 }
    }

    /// True when all coordinates are finite.
    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.p1.is_finite() && self.x2.is_finite() && self.p2.is_finite()
    }
}

/// Upper bound `1 / (pi hbar)^2` on `|W|` for any two-mode state.
pub fn peak_bound(hbar: f64) -> f64 {
    1.0 / (std::f64::consts::PI * hbar).powi(2)
}

/// Overall Gaussian-prefactor constant of the factored form:
/// `G = N^2 / ( (2 pi hbar)^2 (1 + e_x)(1 + e_p) )`.
pub fn envelope_constant(s: &NormalizedState) -> f64 {
    let p = &s.params;
    s.norm_const * s.norm_const
        / ((2.0 * std::f64::consts::PI * p.hbar).powi(2) * (1.0 + p.ex()) * (1.0 + p.ep()))
}

/// The common Gaussian factor
/// `exp(-(x1^2 + x2^2)/d^2 - (p1^2 + p2^2) d^2 / hbar^2)`.
pub fn gaussian_envelope(pt: PhasePoint, p: &StateParams) -> f64 {
    let d2 = p.delta * p.delta;
    let h2 = p.hbar * p.hbar;
    (-(pt.x1 * pt.x1 + pt.x2 * pt.x2) / d2 - (pt.p1 * pt.p1 + pt.p2 * pt.p2) * d2 / h2).exp()
}

/// Interference suppression scale
/// `sup = exp(-x0^2 / 2 d^2 - p0^2 d^2 / 2 hbar^2)`.
pub fn cross_suppression(p: &StateParams) -> f64 {
    let u = p.x0 / p.delta;
    let v = p.p0 * p.delta / p.hbar;
    (-(u * u + v * v) / 2.0).exp()
}

/// Peak-form bracket of the position cat:
/// `Bpsi(x, p) = e^{-p^2 d^2/h^2} [ (e^{-(x-x0)^2/d^2} + e^{-(x+x0)^2/d^2})/2
///               + e^{-x^2/d^2} cos(2 x0 p / hbar) ]`.
///
/// Every term is bounded by one. The normalized single-mode Wigner function
/// is `Bpsi / (pi hbar (1 + e_x))`.
pub(crate) fn peak_position_cat(x: f64, p: f64, pr: &StateParams) -> f64 {
    let d2 = pr.delta * pr.delta;
    let h = pr.hbar;
    let pg = (-p * p * d2 / (h * h)).exp();
    let gm = (-(x - pr.x0) * (x - pr.x0) / d2).exp();
    let gp = (-(x + pr.x0) * (x + pr.x0) / d2).exp();
    let osc = (-x * x / d2).exp() * (2.0 * pr.x0 * p / h).cos();
    pg * (0.5 * (gm + gp) + osc)
}

/// Peak-form bracket of the momentum cat (Fourier dual of
/// [`peak_position_cat`]).
pub(crate) fn peak_momentum_cat(x: f64, p: f64, pr: &StateParams) -> f64 {
    let d2 = pr.delta * pr.delta;
    let h = pr.hbar;
    let xg = (-x * x / d2).exp();
    let gm = (-(p - pr.p0) * (p - pr.p0) * d2 / (h * h)).exp();
    let gp = (-(p + pr.p0) * (p + pr.p0) * d2 / (h * h)).exp();
    let osc = (-p * p * d2 / (h * h)).exp() * (2.0 * pr.p0 * x / h).cos();
    xg * (0.5 * (gm + gp) + osc)
}

/// Normalized Wigner function of the even position cat `psi`.
pub fn wigner_position_cat(x: f64, p: f64, pr: &StateParams) -> f64 {
    peak_position_cat(x, p, pr) / (std::f64::consts::PI * pr.hbar * (1.0 + pr.ex()))
}

/// Normalized Wigner function of the even momentum cat `phi`.
pub fn wigner_momentum_cat(x: f64, p: f64, pr: &StateParams) -> f64 {
    peak_momentum_cat(x, p, pr) / (std::f64::consts::PI * pr.hbar * (1.0 + pr.ep()))
}

/// Peak-form cross kernel: four completed-square Gaussian terms with unit
/// phases,
///
/// ```text
/// Tpk(x, p) = Σ_{σ,t=±1} e^{-(x - σ x0/2)^2/d^2 - (p - t p0/2)^2 d^2/h^2}
///             e^{ i (t p0 x + σ x0 p - σ t x0 p0 / 2) / hbar }
/// ```
///
/// The cross-Wigner transform of `(psi, phi)` is
/// `Cpsi Cphi d / (hbar sqrt(pi)) * Tpk`, which integrates to the overlap
/// `g` exactly.
pub(crate) fn peak_cross_kernel(x: f64, p: f64, pr: &StateParams) -> Complex64 {
    let d2 = pr.delta * pr.delta;
    let h = pr.hbar;
    let mut acc = Complex64::new(0.0, 0.0);
    for sigma in [1.0_f64, -1.0] {
        for t in [1.0_f64, -1.0] {
            let dx = x - sigma * pr.x0 * 0.5;
            let dp = p - t * pr.p0 * 0.5;
            let gauss = (-dx * dx / d2 - dp * dp * d2 / (h * h)).exp();
            let phase = (t * pr.p0 * x + sigma * pr.x0 * p - sigma * t * pr.x0 * pr.p0 * 0.5) / h;
            acc += Complex64::from_polar(gauss, phase);
        }
    }
    acc
}

/// Raw cross kernel with the common Gaussian envelope factored out:
/// `Tpk = envelope_1mode * sup^{1/2} * T`. Terms grow like
/// `e^{|x| x0 / d^2}`, so this overflows at extreme phase points; use the
/// peak form for evaluation and this form only for the factored
/// decomposition components.
fn raw_cross_kernel(x: f64, p: f64, pr: &StateParams) -> Complex64 {
    let d2 = pr.delta * pr.delta;
    let h = pr.hbar;
    let mut acc = Complex64::new(0.0, 0.0);
    for sigma in [1.0_f64, -1.0] {
        for t in [1.0_f64, -1.0] {
            let mag = (sigma * x * pr.x0 / d2 + t * p * pr.p0 * d2 / (h * h)).exp();
            let phase = (t * pr.p0 * x + sigma * pr.x0 * p - sigma * t * pr.x0 * pr.p0 * 0.5) / h;
            acc += Complex64::from_polar(mag, phase);
        }
    }
    acc
}

/// Diagonal bracket of the position cat with the envelope factored out:
/// `e_x cosh(2 x x0 / d^2) + cos(2 x0 p / hbar)`, evaluated through
/// completed exponents so the product `e_x * cosh` keeps full accuracy.
fn raw_position_bracket(x: f64, p: f64, pr: &StateParams) -> f64 {
    let d2 = pr.delta * pr.delta;
    let e_cosh = 0.5
        * (((2.0 * x * pr.x0 - pr.x0 * pr.x0) / d2).exp()
            + ((-2.0 * x * pr.x0 - pr.x0 * pr.x0) / d2).exp());
    e_cosh + (2.0 * pr.x0 * p / pr.hbar).cos()
}

/// Diagonal bracket of the momentum cat with the envelope factored out.
fn raw_momentum_bracket(x: f64, p: f64, pr: &StateParams) -> f64 {
    let h2 = pr.hbar * pr.hbar;
    let d2 = pr.delta * pr.delta;
    let e_cosh = 0.5
        * ((((2.0 * p * pr.p0 - pr.p0 * pr.p0) * d2) / h2).exp()
            + (((-2.0 * p * pr.p0 - pr.p0 * pr.p0) * d2) / h2).exp());
    e_cosh + (2.0 * pr.p0 * x / pr.hbar).cos()
}

/// The assembled Wigner value and its factored components at one point.
///
/// Invariant (for points where the components stay inside `f64` range):
///
/// ```text
/// total = envelope * ( wd1 + wd2 + sup * Re(wc1 + wc2) )
/// ```
///
/// `total` itself is always computed through the overflow-free peak form and
/// is finite for finite inputs. The factored fields `wd1`, `wd2`, `wc1`,
/// `wc2` divide out the Gaussian envelope and therefore grow exponentially
/// away from the origin; at extreme points they may saturate to infinity
/// while `total` remains correct.
#[derive(Debug, Clone, Copy)]
pub struct WignerDecomposition {
    /// `G * gaussian_envelope`, the common positive prefactor.
    pub envelope: f64,
    /// First diagonal component `4 |A|^2 [..psi..](1) [..phi..](2)`.
    pub wd1: f64,
    /// Second diagonal component `4 |B|^2 [..phi..](1) [..psi..](2)`.
    pub wd2: f64,
    /// Cross component `A* B  T(1) conj(T(2))`.
    pub wc1: Complex64,
    /// Conjugate cross component; `wc1 + wc2` is real by construction.
    pub wc2: Complex64,
    /// Assembled Wigner value (peak-form evaluation).
    pub total: f64,
}

/// Fused, overflow-free evaluation of the total Wigner value.
fn total_peak_form(pt: PhasePoint, s: &NormalizedState) -> f64 {
    let pr = &s.params;
    let k = s.norm_const * s.norm_const
        / ((std::f64::consts::PI * pr.hbar).powi(2) * (1.0 + pr.ex()) * (1.0 + pr.ep()));
    let bpsi1 = peak_position_cat(pt.x1, pt.p1, pr);
    let bphi2 = peak_momentum_cat(pt.x2, pt.p2, pr);
    let bphi1 = peak_momentum_cat(pt.x1, pt.p1, pr);
    let bpsi2 = peak_position_cat(pt.x2, pt.p2, pr);
    let t1 = peak_cross_kernel(pt.x1, pt.p1, pr);
    let t2 = peak_cross_kernel(pt.x2, pt.p2, pr);
    let cross = t1 * t2.conj();
    let ab = pr.a.conj() * pr.b;
    k * (pr.a.norm_sqr() * (bpsi1 * bphi2)
        + pr.b.norm_sqr() * (bphi1 * bpsi2)
        + 0.5 * (ab.re * cross.re - ab.im * cross.im))
}

/// Computes the factored decomposition (components plus assembled value).
pub fn decomposition(pt: PhasePoint, s: &NormalizedState) -> WignerDecomposition {
    let pr = &s.params;
    let envelope = envelope_constant(s) * gaussian_envelope(pt, pr);
    let wd1 = 4.0
        * pr.a.norm_sqr()
        * raw_position_bracket(pt.x1, pt.p1, pr)
        * raw_momentum_bracket(pt.x2, pt.p2, pr);
    let wd2 = 4.0
        * pr.b.norm_sqr()
        * raw_momentum_bracket(pt.x1, pt.p1, pr)
        * raw_position_bracket(pt.x2, pt.p2, pr);
    let wc1 = (pr.a.conj() * pr.b)
        * (raw_cross_kernel(pt.x1, pt.p1, pr) * raw_cross_kernel(pt.x2, pt.p2, pr).conj());
    let wc2 = wc1.conj();
    let total = total_peak_form(pt, s);
    WignerDecomposition { envelope, wd1, wd2, wc1, wc2, total }
}

/// Assembled Wigner value with its internal consistency checks.
///
/// Fails with [`Error::AssemblyResidual`] when the cross pair picks up a
/// non-real residual or the assembled value is not finite — either signals
/// an implementation bug rather than a data problem.
pub fn wigner_total(pt: PhasePoint, s: &NormalizedState) -> Result<WignerDecomposition> {
    if !pt.is_finite() {
        return Err(Error::InvalidParams("phase point must be finite".into()));
    }
    let d = decomposition(pt, s);
    let residual = (d.wc1.im + d.wc2.im).abs();
    let scale = 1.0 + d.wc1.norm() + d.wc2.norm();
    if !(residual <= 1e-9 * scale) || !d.total.is_finite() {
        return Err(Error::AssemblyResidual {
            residual,
            x1: pt.x1,
            p1: pt.p1,
            x2: pt.x2,
            p2: pt.p2,
        });
    }
    Ok(d)
}

/// The dominant oscillatory model: the product of the two pure cosine
/// factors of each diagonal component,
///
/// ```text
/// 4 |A|^2 cos(2 p0 x2 / hbar) cos(2 x0 p1 / hbar)
///   + 4 |B|^2 cos(2 p0 x1 / hbar) cos(2 x0 p2 / hbar).
/// ```
///
/// Near the phase-space origin this reproduces the interference lattice of
/// the full Wigner function up to exponentially small corrections.
pub fn dominant_oscillatory(pt: PhasePoint, s: &NormalizedState) -> f64 {
    let pr = &s.params;
    let h = pr.hbar;
    4.0 * pr.a.norm_sqr() * (2.0 * pr.p0 * pt.x2 / h).cos() * (2.0 * pr.x0 * pt.p1 / h).cos()
        + 4.0 * pr.b.norm_sqr() * (2.0 * pr.p0 * pt.x1 / h).cos() * (2.0 * pr.x0 * pt.p2 / h).cos()
}

/// Which pair of phase-space coordinates spans a section plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Plane {
    /// `(x1, p1)` — mode-1 phase plane.
    X1P1,
    /// `(x2, p2)` — mode-2 phase plane.
    X2P2,
    /// `(x1, p2)` — mixed plane, position of mode 1 vs momentum of mode 2.
    X1P2,
    /// `(x2, p1)` — mixed plane, position of mode 2 vs momentum of mode 1.
    X2P1,
    /// `(x1, x2)` — both positions.
    X1X2,
    /// `(p1, p2)` — both momenta.
    P1P2,
}

/// Physical character of a section axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// A position coordinate; interference oscillates with period
    /// `pi hbar / p0` along it.
    Position,
    /// A momentum coordinate; interference oscillates with period
    /// `pi hbar / x0` along it.
    Momentum,
}

impl AxisKind {
    /// Predicted interference period along this axis.
    pub fn predicted_period(self, p: &StateParams) -> f64 {
        match self {
            AxisKind::Position => std::f64::consts::PI * p.hbar / p.p0,
            AxisKind::Momentum => std::f64::consts::PI * p.hbar / p.x0,
        }
    }

    /// Axis factor of the common Gaussian envelope at coordinate `t`.
    pub fn envelope_factor(self, t: f64, p: &StateParams) -> f64 {
        let d2 = p.delta * p.delta;
        match self {
            AxisKind::Position => (-t * t / d2).exp(),
            AxisKind::Momentum => (-t * t * d2 / (p.hbar * p.hbar)).exp(),
        }
    }
}

impl Plane {
    /// All plane labels, lowercase.
    pub const ALL: [Plane; 6] =
        [Plane::X1P1, Plane::X2P2, Plane::X1P2, Plane::X2P1, Plane::X1X2, Plane::P1P2];

    /// Axis labels `(axis1, axis2)`.
    pub fn axis_labels(self) -> (&'static str, &'static str) {
        match self {
            Plane::X1P1 => ("x1", "p1"),
            Plane::X2P2 => ("x2", "p2"),
            Plane::X1P2 => ("x1", "p2"),
            Plane::X2P1 => ("x2", "p1"),
            Plane::X1X2 => ("x1", "x2"),
            Plane::P1P2 => ("p1", "p2"),
        }
    }

    /// Labels of the two frozen coordinates, in canonical `(x1, p1, x2, p2)`
    /// order.
    pub fn fixed_labels(self) -> (&'static str, &'static str) {
        match self {
            Plane::X1P1 => ("x2", "p2"),
            Plane::X2P2 => ("x1", "p1"),
            Plane::X1P2 => ("p1", "x2"),
            Plane::X2P1 => ("x1", "p2"),
            Plane::X1X2 => ("p1", "p2"),
            Plane::P1P2 => ("x1", "x2"),
        }
    }

    /// Physical kinds of `(axis1, axis2)`.
    pub fn axis_kinds(self) -> (AxisKind, AxisKind) {
        match self {
            Plane::X1P1 | Plane::X2P2 | Plane::X1P2 | Plane::X2P1 => {
                (AxisKind::Position, AxisKind::Momentum)
            }
            Plane::X1X2 => (AxisKind::Position, AxisKind::Position),
            Plane::P1P2 => (AxisKind::Momentum, AxisKind::Momentum),
        }
    }

    /// Builds the full phase point from plane coordinates and the two frozen
    /// values (ordered as in [`Plane::fixed_labels`]).
    pub fn phase_point(self, a1: f64, a2: f64, fixed: [f64; 2]) -> PhasePoint {
        match self {
            Plane::X1P1 => PhasePoint::new(a1, a2, fixed[0], fixed[1]),
            Plane::X2P2 => PhasePoint::new(fixed[0], fixed[1], a1, a2),
            Plane::X1P2 => PhasePoint::new(a1, fixed[0], fixed[1], a2),
            Plane::X2P1 => PhasePoint::new(fixed[0], a2, a1, fixed[1]),
            Plane::X1X2 => PhasePoint::new(a1, fixed[0], a2, fixed[1]),
            Plane::P1P2 => PhasePoint::new(fixed[0], a1, fixed[1], a2),
        }
    }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Plane::X1P1 => "x1p1",
            Plane::X2P2 => "x2p2",
            Plane::X1P2 => "x1p2",
            Plane::X2P1 => "x2p1",
            Plane::X1X2 => "x1x2",
            Plane::P1P2 => "p1p2",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x1p1" => Ok(Plane::X1P1),
            "x2p2" => Ok(Plane::X2P2),
            "x1p2" => Ok(Plane::X1P2),
            "x2p1" => Ok(Plane::X2P1),
            "x1x2" => Ok(Plane::X1X2),
            "p1p2" => Ok(Plane::P1P2),
            other => Err(Error::InvalidSection(format!(
                "unknown plane '{other}' (expected one of x1p1, x2p2, x1p2, x2p1, x1x2, p1p2)"
            ))),
        }
    }
}

/// A rectangular sampling of one section plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionSpec {
    /// Which plane is sampled.
    pub plane: Plane,
    /// Values of the two frozen coordinates (see [`Plane::fixed_labels`]).
    pub fixed: [f64; 2],
    /// Inclusive axis-1 range.
    pub range1: (f64, f64),
    /// Inclusive axis-2 range.
    pub range2: (f64, f64),
    /// Samples along axis 1 (`>= 2`).
    pub n1: usize,
    /// Samples along axis 2 (`>= 2`).
    pub n2: usize,
}

impl SectionSpec {
    /// Validated constructor.
    pub fn new(
        plane: Plane,
        fixed: [f64; 2],
        range1: (f64, f64),
        range2: (f64, f64),
        n1: usize,
        n2: usize,
    ) -> Result<Self> {
        for v in [fixed[0], fixed[1], range1.0, range1.1, range2.0, range2.1] {
            if !v.is_finite() {
                return Err(Error::InvalidSection("ranges and fixed values must be finite".into()));
            }
        }
        if range1.0 >= range1.1 || range2.0 >= range2.1 {
            return Err(Error::InvalidSection(format!(
                "ranges must be increasing, got [{}, {}] and [{}, {}]",
                range1.0, range1.1, range2.0, range2.1
            )));
        }
        if n1 < 2 || n2 < 2 {
            return Err(Error::InvalidSection(format!(
                "each axis needs at least 2 samples, got {n1} x {n2}"
            )));
        }
        Ok(Self { plane, fixed, range1, range2, n1, n2 })
    }

    fn linspace(range: (f64, f64), n: usize) -> Vec<f64> {
        let span = range.1 - range.0;
        (0..n).map(|i| range.0 + span * (i as f64) / ((n - 1) as f64)).collect()
    }

    /// Axis-1 sample coordinates.
    pub fn axis1_samples(&self) -> Vec<f64> {
        Self::linspace(self.range1, self.n1)
    }

    /// Axis-2 sample coordinates.
    pub fn axis2_samples(&self) -> Vec<f64> {
        Self::linspace(self.range2, self.n2)
    }
}

/// What a section grid holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridContent {
    /// Values of the full Wigner function (carries the Gaussian envelope).
    WignerTotal,
    /// Values of the dominant oscillatory model (no envelope).
    DominantModel,
    /// A position-space probability density over `(x1, x2)`.
    PositionDensity,
}

/// A filled section grid.
///
/// Values are stored row-major with axis 1 fastest:
/// `values[i2 * n1 + i1]` is the sample at `(axis1[i1], axis2[i2])`.
#[derive(Debug, Clone)]
pub struct Grid2D {
    /// The sampling specification.
    pub spec: SectionSpec,
    /// Parameters the grid was computed from.
    pub params: StateParams,
    /// Content tag (decides whether detection must divide the envelope out).
    pub content: GridContent,
    /// Axis-1 sample coordinates (`n1` entries).
    pub axis1: Vec<f64>,
    /// Axis-2 sample coordinates (`n2` entries).
    pub axis2: Vec<f64>,
    /// Sample values, `n1 * n2` entries, axis 1 fastest.
    pub values: Vec<f64>,
}

impl Grid2D {
    /// Flat index of `(i1, i2)`.
    pub fn index(&self, i1: usize, i2: usize) -> usize {
        i2 * self.spec.n1 + i1
    }

    /// Value at `(i1, i2)`.
    pub fn value(&self, i1: usize, i2: usize) -> f64 {
        self.values[self.index(i1, i2)]
    }
}

fn fill_grid<F>(spec: SectionSpec, params: StateParams, content: GridContent, f: F) -> Result<Grid2D>
where
    F: Fn(PhasePoint) -> f64 + Sync,
{
    let axis1 = spec.axis1_samples();
    let axis2 = spec.axis2_samples();
    let mut values = vec![0.0_f64; spec.n1 * spec.n2];
    let bad = std::sync::atomic::AtomicBool::new(false);
    values.par_chunks_mut(spec.n1).enumerate().for_each(|(i2, row)| {
        let a2 = axis2[i2];
        for (i1, slot) in row.iter_mut().enumerate() {
            let pt = spec.plane.phase_point(axis1[i1], a2, spec.fixed);
            let v = f(pt);
            if !v.is_finite() {
                bad.store(true, std::sync::atomic::Ordering::Relaxed);
            }
            *slot = v;
        }
    });
    if bad.load(std::sync::atomic::Ordering::Relaxed) {
        return Err(Error::AssemblyResidual {
            residual: f64::NAN,
            x1: f64::NAN,
            p1: f64::NAN,
            x2: f64::NAN,
            p2: f64::NAN,
        });
    }
    Ok(Grid2D { spec, params, content, axis1, axis2, values })
}

/// Samples the full Wigner function over a section plane.
pub fn section(spec: SectionSpec, s: &NormalizedState) -> Result<Grid2D> {
    fill_grid(spec, s.params, GridContent::WignerTotal, |pt| total_peak_form(pt, s))
}

/// Samples the dominant oscillatory model over a section plane.
pub fn dominant_section(spec: SectionSpec, s: &NormalizedState) -> Result<Grid2D> {
    fill_grid(spec, s.params, GridContent::DominantModel, |pt| dominant_oscillatory(pt, s))
}

/// Phase-plane projections of the Gaussian packet centers of each branch,
/// gated on the branch weight being nonzero. Used to annotate section
/// outputs.
pub fn gaussian_markers(plane: Plane, p: &StateParams) -> Vec<[f64; 2]> {
    // Per-branch center sets for each coordinate: branch `a` puts the
    // position cat in mode 1 and the momentum cat in mode 2; branch `b`
    // swaps the modes.
    fn centers(coord: &str, branch_a: bool, p: &StateParams) -> Vec<f64> {
        let position_cat = vec![p.x0, -p.x0];
        let momentum_cat = vec![p.p0, -p.p0];
        let origin = vec![0.0];
        match (coord, branch_a) {
            ("x1", true) => position_cat,
            ("p1", true) => origin,
            ("x2", true) => origin,
            ("p2", true) => momentum_cat,
            ("x1", false) => origin,
            ("p1", false) => momentum_cat,
            ("x2", false) => position_cat,
            ("p2", false) => origin,
            _ => unreachable!("unknown coordinate label"),
        }
    }
    let (l1, l2) = plane.axis_labels();
    let mut out: Vec<[f64; 2]> = Vec::new();
    for (branch_a, weight) in [(true, p.a.norm_sqr()), (false, p.b.norm_sqr())] {
        if weight == 0.0 {
            continue;
        }
        for c1 in centers(l1, branch_a, p) {
            for c2 in centers(l2, branch_a, p) {
                if !out.iter().any(|m| m[0] == c1 && m[1] == c2) {
                    out.push([c1, c2]);
                }
            }
        }
    }
    out
}

/// Transcribed variant expressions for the Wigner components.
///
/// These differ from the exact decomposition by coefficient details (halved
/// hyperbolic weights in the diagonal parts, real instead of complex weights
/// on the cross parts). They are kept only so the validation suite can
/// quantify how far they deviate from the quadrature-verified assembly;
/// nothing else consumes them.
pub mod variants {
    use super::*;

    /// Variant of the first diagonal component: four-term expression whose
    /// pure-oscillation term carries twice the relative weight of the exact
    /// bracket product.
    pub fn diagonal_first(pt: PhasePoint, s: &NormalizedState) -> f64 {
        let p = &s.params;
        let d2 = p.delta * p.delta;
        let h = p.hbar;
        let h2 = h * h;
        let ex = p.ex();
        let ep = p.ep();
        let cosh_x1 = (2.0 * p.x0 * pt.x1 / d2).cosh();
        let cosh_p2 = (2.0 * p.p0 * pt.p2 * d2 / h2).cosh();
        let cos_x2 = (2.0 * p.p0 * pt.x2 / h).cos();
        let cos_p1 = (2.0 * p.x0 * pt.p1 / h).cos();
        2.0 * p.a.norm_sqr()
            * (ex * ep * cosh_p2 * cosh_x1
                + ex * cosh_x1 * cos_x2
                + ep * cos_p1 * cosh_p2
                + 2.0 * cos_x2 * cos_p1)
    }

    /// Variant of the second diagonal component (modes swapped).
    pub fn diagonal_second(pt: PhasePoint, s: &NormalizedState) -> f64 {
        let p = &s.params;
        let d2 = p.delta * p.delta;
        let h = p.hbar;
        let h2 = h * h;
        let ex = p.ex();
        let ep = p.ep();
        let cosh_x2 = (2.0 * p.x0 * pt.x2 / d2).cosh();
        let cosh_p1 = (2.0 * p.p0 * pt.p1 * d2 / h2).cosh();
        let cos_x1 = (2.0 * p.p0 * pt.x1 / h).cos();
        let cos_p2 = (2.0 * p.x0 * pt.p2 / h).cos();
        2.0 * p.b.norm_sqr()
            * (ex * ep * cosh_p1 * cosh_x2
                + ex * cosh_x2 * cos_x1
                + ep * cos_p2 * cosh_p1
                + 2.0 * cos_x1 * cos_p2)
    }

    fn cross_bracket(
        zs: Complex64,
        zd: Complex64,
        ps: Complex64,
        pd: Complex64,
        p: &StateParams,
        flip: bool,
    ) -> Complex64 {
        let d2 = p.delta * p.delta;
        let h = p.hbar;
        let h2 = h * h;
        let sign = if flip { -1.0 } else { 1.0 };
        let u_plus = Complex64::new(p.x0 / d2, -p.p0 / h);
        let u_minus = Complex64::new(p.x0 / d2, p.p0 / h);
        let v_minus = Complex64::new(-p.p0 * d2 / h2, p.x0 / h);
        let v_plus = Complex64::new(p.p0 * d2 / h2, p.x0 / h);
        let phase = Complex64::from_polar(1.0, p.x0 * p.p0 / h);
        let t1 = phase
            * ((u_plus * zs + v_minus * pd * sign).cosh()
                + (u_plus * zd + v_minus * ps * sign).cosh());
        let t2 = phase.conj()
            * ((u_minus * zs + v_plus * pd * sign).cosh()
                + (u_minus * zd + v_plus * ps * sign).cosh());
        let i = Complex64::new(0.0, 1.0);
        let t3 = 2.0
            * ((p.p0 * (zd / h - i * ps * d2 / h2 * sign)).cos()
                * (p.x0 * (zs / d2 + i * pd / h * sign)).cosh()
                + (p.p0 * (zs / h - i * pd * d2 / h2 * sign)).cos()
                    * (p.x0 * (zd / d2 + i * ps / h * sign)).cosh());
        t1 + t2 + t3
    }

    /// Variant of the first cross component: real weight `Re(A* B) -
    /// Im(A* B)` times a six-summand bracket.
    pub fn cross_first(pt: PhasePoint, s: &NormalizedState) -> Complex64 {
        let p = &s.params;
        let ab = p.a.conj() * p.b;
        let w = ab.re - ab.im;
        let zs = Complex64::new(pt.x1 + pt.x2, 0.0);
        let zd = Complex64::new(pt.x1 - pt.x2, 0.0);
        let ps = Complex64::new(pt.p1 + pt.p2, 0.0);
        let pd = Complex64::new(pt.p1 - pt.p2, 0.0);
        cross_bracket(zs, zd, ps, pd, p, false) * w
    }

    /// Variant of the second cross component: weight `Re + Im` and flipped
    /// internal signs (the complex conjugate bracket).
    pub fn cross_second(pt: PhasePoint, s: &NormalizedState) -> Complex64 {
        let p = &s.params;
        let ab = p.a.conj() * p.b;
        let w = ab.re + ab.im;
        let zs = Complex64::new(pt.x1 + pt.x2, 0.0);
        let zd = Complex64::new(pt.x1 - pt.x2, 0.0);
        let ps = Complex64::new(pt.p1 + pt.p2, 0.0);
        let pd = Complex64::new(pt.p1 - pt.p2, 0.0);
        cross_bracket(zs, zd, ps, pd, p, true) * w
    }

    /// [`cross_first`] evaluated from the four collective coordinates
    /// `x1 + x2`, `x1 - x2`, `p1 + p2`, `p1 - p2`. The bracket depends on
    /// the phase point only through these, so this must agree with
    /// [`cross_first`] to rounding error.
    pub fn cross_first_collective(
        xs: f64,
        xd: f64,
        ps: f64,
        pd: f64,
        s: &NormalizedState,
    ) -> Complex64 {
        let p = &s.params;
        let ab = p.a.conj() * p.b;
        let w = ab.re - ab.im;
        cross_bracket(
            Complex64::new(xs, 0.0),
            Complex64::new(xd, 0.0),
            Complex64::new(ps, 0.0),
            Complex64::new(pd, 0.0),
            p,
            false,
        ) * w
    }
}
