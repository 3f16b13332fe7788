//! Deterministic Gaussian quadrature rules.
//!
//! The oracle integrals need node tables that are reproducible bit-for-bit
//! across runs and platforms, so the rules are built here with plain `f64`
//! Newton iterations on the classical three-term recurrences instead of
//! linking a linear-algebra stack.

use crate::{Error, Result};
use num_complex::Complex64;

/// Gauss–Legendre rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    /// Nodes in ascending order, exactly symmetric about zero.
    pub nodes: Vec<f64>,
    /// Positive weights matching `nodes`; symmetric pairs share one value.
    pub weights: Vec<f64>,
}

/// Evaluates `(P_n(x), P_n'(x))` by the Bonnet recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let mut prev = 1.0_f64;
    let mut cur = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * cur - (kf - 1.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    if n == 1 {
        return (x, 1.0);
    }
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

impl GaussLegendre {
    /// Builds the `n`-point rule (`n >= 2`).
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre rule needs at least two nodes");
        let mut nodes = vec![0.0_f64; n];
        let mut weights = vec![0.0_f64; n];
        let half = n / 2;
        for i in 0..half {
            // Tricomi-style initial guess for the (i+1)-th largest root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..60 {
                let (p, d) = legendre_pair(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1e-3) {
                    break;
                }
            }
            let (_, d) = legendre_pair(n, x);
            let w = 2.0 / ((1.0 - x * x) * d * d);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            let (_, d) = legendre_pair(n, 0.0);
            nodes[half] = 0.0;
            weights[half] = 2.0 / (d * d);
        }
        Self { nodes, weights }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// True when the rule is empty (never, by construction).
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates a real integrand over `[lo, hi]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, lo: f64, hi: f64, f: F) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = 0.0;
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * t);
        }
        half * acc
    }

    /// Integrates a complex integrand over `[lo, hi]`.
    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, lo: f64, hi: f64, f: F) -> Complex64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * t) * *w;
        }
        acc * half
    }
}

/// Gauss–Hermite rule: `∫ e^{-t^2} g(t) dt ≈ Σ w_i g(t_i)`.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    /// Nodes in ascending order, symmetric about zero.
    pub nodes: Vec<f64>,
    /// Weights including the `e^{-t^2}` factor.
    pub weights: Vec<f64>,
}

/// Evaluates the orthonormal Hermite functions `h_0..=h_n` at `x`
/// (orthonormal with respect to the weight `e^{-x^2}` on the line).
fn hermite_column(n: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(n + 1);
    let h0 = std::f64::consts::PI.powf(-0.25);
    h.push(h0);
    if n == 0 {
        return h;
    }
    h.push(std::f64::consts::SQRT_2 * x * h0);
    for k in 1..n {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * h[k] - (kf / (kf + 1.0)).sqrt() * h[k - 1];
        h.push(next);
    }
    h
}

impl GaussHermite {
    /// Builds the `n`-point rule (`2 <= n <= 128`).
    ///
    /// The cap keeps the orthonormal recurrence comfortably inside `f64`
    /// range; wider oscillatory integrals should use [`GaussLegendre`].
    pub fn new(n: usize) -> Self {
        assert!((2..=128).contains(&n), "Gauss-Hermite rule supports 2..=128 nodes");
        // Locate positive roots of h_n by a sign-change scan, then polish by
        // Newton using h_n'(x) = sqrt(2n) h_{n-1}(x).
        let upper = (2.0 * n as f64 + 1.0).sqrt() + 1.0;
        let step = 0.5 * std::f64::consts::PI / (2.0 * n as f64 + 1.0).sqrt();
        let eval = |x: f64| {
            let col = hermite_column(n, x);
            (col[n], (2.0 * n as f64).sqrt() * col[n - 1])
        };
        let mut roots = Vec::with_capacity(n / 2 + 1);
        let mut x_prev = if n % 2 == 1 { step * 1e-6 } else { 0.0 };
        let (mut f_prev, _) = eval(x_prev);
        let mut x = x_prev + step;
        while x < upper {
            let (f_cur, _) = eval(x);
            if f_prev == 0.0 {
                roots.push(x_prev);
            } else if f_prev * f_cur < 0.0 {
                // Newton from the midpoint.
                let mut r = 0.5 * (x_prev + x);
                for _ in 0..80 {
                    let (f, d) = eval(r);
                    let dr = f / d;
                    r -= dr;
                    if dr.abs() <= 1e-15 * r.abs().max(1e-3) {
                        break;
                    }
                }
                roots.push(r);
            }
            x_prev = x;
            f_prev = f_cur;
            x += step;
        }
        debug_assert_eq!(roots.len(), n / 2, "missed Hermite roots");

        let mut nodes = vec![0.0_f64; n];
        let mut weights = vec![0.0_f64; n];
        let half = n / 2;
        for (i, &r) in roots.iter().enumerate() {
            // Christoffel weight: 1 / Σ_{k<n} h_k(r)^2.
            let col = hermite_column(n - 1, r);
            let s: f64 = col.iter().map(|v| v * v).sum();
            let w = 1.0 / s;
            // roots are ascending positive; mirror them around the center.
            // For odd n the center slot `half` is filled with zero below.
            nodes[half + i + (n % 2)] = r;
            nodes[half - 1 - i] = -r;
            weights[half + i + (n % 2)] = w;
            weights[half - 1 - i] = w;
        }
        if n % 2 == 1 {
            let col = hermite_column(n - 1, 0.0);
            let s: f64 = col.iter().map(|v| v * v).sum();
            nodes[half] = 0.0;
            weights[half] = 1.0 / s;
        }
        Self { nodes, weights }
    }
}

/// Quadrature rule selector for the oracle integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Gauss–Legendre on the truncated interval `[-half_width, half_width]`.
    GaussLegendre,
    /// Gauss–Hermite with the Gaussian factor folded into the weights; the
    /// nodes are scaled so the bulk of them covers the truncation interval.
    GaussHermiteWeighted,
}

/// Specification of a one-axis oracle quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Half-width `H` of the correlation-variable interval `[-H, H]`.
    pub half_width: f64,
    /// Nodes per axis.
    pub nodes: usize,
    /// Underlying rule.
    pub rule: Rule,
}

impl QuadratureSpec {
    /// Validates and builds a spec. `half_width` must be positive and
    /// finite; `nodes >= 16`; the weighted Hermite rule is capped at 128
    /// nodes (see [`GaussHermite::new`]).
    pub fn new(half_width: f64, nodes: usize, rule: Rule) -> Result<Self> {
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidQuadrature(format!(
                "half_width must be positive and finite, got {half_width}"
            )));
        }
        if nodes < 16 {
            return Err(Error::InvalidQuadrature(format!(
                "at least 16 nodes per axis are required, got {nodes}"
            )));
        }
        if rule == Rule::GaussHermiteWeighted && nodes > 128 {
            return Err(Error::InvalidQuadrature(format!(
                "the weighted Hermite rule supports at most 128 nodes, got {nodes}"
            )));
        }
        Ok(Self { half_width, nodes, rule })
    }

    /// Minimum node count that resolves phase oscillations `e^{i p a / hbar}`
    /// with `|p|` up to `fastest_momentum` over `[-H, H]`: eight nodes per
    /// oscillation period.
    pub fn required_nodes(&self, hbar: f64, fastest_momentum: f64) -> usize {
        let req = 8.0 * self.half_width * fastest_momentum.abs() / (std::f64::consts::PI * hbar);
        req.ceil().max(16.0) as usize
    }

    /// Fails with [`Error::ResolutionTooLow`] when this quadrature setting
    /// cannot resolve the stated fastest momentum.
    pub fn check_resolves(&self, hbar: f64, fastest_momentum: f64) -> Result<()> {
        let required = self.required_nodes(hbar, fastest_momentum);
        if self.nodes < required {
            return Err(Error::ResolutionTooLow { required, got: self.nodes });
        }
        Ok(())
    }

    /// Materializes the rule on the physical axis: returns `(points,
    /// effective_weights)` such that `∫ f ≈ Σ w_i f(a_i)` for integrands
    /// that decay inside the truncation interval.
    pub fn line(&self) -> (Vec<f64>, Vec<f64>) {
        match self.rule {
            Rule::GaussLegendre => {
                let gl = GaussLegendre::new(self.nodes);
                let pts = gl.nodes.iter().map(|t| t * self.half_width).collect();
                let wts = gl.weights.iter().map(|w| w * self.half_width).collect();
                (pts, wts)
            }
            Rule::GaussHermiteWeighted => {
                let gh = GaussHermite::new(self.nodes);
                // Spread the nodes so that |t| <= 4 maps onto the truncation
                // interval; the Gaussian weight is divided back out.
                let sigma = self.half_width / 4.0;
                let pts: Vec<f64> = gh.nodes.iter().map(|t| t * sigma).collect();
                let wts = gh
                    .nodes
                    .iter()
                    .zip(&gh.weights)
                    .map(|(t, w)| sigma * w * (t * t).exp())
                    .collect();
                (pts, wts)
            }
        }
    }
}
