//! Generalized Huber construction `L_G(x) = g(f(x) + f(-x))` over a
//! pluggable auxiliary transform, and the log-exp loss
//! `L_M(x) = (1/a)·log(e^{ax} + e^{-ax} + b)` it yields for `f(x) = e^{ax} + b`.
//!
//! The log-exp loss is evaluated in `|x|`-factored form so that value,
//! gradient and curvature stay finite for every finite `x`:
//!
//! ```text
//! L_M(x)   = |x| + (1/a)·log(1 + e^{-2a|x|} + b·e^{-a|x|})
//! L_M'(x)  = sign(x)·(1 - e^{-2a|x|}) / (1 + e^{-2a|x|} + b·e^{-a|x|})
//! L_M''(x) = (4a·e^{-2a|x|} + ab·(e^{-a|x|} + e^{-3a|x|})) / (1 + e^{-2a|x|} + b·e^{-a|x|})²
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An auxiliary pair `(f, g)` with `g` the inverse (or a pseudo-inverse) of
/// `f`, together with the derivatives needed for the near-zero quadratic
/// coefficients.
#[derive(Clone)]
pub struct AuxiliaryTransform {
    name: String,
    f: ScalarFn,
    f_prime: ScalarFn,
    f_double_prime: ScalarFn,
    g: ScalarFn,
    g_prime: ScalarFn,
    g_domain_low: f64,
    /// Characteristic length used to place sample points in [`check`](Self::check).
    scale: f64,
    /// `g(f(x)) = x` is only required for `x` at or above this point.
    invertible_from: f64,
}

impl fmt::Debug for AuxiliaryTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AuxiliaryTransform")
            .field("name", &self.name)
            .field("g_domain_low", &self.g_domain_low)
            .field("scale", &self.scale)
            .field("invertible_from", &self.invertible_from)
            .finish_non_exhaustive()
    }
}

pub struct AuxiliaryBuilder {
    name: String,
    f: ScalarFn,
    f_prime: ScalarFn,
    f_double_prime: ScalarFn,
    g: ScalarFn,
    g_prime: ScalarFn,
    g_domain_low: f64,
    scale: f64,
    invertible_from: f64,
}

impl AuxiliaryBuilder {
    pub fn g_domain_low(mut self, low: f64) -> Self {
        self.g_domain_low = low;
        self
    }

    pub fn scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn invertible_from(mut self, x: f64) -> Self {
        self.invertible_from = x;
        self
    }

    pub fn build(self) -> AuxiliaryTransform {
        AuxiliaryTransform {
            name: self.name,
            f: self.f,
            f_prime: self.f_prime,
            f_double_prime: self.f_double_prime,
            g: self.g,
            g_prime: self.g_prime,
            g_domain_low: self.g_domain_low,
            scale: self.scale,
            invertible_from: self.invertible_from,
        }
    }
}

impl AuxiliaryTransform {
    /// Start a custom transform from `f, f', f'', g, g'`. The evaluators
    /// must be pure.
    pub fn builder<F, F1, F2, G, G1>(
        name: impl Into<String>,
        f: F,
        f_prime: F1,
        f_double_prime: F2,
        g: G,
        g_prime: G1,
    ) -> AuxiliaryBuilder
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        F1: Fn(f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        G1: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        AuxiliaryBuilder {
            name: name.into(),
            f: Arc::new(f),
            f_prime: Arc::new(f_prime),
            f_double_prime: Arc::new(f_double_prime),
            g: Arc::new(g),
            g_prime: Arc::new(g_prime),
            g_domain_low: f64::NEG_INFINITY,
            scale: 1.0,
            invertible_from: f64::NEG_INFINITY,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn f_prime(&self, x: f64) -> f64 {
        (self.f_prime)(x)
    }

    pub fn f_double_prime(&self, x: f64) -> f64 {
        (self.f_double_prime)(x)
    }

    pub fn g(&self, y: f64) -> f64 {
        (self.g)(y)
    }

    pub fn g_prime(&self, y: f64) -> f64 {
        (self.g_prime)(y)
    }

    pub fn g_domain_low(&self) -> f64 {
        self.g_domain_low
    }

    fn g_checked(&self, sum: f64) -> Result<f64> {
        let out = self.g(sum);
        if sum < self.g_domain_low || !sum.is_finite() || !out.is_finite() {
            return Err(Error::AuxiliaryDomain {
                sum,
                low: self.g_domain_low,
            });
        }
        Ok(out)
    }

    /// Sample-based check of the transform's contract: `f` nondecreasing,
    /// divergent to the right and bounded to the left, and `g(f(x)) = x`
    /// on the invertible range.
    pub fn check(&self) -> Result<()> {
        let s = self.scale;
        let fail = |msg: String| Err(Error::AuxiliaryCheck(format!("{}: {msg}", self.name)));

        for i in 0..=200 {
            let x = s * (-10.0 + 0.1 * i as f64);
            for &k in &[1e-3, 0.1, 1.0, 5.0] {
                let h = k * s;
                if self.f(x + h) < self.f(x) {
                    return fail(format!("f decreases between {x} and {}", x + h));
                }
            }
        }

        let right = self.f(50.0 * s);
        let left = self.f(-50.0 * s);
        let mid = self.f(0.0);
        if !left.is_finite() {
            return fail(format!("f(-50·scale) = {left} does not stay bounded"));
        }
        if !(right > mid && right - mid > 1e3 * (left - mid).abs().max(1.0)) {
            return fail(format!("f(50·scale) = {right} does not diverge"));
        }

        // central range only: far left, e^{ax} + b - b loses every digit
        for i in 0..=60 {
            let x = s * (-2.0 + 0.2 * i as f64);
            if x < self.invertible_from {
                continue;
            }
            let back = self.g(self.f(x));
            if (back - x).abs() > 1e-9 * x.abs().max(s) {
                return fail(format!("g(f({x})) = {back}"));
            }
        }
        Ok(())
    }
}

pub fn generalized_value(aux: &AuxiliaryTransform, x: f64) -> Result<f64> {
    aux.g_checked(aux.f(x) + aux.f(-x))
}

pub fn generalized_grad(aux: &AuxiliaryTransform, x: f64) -> Result<f64> {
    let sum = aux.f(x) + aux.f(-x);
    aux.g_checked(sum)?;
    Ok(aux.g_prime(sum) * (aux.f_prime(x) - aux.f_prime(-x)))
}

/// Coefficients `(c, L_G(0))` of the quadratic `c·x² + L_G(0)` that the
/// generalized loss follows near the origin, with `c = g'(2f(0))·f''(0)`.
/// `c > 0` exactly when `f''(0) > 0`.
pub fn quadratic_coeffs_near_zero(aux: &AuxiliaryTransform) -> Result<(f64, f64)> {
    let at_zero = 2.0 * aux.f(0.0);
    let offset = aux.g_checked(at_zero)?;
    let fpp = aux.f_double_prime(0.0);
    if !fpp.is_finite() {
        return Err(Error::InvalidParameter {
            name: "f''(0)",
            value: fpp,
            reason: "must be finite",
        });
    }
    Ok((aux.g_prime(at_zero) * fpp, offset))
}

/// Exponential auxiliary `f(x) = e^{ax} + b`, `g(y) = (1/a)·log(y - b)`.
/// The naive composition overflows once `a|x|` passes roughly 700; use
/// [`logexp_value`] for production evaluation.
pub fn make_exp_aux(a: f64, b: f64) -> Result<AuxiliaryTransform> {
    LogExpParams::with_convexity(a, b, false)?;
    Ok(AuxiliaryTransform::builder(
        format!("exp(a={a}, b={b})"),
        move |x| (a * x).exp() + b,
        move |x| a * (a * x).exp(),
        move |x| a * a * (a * x).exp(),
        move |y| (y - b).ln() / a,
        move |y| 1.0 / (a * (y - b)),
    )
    .g_domain_low(b)
    .scale(1.0 / a)
    .build())
}

/// Step-gated quadratic auxiliary `f(x) = U(x)·x²/δ² + 1` with the
/// pseudo-inverse `g(y) = δ·√(y - 1)`, which reproduces pseudo-Huber.
///
/// `U(0) = 0`. For `f''` the origin takes the mean of the one-sided values,
/// `1/δ²`, so that `f''(x) + f''(-x)` is continuous there.
pub fn make_quadratic_aux(delta: f64) -> Result<AuxiliaryTransform> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "must be finite and > 0",
        });
    }
    let d2 = delta * delta;
    Ok(AuxiliaryTransform::builder(
        format!("quadratic(delta={delta})"),
        move |x| if x > 0.0 { x * x / d2 + 1.0 } else { 1.0 },
        move |x| if x > 0.0 { 2.0 * x / d2 } else { 0.0 },
        move |x| {
            if x > 0.0 {
                2.0 / d2
            } else if x < 0.0 {
                0.0
            } else {
                1.0 / d2
            }
        },
        move |y| delta * (y - 1.0).sqrt(),
        move |y| 0.5 * delta / (y - 1.0).sqrt(),
    )
    .g_domain_low(1.0)
    .scale(delta)
    .invertible_from(0.0)
    .build())
}

/// Validated parameters of the log-exp loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogExpParams {
    a: f64,
    b: f64,
    convexity_required: bool,
}

impl LogExpParams {
    /// Convex log-exp loss; requires `a > 0` and `b ≥ 0`.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        Self::with_convexity(a, b, true)
    }

    /// Explicit opt-out that also admits the non-convex range `-2 < b < 0`.
    pub fn allow_nonconvex(a: f64, b: f64) -> Result<Self> {
        Self::with_convexity(a, b, false)
    }

    pub fn with_convexity(a: f64, b: f64, convexity_required: bool) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
                reason: "must be finite and > 0",
            });
        }
        if !(b.is_finite() && b + 2.0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "must be finite with b + 2 > 0",
            });
        }
        if convexity_required && b < 0.0 {
            return Err(Error::InvalidParameter {
                name: "b",
                value: b,
                reason: "must be >= 0 for convexity on the whole line",
            });
        }
        Ok(Self {
            a,
            b,
            convexity_required,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn convexity_required(&self) -> bool {
        self.convexity_required
    }

    /// True when the loss is convex on the whole line (`b ≥ 0`).
    pub fn is_convex(&self) -> bool {
        self.b >= 0.0
    }

    pub fn value(&self, x: f64) -> f64 {
        let ax = x.abs();
        let e1 = (-self.a * ax).exp();
        let e2 = e1 * e1;
        ax + (e2 + self.b * e1).ln_1p() / self.a
    }

    pub fn grad(&self, x: f64) -> f64 {
        let t = self.a * x.abs();
        let e1 = (-t).exp();
        let e2 = e1 * e1;
        let g = -(-2.0 * t).exp_m1() / (1.0 + e2 + self.b * e1);
        if x < 0.0 {
            -g
        } else {
            g
        }
    }

    pub fn curvature(&self, x: f64) -> f64 {
        let (a, b) = (self.a, self.b);
        let e1 = (-a * x.abs()).exp();
        let e2 = e1 * e1;
        let den = 1.0 + e2 + b * e1;
        (4.0 * a * e2 + a * b * (e1 + e2 * e1)) / (den * den)
    }

    /// Quadratic `curvature_coef·x² + offset` that the loss follows near 0:
    /// `(a/(2+b), (1/a)·log(2+b))`.
    pub fn quadratic_coeffs(&self) -> (f64, f64) {
        (self.a / (2.0 + self.b), (2.0 + self.b).ln() / self.a)
    }
}

pub fn logexp_value(p: &LogExpParams, x: f64) -> f64 {
    p.value(x)
}

pub fn logexp_grad(p: &LogExpParams, x: f64) -> f64 {
    p.grad(x)
}

pub fn logexp_curvature(p: &LogExpParams, x: f64) -> f64 {
    p.curvature(x)
}

/// The root `c ≥ 1` of `c² + 1/c² = b`, defined for `b ≥ 2`.
pub fn split_coefficient(b: f64) -> Result<f64> {
    if !(b.is_finite() && b >= 2.0) {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            reason: "split form needs b >= 2",
        });
    }
    Ok(((b + (b * b - 4.0).sqrt()) / 2.0).sqrt())
}

/// Log-exp loss written as the sum of two one-sided softplus terms,
/// `(1/a)·log(c·e^{ax} + 1/c) + (1/a)·log(c·e^{-ax} + 1/c)`.
pub fn split_value(a: f64, b: f64, x: f64) -> Result<f64> {
    LogExpParams::new(a, b)?;
    let c = split_coefficient(b)?;
    let shift = 2.0 * c.ln();
    // log(c·e^t + 1/c) = -log c + softplus(t + 2·log c)
    let side = |t: f64| softplus(t + shift) - 0.5 * shift;
    Ok((side(a * x) + side(-a * x)) / a)
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}
