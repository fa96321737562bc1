//! Classic scalar losses: quadratic, absolute, the two hard piecewise
//! blends, Huber and pseudo-Huber.
//!
//! Conventions at non-differentiable points:
//! - the absolute loss has gradient 0 at the origin (midpoint of the
//!   subgradient set `[-1, 1]`);
//! - piecewise kinds use the inner (quadratic) branch at `|x| = δ`, for
//!   the gradient and for the curvature. Huber therefore reports `1/δ` as
//!   its curvature at the breakpoint even though the true second
//!   derivative does not exist there.

use std::fmt;

use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicKind {
    /// `x²`
    Quadratic,
    /// `|x|`
    Absolute,
    /// `x²` for `|x| ≤ 1`, `|x|` otherwise.
    PiecewiseUnit,
    /// `x²/δ` for `|x| ≤ δ`, `|x|` otherwise.
    PiecewiseDelta,
    /// `x²/(2δ) + δ/2` for `|x| ≤ δ`, `|x|` otherwise.
    Huber,
    /// `δ·√(1 + x²/δ²)`
    PseudoHuber,
}

impl ClassicKind {
    pub fn uses_delta(self) -> bool {
        matches!(
            self,
            ClassicKind::PiecewiseDelta | ClassicKind::Huber | ClassicKind::PseudoHuber
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassicKind::Quadratic => "quadratic",
            ClassicKind::Absolute => "absolute",
            ClassicKind::PiecewiseUnit => "piecewise_unit",
            ClassicKind::PiecewiseDelta => "piecewise_delta",
            ClassicKind::Huber => "huber",
            ClassicKind::PseudoHuber => "pseudo_huber",
        }
    }
}

impl fmt::Display for ClassicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated classic loss. `delta` is only meaningful for kinds that
/// consume it and is pinned to 1 otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicLoss {
    kind: ClassicKind,
    delta: f64,
}

impl ClassicLoss {
    pub fn new(kind: ClassicKind, delta: f64) -> Result<Self> {
        if kind.uses_delta() {
            if !(delta.is_finite() && delta > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "delta",
                    value: delta,
                    reason: "must be finite and > 0",
                });
            }
            Ok(Self { kind, delta })
        } else {
            Ok(Self { kind, delta: 1.0 })
        }
    }

    pub fn quadratic() -> Self {
        Self {
            kind: ClassicKind::Quadratic,
            delta: 1.0,
        }
    }

    pub fn absolute() -> Self {
        Self {
            kind: ClassicKind::Absolute,
            delta: 1.0,
        }
    }

    pub fn huber(delta: f64) -> Result<Self> {
        Self::new(ClassicKind::Huber, delta)
    }

    pub fn pseudo_huber(delta: f64) -> Result<Self> {
        Self::new(ClassicKind::PseudoHuber, delta)
    }

    pub fn kind(&self) -> ClassicKind {
        self.kind
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Loss value. Total on finite input; use [`classic_value`] for the
    /// checked form.
    pub fn value(&self, x: f64) -> f64 {
        let d = self.delta;
        let ax = x.abs();
        match self.kind {
            ClassicKind::Quadratic => x * x,
            ClassicKind::Absolute => ax,
            ClassicKind::PiecewiseUnit => {
                if ax <= 1.0 {
                    x * x
                } else {
                    ax
                }
            }
            ClassicKind::PiecewiseDelta => {
                if ax <= d {
                    x * x / d
                } else {
                    ax
                }
            }
            ClassicKind::Huber => {
                if ax <= d {
                    x * x / (2.0 * d) + 0.5 * d
                } else {
                    ax
                }
            }
            // hypot keeps x²/δ² from overflowing.
            ClassicKind::PseudoHuber => d * 1f64.hypot(ax / d),
        }
    }

    pub fn grad(&self, x: f64) -> f64 {
        let d = self.delta;
        let ax = x.abs();
        match self.kind {
            ClassicKind::Quadratic => 2.0 * x,
            ClassicKind::Absolute => sign_or_zero(x),
            ClassicKind::PiecewiseUnit => {
                if ax <= 1.0 {
                    2.0 * x
                } else {
                    sign_or_zero(x)
                }
            }
            ClassicKind::PiecewiseDelta => {
                if ax <= d {
                    2.0 * x / d
                } else {
                    sign_or_zero(x)
                }
            }
            ClassicKind::Huber => {
                if ax <= d {
                    x / d
                } else {
                    sign_or_zero(x)
                }
            }
            ClassicKind::PseudoHuber => {
                let u = x / d;
                u / 1f64.hypot(u)
            }
        }
    }

    pub fn curvature(&self, x: f64) -> f64 {
        let d = self.delta;
        let ax = x.abs();
        match self.kind {
            ClassicKind::Quadratic => 2.0,
            ClassicKind::Absolute => 0.0,
            ClassicKind::PiecewiseUnit => {
                if ax <= 1.0 {
                    2.0
                } else {
                    0.0
                }
            }
            ClassicKind::PiecewiseDelta => {
                if ax <= d {
                    2.0 / d
                } else {
                    0.0
                }
            }
            ClassicKind::Huber => {
                if ax <= d {
                    1.0 / d
                } else {
                    0.0
                }
            }
            ClassicKind::PseudoHuber => {
                let r = 1f64.hypot(ax / d);
                1.0 / (d * r * r * r)
            }
        }
    }
}

fn sign_or_zero(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn classic_value(spec: &ClassicLoss, x: f64) -> Result<f64> {
    ensure_finite(x).map(|x| spec.value(x))
}

pub fn classic_grad(spec: &ClassicLoss, x: f64) -> Result<f64> {
    ensure_finite(x).map(|x| spec.grad(x))
}

pub fn classic_curvature(spec: &ClassicLoss, x: f64) -> Result<f64> {
    ensure_finite(x).map(|x| spec.curvature(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL_KINDS: [ClassicKind; 6] = [
        ClassicKind::Quadratic,
        ClassicKind::Absolute,
        ClassicKind::PiecewiseUnit,
        ClassicKind::PiecewiseDelta,
        ClassicKind::Huber,
        ClassicKind::PseudoHuber,
    ];

    fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn huber_values() {
        let h1 = ClassicLoss::huber(1.0).unwrap();
        assert_eq!(classic_value(&h1, 0.0).unwrap(), 0.5);
        assert_eq!(classic_value(&h1, 1.0).unwrap(), 1.0);
        assert_eq!(classic_grad(&h1, 5.0).unwrap(), 1.0);

        let h2 = ClassicLoss::huber(2.0).unwrap();
        assert_eq!(classic_grad(&h2, 1.0).unwrap(), 0.5);
        assert!((central_diff(|x| h2.value(x), 1.0, 1e-6) - 0.5).abs() < 1e-8);

        let h4 = ClassicLoss::huber(4.0).unwrap();
        assert_eq!(classic_curvature(&h4, 1.0).unwrap(), 0.25);
        // breakpoint convention: inner branch
        assert_eq!(h4.curvature(4.0), 0.25);
        assert_eq!(h4.curvature(4.0 + 1e-9), 0.0);
    }

    #[test]
    fn pseudo_huber_values() {
        let p = ClassicLoss::pseudo_huber(1.0).unwrap();
        assert_eq!(classic_value(&p, 0.0).unwrap(), 1.0);
        let v = classic_value(&p, 100.0).unwrap();
        assert!((v - 10001f64.sqrt()).abs() < 1e-12);
        assert!((v - 100.004_999_875_006_25).abs() < 1e-11);

        assert_eq!(classic_curvature(&p, 0.0).unwrap(), 1.0);
        let fd = (p.value(1e-4) - 2.0 * p.value(0.0) + p.value(-1e-4)) / 1e-8;
        assert!((fd - 1.0).abs() < 1e-6);
    }

    #[test]
    fn quadratic_and_absolute() {
        let q = ClassicLoss::quadratic();
        assert_eq!(classic_curvature(&q, 7.0).unwrap(), 2.0);
        let a = ClassicLoss::absolute();
        assert_eq!(classic_grad(&a, 0.0).unwrap(), 0.0);
        assert_eq!(classic_grad(&a, -3.0).unwrap(), -1.0);
    }

    #[test]
    fn piecewise_breakpoints_use_inner_branch() {
        let pu = ClassicLoss::new(ClassicKind::PiecewiseUnit, 0.0).unwrap();
        assert_eq!(pu.grad(1.0), 2.0);
        assert_eq!(pu.grad(-1.0), -2.0);
        let pd = ClassicLoss::new(ClassicKind::PiecewiseDelta, 2.0).unwrap();
        assert_eq!(pd.value(2.0), 2.0);
        assert_eq!(pd.grad(2.0), 2.0);
        assert_eq!(pd.grad(2.5), 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ClassicLoss::huber(0.0).is_err());
        assert!(ClassicLoss::huber(-1.0).is_err());
        assert!(ClassicLoss::pseudo_huber(f64::NAN).is_err());
        assert!(ClassicLoss::new(ClassicKind::PiecewiseDelta, f64::INFINITY).is_err());
        // delta is ignored where unused
        assert!(ClassicLoss::new(ClassicKind::Quadratic, -1.0).is_ok());

        let h = ClassicLoss::huber(1.0).unwrap();
        assert!(matches!(
            classic_value(&h, f64::NAN),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            classic_value(&h, f64::INFINITY),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            classic_grad(&h, f64::NEG_INFINITY),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            classic_curvature(&h, f64::NAN),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn huber_joins_smoothly_at_delta() {
        for &d in &[0.1, 1.0, 3.7, 250.0] {
            let h = ClassicLoss::huber(d).unwrap();
            for &s in &[1.0, -1.0] {
                let b = s * d;
                let inner_v = b * b / (2.0 * d) + 0.5 * d;
                assert!((inner_v - b.abs()).abs() <= 1e-12 * d.max(1.0));
                assert!((h.grad(b) - s).abs() <= 1e-12);
                let above = b + s * d * 1e-12;
                assert!((h.grad(above) - h.grad(b)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn gradient_matches_finite_difference() {
        // deterministic sweep, 1000 points, away from breakpoints
        for kind in ALL_KINDS {
            for &d in &[0.5, 1.0, 3.0] {
                let loss = ClassicLoss::new(kind, d).unwrap();
                let bp = if kind == ClassicKind::PiecewiseUnit {
                    1.0
                } else {
                    d
                };
                for i in 0..1000 {
                    let x = -20.0 + 40.0 * (i as f64 + 0.37) / 1000.0;
                    if (x.abs() - bp).abs() < 1e-3 || x.abs() < 1e-3 {
                        continue;
                    }
                    let h = 1e-6;
                    let fd = central_diff(|t| loss.value(t), x, h);
                    let g = loss.grad(x);
                    assert!(
                        (g - fd).abs() <= 1e-6 * g.abs().max(1.0),
                        "{kind} d={d} x={x}: grad {g} vs fd {fd}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_with_minimum_at_zero(kind_ix in 0usize..6, d in 0.01f64..100.0, x in -1e6f64..1e6) {
            let loss = ClassicLoss::new(ALL_KINDS[kind_ix], d).unwrap();
            prop_assert_eq!(loss.value(x), loss.value(-x));
            prop_assert!(loss.value(0.0) <= loss.value(x));
            prop_assert_eq!(loss.grad(x), -loss.grad(-x));
        }

        #[test]
        fn pseudo_huber_approaches_abs(d in 0.01f64..100.0, k in 10.0f64..1e6, neg in any::<bool>()) {
            let loss = ClassicLoss::pseudo_huber(d).unwrap();
            let x = if neg { -k * d } else { k * d };
            let gap = (loss.value(x) - x.abs()).abs();
            prop_assert!(gap <= d * d / x.abs() + 4.0 * f64::EPSILON * x.abs());
        }
    }
}
