//! Deliberately naive oracles for checking the losses and the searches:
//! grid argmin, exhaustive gradient-sign scan, fine bisection, central
//! finite differences and a midpoint-convexity scan.
//!
//! Sums here are plain left-to-right folds, independent of the pairwise
//! accumulation the minimizer uses.

use crate::error::{Error, Result};
use crate::loss::LossSpec;
use crate::minimizer::{CenterOutcome, SampleSet, ZERO_GRAD_TOL};

/// Slack allowed in the midpoint-convexity inequality.
pub const CONVEXITY_SLACK: f64 = 1e-12;

/// Bracket width the bisection oracle runs down to.
pub const BISECTION_ORACLE_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    low: f64,
    high: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(low: f64, high: f64, points: usize) -> Result<Self> {
        if !(low.is_finite() && high.is_finite() && low < high) {
            return Err(Error::InvalidParameter {
                name: "grid",
                value: high - low,
                reason: "need finite low < high",
            });
        }
        if points < 3 {
            return Err(Error::InvalidParameter {
                name: "points",
                value: points as f64,
                reason: "need at least 3 grid points",
            });
        }
        Ok(Self { low, high, points })
    }

    pub fn step(&self) -> f64 {
        (self.high - self.low) / (self.points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.high
        } else {
            self.low + self.step() * i as f64
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.point(i))
    }
}

fn naive_value(loss: &LossSpec, s: &SampleSet, x: f64) -> f64 {
    s.values()
        .iter()
        .fold(0.0, |acc, &v| acc + loss.value(x - v))
}

fn naive_grad(loss: &LossSpec, s: &SampleSet, x: f64) -> f64 {
    s.values()
        .iter()
        .fold(0.0, |acc, &v| acc + loss.grad(x - v))
}

/// Grid point with the smallest cumulative loss; ties go to the lower x.
pub fn grid_minimize(loss: &LossSpec, s: &SampleSet, grid: GridSpec) -> f64 {
    let mut best = (f64::INFINITY, grid.low);
    for x in grid.iter() {
        let v = naive_value(loss, s, x);
        if v < best.0 {
            best = (v, x);
        }
    }
    best.1
}

/// `|central difference of value - grad(x)| / max(1, |grad(x)|)`.
pub fn fd_check(value: impl Fn(f64) -> f64, grad: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let fd = (value(x + h) - value(x - h)) / (2.0 * h);
    let g = grad(x);
    (fd - g).abs() / g.abs().max(1.0)
}

/// Number of consecutive grid triples where
/// `v(mid) > (v(left) + v(right))/2 + CONVEXITY_SLACK`.
pub fn convexity_scan(value: impl Fn(f64) -> f64, grid: GridSpec) -> usize {
    let vals: Vec<f64> = grid.iter().map(&value).collect();
    vals.windows(3)
        .filter(|w| w[1] > 0.5 * (w[0] + w[2]) + CONVEXITY_SLACK)
        .count()
}

/// Sign of the cumulative gradient at every sorted sample, under the same
/// zero tolerance the search uses.
pub fn gradient_signs(loss: &LossSpec, s: &SampleSet) -> Vec<i8> {
    let tol = ZERO_GRAD_TOL * s.len() as f64;
    s.values()
        .iter()
        .map(|&x| {
            let g = naive_grad(loss, s, x);
            if g.abs() <= tol {
                0
            } else if g > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect()
}

/// Expected outcome of the centralizing-pair search, from an exhaustive
/// scan of gradient signs at every sample.
///
/// The end samples count as below/above the minimizer, as the search
/// assumes; the first interior sample with a nonnegative sign decides.
pub fn sign_scan_center(loss: &LossSpec, s: &SampleSet) -> CenterOutcome {
    let xs = s.values();
    let n = xs.len();
    if n == 1 {
        return CenterOutcome::Exact(xs[0]);
    }
    let signs = gradient_signs(loss, s);
    let k = (1..n - 1).find(|&i| signs[i] >= 0).unwrap_or(n - 1);
    if k < n - 1 && signs[k] == 0 {
        return CenterOutcome::Exact(xs[k]);
    }
    if xs[k - 1] == xs[k] {
        CenterOutcome::Exact(xs[k])
    } else {
        CenterOutcome::Pair {
            low: xs[k - 1],
            high: xs[k],
            index_low: k - 1,
        }
    }
}

/// Root of the cumulative gradient by plain bisection on `[min, max]` down
/// to [`BISECTION_ORACLE_WIDTH`]; exact zeros are not special-cased.
pub fn bisection_oracle(loss: &LossSpec, s: &SampleSet) -> f64 {
    let (mut lo, mut hi) = (s.min(), s.max());
    while hi - lo > BISECTION_ORACLE_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if naive_grad(loss, s, mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
