//! Location estimates as minimizers of a cumulative loss `Σ L₀(x - xₙ)`.
//!
//! For a convex, differentiable, symmetric `L₀` the cumulative gradient is
//! nondecreasing in `x`, so its sign alone tells on which side of `x` the
//! minimizer lies. [`find_centralizing_pair`] bisects over sorted sample
//! indices to find two adjacent samples that bracket the minimizer, and
//! [`epsilon_minimize`] bisects the continuous bracket down to `ε`.

use crate::error::{Error, Result};
use crate::loss::LossSpec;

/// Per-sample scale of the zero test on the cumulative gradient: `G` counts
/// as zero when `|G| ≤ ZERO_GRAD_TOL · N`.
pub const ZERO_GRAD_TOL: f64 = 1e-12;

const PAIRWISE_BLOCK: usize = 16;

/// A nonempty set of finite samples kept in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
    /// `perm[i]` is the input position of `values[i]`.
    perm: Vec<usize>,
}

impl SampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySampleSet);
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        let mut perm: Vec<usize> = (0..values.len()).collect();
        perm.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let sorted = perm.iter().map(|&i| values[i]).collect();
        Ok(Self {
            values: sorted,
            perm,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Samples back in their input order.
    pub fn original_order(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.values.len()];
        for (v, &p) in self.values.iter().zip(&self.perm) {
            out[p] = *v;
        }
        out
    }

    /// Applies an increasing affine map `x ↦ scale·x + shift` to every sample.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: scale,
                reason: "must be finite and > 0",
            });
        }
        let values: Vec<f64> = self.values.iter().map(|v| scale * v + shift).collect();
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(bad));
        }
        Ok(Self {
            values,
            perm: self.perm.clone(),
        })
    }

    fn zero_tol(&self) -> f64 {
        ZERO_GRAD_TOL * self.values.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CenterOutcome {
    /// A sample at which the cumulative gradient is zero.
    Exact(f64),
    /// Adjacent sorted samples with the minimizer strictly between them.
    Pair {
        low: f64,
        high: f64,
        /// Zero-based sorted position of `low`; `high` sits at `index_low + 1`.
        index_low: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenterResult {
    pub outcome: CenterOutcome,
    pub grad_evals: usize,
}

impl CenterResult {
    pub fn bounds(&self) -> (f64, f64) {
        match self.outcome {
            CenterOutcome::Exact(x) => (x, x),
            CenterOutcome::Pair { low, high, .. } => (low, high),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonResult {
    pub x_eps: f64,
    /// The minimizer lies in `[x_eps - radius, x_eps + radius]`.
    pub radius: f64,
    pub grad_evals: usize,
    pub exact: bool,
}

fn pairwise_sum(xs: &[f64], term: &impl Fn(f64) -> f64) -> f64 {
    if xs.len() <= PAIRWISE_BLOCK {
        xs.iter().map(|&v| term(v)).sum()
    } else {
        let (l, r) = xs.split_at(xs.len() / 2);
        pairwise_sum(l, term) + pairwise_sum(r, term)
    }
}

/// `Σ L₀(x - xₙ)`.
pub fn cumulative_value(loss: &LossSpec, s: &SampleSet, x: f64) -> f64 {
    pairwise_sum(&s.values, &|v| loss.value(x - v))
}

/// `Σ L₀'(x - xₙ)`.
pub fn cumulative_grad(loss: &LossSpec, s: &SampleSet, x: f64) -> f64 {
    pairwise_sum(&s.values, &|v| loss.grad(x - v))
}

/// Bisection over sorted sample positions for the pair of adjacent samples
/// that brackets the cumulative-loss minimizer, or a sample that is itself
/// the minimizer.
///
/// The first and last samples are never evaluated. For a loss that is odd
/// in its gradient and nondecreasing, every term of `G(x₁)` is `≤ 0` and
/// every term of `G(x_N)` is `≥ 0`, so the minimizer always lies in
/// `[x₁, x_N]` and the initial bracket needs no check.
pub fn find_centralizing_pair(loss: &LossSpec, s: &SampleSet) -> Result<CenterResult> {
    loss.require_sign_search()?;
    let xs = &s.values;
    let n = xs.len();
    if n == 1 {
        return Ok(CenterResult {
            outcome: CenterOutcome::Exact(xs[0]),
            grad_evals: 0,
        });
    }
    debug_assert!(cumulative_grad(loss, s, xs[0]) <= s.zero_tol());
    debug_assert!(cumulative_grad(loss, s, xs[n - 1]) >= -s.zero_tol());

    let tol = s.zero_tol();
    let (mut lo, mut hi) = (0usize, n - 1);
    let mut grad_evals = 0;
    while hi != lo + 1 {
        // nearest integer to the midpoint, ties rounded up
        let mid = (lo + hi).div_ceil(2);
        let g = cumulative_grad(loss, s, xs[mid]);
        grad_evals += 1;
        if g.abs() <= tol {
            return Ok(CenterResult {
                outcome: CenterOutcome::Exact(xs[mid]),
                grad_evals,
            });
        } else if g > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let outcome = if xs[lo] == xs[hi] {
        CenterOutcome::Exact(xs[lo])
    } else {
        CenterOutcome::Pair {
            low: xs[lo],
            high: xs[hi],
            index_low: lo,
        }
    };
    Ok(CenterResult {
        outcome,
        grad_evals,
    })
}

/// Bisection on the sign of the cumulative gradient until the bracket is no
/// wider than `2ε`.
pub fn epsilon_minimize(
    loss: &LossSpec,
    s: &SampleSet,
    bracket: (f64, f64),
    eps: f64,
) -> Result<EpsilonResult> {
    loss.require_sign_search()?;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            reason: "must be finite and > 0",
        });
    }
    let (low, high) = bracket;
    if !low.is_finite() {
        return Err(Error::NonFinite(low));
    }
    if !high.is_finite() {
        return Err(Error::NonFinite(high));
    }
    let tol = s.zero_tol();
    let grad_low = cumulative_grad(loss, s, low);
    let grad_high = cumulative_grad(loss, s, high);
    if low > high || grad_low > tol || grad_high < -tol {
        return Err(Error::InvalidBracket {
            low,
            high,
            grad_low,
            grad_high,
        });
    }
    Ok(bisect_bracket(loss, s, low, high, eps))
}

fn bisect_bracket(
    loss: &LossSpec,
    s: &SampleSet,
    mut low: f64,
    mut high: f64,
    eps: f64,
) -> EpsilonResult {
    let tol = s.zero_tol();
    let mut grad_evals = 0;
    while high - low > 2.0 * eps {
        let mid = 0.5 * (low + high);
        // bracket narrower than the float spacing at this magnitude
        if mid <= low || mid >= high {
            break;
        }
        let g = cumulative_grad(loss, s, mid);
        grad_evals += 1;
        if g.abs() <= tol {
            return EpsilonResult {
                x_eps: mid,
                radius: eps,
                grad_evals,
                exact: true,
            };
        } else if g > 0.0 {
            high = mid;
        } else {
            low = mid;
        }
    }
    EpsilonResult {
        x_eps: 0.5 * (low + high),
        radius: eps,
        grad_evals,
        exact: false,
    }
}

/// Centralizing pair followed by `ε`-bisection inside it. `grad_evals` is
/// the total over both stages.
pub fn robust_center(loss: &LossSpec, s: &SampleSet, eps: f64) -> Result<EpsilonResult> {
    loss.require_sign_search()?;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter {
            name: "eps",
            value: eps,
            reason: "must be finite and > 0",
        });
    }
    let pair = find_centralizing_pair(loss, s)?;
    Ok(match pair.outcome {
        CenterOutcome::Exact(x) => EpsilonResult {
            x_eps: x,
            radius: eps,
            grad_evals: pair.grad_evals,
            exact: true,
        },
        CenterOutcome::Pair { low, high, .. } => {
            let mut r = bisect_bracket(loss, s, low, high, eps);
            r.grad_evals += pair.grad_evals;
            r
        }
    })
}

/// Minimizer of the cumulative absolute loss: the middle sample for odd
/// `N`, the mean of the two middle samples for even `N`.
pub fn median(s: &SampleSet) -> f64 {
    let xs = &s.values;
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

pub fn mean(s: &SampleSet) -> f64 {
    pairwise_sum(&s.values, &|v| v) / s.len() as f64
}

/// Per-dimension robust centers; output order follows `columns`.
pub fn robust_center_multivariate(
    loss: &LossSpec,
    columns: &[SampleSet],
    eps: f64,
) -> Result<Vec<EpsilonResult>> {
    columns
        .iter()
        .map(|c| robust_center(loss, c, eps))
        .collect()
}
