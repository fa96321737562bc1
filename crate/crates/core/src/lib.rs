//! Robust losses built from a monotone auxiliary transform, and fast
//! location estimates under them.
//!
//! - [`loss_classic`]: quadratic, absolute, piecewise, Huber, pseudo-Huber.
//! - [`loss_generalized`]: `g(f(x) + f(-x))` over an auxiliary pair, and the
//!   strictly convex log-exp loss with overflow-safe evaluation.
//! - [`minimizer`]: cumulative loss over a sample set, the centralizing-pair
//!   and `ε`-bisection searches, mean and median.
//! - [`testkit`]: naive oracles used by the test suites.

pub mod error;
pub mod loss;
pub mod loss_classic;
pub mod loss_generalized;
pub mod minimizer;
pub mod testkit;

pub use error::{Error, Result};
pub use loss::LossSpec;
pub use loss_classic::{classic_curvature, classic_grad, classic_value, ClassicKind, ClassicLoss};
pub use loss_generalized::{
    generalized_grad, generalized_value, logexp_curvature, logexp_grad, logexp_value, make_exp_aux,
    make_quadratic_aux, quadratic_coeffs_near_zero, split_coefficient, split_value,
    AuxiliaryTransform, LogExpParams,
};
pub use minimizer::{
    cumulative_grad, cumulative_value, epsilon_minimize, find_centralizing_pair, mean, median,
    robust_center, robust_center_multivariate, CenterOutcome, CenterResult, EpsilonResult,
    SampleSet,
};
