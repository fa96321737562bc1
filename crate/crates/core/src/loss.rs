use std::fmt;

use crate::error::{Error, Result};
use crate::loss_classic::{ClassicKind, ClassicLoss};
use crate::loss_generalized::LogExpParams;

/// Any scalar loss the minimizer can sum over samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LossSpec {
    Classic(ClassicLoss),
    LogExp(LogExpParams),
}

impl LossSpec {
    pub fn log_exp(a: f64, b: f64) -> Result<Self> {
        LogExpParams::new(a, b).map(LossSpec::LogExp)
    }

    pub fn quadratic() -> Self {
        LossSpec::Classic(ClassicLoss::quadratic())
    }

    pub fn absolute() -> Self {
        LossSpec::Classic(ClassicLoss::absolute())
    }

    pub fn huber(delta: f64) -> Result<Self> {
        ClassicLoss::huber(delta).map(LossSpec::Classic)
    }

    pub fn pseudo_huber(delta: f64) -> Result<Self> {
        ClassicLoss::pseudo_huber(delta).map(LossSpec::Classic)
    }

    pub fn value(&self, x: f64) -> f64 {
        match self {
            LossSpec::Classic(c) => c.value(x),
            LossSpec::LogExp(p) => p.value(x),
        }
    }

    pub fn grad(&self, x: f64) -> f64 {
        match self {
            LossSpec::Classic(c) => c.grad(x),
            LossSpec::LogExp(p) => p.grad(x),
        }
    }

    /// Whether the gradient-sign searches may run on this loss: it must be
    /// convex and differentiable with a gradient that is not flat around 0.
    pub fn supports_sign_search(&self) -> bool {
        match self {
            LossSpec::Classic(c) => matches!(
                c.kind(),
                ClassicKind::Quadratic | ClassicKind::Huber | ClassicKind::PseudoHuber
            ),
            LossSpec::LogExp(p) => p.is_convex(),
        }
    }

    pub(crate) fn require_sign_search(&self) -> Result<()> {
        if self.supports_sign_search() {
            Ok(())
        } else {
            Err(Error::NotStrictlyConvex(self.to_string()))
        }
    }
}

impl fmt::Display for LossSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LossSpec::Classic(c) if c.kind().uses_delta() => {
                write!(f, "{}(delta={})", c.kind(), c.delta())
            }
            LossSpec::Classic(c) => write!(f, "{}", c.kind()),
            LossSpec::LogExp(p) => write!(f, "log_exp(a={}, b={})", p.a(), p.b()),
        }
    }
}

impl From<ClassicLoss> for LossSpec {
    fn from(c: ClassicLoss) -> Self {
        LossSpec::Classic(c)
    }
}

impl From<LogExpParams> for LossSpec {
    fn from(p: LogExpParams) -> Self {
        LossSpec::LogExp(p)
    }
}
