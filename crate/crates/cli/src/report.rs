use std::fmt::Write as _;

use genhuber::{
    cumulative_value, find_centralizing_pair, mean, median, robust_center, CenterOutcome, LossSpec,
    SampleSet,
};
use serde::{Deserialize, Serialize};

use crate::config::{LossKind, Mode, Normalize, OutputFormat, RunConfig};
use crate::error::CliError;
use crate::input::Column;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnReport {
    pub index: usize,
    pub n: usize,
    pub estimate: f64,
    pub pair: Option<[f64; 2]>,
    /// Cumulative loss of the estimate over the column, in input units.
    pub loss: f64,
    pub grad_evals: usize,
    pub normalize: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub epsilon: f64,
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub columns: Vec<ColumnReport>,
    pub loss_kind: String,
    pub params: Params,
}

/// Increasing affine map from input units to the units the search runs in.
#[derive(Debug, Clone, Copy)]
struct Affine {
    center: f64,
    spread: f64,
}

impl Affine {
    fn fit(s: &SampleSet, how: Normalize) -> Self {
        let identity = Affine {
            center: 0.0,
            spread: 1.0,
        };
        match how {
            Normalize::None => identity,
            Normalize::Mean => Affine {
                center: mean(s),
                spread: 1.0,
            },
            Normalize::Zscore => {
                let m = mean(s);
                let n = s.len();
                let sd = if n > 1 {
                    let ss: f64 = s.values().iter().map(|v| (v - m) * (v - m)).sum();
                    (ss / (n - 1) as f64).sqrt()
                } else {
                    0.0
                };
                Affine {
                    center: m,
                    spread: if sd > 0.0 && sd.is_finite() { sd } else { 1.0 },
                }
            }
        }
    }

    fn forward(&self, s: &SampleSet) -> Result<SampleSet, CliError> {
        s.affine(1.0 / self.spread, -self.center / self.spread)
            .map_err(|e| CliError::Input(format!("normalization failed: {e}")))
    }

    fn back(&self, z: f64) -> f64 {
        z * self.spread + self.center
    }
}

fn estimate_column(
    cfg: &RunConfig,
    loss: &LossSpec,
    col: &Column,
) -> Result<ColumnReport, CliError> {
    let s = &col.samples;
    let (estimate, pair, grad_evals) = if cfg.loss_kind == LossKind::Absolute {
        // closed form; no gradient search for the absolute loss
        (median(s), None, 0)
    } else {
        let map = Affine::fit(s, cfg.normalize);
        let work = map.forward(s)?;
        match cfg.mode {
            Mode::Pair => {
                let r = find_centralizing_pair(loss, &work)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                let (lo, hi) = r.bounds();
                let mid = match r.outcome {
                    CenterOutcome::Exact(x) => x,
                    CenterOutcome::Pair { low, high, .. } => 0.5 * (low + high),
                };
                (
                    map.back(mid),
                    Some([map.back(lo), map.back(hi)]),
                    r.grad_evals,
                )
            }
            Mode::Center => {
                let r = robust_center(loss, &work, cfg.epsilon)
                    .map_err(|e| CliError::Config(e.to_string()))?;
                (map.back(r.x_eps), None, r.grad_evals)
            }
        }
    };
    Ok(ColumnReport {
        index: col.index,
        n: s.len(),
        estimate,
        pair,
        loss: cumulative_value(loss, s, estimate),
        grad_evals,
        normalize: cfg.normalize.name().to_owned(),
    })
}

/// Estimates every column. Column order in the report follows `data`.
pub fn run_estimate(cfg: &RunConfig, data: &[Column]) -> Result<Report, CliError> {
    let loss = cfg.loss_spec()?;
    let columns = data
        .iter()
        .map(|c| estimate_column(cfg, &loss, c))
        .collect::<Result<Vec<_>, _>>()?;
    let (a, b) = if cfg.loss_kind == LossKind::LogExp {
        (Some(cfg.a), Some(cfg.b))
    } else {
        (None, None)
    };
    let delta =
        matches!(cfg.loss_kind, LossKind::Huber | LossKind::PseudoHuber).then_some(cfg.delta);
    Ok(Report {
        columns,
        loss_kind: cfg.loss_kind.name().to_owned(),
        params: Params {
            a,
            b,
            delta,
            epsilon: cfg.epsilon,
            mode: match cfg.mode {
                Mode::Pair => "pair",
                Mode::Center => "center",
            }
            .to_owned(),
        },
    })
}

/// Serializes the report; JSON floats use shortest round-trip formatting.
pub fn emit_report(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for c in &report.columns {
                let _ = write!(
                    s,
                    "column {}: n={} estimate={:.15e} loss={:.15e} grad_evals={} normalize={}",
                    c.index, c.n, c.estimate, c.loss, c.grad_evals, c.normalize
                );
                if let Some([lo, hi]) = c.pair {
                    let _ = write!(s, " pair=[{lo:.15e}, {hi:.15e}]");
                }
                s.push('\n');
            }
            s
        }
    }
}
