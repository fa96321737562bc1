use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use genhuber::{ClassicLoss, LogExpParams, LossSpec};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LossKind {
    Quadratic,
    Absolute,
    Huber,
    #[value(name = "pseudo_huber", alias = "pseudo-huber")]
    PseudoHuber,
    #[value(name = "log_exp", alias = "log-exp")]
    LogExp,
}

impl LossKind {
    pub fn name(self) -> &'static str {
        match self {
            LossKind::Quadratic => "quadratic",
            LossKind::Absolute => "absolute",
            LossKind::Huber => "huber",
            LossKind::PseudoHuber => "pseudo_huber",
            LossKind::LogExp => "log_exp",
        }
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Report the adjacent sample pair that brackets the center.
    Pair,
    /// Refine the center to within epsilon.
    Center,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalize {
    None,
    /// Subtract the column mean before estimating.
    Mean,
    /// Subtract the mean and divide by the sample standard deviation.
    Zscore,
}

impl Normalize {
    pub fn name(self) -> &'static str {
        match self {
            Normalize::None => "none",
            Normalize::Mean => "mean",
            Normalize::Zscore => "zscore",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Whitespace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Robust per-column location estimates under Huber-type and log-exp losses.
#[derive(Debug, Parser)]
#[command(name = "genhuber", version)]
pub struct Args {
    /// Input file, or "-" for stdin.
    pub input: PathBuf,

    #[arg(long, value_enum, default_value = "log_exp")]
    pub loss: LossKind,

    /// Log-exp sharpness (> 0). Default 1.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,

    /// Log-exp offset (>= 0). Default 0.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,

    /// Huber / pseudo-Huber scale (> 0). Default 1.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,

    #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
    pub epsilon: f64,

    #[arg(long, value_enum, default_value = "center")]
    pub mode: Mode,

    #[arg(long, value_enum, default_value = "none")]
    pub normalize: Normalize,

    /// Zero-based column indices, comma separated. Default: all columns.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub columns: Option<Vec<usize>>,

    #[arg(long = "input-format", value_enum, default_value = "csv")]
    pub input_format: InputFormat,

    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub loss_kind: LossKind,
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub mode: Mode,
    pub normalize: Normalize,
    pub columns: Option<Vec<usize>>,
    pub input_format: InputFormat,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            loss_kind: LossKind::LogExp,
            a: 1.0,
            b: 0.0,
            delta: 1.0,
            epsilon: 1e-9,
            mode: Mode::Center,
            normalize: Normalize::None,
            columns: None,
            input_format: InputFormat::Csv,
            output_format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    /// Builds a config from parsed flags. Irrelevant loss parameters only
    /// produce warnings.
    pub fn from_args(args: &Args) -> Result<(Self, Vec<String>), CliError> {
        let mut warnings = Vec::new();
        let kind = args.loss;
        if kind != LossKind::LogExp {
            for (flag, v) in [("--a", args.a), ("--b", args.b)] {
                if v.is_some() {
                    warnings.push(format!("{flag} is ignored for loss {kind}"));
                }
            }
        }
        if !matches!(kind, LossKind::Huber | LossKind::PseudoHuber) && args.delta.is_some() {
            warnings.push(format!("--delta is ignored for loss {kind}"));
        }
        let cfg = Self {
            loss_kind: kind,
            a: args.a.unwrap_or(1.0),
            b: args.b.unwrap_or(0.0),
            delta: args.delta.unwrap_or(1.0),
            epsilon: args.epsilon,
            mode: args.mode,
            normalize: args.normalize,
            columns: args.columns.clone(),
            input_format: args.input_format,
            output_format: args.format,
        };
        cfg.loss_spec()?;
        Ok((cfg, warnings))
    }

    /// Loss used for the search. Errors on invalid parameters, including a
    /// non-positive epsilon.
    pub fn loss_spec(&self) -> Result<LossSpec, CliError> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(CliError::Config(format!(
                "--epsilon must be finite and > 0 (got {})",
                self.epsilon
            )));
        }
        let spec = match self.loss_kind {
            LossKind::Quadratic => LossSpec::quadratic(),
            LossKind::Absolute => LossSpec::absolute(),
            LossKind::Huber => LossSpec::Classic(
                ClassicLoss::huber(self.delta).map_err(|e| CliError::Config(e.to_string()))?,
            ),
            LossKind::PseudoHuber => LossSpec::Classic(
                ClassicLoss::pseudo_huber(self.delta)
                    .map_err(|e| CliError::Config(e.to_string()))?,
            ),
            LossKind::LogExp => {
                if self.b < 0.0 {
                    return Err(CliError::Config(format!(
                        "log_exp needs b >= 0: the loss is only convex on the whole line for b >= 0, \
                         and the center search requires convexity (got b = {})",
                        self.b
                    )));
                }
                LossSpec::LogExp(
                    LogExpParams::new(self.a, self.b)
                        .map_err(|e| CliError::Config(e.to_string()))?,
                )
            }
        };
        Ok(spec)
    }
}
