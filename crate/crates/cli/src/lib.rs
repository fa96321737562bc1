//! Library side of the `genhuber` command: input parsing, per-column
//! estimation and report formatting.

pub mod config;
pub mod error;
pub mod input;
pub mod report;

use std::io::Write;

pub use config::{Args, RunConfig};
pub use error::CliError;
pub use input::{parse_input, read_source, Column};
pub use report::{emit_report, run_estimate, ColumnReport, Report};

/// Runs the command for already-parsed flags, writing warnings to `warn`.
pub fn run(args: &Args, warn: &mut dyn Write) -> Result<(), CliError> {
    let (cfg, warnings) = RunConfig::from_args(args)?;
    for w in warnings {
        writeln!(warn, "warning: {w}")?;
    }
    let text = read_source(&args.input)?;
    let data = parse_input(&text, cfg.input_format, cfg.columns.as_deref())?;
    let report = run_estimate(&cfg, &data)?;
    let out = emit_report(&report, cfg.output_format);
    match &args.output {
        Some(path) => std::fs::write(path, out)?,
        None => std::io::stdout().lock().write_all(out.as_bytes())?,
    }
    Ok(())
}
