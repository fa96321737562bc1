use std::io::Read;
use std::path::Path;

use genhuber::SampleSet;

use crate::config::InputFormat;
use crate::error::CliError;

/// One selected input column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    /// Zero-based position in the input rows.
    pub index: usize,
    pub samples: SampleSet,
}

/// Reads the whole input; `-` means stdin.
pub fn read_source(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn rows(text: &str, format: InputFormat) -> Result<Vec<Vec<String>>, CliError> {
    match format {
        InputFormat::Csv => {
            let mut rdr = csv::ReaderBuilder::new()
                .has_headers(false)
                .flexible(true)
                .trim(csv::Trim::All)
                .from_reader(text.as_bytes());
            rdr.records()
                .enumerate()
                .map(|(i, rec)| {
                    rec.map(|r| r.iter().map(str::to_owned).collect())
                        .map_err(|e| CliError::Input(format!("row {}: {e}", i + 1)))
                })
                .collect()
        }
        InputFormat::Whitespace => Ok(text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split_whitespace().map(str::to_owned).collect())
            .collect()),
    }
}

/// Splits delimited text into one sample set per selected column
/// (all columns when `columns` is `None`).
pub fn parse_input(
    text: &str,
    format: InputFormat,
    columns: Option<&[usize]>,
) -> Result<Vec<Column>, CliError> {
    let rows = rows(text, format)?;
    let width = match rows.first() {
        Some(r) => r.len(),
        None => return Err(CliError::Input("input has no data rows".into())),
    };
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(CliError::Input(format!(
                "row {}: expected {width} fields, found {} (ragged rows)",
                i + 1,
                r.len()
            )));
        }
    }

    let selected: Vec<usize> = match columns {
        Some(c) => c.to_vec(),
        None => (0..width).collect(),
    };
    if selected.is_empty() {
        return Err(CliError::Input("column selection is empty".into()));
    }
    if let Some(&bad) = selected.iter().find(|&&c| c >= width) {
        return Err(CliError::Input(format!(
            "column {bad} out of range (rows have {width} fields)"
        )));
    }

    selected
        .into_iter()
        .map(|col| {
            let mut values = Vec::with_capacity(rows.len());
            for (i, r) in rows.iter().enumerate() {
                let field = &r[col];
                let v: f64 = field.parse().map_err(|_| {
                    CliError::Input(format!(
                        "row {}, column {col}: cannot parse {field:?} as a number",
                        i + 1
                    ))
                })?;
                if !v.is_finite() {
                    return Err(CliError::Input(format!(
                        "row {}, column {col}: non-finite value {field:?}",
                        i + 1
                    )));
                }
                values.push(v);
            }
            let samples = SampleSet::new(values)
                .map_err(|e| CliError::Input(format!("column {col}: {e}")))?;
            Ok(Column {
                index: col,
                samples,
            })
        })
        .collect()
}
