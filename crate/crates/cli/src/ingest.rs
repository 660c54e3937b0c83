//! CSV ingestion: pull one numeric column out of a possibly messy file.
//! Blank lines and unrelated columns (dates, tickers) are tolerated; only
//! the selected column is parsed.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use eix_core::Series;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Args)]
pub struct IngestArgs {
    /// Input CSV file.
    #[arg(long)]
    pub input: PathBuf,

    /// Column to analyze: zero-based index, or a name when --header is set.
    #[arg(long, default_value = "0")]
    pub column: String,

    /// Transform applied to the parsed column.
    #[arg(long, value_enum, default_value_t = Transform::None)]
    pub transform: Transform,

    /// Field delimiter.
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,

    /// Treat the first row as a header.
    #[arg(long)]
    pub header: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    /// Use the column as-is.
    None,
    /// Prices p_1..p_n become returns log(p_i / p_{i+1}), length n-1.
    NegLogReturns,
}

pub fn read_series(args: &IngestArgs) -> Result<Series> {
    if !args.delimiter.is_ascii() {
        return Err(CliError::data(format!("delimiter {:?} is not a single byte", args.delimiter)));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(args.header)
        .delimiter(args.delimiter as u8)
        .flexible(true)
        .from_path(&args.input)
        .map_err(|e| CliError::data(format!("{}: {e}", args.input.display())))?;

    let col = resolve_column(&mut reader, args)?;
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        let field = record.get(col).ok_or_else(|| {
            CliError::data(format!(
                "row {}: no field at column index {col}",
                values.len() + 1
            ))
        })?;
        let value: f64 = field.trim().parse().map_err(|_| {
            CliError::data(format!(
                "row {}, column {col}: cannot parse {field:?} as a number",
                values.len() + 1
            ))
        })?;
        values.push(value);
    }

    let values = match args.transform {
        Transform::None => values,
        Transform::NegLogReturns => neg_log_returns(&values)?,
    };
    Ok(Series::new(values)?)
}

fn resolve_column(reader: &mut csv::Reader<std::fs::File>, args: &IngestArgs) -> Result<usize> {
    if let Ok(idx) = args.column.parse::<usize>() {
        return Ok(idx);
    }
    if !args.header {
        return Err(CliError::data(format!(
            "column {:?} is a name; selecting by name needs --header",
            args.column
        )));
    }
    let headers = reader.headers()?.clone();
    headers.iter().position(|h| h.trim() == args.column).ok_or_else(|| {
        CliError::data(format!(
            "column {:?} not found; file has columns [{}]",
            args.column,
            headers.iter().map(str::trim).collect::<Vec<_>>().join(", ")
        ))
    })
}

/// Negative log returns of a price series; requires positive prices.
fn neg_log_returns(prices: &[f64]) -> Result<Vec<f64>> {
    if prices.len() < 2 {
        return Err(CliError::data("neg-log-returns needs at least 2 prices"));
    }
    if let Some(p) = prices.iter().find(|&&p| p.is_nan() || p <= 0.0) {
        return Err(CliError::data(format!(
            "neg-log-returns needs strictly positive prices, got {p}"
        )));
    }
    Ok(prices.windows(2).map(|w| (w[0] / w[1]).ln()).collect())
}
