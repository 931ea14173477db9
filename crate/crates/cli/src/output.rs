use std::fmt::Write as _;

use feelab::SeriesTable;

use crate::args::Format;
use crate::error::CliError;

/// 17 significant digits: enough to round-trip any `f64`.
pub fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render(table: &SeriesTable, format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => csv(table),
        Format::Json => json(table),
        Format::Table => Ok(text(table)),
    }
}

fn csv(table: &SeriesTable) -> Result<String, CliError> {
    let fail = |e: csv::Error| CliError::Output(e.to_string());
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&table.columns).map_err(fail)?;
    for row in &table.rows {
        writer
            .write_record(row.iter().map(|&v| number(v)))
            .map_err(fail)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn json(table: &SeriesTable) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(table).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn text(table: &SeriesTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", table.name);
    for (k, v) in &table.meta {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let cells: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| r.iter().map(|&v| number(v)).collect())
        .collect();
    let widths: Vec<usize> = table
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).fold(c.len(), usize::max))
        .collect();
    let line = |fields: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> = fields
            .zip(&widths)
            .map(|(f, w)| format!("{f:>w$}"))
            .collect();
        padded.join("  ")
    };
    let _ = writeln!(
        out,
        "{}",
        line(&mut table.columns.iter().map(String::as_str))
    );
    for row in &cells {
        let _ = writeln!(out, "{}", line(&mut row.iter().map(String::as_str)));
    }
    out
}
