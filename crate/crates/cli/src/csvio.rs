//! CSV readers for the fixed input layouts and a small writer wrapper.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{CliError, CliResult};

/// Reads a numeric CSV whose header must be exactly `header`. Returns one
/// vector per column.
pub fn read_columns(path: &Path, header: &[&str]) -> CliResult<Vec<Vec<f64>>> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let found = reader
        .headers()
        .map_err(|e| CliError::input(path, e.to_string()))?
        .clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(CliError::input(
            path,
            format!(
                "expected header \"{}\", found \"{}\"",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let mut columns = vec![Vec::new(); header.len()];
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| CliError::input(path, format!("line {line}: {e}")))?;
        for (col, (name, field)) in header.iter().zip(record.iter()).enumerate() {
            let value: f64 = field.parse().map_err(|_| {
                CliError::input(path, format!("line {line}, column {name}: {field:?} is not a number"))
            })?;
            columns[col].push(value);
        }
    }
    if columns[0].is_empty() {
        return Err(CliError::input(path, "no data rows"));
    }
    Ok(columns)
}

/// Reads a CSV with either header, returning which one matched.
pub fn read_either(path: &Path, a: &[&str], b: &[&str]) -> CliResult<(usize, Vec<Vec<f64>>)> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let found: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::input(path, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if found.iter().eq(b.iter()) {
        Ok((1, read_columns(path, b)?))
    } else {
        // reports the first layout on mismatch
        Ok((0, read_columns(path, a)?))
    }
}

pub fn create(path: &Path) -> CliResult<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(file))
}

pub fn stdout() -> csv::Writer<io::Stdout> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(io::stdout())
}

pub fn write_row<W: Write>(w: &mut csv::Writer<W>, path: &Path, row: &[String]) -> CliResult<()> {
    w.write_record(row)
        .map_err(|e| CliError::input(path, format!("write failed: {e}")))
}

pub fn finish<W: Write>(mut w: csv::Writer<W>, path: &Path) -> CliResult<()> {
    w.flush().map_err(|e| CliError::io(path, e))
}
