//! CSV and JSON emission of sweep records.
//!
//! Numbers are written in scientific notation with 17 significant digits,
//! which reads back to the identical `f64`. Missing values are an empty CSV
//! field or JSON `null`.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sweep::SweepRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::param("format", format!("expected csv or json, got `{s}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

/// `x` with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_f64).unwrap_or_default()
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SweepRecord::FIELDS)?;
    for r in records {
        let mut row: Vec<String> = r.values().iter().map(|&v| format_opt(v)).collect();
        row.push(r.status.clone());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(records: &[SweepRecord], mut out: W) -> Result<()> {
    writeln!(out, "[")?;
    for (k, r) in records.iter().enumerate() {
        let mut fields = Vec::with_capacity(SweepRecord::FIELDS.len());
        for (name, v) in SweepRecord::FIELDS.iter().zip(r.values()) {
            let value = v.map(format_f64).unwrap_or_else(|| "null".to_string());
            fields.push(format!("\"{name}\": {value}"));
        }
        fields.push(format!("\"status\": {}", serde_json::to_string(&r.status)?));
        let sep = if k + 1 == records.len() { "" } else { "," };
        writeln!(out, "  {{{}}}{sep}", fields.join(", "))?;
    }
    writeln!(out, "]")?;
    out.flush()?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[SweepRecord], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => write_csv(records, out),
        Format::Json => write_json(records, out),
    }
}

/// Writes `records` to `path`, rejecting an empty record set.
pub fn emit(records: &[SweepRecord], format: Format, path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::param("records", "nothing to emit"));
    }
    let file = File::create(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("cannot write {}: {e}", path.display()))))?;
    write_records(records, format, BufWriter::new(file))
}

/// `<stem>-<label>.<ext>` next to `base`.
pub fn labelled_path(base: &Path, label: &str, format: Format) -> PathBuf {
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "sweep".into());
    let ext = base.extension().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| format.extension().into());
    base.with_file_name(format!("{stem}-{label}.{ext}"))
}

fn parse_field(name: &str, s: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| Error::param(name, format!("not a number: `{s}`")))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != SweepRecord::FIELDS {
        return Err(Error::param("header", format!("unexpected CSV header {header:?}")));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let mut v = [None; 15];
        for (k, slot) in v.iter_mut().enumerate() {
            *slot = parse_field(SweepRecord::FIELDS[k], &row[k])?;
        }
        out.push(SweepRecord::from_values(v, row[15].to_string())?);
    }
    Ok(out)
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let rows: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_reader(input)?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let mut v = [None; 15];
        for (k, slot) in v.iter_mut().enumerate() {
            let name = SweepRecord::FIELDS[k];
            *slot = match row.get(name) {
                None | Some(serde_json::Value::Null) => None,
                Some(x) => Some(x.as_f64().ok_or_else(|| Error::param(name, format!("not a number: {x}")))?),
            };
        }
        let status = row.get("status").and_then(|s| s.as_str()).unwrap_or_default().to_string();
        out.push(SweepRecord::from_values(v, status)?);
    }
    Ok(out)
}

pub fn read_records<R: Read>(input: R, format: Format) -> Result<Vec<SweepRecord>> {
    match format {
        Format::Csv => read_csv(input),
        Format::Json => read_json(input),
    }
}
