//! Grid files (CSV / JSON) and report rendering (JSON / CSV / table).
//!
//! Rationals are written as `p/q` (or `p`) strings so grids round-trip
//! exactly; floats use the shortest representation that parses back to the
//! same `f64`.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::suites::SuiteResult;
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::ineq::{Component, InequalityReport};
use crate::scalar::{parse_rational, Rational, Real, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    Csv,
    Json,
}

impl GridFormat {
    /// `.json` files are JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => GridFormat::Json,
            _ => GridFormat::Csv,
        }
    }
}

impl FromStr for GridFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(GridFormat::Csv),
            "json" => Ok(GridFormat::Json),
            other => Err(Error::Param(format!("unknown grid format {other:?} (expected csv|json)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    Json,
    Csv,
    #[default]
    Table,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "table" => Ok(ReportFormat::Table),
            other => Err(Error::Param(format!(
                "unknown output format {other:?} (expected json|csv|table)"
            ))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Table => "table",
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line());
    Error::Parse {
        line,
        msg: e.to_string(),
    }
}

/// Parses `t,value` rows with contiguous ascending `t`.
pub fn parse_grid_csv(text: &str) -> Result<GridFunction<Rational>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_err)?.clone();
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
        return Err(Error::Parse {
            line: Some(1),
            msg: format!("expected header `t,value`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut lo = None;
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let parse_err = |msg: String| Error::Parse { line: Some(line), msg };
        if record.len() != 2 {
            return Err(parse_err(format!("expected 2 fields, found {}", record.len())));
        }
        let t: i64 = record[0]
            .parse()
            .map_err(|_| parse_err(format!("t value {:?} is not an integer", &record[0])))?;
        let v = parse_rational(&record[1]).map_err(|e| parse_err(e.to_string()))?;
        match lo {
            None => lo = Some(t),
            Some(lo) => {
                let expected = lo + values.len() as i64;
                if t > expected {
                    return Err(Error::MissingIndex { index: expected, line });
                }
                if t < expected {
                    return Err(parse_err(format!("t={t} is out of order (expected {expected})")));
                }
            }
        }
        values.push(v);
    }
    let lo = lo.ok_or_else(|| Error::parse("grid file has no rows"))?;
    GridFunction::new(lo, values)
}

/// Parses `{"lo": <int>, "values": [...]}`; entries are `"p/q"` / decimal
/// strings or JSON numbers.
pub fn parse_grid_json(text: &str) -> Result<GridFunction<Rational>> {
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: Some(e.line() as u64),
        msg: e.to_string(),
    })?;
    let lo = doc
        .get("lo")
        .and_then(serde_json::Value::as_i64)
        .ok_or_else(|| Error::parse("grid JSON needs an integer `lo`"))?;
    let values = doc
        .get("values")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| Error::parse("grid JSON needs a `values` array"))?;
    let values = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                other => return Err(Error::parse(format!("values[{i}] = {other} is not a number"))),
            };
            parse_rational(&text).map_err(|e| Error::parse(format!("values[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::parse("grid JSON has no values"));
    }
    GridFunction::new(lo, values)
}

pub fn read_grid(path: &Path, format: GridFormat) -> Result<GridFunction<Rational>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match format {
        GridFormat::Csv => parse_grid_csv(&text),
        GridFormat::Json => parse_grid_json(&text),
    }
}

pub fn grid_to_csv<R: Real>(f: &GridFunction<R>) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in f.iter() {
        out.push_str(&format!("{t},{}\n", v.to_scalar()));
    }
    out
}

pub fn grid_to_json<R: Real>(f: &GridFunction<R>) -> String {
    let values: Vec<Scalar> = f.values().iter().map(R::to_scalar).collect();
    let doc = serde_json::json!({ "lo": f.lo(), "values": values });
    serde_json::to_string_pretty(&doc).expect("grid serializes") + "\n"
}

pub fn write_grid<R: Real>(f: &GridFunction<R>, path: &Path, format: GridFormat) -> Result<()> {
    let text = match format {
        GridFormat::Csv => grid_to_csv(f),
        GridFormat::Json => grid_to_json(f),
    };
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Flat `key, value` view used by the CSV and table renderings.
pub trait Rows {
    fn rows(&self) -> Vec<(String, String)>;
}

fn join_scalars(values: &[Scalar]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
}

impl Rows for InequalityReport {
    fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            ("name".to_string(), self.name.clone()),
            ("lhs".to_string(), self.lhs.to_string()),
            ("rhs".to_string(), self.rhs.to_string()),
            ("slack".to_string(), self.slack.to_string()),
            ("holds".to_string(), self.holds.to_string()),
        ];
        for (k, v) in &self.params {
            rows.push((format!("params.{k}"), v.clone()));
        }
        for (k, v) in &self.components {
            let text = match v {
                Component::Number(s) => s.to_string(),
                Component::Array(a) => join_scalars(a),
            };
            rows.push((format!("components.{k}"), text));
        }
        if let Some(e) = &self.exact {
            rows.push(("exact.power".to_string(), e.power.to_string()));
            rows.push(("exact.lhs".to_string(), e.lhs.to_string()));
            rows.push(("exact.rhs".to_string(), e.rhs.to_string()));
            rows.push(("exact.holds".to_string(), e.holds.to_string()));
        }
        rows
    }
}

impl Rows for SuiteResult {
    fn rows(&self) -> Vec<(String, String)> {
        let mut rows = vec![
            ("suite".to_string(), self.suite.clone()),
            ("kind".to_string(), self.kind.clone()),
            ("backend".to_string(), self.backend.to_string()),
            ("trials".to_string(), self.trials.to_string()),
            ("master_seed".to_string(), self.master_seed.to_string()),
            ("version".to_string(), self.version.clone()),
        ];
        for (k, v) in &self.params {
            rows.push((format!("params.{k}"), v.clone()));
        }
        rows.extend([
            ("checks".to_string(), self.checks.to_string()),
            ("failures".to_string(), self.failures.to_string()),
            ("worst_slack".to_string(), self.worst_slack.to_string()),
            (
                "failing_seeds".to_string(),
                self.failing_seeds.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
            ),
        ]);
        for (i, m) in self.messages.iter().enumerate() {
            rows.push((format!("message.{i}"), m.clone()));
        }
        rows
    }
}

impl<T: Rows> Rows for Vec<T> {
    fn rows(&self) -> Vec<(String, String)> {
        self.iter()
            .enumerate()
            .flat_map(|(i, item)| item.rows().into_iter().map(move |(k, v)| (format!("{i}.{k}"), v)))
            .collect()
    }
}

/// Insertion-ordered key/value record for simple command outputs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(Vec<(String, serde_json::Value)>);

impl Serialize for Record {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).expect("record values serialize");
        self.0.push((key.to_string(), v));
        self
    }
}

impl Rows for Record {
    fn rows(&self) -> Vec<(String, String)> {
        self.0
            .iter()
            .map(|(k, v)| {
                let text = match v {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                (k.clone(), text)
            })
            .collect()
    }
}

pub fn render<T: Serialize + Rows>(item: &T, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(item).map_err(|e| Error::Io(e.to_string()))? + "\n"),
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).map_err(csv_err)?;
            for (k, v) in item.rows() {
                w.write_record([k, v]).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Table => {
            let rows = item.rows();
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            Ok(rows
                .iter()
                .map(|(k, v)| format!("{k:<width$}  {v}\n"))
                .collect())
        }
    }
}

/// Renders records sharing one key set as columns: a JSON array, a CSV table
/// with a header row, or an aligned text table.
pub fn render_records(records: &[Record], format: ReportFormat) -> Result<String> {
    let header: Vec<String> = records.first().map_or(Vec::new(), |r| r.rows().into_iter().map(|(k, _)| k).collect());
    let body: Vec<Vec<String>> = records
        .iter()
        .map(|r| r.rows().into_iter().map(|(_, v)| v).collect())
        .collect();
    match format {
        ReportFormat::Json => {
            Ok(serde_json::to_string_pretty(records).map_err(|e| Error::Io(e.to_string()))? + "\n")
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(csv_err)?;
            for row in &body {
                w.write_record(row).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        ReportFormat::Table => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    body.iter()
                        .filter_map(|r| r.get(i))
                        .chain(std::iter::once(&header[i]))
                        .map(|c| c.chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                padded.join("  ") + "\n"
            };
            Ok(std::iter::once(line(&header)).chain(body.iter().map(|r| line(r))).collect())
        }
    }
}

/// Renders `item` to `path`, or to stdout when `path` is `None`.
pub fn write_report<T: Serialize + Rows>(item: &T, path: Option<&Path>, format: ReportFormat) -> Result<()> {
    emit(&render(item, format)?, path)
}

pub(crate) fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
