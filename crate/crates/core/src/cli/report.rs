use crate::cli::config::{OutputFormat, RunConfig};
use crate::moebius::C64;
use serde::Serialize;
use serde_json::{json, Value};
use std::io::{self, Write};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ResultEntry {
    pub name: String,
    pub value: Value,
    pub expected: Value,
    pub tolerance: Option<f64>,
    /// None for informational entries, which do not affect the exit code
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub results: Vec<ResultEntry>,
    pub pass: bool,
}

pub fn cval(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn cvals(z: &[C64]) -> Value {
    Value::Array(z.iter().map(|&z| cval(z)).collect())
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            config: config.clone(),
            results: Vec::new(),
            pass: true,
        }
    }

    pub fn info(&mut self, name: impl Into<String>, value: Value) {
        self.results.push(ResultEntry {
            name: name.into(),
            value,
            expected: Value::Null,
            tolerance: None,
            pass: None,
        });
    }

    pub fn check(&mut self, name: impl Into<String>, value: Value, expected: Value, tolerance: f64, pass: bool) {
        self.pass &= pass;
        self.results.push(ResultEntry {
            name: name.into(),
            value,
            expected,
            tolerance: Some(tolerance),
            pass: Some(pass),
        });
    }

    /// A scalar error judged as `error < tolerance`.
    pub fn bound(&mut self, name: impl Into<String>, error: f64, tolerance: f64) {
        self.check(name, json!(error), Value::Null, tolerance, error < tolerance);
    }

    pub fn to_json(&self) -> String {
        // Value keeps object keys sorted
        let v = serde_json::to_value(self).expect("report is serializable");
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloat);
        v.serialize(&mut ser).expect("in-memory write");
        out.push(b'\n');
        String::from_utf8(out).expect("JSON is UTF-8")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["command", "name", "value", "expected", "tolerance", "pass"])
            .expect("in-memory write");
        for r in &self.results {
            let tol = r.tolerance.map(|t| format!("{t:.16e}")).unwrap_or_default();
            let pass = r.pass.map(|p| p.to_string()).unwrap_or_default();
            w.write_record([
                self.command.as_str(),
                &r.name,
                &compact(&r.value),
                &compact(&r.expected),
                &tol,
                &pass,
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("CSV is UTF-8")
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Csv => self.to_csv(),
        }
    }
}

fn compact(v: &Value) -> String {
    if v.is_null() {
        return String::new();
    }
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloat);
    v.serialize(&mut ser).expect("in-memory write");
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// Writes every float with 17 significant digits.
struct FixedFloat;

impl serde_json::ser::Formatter for FixedFloat {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// (x, y) point lists for plotting, one series label per row.
pub struct PlotData {
    rows: Vec<(String, f64, f64)>,
}

impl PlotData {
    pub fn new() -> Self {
        PlotData { rows: Vec::new() }
    }

    pub fn push(&mut self, series: impl Into<String>, z: C64) {
        self.rows.push((series.into(), z.re, z.im));
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["series", "re", "im"]).expect("in-memory write");
        for (s, x, y) in &self.rows {
            w.write_record([s.clone(), format!("{x:.16e}"), format!("{y:.16e}")])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("CSV is UTF-8")
    }
}

impl Default for PlotData {
    fn default() -> Self {
        Self::new()
    }
}
