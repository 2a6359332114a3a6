//! Result records and their CSV, JSON and SVG serializations.

use serde::Serialize;
use serde_json::{Map, Value};

use sle_core::estimators::{Estimate, ExponentFit};
use sle_core::loewner::Trace;

use crate::config::{Command, ExperimentConfig, Format};
use crate::svg::{render_trace_svg, SvgStyle};
use crate::CliError;

pub type Record = Map<String, Value>;

#[derive(Clone, Debug, Serialize)]
pub struct Output {
    pub command: Command,
    /// The resolved configuration, defaults included.
    pub params: ExperimentConfig,
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<ExponentFit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_pass: Option<bool>,
    #[serde(skip)]
    pub trace: Option<Trace>,
}

/// Builds a record with keys in insertion order.
#[derive(Default)]
pub struct RecordBuilder(Record);

impl RecordBuilder {
    pub fn new() -> Self {
        RecordBuilder(Map::new())
    }

    pub fn num(mut self, key: &str, v: f64) -> Self {
        self.0.insert(key.into(), Value::from(v));
        self
    }

    pub fn int(mut self, key: &str, v: usize) -> Self {
        self.0.insert(key.into(), Value::from(v));
        self
    }

    pub fn text(mut self, key: &str, v: impl Into<String>) -> Self {
        self.0.insert(key.into(), Value::from(v.into()));
        self
    }

    pub fn flag(mut self, key: &str, v: bool) -> Self {
        self.0.insert(key.into(), Value::from(v));
        self
    }

    /// `mean`, `stderr`, `n`, `censored`.
    pub fn estimate(self, e: &Estimate) -> Self {
        self.num("mean", e.mean)
            .num("stderr", e.stderr)
            .int("n", e.n)
            .int("censored", e.censored)
    }

    pub fn build(self) -> Record {
        self.0
    }
}

impl Output {
    pub fn render(&self) -> Result<String, CliError> {
        match self.params.format.unwrap_or(Format::Json) {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
            Format::Svg => match &self.trace {
                Some(t) => Ok(render_trace_svg(t, &SvgStyle::default())),
                None => Err(CliError::Domain(format!("{:?} has no SVG output", self.command))),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output serializes");
        s.push('\n');
        s
    }

    /// Comment lines carrying the command, the parameter echo and the fit,
    /// then a header row and one row per record.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut s = String::new();
        s.push_str(&format!("# command: {}\n", serde_json::to_string(&self.command).unwrap().trim_matches('"')));
        s.push_str(&format!("# params: {}\n", serde_json::to_string(&self.params).unwrap()));
        if let Some(f) = &self.fit {
            s.push_str(&format!(
                "# fit: slope={} slope_stderr={} intercept={}\n",
                f.slope, f.slope_stderr, f.intercept
            ));
        }
        if let Some(p) = self.all_pass {
            s.push_str(&format!("# all_pass: {p}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.records.first() {
            w.write_record(first.keys()).map_err(csv_err)?;
            for r in &self.records {
                w.write_record(r.values().map(cell)).map_err(csv_err)?;
            }
        }
        let body = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        s.push_str(&String::from_utf8(body).expect("csv is utf-8"));
        Ok(s)
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "NaN".into(),
        other => other.to_string(),
    }
}
