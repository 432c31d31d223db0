//! Experiment reports and their CSV / JSON renderings.

use serde_json::{Map, Number, Value as Json};

/// Tolerance for probability fields slightly outside `[0, 1]` by rounding.
pub const PROBABILITY_TOL: f64 = 1e-9;

/// Allowed distance of a reported norm from one.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnKind {
    /// Must lie in `[0, 1]`.
    Probability,
    /// Must lie within [`NORM_TOL`] of one.
    Norm,
    Plain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Column {
    pub name: &'static str,
    pub kind: ColumnKind,
}

pub const fn prob(name: &'static str) -> Column {
    Column {
        name,
        kind: ColumnKind::Probability,
    }
}

pub const fn norm(name: &'static str) -> Column {
    Column {
        name,
        kind: ColumnKind::Norm,
    }
}

pub const fn plain(name: &'static str) -> Column {
    Column {
        name,
        kind: ColumnKind::Plain,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`, with a
/// signed exponent (`1.5000000000000000e+0`). Negative zero prints as zero.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.16e}", x + 0.0);
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

impl std::fmt::Display for Value {
    /// The CSV cell text.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.csv())
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(x) => format_float(*x),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(i) => Json::from(*i),
            Value::Float(x) if x.is_finite() => {
                Json::Number(format_float(*x).parse::<Number>().expect("formatted float parses"))
            }
            Value::Float(_) => Json::Null,
            Value::Bool(b) => Json::Bool(*b),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

/// Records of one experiment run plus summary values. Wall-clock time is
/// deliberately absent so that identical configurations give identical bytes.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub config: Vec<(String, String)>,
    pub columns: Vec<Column>,
    pub records: Vec<Vec<Value>>,
    pub summary: Vec<(String, Value)>,
    /// Invariant violations found while running; non-empty means failure.
    pub violations: Vec<String>,
}

impl ExperimentReport {
    pub fn new(config: Vec<(String, String)>, columns: Vec<Column>) -> Self {
        Self {
            config,
            columns,
            records: Vec::new(),
            summary: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, record: Vec<Value>) {
        assert_eq!(record.len(), self.columns.len(), "record width");
        self.records.push(record);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn violation(&mut self, message: String) {
        self.violations.push(message);
    }

    /// Column values as floats (non-float entries are skipped).
    pub fn column(&self, name: &str) -> Vec<f64> {
        let Some(i) = self.columns.iter().position(|c| c.name == name) else {
            return Vec::new();
        };
        self.records
            .iter()
            .filter_map(|r| match r[i] {
                Value::Float(x) => Some(x),
                Value::Int(x) => Some(x as f64),
                _ => None,
            })
            .collect()
    }

    pub fn summary_value(&self, key: &str) -> Option<&Value> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// Checks probability and norm columns, recording every violation.
    pub fn check_fields(&mut self) {
        let mut found = Vec::new();
        for (row, record) in self.records.iter().enumerate() {
            for (col, value) in self.columns.iter().zip(record) {
                let Value::Float(x) = *value else { continue };
                let bad = match col.kind {
                    ColumnKind::Probability => !(-PROBABILITY_TOL..=1.0 + PROBABILITY_TOL).contains(&x),
                    ColumnKind::Norm => x.is_nan() || (x - 1.0).abs() > NORM_TOL,
                    ColumnKind::Plain => false,
                };
                if bad {
                    found.push(format!("record {row}: {} = {} out of range", col.name, format_float(x)));
                }
            }
        }
        self.violations.extend(found);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for record in &self.records {
            let cells: Vec<String> = record.iter().map(Value::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let config: Map<String, Json> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Json::String(v.clone())))
            .collect();
        let records: Vec<Json> = self
            .records
            .iter()
            .map(|r| {
                Json::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.name.to_string(), v.json()))
                        .collect(),
                )
            })
            .collect();
        let mut summary: Map<String, Json> = self.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        summary.insert(
            "violations".to_string(),
            Json::Array(self.violations.iter().cloned().map(Json::String).collect()),
        );
        let mut top = Map::new();
        top.insert("config".to_string(), Json::Object(config));
        top.insert("records".to_string(), Json::Array(records));
        top.insert("summary".to_string(), Json::Object(summary));
        let mut s = serde_json::to_string_pretty(&Json::Object(top)).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentReport {
        let mut r = ExperimentReport::new(
            vec![("experiment".into(), "sameside".into())],
            vec![plain("t"), prob("p_sameside"), norm("norm")],
        );
        r.push(vec![0usize.into(), 1.0.into(), 1.0.into()]);
        r.push(vec![1usize.into(), (1.0 / 3.0).into(), (1.0 - 1e-12).into()]);
        r.summarize("asymptote", 0.625);
        r
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,p_sameside,norm");
        assert_eq!(lines[1], "0,1.0000000000000000e+0,1.0000000000000000e+0");
        assert_eq!(lines[2], "1,3.3333333333333331e-1,9.9999999999900002e-1");
        assert_eq!(format_float(-0.0), "0.0000000000000000e+0");
        assert_eq!(format_float(1234.5), "1.2345000000000000e+3");
    }

    #[test]
    fn json_and_csv_share_numbers() {
        let r = sample();
        let json: Json = serde_json::from_str(&r.to_json()).unwrap();
        let p = &json["records"][1]["p_sameside"];
        assert_eq!(p.to_string(), "3.3333333333333331e-1");
        let back: f64 = p.to_string().parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["config", "records", "summary"]);
        assert_eq!(json["records"][0]["norm"].to_string(), "1.0000000000000000e+0");
    }

    #[test]
    fn field_checks() {
        let mut r = sample();
        r.check_fields();
        assert!(r.violations.is_empty());
        r.push(vec![2usize.into(), 1.5.into(), 0.9.into()]);
        r.check_fields();
        assert_eq!(r.violations.len(), 2);
    }
}
