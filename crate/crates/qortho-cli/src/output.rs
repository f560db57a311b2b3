//! Tabular reports and their CSV / JSON serializations.
//!
//! A [`Report`] is a list of named columns and rows of [`Cell`]s, plus the
//! run configuration and free-form diagnostics. CSV carries numbers with
//! nine significant digits; JSON carries them at full (round-trip)
//! precision. Both serializations are deterministic: configuration and
//! diagnostics are ordered maps and rows keep their construction order.

use std::collections::BTreeMap;

use serde_json::{Map, Number, Value};

use crate::svg::Figure;

/// Significant digits of numbers written to CSV.
pub const CSV_DIGITS: usize = 9;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    /// Text form used in CSV.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Num(v) => format_sig(*v, CSV_DIGITS),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => csv_escape(s),
            Cell::Empty => String::new(),
        }
    }

    /// JSON form (non-finite numbers become `null`).
    pub fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => num_value(*v),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }

    /// The number held by the cell, if any.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

/// JSON number, or `null` when not finite.
pub fn num_value(v: f64) -> Value {
    Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// Output of one command.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub config: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub diagnostics: BTreeMap<String, Value>,
    /// Plot data for `--format svg`, when the command has any.
    pub figure: Option<Figure>,
    /// Set when a verification threshold was breached.
    pub failed: bool,
}

impl Report {
    /// Empty report with the given column names.
    pub fn new(columns: &[&str]) -> Self {
        Report { columns: columns.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    /// Records a configuration entry.
    pub fn config(&mut self, key: &str, value: impl Into<Value>) {
        self.config.insert(key.to_string(), value.into());
    }

    /// Records a diagnostic entry.
    pub fn diag(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.to_string(), value.into());
    }

    /// Appends a row; its length must match the columns.
    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// CSV: header row, `,` separator, `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::to_csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    /// JSON object with `config`, `rows` (one object per row) and `diagnostics`.
    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("config".into(), Value::Object(self.config.clone().into_iter().collect()));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("diagnostics".into(), Value::Object(self.diagnostics.clone().into_iter().collect()));
        Value::Object(top)
    }

    /// Pretty-printed JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("values are serializable");
        s.push('\n');
        s
    }
}

/// Formats `v` with `digits` significant digits.
///
/// Numbers with decimal exponent in `[-5, 15)` are written positionally,
/// others in scientific notation; trailing zeros of the fraction are
/// dropped.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_fraction(format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim_fraction(mantissa.to_string()), exp)
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig(0.0949794123456, 9), "0.0949794123");
        assert_eq!(format_sig(17.82368412345, 9), "17.8236841");
        assert_eq!(format_sig(0.5, 9), "0.5");
        assert_eq!(format_sig(-2.0, 9), "-2");
        assert_eq!(format_sig(9.9999999999, 9), "10");
        assert_eq!(format_sig(1.23456789012e-9, 9), "1.23456789e-9");
        assert_eq!(format_sig(6.02214076e23, 9), "6.02214076e23");
        assert_eq!(format_sig(f64::NAN, 9), "NaN");
    }

    #[test]
    fn csv_and_json_layouts() {
        let mut r = Report::new(&["z", "value", "note"]);
        r.config("family", "gen-q-laguerre");
        r.push(vec![Cell::Num(0.5), Cell::Num(1.0 / 3.0), Cell::Text("a,b".into())]);
        r.push(vec![Cell::Num(1.0), Cell::Empty, Cell::Empty]);
        assert_eq!(r.to_csv(), "z,value,note\n0.5,0.333333333,\"a,b\"\n1,,\n");
        let v = r.to_json_value();
        assert_eq!(v["config"]["family"], "gen-q-laguerre");
        assert_eq!(v["rows"][0]["value"].as_f64().unwrap(), 1.0 / 3.0);
        assert!(v["rows"][1]["value"].is_null());
        assert!(v["diagnostics"].as_object().unwrap().is_empty());
    }

    #[test]
    fn csv_numbers_agree_with_json_numbers() {
        for &v in &[0.1, 1.0 / 7.0, -123456.789, 3.3e-12, 2.5e20] {
            let csv: f64 = format_sig(v, CSV_DIGITS).parse().unwrap();
            assert!((csv - v).abs() <= 5e-9 * v.abs(), "{v} vs {csv}");
        }
    }
}
