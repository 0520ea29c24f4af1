//! CSV rendering of sweep records.

use std::io::Write;

use kerr_optomech_core::{Status, SweepRecord, SystemParams};
use serde_json::{Map, Value};

use crate::recipes::Recipe;

/// Field names of [`SweepRecord`] in serialization order.
pub fn record_columns() -> Vec<String> {
    let rec = kerr_optomech_core::evaluate_point(&SystemParams::baseline());
    fields(&rec).into_iter().map(|(k, _)| k).collect()
}

fn fields(rec: &SweepRecord) -> Map<String, Value> {
    match serde_json::to_value(rec).expect("records serialize") {
        Value::Object(map) => map,
        _ => unreachable!("records serialize to objects"),
    }
}

/// 17 significant digits, so every value round-trips.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::Number(n)) => n.as_f64().map(format_float).unwrap_or_default(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
    columns: Vec<String>,
    blank_unless_ok: Vec<String>,
}

impl<W: Write> RecordWriter<W> {
    /// Every [`SweepRecord`] field.
    pub fn full(sink: W) -> csv::Result<Self> {
        Self::with_columns(sink, record_columns(), Vec::new())
    }

    /// The columns of a figure recipe.
    pub fn recipe(sink: W, recipe: &Recipe) -> csv::Result<Self> {
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        Self::with_columns(sink, owned(&recipe.columns), owned(&recipe.values))
    }

    fn with_columns(sink: W, columns: Vec<String>, blank_unless_ok: Vec<String>) -> csv::Result<Self> {
        let mut inner = csv::Writer::from_writer(sink);
        inner.write_record(&columns)?;
        Ok(RecordWriter { inner, columns, blank_unless_ok })
    }

    /// Writes one row. `curve` fills the `curve` column when present.
    pub fn write(&mut self, rec: &SweepRecord, curve: Option<&str>) -> csv::Result<()> {
        let map = fields(rec);
        let ok = rec.status == Status::Ok;
        let row: Vec<String> = self
            .columns
            .iter()
            .map(|c| {
                if c == "curve" {
                    curve.unwrap_or_default().to_string()
                } else if !ok && self.blank_unless_ok.contains(c) {
                    String::new()
                } else {
                    cell(map.get(c))
                }
            })
            .collect();
        self.inner.write_record(&row)
    }

    pub fn finish(mut self) -> std::io::Result<W> {
        self.inner.flush()?;
        self.inner.into_inner().map_err(|e| e.into_error())
    }
}
