//! Result tables and their CSV/JSON emission.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Resolved configuration; enough to rerun the table.
    pub config: Value,
    /// Extra facts about the run (not needed to reproduce it).
    pub notes: Map<String, Value>,
}

/// Rounds to 9 significant digits; both writers emit the rounded value.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

impl Table {
    pub fn new(columns: &[&str], config: Value) -> Self {
        Table { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new(), config, notes: Map::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "ragged table row");
        self.rows.push(row.into_iter().map(round_sig).collect());
    }

    pub fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.notes.insert(key.to_string(), value.into());
    }

    fn metadata(&self, wall_clock: f64) -> Value {
        json!({
            "program": "cellsir",
            "version": env!("CARGO_PKG_VERSION"),
            "config": self.config,
            "notes": self.notes,
            "wall_clock_s": wall_clock,
        })
    }

    pub fn write_csv<W: Write>(&self, w: &mut W, wall_clock: f64) -> std::io::Result<()> {
        writeln!(w, "# cellsir {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# config: {}", self.config)?;
        for (k, v) in &self.notes {
            writeln!(w, "# {k}: {v}")?;
        }
        writeln!(w, "# wall_clock_s: {wall_clock:.3}")?;
        writeln!(w, "{}", self.columns.join(","))?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: &mut W, wall_clock: f64) -> std::io::Result<()> {
        let columns: Vec<Value> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, name)| json!({ "name": name, "values": self.rows.iter().map(|r| r[j]).collect::<Vec<_>>() }))
            .collect();
        let doc = json!({ "metadata": self.metadata(wall_clock), "columns": columns });
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    }

    pub fn write<W: Write>(&self, w: &mut W, format: Format, wall_clock: f64) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w, wall_clock),
            Format::Json => self.write_json(w, wall_clock),
        }
    }
}

/// Extracts the configuration embedded in a previously written table.
pub fn read_config(text: &str) -> Result<Value, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: Value = serde_json::from_str(trimmed).map_err(|e| format!("not a result document: {e}"))?;
        return doc
            .get("metadata")
            .and_then(|m| m.get("config"))
            .cloned()
            .ok_or_else(|| "JSON document has no metadata.config".to_string());
    }
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# config: ") {
            return serde_json::from_str(rest).map_err(|e| format!("bad config line: {e}"));
        }
    }
    Err("no '# config:' line found".into())
}

#[cfg(test)]
/// Parses the numeric body of a CSV table written by [`Table::write_csv`].
pub fn read_csv_rows(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().map(|h| h.split(',').map(str::to_string).collect()).unwrap_or_default();
    let rows = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|c| c.parse().unwrap_or(f64::NAN)).collect())
        .collect();
    (header, rows)
}
