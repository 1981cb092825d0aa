// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

use serde::Serialize;

use crate::error::{EngineError, Result};
use crate::params::{EngineParams, ParamName};

/// Name of the column that carries per-row failures.
pub const ERROR_COLUMN: &str = "error";

/// One table entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) if x.is_finite() => Some(*x),
            _ => None,
        }
    }

    fn render(&self) -> String {
        match self {
            // 17 significant digits round-trip every f64
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(_) | Cell::Empty => String::new(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Empty
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::from)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// A metadata block, a header row and data rows.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SweepTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        SweepTable { metadata: Vec::new(), columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    /// Records every field of `params` under `prefix`.
    pub fn push_params(&mut self, prefix: &str, params: &EngineParams) {
        for name in ParamName::ALL {
            self.push_meta(format!("{prefix}{}", name.as_str()), fmt_float(params.get(name)));
        }
        self.push_meta(format!("{prefix}regime"), params.regime);
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the header");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// All values of a column; non-numeric cells become `None`.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[idx].as_f64()).collect())
    }

    /// Rows whose text column `key` equals `value`.
    pub fn filter_rows(&self, key: &str, value: &str) -> SweepTable {
        let idx = self.column_index(key);
        let rows = self
            .rows
            .iter()
            .filter(|r| matches!(idx.map(|i| &r[i]), Some(Cell::Text(s)) if s == value))
            .cloned()
            .collect();
        SweepTable { metadata: self.metadata.clone(), columns: self.columns.clone(), rows }
    }

    /// Number of rows that carry an error message.
    pub fn error_count(&self) -> usize {
        match self.column_index(ERROR_COLUMN) {
            Some(i) => self.rows.iter().filter(|r| matches!(&r[i], Cell::Text(s) if !s.is_empty())).count(),
            None => 0,
        }
    }

    /// `#key=value` lines, the header row, then the data rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "#{k}={v}").map_err(io_err)?;
        }
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(csv_err)?;
        }
        w.flush().map_err(io_err)
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| EngineError::Spec(e.to_string()))
    }
}

pub(crate) fn fmt_float(x: f64) -> String {
    Cell::from(x).render()
}

fn io_err(e: std::io::Error) -> EngineError {
    EngineError::Spec(format!("write failed: {e}"))
}

fn csv_err(e: csv::Error) -> EngineError {
    EngineError::Spec(format!("csv write failed: {e}"))
}
