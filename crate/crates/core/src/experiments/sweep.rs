// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::{fmt_float, Cell, SweepTable, ERROR_COLUMN};
use crate::error::{EngineError, Result};
use crate::observables::{report, SteadyStateReport};
use crate::params::{EngineParams, ParamName};

/// Spacing of grid points along an axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// One swept parameter with an inclusive range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: ParamName,
    pub start: f64,
    pub end: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Axis {
    pub fn linear(param: ParamName, start: f64, end: f64, points: usize) -> Self {
        Axis { param, start, end, points, scale: Scale::Linear }
    }

    pub fn log(param: ParamName, start: f64, end: f64, points: usize) -> Self {
        Axis { param, start, end, points, scale: Scale::Log }
    }

    fn check(&self) -> Result<()> {
        if self.points < 2 {
            return Err(EngineError::Spec(format!(
                "axis `{}` needs at least 2 points, got {}",
                self.param.as_str(),
                self.points
            )));
        }
        if !self.start.is_finite() || !self.end.is_finite() {
            return Err(EngineError::Spec(format!("axis `{}` has a non-finite bound", self.param.as_str())));
        }
        if self.scale == Scale::Log && !(self.start > 0.0 && self.end > 0.0) {
            return Err(EngineError::Spec(format!("log axis `{}` needs positive bounds", self.param.as_str())));
        }
        Ok(())
    }

    /// Grid values, with both end points hit exactly.
    pub fn values(&self) -> Vec<f64> {
        grid(self.start, self.end, self.points, self.scale)
    }
}

pub(crate) fn grid(start: f64, end: f64, points: usize, scale: Scale) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == 0 {
                return start;
            }
            if i == points - 1 {
                return end;
            }
            let t = i as f64 / last;
            match scale {
                Scale::Linear => start + (end - start) * t,
                Scale::Log => (start.ln() + (end.ln() - start.ln()) * t).exp(),
            }
        })
        .collect()
}

/// Quantities a sweep can tabulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Current,
    Negativity,
    WitnessRatio,
    Coherence,
    CriticalCurrent,
}

impl Observable {
    pub const ALL: [Observable; 5] = [
        Observable::Current,
        Observable::Negativity,
        Observable::WitnessRatio,
        Observable::Coherence,
        Observable::CriticalCurrent,
    ];

    fn columns(self) -> &'static [&'static str] {
        match self {
            Observable::Current => &["current"],
            Observable::Negativity => &["negativity"],
            Observable::WitnessRatio => &["witness_ratio"],
            Observable::Coherence => &["coherence_re", "coherence_im"],
            Observable::CriticalCurrent => &["critical_current"],
        }
    }

    fn cells(self, rep: &SteadyStateReport) -> Vec<Cell> {
        match self {
            Observable::Current => vec![rep.current.into()],
            Observable::Negativity => vec![rep.negativity.into()],
            Observable::WitnessRatio => vec![rep.witness_ratio.into()],
            Observable::Coherence => vec![rep.coherence.re.into(), rep.coherence.im.into()],
            Observable::CriticalCurrent => vec![rep.critical_current.into()],
        }
    }
}

/// A one- or two-dimensional parameter scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub base: EngineParams,
    pub axis1: Axis,
    #[serde(default)]
    pub axis2: Option<Axis>,
    pub observables: Vec<Observable>,
}

impl SweepSpec {
    fn axes(&self) -> Vec<Axis> {
        std::iter::once(self.axis1).chain(self.axis2).collect()
    }

    /// Parameter sets in output order (axis 1 outer, axis 2 inner).
    pub fn grid_points(&self) -> Vec<EngineParams> {
        let first = self.axis1.values();
        let second = self.axis2.map(|a| a.values());
        let mut out = Vec::new();
        for x in first {
            let p = self.base.with(self.axis1.param, x);
            match (&second, self.axis2) {
                (Some(ys), Some(ax)) => out.extend(ys.iter().map(|y| p.with(ax.param, *y))),
                _ => out.push(p),
            }
        }
        out
    }

    /// Checks the spec and validates every grid point up front.
    pub fn validate(&self) -> Result<()> {
        for ax in self.axes() {
            ax.check()?;
        }
        if let Some(ax2) = self.axis2 {
            if ax2.param == self.axis1.param {
                return Err(EngineError::Spec("both axes sweep the same parameter".into()));
            }
        }
        if self.observables.is_empty() {
            return Err(EngineError::Spec("no observables requested".into()));
        }
        for p in self.grid_points() {
            p.validate().map_err(|e| EngineError::Spec(format!("grid point outside the parameter domain: {e}")))?;
        }
        Ok(())
    }
}

/// Evaluates [`report`] on every grid point, in parallel, with deterministic row order.
pub fn sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let axes = spec.axes();
    let mut columns: Vec<String> = axes.iter().map(|a| a.param.as_str().to_owned()).collect();
    for obs in &spec.observables {
        columns.extend(obs.columns().iter().map(|c| c.to_string()));
    }
    columns.push(ERROR_COLUMN.into());
    let mut table = SweepTable::new(columns);
    table.push_meta("library", concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")));
    table.push_params("base.", &spec.base);
    for (i, ax) in axes.iter().enumerate() {
        table.push_meta(
            format!("axis{}", i + 1),
            format!(
                "{}:{}:{}:{}:{}",
                ax.param.as_str(),
                fmt_float(ax.start),
                fmt_float(ax.end),
                ax.points,
                if ax.scale == Scale::Log { "log" } else { "linear" }
            ),
        );
    }

    let width: usize = spec.observables.iter().map(|o| o.columns().len()).sum();
    let rows: Vec<Vec<Cell>> = spec
        .grid_points()
        .into_par_iter()
        .map(|p| {
            let mut row: Vec<Cell> = axes.iter().map(|a| Cell::from(p.get(a.param))).collect();
            match report(&p) {
                Ok(rep) => {
                    for obs in &spec.observables {
                        row.extend(obs.cells(&rep));
                    }
                    row.push(Cell::Empty);
                }
                Err(e) => {
                    row.extend(std::iter::repeat_n(Cell::Empty, width));
                    row.push(Cell::Text(e.to_string()));
                }
            }
            row
        })
        .collect();
    for row in rows {
        table.push_row(row);
    }
    Ok(table)
}
