// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Datasets behind the standard figures, with the caption parameters as defaults.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::search::{
    bisect, find_kappa_max, optimize_negativity, thermal_negativity_max, FreeParam, KappaObjective,
};
use super::sweep::{grid, sweep, Axis, Observable, Scale, SweepSpec};
use super::table::{fmt_float, Cell, SweepTable, ERROR_COLUMN};
use crate::analytic::thermal_negativity;
use crate::error::{EngineError, Result};
use crate::observables::report;
use crate::params::{EngineParams, ParamName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [FigureId::Fig2, FigureId::Fig3, FigureId::Fig4, FigureId::Fig5, FigureId::Fig6];
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for FigureId {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let digits = lower.strip_prefix("fig").unwrap_or(&lower);
        match digits {
            "2" => Ok(FigureId::Fig2),
            "3" => Ok(FigureId::Fig3),
            "4" => Ok(FigureId::Fig4),
            "5" => Ok(FigureId::Fig5),
            "6" => Ok(FigureId::Fig6),
            _ => Err(EngineError::Spec(format!("unknown figure `{s}` (expected Fig2 to Fig6)"))),
        }
    }
}

/// Caller-supplied changes to a figure's defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FigureOverrides {
    /// Parameter values that replace the caption defaults. Overriding the
    /// parameter that labels a figure's curves replaces the whole family.
    #[serde(default)]
    pub params: Vec<(ParamName, f64)>,
    /// Grid points along each swept axis.
    #[serde(default)]
    pub points: Option<usize>,
}

impl FigureOverrides {
    pub fn with_param(mut self, name: ParamName, value: f64) -> Self {
        self.params.retain(|(n, _)| *n != name);
        self.params.push((name, value));
        self
    }

    pub fn with_points(mut self, points: usize) -> Self {
        self.points = Some(points);
        self
    }

    fn get(&self, name: ParamName) -> Option<f64> {
        self.params.iter().rev().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    fn apply(&self, mut base: EngineParams) -> EngineParams {
        for (name, value) in &self.params {
            base.set(*name, *value);
        }
        base
    }

    /// The curve family, or the single overridden value.
    fn family(&self, name: ParamName, defaults: &[f64]) -> Vec<f64> {
        self.get(name).map_or_else(|| defaults.to_vec(), |v| vec![v])
    }

    fn points(&self, default: usize) -> usize {
        self.points.unwrap_or(default)
    }
}

/// Caption parameters shared by the weak-coupling figures.
pub fn weak_coupling_base() -> EngineParams {
    EngineParams::local(1.0, 1.6e-3, 1e-3, 1.1e-2, 0.5, 0.1)
}

/// Caption parameters of the strong-coupling figure (γ_c is optimised).
pub fn strong_coupling_base(g: f64) -> EngineParams {
    EngineParams::global(1.0, g, 0.01, 0.01, 0.5, 0.01)
}

pub const FIG2_TEMPS: [f64; 3] = [0.3, 0.5, 0.7];
pub const FIG2_DELTA_MAX: f64 = 0.1;
pub const FIG3A_TEMP_H: f64 = 0.3;
pub const FIG3A_DELTA_MAX: f64 = 0.08;
pub const FIG3B_DELTA: f64 = 0.01;
pub const FIG3B_TEMP_RANGE: (f64, f64) = (0.1, 0.5);
pub const FIG4_DELTA: f64 = 0.01;
pub const FIG4_KAPPA_MAX: f64 = 0.15;
pub const FIG5_TEMP_H: f64 = 0.7;
pub const FIG5_DELTA_MAX: f64 = 0.05;
pub const FIG5_KAPPA_MAX: f64 = 0.2;
pub const FIG6A_COUPLINGS: [f64; 3] = [0.3, 0.5, 0.8];
pub const FIG6A_TEMP_RANGE: (f64, f64) = (0.02, 2.0);
pub const FIG6B_GAMMA_C: [f64; 3] = [0.01, 0.005, 0.001];
pub const FIG6B_G_RANGE: (f64, f64) = (0.01, 0.95);
/// Upper end of the hot-bath temperature search; the lower end is T_c (excluded).
pub const FIG6_TEMP_H_MAX: f64 = 5.0;
pub const FIG6_GAMMA_C_RANGE: (f64, f64) = (0.001, 0.1);
/// Search range for γ_c and g of the weak-coupling comparison curve.
pub const FIG6_LOCAL_RANGE: (f64, f64) = (1e-4, 0.1);

/// Produces the dataset behind a figure.
pub fn emit_figure(id: FigureId, overrides: &FigureOverrides) -> Result<SweepTable> {
    if let Some(p) = overrides.points {
        if p < 2 {
            return Err(EngineError::Spec(format!("figures need at least 2 points per axis, got {p}")));
        }
    }
    let mut table = match id {
        FigureId::Fig2 => fig2(overrides),
        FigureId::Fig3 => fig3(overrides),
        FigureId::Fig4 => fig4(overrides),
        FigureId::Fig5 => fig5(overrides),
        FigureId::Fig6 => fig6(overrides),
    }?;
    let mut head = SweepTable::new(Vec::<String>::new());
    head.push_meta("figure", id);
    head.push_meta("library", concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")));
    table.metadata.retain(|(k, _)| k != "library");
    head.metadata.append(&mut table.metadata);
    table.metadata = head.metadata;
    Ok(table)
}

fn report_row(params: &EngineParams, prefix: Vec<Cell>, fields: &[Observable]) -> Vec<Cell> {
    let mut row = prefix;
    match report(params) {
        Ok(rep) => {
            for f in fields {
                row.push(match f {
                    Observable::Current => rep.current.into(),
                    Observable::Negativity => rep.negativity.into(),
                    Observable::WitnessRatio => rep.witness_ratio.into(),
                    Observable::CriticalCurrent => rep.critical_current.into(),
                    Observable::Coherence => rep.coherence.im.into(),
                });
            }
            row.push(Cell::Empty);
        }
        Err(e) => {
            row.extend(std::iter::repeat_n(Cell::Empty, fields.len()));
            row.push(Cell::Text(e.to_string()));
        }
    }
    row
}

fn fig2(o: &FigureOverrides) -> Result<SweepTable> {
    let base = o.apply(weak_coupling_base());
    let temps = o.family(ParamName::TempH, &FIG2_TEMPS);
    let deltas = grid(0.0, FIG2_DELTA_MAX, o.points(101), Scale::Linear);
    let fields = [Observable::Current, Observable::Negativity];
    let mut t = SweepTable::new(["temp_h", "delta", "current", "negativity", ERROR_COLUMN]);
    t.push_params("base.", &base);
    let points: Vec<(f64, f64)> = temps.iter().flat_map(|th| deltas.iter().map(move |d| (*th, *d))).collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|(th, d)| {
            let p = base.with(ParamName::TempH, *th).with(ParamName::Delta, *d);
            report_row(&p, vec![(*th).into(), (*d).into()], &fields)
        })
        .collect();
    rows.into_iter().for_each(|r| t.push_row(r));
    Ok(t)
}

/// Where the steady state stops being entangled along `name`, found twice:
/// from the negativity and from the heat-current witness.
pub fn entanglement_boundary(base: &EngineParams, name: ParamName, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let entangled = |x: f64| -> f64 {
        match report(&base.with(name, x)) {
            Ok(r) if r.negativity > 0.0 => 1.0,
            Ok(_) => -1.0,
            Err(_) => f64::NAN,
        }
    };
    let witness = |x: f64| -> f64 {
        report(&base.with(name, x)).ok().and_then(|r| r.witness_ratio).map_or(f64::NAN, |w| w - 1.0)
    };
    let tol = 1e-13 * hi.abs().max(lo.abs()).max(1.0);
    Ok((bisect(entangled, lo, hi, tol)?, bisect(witness, lo, hi, tol)?))
}

/// First bracket along `xs` where the negativity switches between zero and non-zero.
fn sign_change(base: &EngineParams, name: ParamName, xs: &[f64]) -> Option<(f64, f64)> {
    let ent: Vec<Option<bool>> = xs.iter().map(|x| report(&base.with(name, *x)).ok().map(|r| r.negativity > 0.0)).collect();
    (1..xs.len()).find_map(|i| match (ent[i - 1], ent[i]) {
        (Some(a), Some(b)) if a != b => Some((xs[i - 1], xs[i])),
        _ => None,
    })
}

fn fig3(o: &FigureOverrides) -> Result<SweepTable> {
    let base = o.apply(weak_coupling_base());
    let n = o.points(201);
    let panel_a = base.with(ParamName::TempH, o.get(ParamName::TempH).unwrap_or(FIG3A_TEMP_H));
    let panel_b = base.with(ParamName::Delta, o.get(ParamName::Delta).unwrap_or(FIG3B_DELTA));
    let deltas = grid(0.0, FIG3A_DELTA_MAX, n, Scale::Linear);
    let temps = grid(FIG3B_TEMP_RANGE.0, FIG3B_TEMP_RANGE.1, n, Scale::Linear);

    let mut t = SweepTable::new([
        "panel",
        "temp_h",
        "delta",
        "current",
        "critical_current",
        "witness_ratio",
        "negativity",
        ERROR_COLUMN,
    ]);
    t.push_params("panel_a.", &panel_a);
    t.push_params("panel_b.", &panel_b);
    for (label, p, name, xs) in
        [("a", &panel_a, ParamName::Delta, &deltas), ("b", &panel_b, ParamName::TempH, &temps)]
    {
        let key = format!("panel_{label}.boundary_{}", name.as_str());
        match sign_change(p, name, xs).map(|(lo, hi)| entanglement_boundary(p, name, lo, hi)) {
            Some(Ok((neg, wit))) => {
                t.push_meta(format!("{key}.negativity"), fmt_float(neg));
                t.push_meta(format!("{key}.witness"), fmt_float(wit));
            }
            _ => t.push_meta(key, "none"),
        }
    }

    let fields = [Observable::Current, Observable::CriticalCurrent, Observable::WitnessRatio, Observable::Negativity];
    let mut points: Vec<(&str, EngineParams)> = deltas.iter().map(|d| ("a", panel_a.with(ParamName::Delta, *d))).collect();
    points.extend(temps.iter().map(|th| ("b", panel_b.with(ParamName::TempH, *th))));
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|(panel, p)| report_row(p, vec![(*panel).into(), p.temp_h.into(), p.delta.into()], &fields))
        .collect();
    rows.into_iter().for_each(|r| t.push_row(r));
    Ok(t)
}

fn fig4(o: &FigureOverrides) -> Result<SweepTable> {
    let base = o.apply(weak_coupling_base().with(ParamName::Delta, FIG4_DELTA));
    let temps = o.family(ParamName::TempH, &FIG2_TEMPS);
    let kappas = grid(0.0, FIG4_KAPPA_MAX, o.points(76), Scale::Linear);
    let mut t = SweepTable::new(["temp_h", "kappa_h", "current", "negativity", ERROR_COLUMN]);
    t.push_params("base.", &base);
    for th in &temps {
        let resonant = base.with(ParamName::TempH, *th).with(ParamName::Delta, 0.0).with(ParamName::KappaH, 0.0);
        let rep = report(&resonant)?;
        let tag = th.to_string();
        t.push_meta(format!("baseline.current.temp_h={tag}"), fmt_float(rep.current));
        t.push_meta(format!("baseline.negativity.temp_h={tag}"), fmt_float(rep.negativity));
        for (obj, label) in [(KappaObjective::Current, "current"), (KappaObjective::Negativity, "negativity")] {
            let key = format!("kappa_max.{label}.temp_h={tag}");
            match find_kappa_max(&base.with(ParamName::TempH, *th), obj, (0.0, FIG4_KAPPA_MAX)) {
                Ok(k) => t.push_meta(key, format!("{}:{}", fmt_float(k.kappa), fmt_float(k.value))),
                Err(e) => t.push_meta(key, format!("failed: {e}")),
            }
        }
    }
    let fields = [Observable::Current, Observable::Negativity];
    let points: Vec<(f64, f64)> = temps.iter().flat_map(|th| kappas.iter().map(move |k| (*th, *k))).collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|(th, k)| {
            let p = base.with(ParamName::TempH, *th).with(ParamName::KappaH, *k);
            report_row(&p, vec![(*th).into(), (*k).into()], &fields)
        })
        .collect();
    rows.into_iter().for_each(|r| t.push_row(r));
    Ok(t)
}

fn fig5(o: &FigureOverrides) -> Result<SweepTable> {
    let base = o.apply(weak_coupling_base().with(ParamName::TempH, FIG5_TEMP_H));
    let n = o.points(41);
    let spec = SweepSpec {
        base,
        axis1: Axis::linear(ParamName::Delta, 0.0, FIG5_DELTA_MAX, n),
        axis2: Some(Axis::linear(ParamName::KappaH, 0.0, FIG5_KAPPA_MAX, n)),
        observables: vec![Observable::Current, Observable::Negativity],
    };
    sweep(&spec)
}

fn fig6(o: &FigureOverrides) -> Result<SweepTable> {
    let n = o.points(64);
    let mut t = SweepTable::new([
        "panel",
        "series",
        "g",
        "temp_h",
        "gamma_c",
        "negativity",
        "thermal_negativity",
        "thermal_temp",
        ERROR_COLUMN,
    ]);
    let reference = o.apply(strong_coupling_base(FIG6A_COUPLINGS[0]));
    t.push_params("base.", &reference);
    t.push_meta("panel_a.gamma_c_range", format!("({}, {})", FIG6_GAMMA_C_RANGE.0, FIG6_GAMMA_C_RANGE.1));
    t.push_meta("panel_a.local_search_range", format!("({}, {})", FIG6_LOCAL_RANGE.0, FIG6_LOCAL_RANGE.1));
    t.push_meta("panel_b.temp_h_range", format!("(temp_c, {FIG6_TEMP_H_MAX}]"));

    let temps = grid(FIG6A_TEMP_RANGE.0, FIG6A_TEMP_RANGE.1, n, Scale::Linear);
    let couplings = o.family(ParamName::G, &FIG6A_COUPLINGS);

    // panel (a): γ_c optimised at each T_h
    let mut jobs: Vec<(String, EngineParams, Vec<FreeParam>)> = Vec::new();
    for g in &couplings {
        for th in &temps {
            let p = o.apply(strong_coupling_base(*g)).with(ParamName::G, *g).with(ParamName::TempH, *th);
            let free = vec![FreeParam::open(ParamName::GammaC, FIG6_GAMMA_C_RANGE.0, FIG6_GAMMA_C_RANGE.1)];
            jobs.push((format!("g={g}"), p, free));
        }
    }
    let local_base = EngineParams { gamma_h: 0.001, ..o.apply(weak_coupling_base()) }.with(ParamName::TempC, 0.01);
    for th in &temps {
        let free = vec![
            FreeParam::open(ParamName::GammaC, FIG6_LOCAL_RANGE.0, FIG6_LOCAL_RANGE.1),
            FreeParam::open(ParamName::G, FIG6_LOCAL_RANGE.0, FIG6_LOCAL_RANGE.1),
        ];
        jobs.push(("local".into(), local_base.with(ParamName::TempH, *th), free));
    }

    // panel (b): T_h optimised at each g
    let gs = grid(FIG6B_G_RANGE.0, FIG6B_G_RANGE.1, n, Scale::Linear);
    let gammas = o.family(ParamName::GammaC, &FIG6B_GAMMA_C);
    let mut jobs_b: Vec<(String, EngineParams, Vec<FreeParam>)> = Vec::new();
    for gc in &gammas {
        for g in &gs {
            let p = o.apply(strong_coupling_base(*g)).with(ParamName::G, *g).with(ParamName::GammaC, *gc);
            let free = vec![FreeParam::left_open(ParamName::TempH, p.temp_c, FIG6_TEMP_H_MAX)];
            jobs_b.push((format!("gamma_c={gc}"), p, free));
        }
    }

    let run = |panel: &'static str, thermal_b: bool| {
        move |(series, p, free): &(String, EngineParams, Vec<FreeParam>)| -> Vec<Cell> {
            let mut row: Vec<Cell> = vec![panel.into(), series.as_str().into()];
            let thermal = if series == "local" {
                Ok((None, None))
            } else if thermal_b {
                thermal_negativity_max(p.eps_h, p.g, p.temp_c, FIG6_TEMP_H_MAX).map(|(tt, nn)| (Some(nn), Some(tt)))
            } else {
                thermal_negativity(p.eps_h, p.g, p.temp_h).map(|nn| (Some(nn), Some(p.temp_h)))
            };
            match (optimize_negativity(p, free), thermal) {
                (Ok(r), Ok((tn, tt))) => {
                    let b = r.best_params;
                    row.extend([b.g.into(), b.temp_h.into(), b.gamma_c.into(), r.best_value.into()]);
                    row.extend([tn.into(), tt.into(), Cell::Empty]);
                }
                (Err(e), _) | (_, Err(e)) => {
                    row.extend([p.g.into(), p.temp_h.into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty]);
                    row.push(Cell::Text(e.to_string()));
                }
            }
            row
        }
    };
    let rows_a: Vec<Vec<Cell>> = jobs.par_iter().map(run("a", false)).collect();
    let rows_b: Vec<Vec<Cell>> = jobs_b.par_iter().map(run("b", true)).collect();
    rows_a.into_iter().chain(rows_b).for_each(|r| t.push_row(r));
    Ok(t)
}
