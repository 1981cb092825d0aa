// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic one- and two-parameter searches: coarse grids followed by
//! golden-section refinement, plus bisection for sign changes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sweep::{grid, Scale};
use crate::analytic::thermal_negativity;
use crate::error::{EngineError, Result};
use crate::observables::{report, steady_state_negativity};
use crate::params::{EngineParams, ParamName, Regime};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximum of a unimodal `f` on `[a, b]`, shrinking the bracket below `tol`.
///
/// Returns `(x, f(x), evaluations)` for the best point seen.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut evals = 2;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
        evals += 1;
        // the bracket stops shrinking once it reaches rounding level
        if evals > 400 {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1, evals)
    } else {
        (x2, f2, evals)
    }
}

/// Root of `f` on `[a, b]` by bisection. `f(a)` and `f(b)` must differ in sign.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (a, b);
    let f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(EngineError::Spec(format!("no sign change on [{a}, {b}]")));
    }
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Quantity maximised by [`find_kappa_max`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaObjective {
    Current,
    Negativity,
}

impl std::str::FromStr for KappaObjective {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "current" => Ok(KappaObjective::Current),
            "negativity" => Ok(KappaObjective::Negativity),
            _ => Err(EngineError::Spec(format!("unknown objective `{s}`"))),
        }
    }
}

/// Result of [`find_kappa_max`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaMax {
    pub kappa: f64,
    pub value: f64,
    pub evaluations: usize,
}

pub const KAPPA_GRID_POINTS: usize = 64;
/// Refinement tolerance on κ, in units of ε_h.
pub const KAPPA_TOL: f64 = 1e-8;
/// Spread below which the objective counts as flat, on top of a 1e-12 relative floor.
pub const FLAT_ATOL: f64 = 1e-15;

/// Hot-qubit tunnelling amplitude that maximises the objective.
pub fn find_kappa_max(params: &EngineParams, objective: KappaObjective, bracket: (f64, f64)) -> Result<KappaMax> {
    if params.regime != Regime::Local {
        return Err(EngineError::domain("tunnelling search needs regime = local"));
    }
    params.validate()?;
    let eval = |kappa: f64| -> Result<f64> {
        let rep = report(&params.with(ParamName::KappaH, kappa))?;
        Ok(match objective {
            KappaObjective::Current => rep.current,
            KappaObjective::Negativity => rep.negativity,
        })
    };
    if params.delta == 0.0 {
        return Ok(KappaMax { kappa: 0.0, value: eval(0.0)?, evaluations: 1 });
    }
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(EngineError::Spec(format!("invalid kappa bracket ({lo}, {hi})")));
    }

    let xs = grid(lo, hi, KAPPA_GRID_POINTS, Scale::Linear);
    let ys: Vec<f64> = xs.par_iter().map(|k| eval(*k)).collect::<Result<_>>()?;
    let (imax, ymax) = argmax(&ys);
    let ymin = ys.iter().copied().fold(f64::INFINITY, f64::min);
    if ymax - ymin <= 1e-12 * ymax.abs().max(ymin.abs()) + FLAT_ATOL {
        return Err(EngineError::FlatObjective);
    }

    let a = xs[imax.saturating_sub(1)];
    let b = xs[(imax + 1).min(xs.len() - 1)];
    let mut failure = None;
    let (k, v, n) = golden_section_max(
        |k| {
            eval(k).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                f64::NEG_INFINITY
            })
        },
        a,
        b,
        KAPPA_TOL * params.eps_h,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let (kappa, value) = if v >= ymax { (k, v) } else { (xs[imax], ymax) };
    Ok(KappaMax { kappa, value, evaluations: xs.len() + n })
}

fn argmax(ys: &[f64]) -> (usize, f64) {
    ys.iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, y)| if y > acc.1 { (i, y) } else { acc })
}

/// A parameter left free for [`optimize_negativity`], searched on a log scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeParam {
    pub name: ParamName,
    pub lo: f64,
    pub hi: f64,
    /// Exclude `lo` itself, as in an interval `(lo, hi]`.
    #[serde(default)]
    pub open_lo: bool,
    /// Exclude `hi` itself.
    #[serde(default)]
    pub open_hi: bool,
}

impl FreeParam {
    pub fn closed(name: ParamName, lo: f64, hi: f64) -> Self {
        FreeParam { name, lo, hi, open_lo: false, open_hi: false }
    }

    pub fn open(name: ParamName, lo: f64, hi: f64) -> Self {
        FreeParam { name, lo, hi, open_lo: true, open_hi: true }
    }

    /// `(lo, hi]`
    pub fn left_open(name: ParamName, lo: f64, hi: f64) -> Self {
        FreeParam { name, lo, hi, open_lo: true, open_hi: false }
    }

    fn grid(&self, points: usize) -> Vec<f64> {
        if self.lo == self.hi {
            return vec![self.lo];
        }
        let extra = self.open_lo as usize + self.open_hi as usize;
        let mut xs = grid(self.lo, self.hi, points + extra, Scale::Log);
        if self.open_hi {
            xs.pop();
        }
        if self.open_lo {
            xs.remove(0);
        }
        xs
    }
}

/// Grid points per free axis in [`optimize_negativity`].
pub const OPT_GRID_POINTS: usize = 128;
const POLISH_ROUNDS: usize = 3;
const POLISH_TOL: f64 = 1e-10;

/// Outcome of [`optimize_negativity`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_params: EngineParams,
    pub best_value: f64,
    pub evaluations: usize,
    /// Every evaluated feasible point, in evaluation order.
    pub trace: Vec<(EngineParams, f64)>,
}

/// Maximises the steady-state negativity over one or two free parameters.
pub fn optimize_negativity(params: &EngineParams, free: &[FreeParam]) -> Result<OptimizationResult> {
    optimize_with(params, free, OPT_GRID_POINTS)
}

/// [`optimize_negativity`] with an explicit grid size per axis.
pub fn optimize_with(params: &EngineParams, free: &[FreeParam], points: usize) -> Result<OptimizationResult> {
    if free.is_empty() || free.len() > 2 {
        return Err(EngineError::Spec(format!("expected one or two free parameters, got {}", free.len())));
    }
    for f in free {
        if !(f.lo > 0.0 && f.hi >= f.lo && f.hi.is_finite()) {
            return Err(EngineError::Spec(format!(
                "free parameter `{}` needs 0 < lo <= hi, got ({}, {})",
                f.name, f.lo, f.hi
            )));
        }
    }
    if free.len() == 2 && free[0].name == free[1].name {
        return Err(EngineError::Spec("the two free parameters must differ".into()));
    }
    let objective = |p: &EngineParams| -> Option<f64> { steady_state_negativity(p).ok() };

    let grids: Vec<Vec<f64>> = free.iter().map(|f| f.grid(points)).collect();
    let candidates: Vec<EngineParams> = match grids.as_slice() {
        [xs] => xs.iter().map(|x| params.with(free[0].name, *x)).collect(),
        [xs, ys] => xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| (*x, *y)))
            .map(|(x, y)| params.with(free[0].name, x).with(free[1].name, y))
            .collect(),
        _ => unreachable!(),
    };
    let values: Vec<Option<f64>> = candidates.par_iter().map(objective).collect();
    let mut trace: Vec<(EngineParams, f64)> =
        candidates.into_iter().zip(values).filter_map(|(p, v)| v.map(|v| (p, v))).collect();
    if trace.is_empty() {
        return Err(EngineError::Spec("no feasible point in the search range".into()));
    }
    let mut evaluations = trace.len();

    let (ibest, _) = argmax(&trace.iter().map(|t| t.1).collect::<Vec<_>>());
    let mut best = trace[ibest];

    // coordinate-wise golden-section polish in log space, around the grid optimum
    let rounds = if free.len() == 1 { 1 } else { POLISH_ROUNDS };
    for _ in 0..rounds {
        for (axis, f) in free.iter().enumerate() {
            let xs = &grids[axis];
            if xs.len() < 2 {
                continue;
            }
            let x = best.0.get(f.name);
            let i = xs.partition_point(|v| *v < x).min(xs.len() - 1);
            let a = xs[i.saturating_sub(1)].ln();
            let b = xs[(i + 1).min(xs.len() - 1)].ln();
            let base = best.0;
            let mut seen = Vec::new();
            golden_section_max(
                |lx| {
                    let p = base.with(f.name, lx.exp());
                    let v = objective(&p);
                    if let Some(v) = v {
                        seen.push((p, v));
                    }
                    v.unwrap_or(f64::NEG_INFINITY)
                },
                a,
                b,
                POLISH_TOL,
            );
            evaluations += seen.len();
            for entry in seen {
                if entry.1 > best.1 {
                    best = entry;
                }
                trace.push(entry);
            }
        }
    }
    Ok(OptimizationResult { best_params: best.0, best_value: best.1, evaluations, trace })
}

/// Largest thermal-state negativity over temperatures in `(t_lo, t_hi]`.
///
/// Returns `(temperature, negativity)`.
pub fn thermal_negativity_max(eps: f64, g: f64, t_lo: f64, t_hi: f64) -> Result<(f64, f64)> {
    if !(t_lo > 0.0 && t_hi > t_lo) {
        return Err(EngineError::Spec(format!("invalid temperature range ({t_lo}, {t_hi}]")));
    }
    let ts = grid(t_lo, t_hi, OPT_GRID_POINTS + 1, Scale::Log);
    let ns: Vec<f64> = ts.iter().map(|t| thermal_negativity(eps, g, *t)).collect::<Result<_>>()?;
    let (i, n_grid) = argmax(&ns[1..]);
    let i = i + 1;
    let a = ts[i - 1].max(ts[1]).ln();
    let b = ts[(i + 1).min(ts.len() - 1)].ln();
    let (lt, n, _) = golden_section_max(|lt| thermal_negativity(eps, g, lt.exp()).unwrap_or(0.0), a, b, POLISH_TOL);
    Ok(if n > n_grid { (lt.exp(), n) } else { (ts[i], n_grid) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_a_parabola_peak() {
        let (x, fx, _) = golden_section_max(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
        assert!(fx.abs() < 1e-16);
    }

    #[test]
    fn bisection_finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-13);
        assert!(bisect(|x| x * x + 1.0, 0.0, 1.0, 1e-9).is_err());
    }

    fn fig4(temp_h: f64) -> EngineParams {
        EngineParams::local(1.0, 1.6e-3, 1e-3, 1.1e-2, temp_h, 0.1).with(ParamName::Delta, 0.01)
    }

    #[test]
    fn resonant_engine_needs_no_tunnelling() {
        let k = find_kappa_max(&fig4(0.5).with(ParamName::Delta, 0.0), KappaObjective::Current, (0.0, 0.2)).unwrap();
        assert_eq!(k.kappa, 0.0);
        assert!(k.value > 0.0);
    }

    #[test]
    fn tunnelling_restores_resonance() {
        let k = find_kappa_max(&fig4(0.7), KappaObjective::Current, (0.0, 0.2)).unwrap();
        // √(ε² + 4κ²) = ε + δ
        let resonant = ((1.01f64).powi(2) - 1.0).sqrt() / 2.0;
        assert!((k.kappa - resonant).abs() < 0.01 * resonant, "{}", k.kappa);
    }

    #[test]
    fn flat_objective_is_reported() {
        // decoupled qubits carry no current for any κ
        let p = fig4(0.5).with(ParamName::G, 0.0);
        assert_eq!(find_kappa_max(&p, KappaObjective::Current, (0.0, 0.2)), Err(EngineError::FlatObjective));
    }

    #[test]
    fn optimizer_best_dominates_its_trace() {
        let p = EngineParams::global(1.0, 0.3, 0.01, 0.01, 0.3, 0.01);
        let r = optimize_with(&p, &[FreeParam::open(ParamName::GammaC, 0.001, 0.1)], 32).unwrap();
        assert!(r.trace.iter().all(|(_, v)| *v <= r.best_value));
        assert!(r.trace.iter().all(|(p, _)| p.gamma_c > 0.001 && p.gamma_c < 0.1));
        assert_eq!(r.evaluations, r.trace.len());
    }

    #[test]
    fn degenerate_range_returns_its_single_point() {
        let p = EngineParams::global(1.0, 0.3, 0.01, 0.01, 0.3, 0.01);
        let r = optimize_negativity(&p, &[FreeParam::closed(ParamName::GammaC, 0.02, 0.02)]).unwrap();
        assert_eq!(r.best_params.gamma_c, 0.02);
        assert_eq!(r.evaluations, 1);
    }

    #[test]
    fn infeasible_ranges_are_rejected() {
        // the global regime needs g < ε everywhere in this range
        let p = EngineParams::global(1.0, 0.3, 0.01, 0.01, 0.3, 0.01);
        let r = optimize_with(&p, &[FreeParam::closed(ParamName::G, 1.5, 3.0)], 16);
        assert!(matches!(r, Err(EngineError::Spec(_))));
    }

    #[test]
    fn thermal_maximum_beats_its_grid() {
        let (t, n) = thermal_negativity_max(1.0, 0.5, 0.01, 5.0).unwrap();
        for k in 0..200 {
            let tt = 0.01 + k as f64 * 0.025;
            assert!(thermal_negativity(1.0, 0.5, tt).unwrap() <= n + 1e-15);
        }
        assert!(t > 0.01 && t < 0.5 / 1f64.asinh());
    }
}
