// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Dormand–Prince 5(4) integration of `dp/dt = M p + b`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{EngineError, Result};
use crate::liouvillian::{coordinates_to_matrix, matrix_to_coordinates, Coordinates, Liouvillian};
use crate::state::DensityMatrix;

pub const RTOL: f64 = 1e-10;
pub const ATOL: f64 = 1e-12;
/// ‖M p + b‖ below which a step counts towards convergence.
pub const CONVERGENCE_RESIDUAL: f64 = 1e-12;
/// Consecutive accepted steps below the residual threshold needed to stop.
pub const CONVERGENCE_WINDOW: usize = 2;

const MIN_STEP: f64 = 1e-14;
const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

// Butcher tableau; the generator is time-independent so the nodes c_i are not needed
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Outcome of [`evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutionResult {
    pub state: DensityMatrix,
    /// Time reached; earlier than `t_final` when the run converged.
    pub time: f64,
    pub converged: bool,
    /// ‖M p + b‖ at the returned state.
    pub residual_norm: f64,
}

/// Integrates from `initial` up to `t_final`, stopping early once the state
/// is stationary for [`CONVERGENCE_WINDOW`] consecutive accepted steps.
pub fn evolve(liou: &Liouvillian, initial: &DensityMatrix, t_final: f64, dt_max: f64) -> Result<EvolutionResult> {
    evolve_observed(liou, initial, t_final, dt_max, true, |_, _| {})
}

/// Like [`evolve`], but calls `observer(t, ρ)` after every accepted step.
///
/// With `stop_on_convergence = false` the run always reaches `t_final`.
pub fn evolve_observed<F>(
    liou: &Liouvillian,
    initial: &DensityMatrix,
    t_final: f64,
    dt_max: f64,
    stop_on_convergence: bool,
    mut observer: F,
) -> Result<EvolutionResult>
where
    F: FnMut(f64, &nalgebra::Matrix4<Complex64>),
{
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(EngineError::domain(format!("t_final must be finite and >= 0, got {t_final}")));
    }
    if !(dt_max > 0.0) {
        return Err(EngineError::domain(format!("dt_max must be positive, got {dt_max}")));
    }

    let mut y = matrix_to_coordinates(initial.matrix());
    let mut k1 = liou.derivative(&y);
    let mut t = 0.0;
    let mut h = initial_step(liou, &y, &k1).min(dt_max).min(t_final.max(MIN_STEP));
    let mut calm_steps = 0usize;
    let mut converged = false;

    while t < t_final {
        let last = t + h >= t_final;
        if last {
            h = t_final - t;
        }
        let (y_new, k7, err) = dopri_step(liou, &y, &k1, h);
        if !err.is_finite() {
            return Err(EngineError::Integration(format!("non-finite error estimate at t = {t}")));
        }
        if err <= 1.0 {
            t = if last { t_final } else { t + h };
            y = y_new;
            k1 = k7;
            observer(t, &coordinates_to_matrix(&y));
            if k1.norm() < CONVERGENCE_RESIDUAL {
                calm_steps += 1;
                if calm_steps >= CONVERGENCE_WINDOW {
                    converged = true;
                    if stop_on_convergence {
                        break;
                    }
                }
            } else {
                calm_steps = 0;
            }
        }
        let factor = if err == 0.0 { MAX_FACTOR } else { (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR) };
        h = (h * factor).min(dt_max);
        if h < MIN_STEP * t.max(1.0) && t < t_final {
            return Err(EngineError::Integration(format!("step size underflow (h = {h:.3e}) at t = {t}")));
        }
    }

    let m = coordinates_to_matrix(&y);
    // Linear RK maps with real coefficients preserve Hermiticity up to rounding
    let hermitian = (m + m.adjoint()) * Complex64::from(0.5);
    let state = DensityMatrix::new(hermitian)?;
    Ok(EvolutionResult { state, time: t, converged, residual_norm: k1.norm() })
}

fn dopri_step(liou: &Liouvillian, y: &Coordinates, k1: &Coordinates, h: f64) -> (Coordinates, Coordinates, f64) {
    let f = |v: Coordinates| liou.derivative(&v);
    let hc = |a: f64| Complex64::from(h * a);
    let k2 = f(y + k1 * hc(A21));
    let k3 = f(y + k1 * hc(A31) + k2 * hc(A32));
    let k4 = f(y + k1 * hc(A41) + k2 * hc(A42) + k3 * hc(A43));
    let k5 = f(y + k1 * hc(A51) + k2 * hc(A52) + k3 * hc(A53) + k4 * hc(A54));
    let k6 = f(y + k1 * hc(A61) + k2 * hc(A62) + k3 * hc(A63) + k4 * hc(A64) + k5 * hc(A65));
    let y_new = y + k1 * hc(B1) + k3 * hc(B3) + k4 * hc(B4) + k5 * hc(B5) + k6 * hc(B6);
    let k7 = f(y_new);
    let err_vec = k1 * hc(E1) + k3 * hc(E3) + k4 * hc(E4) + k5 * hc(E5) + k6 * hc(E6) + k7 * hc(E7);
    let err = (0..15)
        .map(|i| {
            let scale = ATOL + RTOL * y[i].norm().max(y_new[i].norm());
            err_vec[i].norm() / scale
        })
        .fold(0.0_f64, f64::max);
    (y_new, k7, err)
}

/// Starting step from the size of the state and its derivative.
fn initial_step(liou: &Liouvillian, y: &Coordinates, f0: &Coordinates) -> f64 {
    let scaled = |v: &Coordinates| {
        (0..15)
            .map(|i| {
                let s = ATOL + RTOL * y[i].norm();
                (v[i].norm() / s).powi(2)
            })
            .sum::<f64>()
            .sqrt()
            / 15f64.sqrt()
    };
    let d0 = scaled(y);
    let d1 = scaled(f0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let y1 = y + f0 * Complex64::from(h0);
    let d2 = scaled(&(liou.derivative(&y1) - f0)) / h0;
    let h1 = if d1.max(d2) <= 1e-15 { (h0 * 1e-3).max(1e-6) } else { (0.01 / d1.max(d2)).powf(0.2) };
    (100.0 * h0).min(h1)
}
