// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Closed-form steady states and thermal states.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Vector4;
use num_complex::Complex64;
use serde::Serialize;

use crate::bath::{GlobalRateSet, LocalRatePair};
use crate::error::{EngineError, Result};
use crate::params::{Branch, EngineParams, Regime};
use crate::state::{DensityMatrix, IDX_00, IDX_01, IDX_10, IDX_11};

/// Closed-form local steady state together with its rate combinations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalSteadyState {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    /// ⟨10|ρ|01⟩
    pub c: Complex64,
    /// χ = (4g² + Γ_hΓ_c)Γ² + 4δ²Γ_hΓ_c
    pub chi: f64,
    /// Γ = Γ_h + Γ_c
    pub big_gamma: f64,
    /// Γ_h = γ_h⁺ + γ_h⁻
    pub gamma_h_tot: f64,
    /// Γ_c = γ_c⁺ + γ_c⁻
    pub gamma_c_tot: f64,
}

impl LocalSteadyState {
    pub fn populations(&self) -> [f64; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }

    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::x_form(self.populations(), self.c)
    }
}

pub(crate) fn require_local_without_tunnelling(params: &EngineParams) -> Result<()> {
    params.validate()?;
    if params.regime != Regime::Local {
        return Err(EngineError::domain("operation needs regime = local"));
    }
    if params.has_tunnelling() {
        return Err(EngineError::UnsupportedAnalytic(
            "tunnelling (kappa != 0) has no closed form; use the numeric steady state".into(),
        ));
    }
    Ok(())
}

/// Steady state of the local master equation without tunnelling.
pub fn local_closed_form(params: &EngineParams) -> Result<LocalSteadyState> {
    require_local_without_tunnelling(params)?;
    let LocalRatePair { hot, cold } = LocalRatePair::new(params)?;
    let (hp, hm) = (hot.gamma_plus, hot.gamma_minus);
    let (cp, cm) = (cold.gamma_plus, cold.gamma_minus);
    let (g, delta) = (params.g, params.delta);

    let gamma_h_tot = hot.total();
    let gamma_c_tot = cold.total();
    let big_gamma = gamma_h_tot + gamma_c_tot;
    let lorentz = big_gamma * big_gamma + 4.0 * delta * delta;
    let g2 = 4.0 * g * g;
    let chi = (g2 + gamma_h_tot * gamma_c_tot) * big_gamma * big_gamma
        + 4.0 * delta * delta * gamma_h_tot * gamma_c_tot;

    let up = hp + cp;
    let down = hm + cm;
    let r1 = (g2 * up * up + hp * cp * lorentz) / chi;
    let r2 = (g2 * down * up + hp * cm * lorentz) / chi;
    let r3 = (g2 * down * up + hm * cp * lorentz) / chi;
    let r4 = (g2 * down * down + hm * cm * lorentz) / chi;
    let c = Complex64::new(-2.0 * delta, big_gamma) * (2.0 * g * (hp * cm - hm * cp) / chi);

    Ok(LocalSteadyState { r1, r2, r3, r4, c, chi, big_gamma, gamma_h_tot, gamma_c_tot })
}

/// Closed-form global steady state in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlobalSteadyState {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
    /// ⟨10|ρ|01⟩, real for this model.
    pub d: f64,
    /// χ_gl = Γ(ε₋)Γ(ε₊)
    pub chi_gl: f64,
}

impl GlobalSteadyState {
    pub fn populations(&self) -> [f64; 4] {
        [self.s1, self.s2, self.s3, self.s4]
    }

    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        DensityMatrix::x_form(self.populations(), Complex64::from(self.d))
    }
}

pub(crate) fn require_global(params: &EngineParams) -> Result<()> {
    params.validate()?;
    if params.regime != Regime::Global {
        return Err(EngineError::domain("operation needs regime = global"));
    }
    Ok(())
}

/// Steady state of the global master equation.
pub fn global_closed_form(params: &EngineParams) -> Result<GlobalSteadyState> {
    require_global(params)?;
    let rates = GlobalRateSet::new(params)?;
    let (up_m, down_m) = (rates.absorption(Branch::Minus), rates.emission(Branch::Minus));
    let (up_p, down_p) = (rates.absorption(Branch::Plus), rates.emission(Branch::Plus));
    let chi_gl = rates.total(Branch::Minus) * rates.total(Branch::Plus);

    let s1 = up_m * up_p / chi_gl;
    let s2 = (up_m * down_p + down_m * up_p) / (2.0 * chi_gl);
    let s4 = down_m * down_p / chi_gl;
    let d = (down_m * up_p - up_m * down_p) / (2.0 * chi_gl);
    Ok(GlobalSteadyState { s1, s2, s3: s2, s4, d, chi_gl })
}

/// An eigenpair of H_S + H_int in the resonant case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedLevel {
    pub energy: f64,
    pub state: Vector4<Complex64>,
}

/// Eigenpairs of H_S + H_int for ε_h = ε_c = `eps`, ordered
/// |00⟩, |ε₋⟩ = (|01⟩ − |10⟩)/√2, |ε₊⟩ = (|01⟩ + |10⟩)/√2, |11⟩.
pub fn dressed_eigensystem(eps: f64, g: f64) -> [DressedLevel; 4] {
    let basis = |idx: usize| {
        let mut v = Vector4::zeros();
        v[idx] = Complex64::from(1.0);
        v
    };
    let s = Complex64::from(FRAC_1_SQRT_2);
    [
        DressedLevel { energy: 0.0, state: basis(IDX_00) },
        DressedLevel { energy: eps - g, state: (basis(IDX_01) - basis(IDX_10)) * s },
        DressedLevel { energy: eps + g, state: (basis(IDX_01) + basis(IDX_10)) * s },
        DressedLevel { energy: 2.0 * eps, state: basis(IDX_11) },
    ]
}

fn check_thermal_args(eps: f64, temp: f64) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(EngineError::domain(format!("eps must be positive, got {eps}")));
    }
    if !(temp > 0.0) || !temp.is_finite() {
        return Err(EngineError::domain(format!("thermal state needs temp > 0, got {temp}")));
    }
    Ok(())
}

/// Scaled hyperbolic functions of x = ε/T and y = g/T, all multiplied by
/// e^{-m}, m = max(x, |y|), so that nothing overflows at low temperature.
struct ScaledHyperbolic {
    sinh_x: f64,
    cosh_x: f64,
    sinh_y: f64,
    cosh_y: f64,
    /// e^{-m}
    unit: f64,
}

impl ScaledHyperbolic {
    fn new(eps: f64, g: f64, temp: f64) -> Self {
        let x = eps / temp;
        let y = g / temp;
        let m = x.max(y.abs());
        let half = |a: f64, b: f64| 0.5 * ((a - m).exp() + b * (-a - m).exp());
        ScaledHyperbolic {
            sinh_x: half(x, -1.0),
            cosh_x: half(x, 1.0),
            sinh_y: half(y, -1.0),
            cosh_y: half(y, 1.0),
            unit: (-m).exp(),
        }
    }
}

/// e^{-(H_S + H_int)/T} / Z for the resonant pair.
pub fn thermal_state(eps: f64, g: f64, temp: f64) -> Result<DensityMatrix> {
    check_thermal_args(eps, temp)?;
    // every entry carries the same e^{-m} factor, which cancels against Z
    let h = ScaledHyperbolic::new(eps, g, temp);
    let x = eps / temp;
    let m = x.max((g / temp).abs());
    let z = 2.0 * (h.cosh_x + h.cosh_y);
    let mut rho = nalgebra::Matrix4::<Complex64>::zeros();
    rho[(IDX_11, IDX_11)] = Complex64::from((-x - m).exp() / z);
    rho[(IDX_10, IDX_10)] = Complex64::from(h.cosh_y / z);
    rho[(IDX_01, IDX_01)] = Complex64::from(h.cosh_y / z);
    rho[(IDX_10, IDX_01)] = Complex64::from(-h.sinh_y / z);
    rho[(IDX_01, IDX_10)] = Complex64::from(-h.sinh_y / z);
    rho[(IDX_00, IDX_00)] = Complex64::from((x - m).exp() / z);
    DensityMatrix::new(rho)
}

/// Negativity of the thermal state, max{0, (√(cosh²x + sinh²y − 1) − cosh x) / (2(cosh x + cosh y))}.
///
/// Evaluated in the rationalised form (sinh²y − 1) / [(√(sinh²x + sinh²y) + cosh x) · 2(cosh x + cosh y)],
/// whose sign is exactly that of sinh²(g/T) − 1.
pub fn thermal_negativity(eps: f64, g: f64, temp: f64) -> Result<f64> {
    check_thermal_args(eps, temp)?;
    let h = ScaledHyperbolic::new(eps, g, temp);
    let numer = (h.sinh_y - h.unit) * (h.sinh_y + h.unit);
    if numer <= 0.0 {
        return Ok(0.0);
    }
    let root = h.sinh_x.hypot(h.sinh_y);
    Ok(numer / ((root + h.cosh_x) * 2.0 * (h.cosh_x + h.cosh_y)))
}

/// Temperature g / arcsinh(1) below which the thermal state is entangled.
pub fn thermal_entanglement_threshold(g: f64) -> f64 {
    g.abs() / 1f64.asinh()
}
