// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Heat flows, heat currents, negativity and the critical current.
//!
//! Heat flows use `Q_j = Tr[H · D_j(ρ)]`, where `D_j` is the dissipator of
//! bath `j`. By default the energy operator is `H_S + H_int`, with any σ_x
//! tunnelling folded into `H_S`. Passing [`EnergyOperator::Bare`] drops the
//! exchange term. In the local regime with detuning that choice breaks
//! `Q_h + Q_c = 0`.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{
    global_closed_form, local_closed_form, require_global, require_local_without_tunnelling,
    thermal_negativity, LocalSteadyState,
};
use crate::bath::{bose_einstein, branch_energy, GlobalRateSet, LocalRatePair};
use crate::error::{EngineError, Result};
use crate::liouvillian::{bath_jumps, Liouvillian};
use crate::operators::{apply_dissipator, system_hamiltonian, total_hamiltonian};
use crate::params::{Advisory, Bath, Branch, EngineParams, Regime};
use crate::state::{hermitian_eigenvalues, DensityMatrix, Operator, Subsystem};

/// Energy operator used inside the heat-flow trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyOperator {
    /// H_S + H_int.
    #[default]
    Full,
    /// H_S only.
    Bare,
}

/// Heat flow from `bath` into the qubits, positive when the bath gives energy.
pub fn heat_flow(state: &DensityMatrix, params: &EngineParams, bath: Bath) -> Result<f64> {
    heat_flow_with(state, params, bath, EnergyOperator::Full)
}

pub fn heat_flow_with(
    state: &DensityMatrix,
    params: &EngineParams,
    bath: Bath,
    energy: EnergyOperator,
) -> Result<f64> {
    let h: Operator = match energy {
        EnergyOperator::Full => total_hamiltonian(params),
        EnergyOperator::Bare => system_hamiltonian(params),
    };
    let mut drho = Operator::zeros();
    for jump in bath_jumps(params, bath)? {
        drho += apply_dissipator(&jump.op, state.matrix()) * Complex64::from(jump.rate);
    }
    Ok((h * drho).trace().re)
}

/// Heat current `J = Q_h − Q_c` of the local model in closed form.
pub fn current_local(params: &EngineParams) -> Result<f64> {
    require_local_without_tunnelling(params)?;
    let ss = local_closed_form(params)?;
    Ok(current_from_closed_form(params, &ss))
}

fn current_from_closed_form(params: &EngineParams, ss: &LocalSteadyState) -> f64 {
    let dn = bose_difference(params, params.eps_h, params.eps_c());
    let weight = gap_weight(params, ss);
    8.0 * params.g * params.g / ss.chi * params.gamma_h * params.gamma_c * weight * dn
}

/// ε_hΓ_c + ε_cΓ_h
fn gap_weight(params: &EngineParams, ss: &LocalSteadyState) -> f64 {
    params.eps_h * ss.gamma_c_tot + params.eps_c() * ss.gamma_h_tot
}

/// n_B^h(e_hot) − n_B^c(e_cold), arguments already validated.
fn bose_difference(params: &EngineParams, e_hot: f64, e_cold: f64) -> f64 {
    let nh = bose_einstein(e_hot, params.temp_h).unwrap_or(f64::NAN);
    let nc = bose_einstein(e_cold, params.temp_c).unwrap_or(f64::NAN);
    nh - nc
}

/// Heat current of the global model in closed form.
pub fn current_global(params: &EngineParams) -> Result<f64> {
    require_global(params)?;
    let rates = GlobalRateSet::new(params)?;
    Ok(global_current_bracket(params, &rates) * params.gamma_h * params.gamma_c / chi_global(&rates))
}

fn chi_global(rates: &GlobalRateSet) -> f64 {
    rates.total(Branch::Minus) * rates.total(Branch::Plus)
}

/// ε₋Γ(ε₊)Δn(ε₋) + ε₊Γ(ε₋)Δn(ε₊)
fn global_current_bracket(params: &EngineParams, rates: &GlobalRateSet) -> f64 {
    let e_minus = branch_energy(params, Branch::Minus);
    let e_plus = branch_energy(params, Branch::Plus);
    let dn_minus = bose_difference(params, e_minus, e_minus);
    let dn_plus = bose_difference(params, e_plus, e_plus);
    e_minus * rates.total(Branch::Plus) * dn_minus + e_plus * rates.total(Branch::Minus) * dn_plus
}

/// Recovers `c` from the heat current through `c = J(iΓ − 2δ) / (4g(ε_hΓ_c + ε_cΓ_h))`.
pub fn coherence_from_current(current: f64, params: &EngineParams) -> Result<Complex64> {
    require_local_without_tunnelling(params)?;
    if params.g == 0.0 {
        return Err(EngineError::domain("coherence-current relation is undefined at g = 0"));
    }
    let ss = local_closed_form(params)?;
    let denom = 4.0 * params.g * gap_weight(params, &ss);
    Ok(Complex64::new(-2.0 * params.delta, ss.big_gamma) * (current / denom))
}

/// Negative partial-transpose eigenvalues closer to zero than this are rounding noise.
const PT_ROUNDING_FLOOR: f64 = 4.0 * f64::EPSILON;

/// Negativity `Σ_{λ<0} |λ|` of the partial transpose, for any two-qubit state.
pub fn negativity(state: &DensityMatrix) -> f64 {
    let of = |sub| {
        hermitian_eigenvalues(&state.partial_transpose(sub))
            .iter()
            .filter(|l| **l < -PT_ROUNDING_FLOOR)
            .fold(0.0, |acc, l| acc - l)
    };
    let cold = of(Subsystem::Cold);
    debug_assert!((cold - of(Subsystem::Hot)).abs() < 1e-12);
    cold
}

/// Negativity of an X-form state, `max{0, (√(4|c|² + (r₁ − r₄)²) − (r₁ + r₄))/2}`.
///
/// Rationalised so that the sign is exactly that of `|c|² − r₁r₄`.
pub fn negativity_x_form(r1: f64, r4: f64, c: Complex64) -> f64 {
    let c2 = c.norm_sqr();
    let numer = 2.0 * (c2 - r1 * r4);
    if numer <= 0.0 {
        return 0.0;
    }
    numer / ((4.0 * c2 + (r1 - r4) * (r1 - r4)).sqrt() + r1 + r4)
}

/// Negativity of the local steady state from the rate coefficients A, B, C, D.
pub fn negativity_closed_form_local(params: &EngineParams) -> Result<f64> {
    let ss = local_closed_form(params)?;
    let LocalRatePair { hot, cold } = LocalRatePair::new(params)?;
    let (hp, hm, cp, cm) = (hot.gamma_plus, hot.gamma_minus, cold.gamma_plus, cold.gamma_minus);
    let (gh, gc) = (params.gamma_h, params.gamma_c);
    let g2 = params.g * params.g;
    let lorentz = 4.0 * params.delta * params.delta + ss.big_gamma * ss.big_gamma;

    let a = gh * gh + gc * gc + 2.0 * (hp + cm) * (hm + cp);
    let b = hm * cm + hp * cp;
    let c = hp * cp * (hp * hp + cp * cp) + hm * cm * (hm * hm + cm * cm)
        + 2.0 * (hm * hm + hp * hp) * (cm * cm + cp * cp)
        - (hm * hp + cm * cp) * (hm * cp + hp * cm)
        - 8.0 * hm * hp * cm * cp;
    let d = (hm * cm - hp * cp).powi(2);

    let root = (16.0 * g2 * g2 * (gh + gc).powi(2) * ss.big_gamma * ss.big_gamma
        + 8.0 * g2 * c * lorentz
        + d * lorentz * lorentz)
        .sqrt();
    let n = (-4.0 * g2 * a - b * lorentz + root) / (2.0 * ss.chi);
    Ok(n.max(0.0))
}

/// Local critical current `4g(ε_hΓ_c + ε_cΓ_h)√(r₁r₄/(Γ² + 4δ²))`.
pub fn critical_current_local(params: &EngineParams) -> Result<f64> {
    let ss = local_closed_form(params)?;
    Ok(critical_current_local_with(params, &ss, ss.r1, ss.r4))
}

fn critical_current_local_with(params: &EngineParams, ss: &LocalSteadyState, r1: f64, r4: f64) -> f64 {
    let lorentz = ss.big_gamma * ss.big_gamma + 4.0 * params.delta * params.delta;
    4.0 * params.g * gap_weight(params, ss) * (r1 * r4 / lorentz).sqrt()
}

/// Global critical current and the equilibrium diagnostics that go with it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlobalCriticalCurrent {
    /// |K|·√(s₁s₄); zero at equilibrium.
    pub value: f64,
    /// Signed prefactor K of the critical-current bound, `None` at equilibrium.
    pub prefactor: Option<f64>,
    /// T_h = T_c, where the bound degenerates (zero current, zero coherence).
    pub equilibrium: bool,
    /// At equilibrium, whether the thermal state is entangled anyway.
    pub thermal_entangled: bool,
}

/// Global critical current.
///
/// The prefactor `K = 2γ_hγ_c[…]/(Γ⁻(ε₋)Γ⁺(ε₊) − Γ⁺(ε₋)Γ⁻(ε₊))` equals
/// `J/d`. Since `d` is usually negative, the bound is reported with `|K|`,
/// which makes `J > J_c` equivalent to `|d|² > s₁s₄` whenever `J > 0`.
pub fn critical_current_global(params: &EngineParams) -> Result<GlobalCriticalCurrent> {
    let ss = global_closed_form(params)?;
    let rates = GlobalRateSet::new(params)?;
    let bracket = global_current_bracket(params, &rates);
    let denom = rates.emission(Branch::Minus) * rates.absorption(Branch::Plus)
        - rates.absorption(Branch::Minus) * rates.emission(Branch::Plus);
    if params.temp_h == params.temp_c || (bracket == 0.0 && denom == 0.0) {
        let thermal_entangled = params.temp_h > 0.0
            && params.temp_h == params.temp_c
            && thermal_negativity(params.eps_h, params.g, params.temp_h)? > 0.0;
        return Ok(GlobalCriticalCurrent { value: 0.0, prefactor: None, equilibrium: true, thermal_entangled });
    }
    let k = 2.0 * params.gamma_h * params.gamma_c * bracket / denom;
    Ok(GlobalCriticalCurrent {
        value: k.abs() * (ss.s1 * ss.s4).sqrt(),
        prefactor: Some(k),
        equilibrium: false,
        thermal_entangled: false,
    })
}

/// Steady-state negativity alone, without the rest of a report.
pub fn steady_state_negativity(params: &EngineParams) -> Result<f64> {
    params.validate()?;
    match params.regime {
        Regime::Local if !params.has_tunnelling() => {
            let ss = local_closed_form(params)?;
            Ok(negativity_x_form(ss.r1, ss.r4, ss.c))
        }
        Regime::Local => Ok(negativity(&Liouvillian::build(params)?.steady_state_numeric()?)),
        Regime::Global => {
            let ss = global_closed_form(params)?;
            Ok(negativity_x_form(ss.s1, ss.s4, Complex64::from(ss.d)))
        }
    }
}

/// How the state in a report was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Analytic,
    Numeric,
}

/// Steady state and everything derived from it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyStateReport {
    pub params: EngineParams,
    pub source: Source,
    pub state: DensityMatrix,
    pub heat_flow_hot: f64,
    pub heat_flow_cold: f64,
    pub current: f64,
    /// c (local) or d (global), the ⟨10|ρ|01⟩ entry.
    pub coherence: Complex64,
    pub negativity: f64,
    /// Absent when the bound has no meaning (tunnelling).
    pub critical_current: Option<f64>,
    /// J / J_c, absent when J_c is zero or undefined.
    pub witness_ratio: Option<f64>,
    /// Global regime only.
    pub global_critical: Option<GlobalCriticalCurrent>,
    pub advisories: Vec<Advisory>,
}

impl SteadyStateReport {
    /// True when J exceeds the critical current.
    pub fn witness_fires(&self) -> bool {
        matches!(self.critical_current, Some(jc) if self.current > jc)
    }
}

/// Builds a report, using closed forms wherever they exist.
pub fn report(params: &EngineParams) -> Result<SteadyStateReport> {
    params.validate()?;
    match params.regime {
        Regime::Local if !params.has_tunnelling() => {
            let ss = local_closed_form(params)?;
            let state = ss.density_matrix()?;
            let current = current_from_closed_form(params, &ss);
            let jc = critical_current_local_with(params, &ss, ss.r1, ss.r4);
            finish(
                params,
                Source::Analytic,
                state,
                current,
                negativity_x_form(ss.r1, ss.r4, ss.c),
                Some(jc),
                None,
            )
        }
        Regime::Local => report_numeric(params),
        Regime::Global => {
            let ss = global_closed_form(params)?;
            let state = ss.density_matrix()?;
            let current = current_global(params)?;
            let crit = critical_current_global(params)?;
            finish(
                params,
                Source::Analytic,
                state,
                current,
                negativity_x_form(ss.s1, ss.s4, Complex64::from(ss.d)),
                Some(crit.value),
                Some(crit),
            )
        }
    }
}

/// Builds a report from the numeric steady state of the generator.
///
/// Currents come from the heat flows. Critical currents are evaluated with
/// the numeric populations when the model has them (no tunnelling).
pub fn report_numeric(params: &EngineParams) -> Result<SteadyStateReport> {
    let state = Liouvillian::build(params)?.steady_state_numeric()?;
    let qh = heat_flow(&state, params, Bath::Hot)?;
    let qc = heat_flow(&state, params, Bath::Cold)?;
    let pops = state.populations();
    let (critical, global_critical) = match params.regime {
        Regime::Local if params.has_tunnelling() => (None, None),
        Regime::Local => {
            let ss = local_closed_form(params)?;
            (Some(critical_current_local_with(params, &ss, pops[0], pops[3])), None)
        }
        Regime::Global => {
            let mut crit = critical_current_global(params)?;
            if let Some(k) = crit.prefactor {
                crit.value = k.abs() * (pops[0] * pops[3]).max(0.0).sqrt();
            }
            (Some(crit.value), Some(crit))
        }
    };
    let n = negativity(&state);
    finish(params, Source::Numeric, state, qh - qc, n, critical, global_critical)
}

fn finish(
    params: &EngineParams,
    source: Source,
    state: DensityMatrix,
    current: f64,
    negativity: f64,
    critical_current: Option<f64>,
    global_critical: Option<GlobalCriticalCurrent>,
) -> Result<SteadyStateReport> {
    let heat_flow_hot = heat_flow(&state, params, Bath::Hot)?;
    let heat_flow_cold = heat_flow(&state, params, Bath::Cold)?;
    let witness_ratio = critical_current.filter(|jc| *jc > 0.0 && jc.is_finite()).map(|jc| current / jc);
    Ok(SteadyStateReport {
        params: *params,
        source,
        coherence: state.coherence(),
        state,
        heat_flow_hot,
        heat_flow_cold,
        current,
        negativity,
        critical_current,
        witness_ratio,
        global_critical,
        advisories: params.advisories(),
    })
}
