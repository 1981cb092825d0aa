// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Bosonic bath statistics and the resulting absorption/emission rates.

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};
use crate::params::{Bath, Branch, EngineParams};

/// Bose-Einstein occupation `1 / (exp(energy / temp) - 1)`.
///
/// Zero temperature maps to zero occupation. Large `energy / temp` underflows
/// to zero instead of producing NaN.
pub fn bose_einstein(energy: f64, temp: f64) -> Result<f64> {
    if !(energy > 0.0) || !energy.is_finite() {
        return Err(EngineError::domain(format!(
            "Bose-Einstein occupation needs a positive finite energy, got {energy}"
        )));
    }
    if !(temp >= 0.0) || !temp.is_finite() {
        return Err(EngineError::domain(format!(
            "temperature must be non-negative and finite, got {temp}"
        )));
    }
    if temp == 0.0 {
        return Ok(0.0);
    }
    Ok((energy / temp).exp_m1().recip())
}

/// Absorption (`gamma_plus`) and emission (`gamma_minus`) rates of one bath
/// at one transition energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathRates {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub energy: f64,
}

impl BathRates {
    /// Rates for bare coupling `gamma` with a bath at `temp`, evaluated at `energy`.
    pub fn thermal(gamma: f64, energy: f64, temp: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(EngineError::domain(format!(
                "bare bath coupling must be positive, got {gamma}"
            )));
        }
        let n = bose_einstein(energy, temp)?;
        let gamma_plus = gamma * n;
        Ok(BathRates { gamma_plus, gamma_minus: gamma + gamma_plus, energy })
    }

    /// Γ_j = γ⁺ + γ⁻.
    pub fn total(&self) -> f64 {
        self.gamma_plus + self.gamma_minus
    }

    /// The bare coupling γ = γ⁻ − γ⁺.
    pub fn bare(&self) -> f64 {
        self.gamma_minus - self.gamma_plus
    }
}

/// Rates of bath `bath` at its own qubit's gap.
pub fn local_rates(params: &EngineParams, bath: Bath) -> Result<BathRates> {
    params.validate_common()?;
    BathRates::thermal(params.bare_rate(bath), params.gap(bath), params.temp(bath))
}

/// Dressed transition energy ε ∓ g for the resonant engine.
pub fn branch_energy(params: &EngineParams, branch: Branch) -> f64 {
    match branch {
        Branch::Minus => params.eps_h - params.g,
        Branch::Plus => params.eps_h + params.g,
    }
}

/// Rates of bath `bath` at the dressed energy ε∓g.
///
/// Requires the resonant case (δ = 0) and g < ε; g = 0 is accepted and
/// collapses both branches onto ε.
pub fn global_rates(params: &EngineParams, bath: Bath, branch: Branch) -> Result<BathRates> {
    params.validate_common()?;
    if params.delta != 0.0 {
        return Err(EngineError::domain("global rates require delta = 0"));
    }
    if params.g >= params.eps_h {
        return Err(EngineError::domain(format!(
            "global rates require g < eps (g={}, eps={}); the lower dressed level is degenerate or inverted",
            params.g, params.eps_h
        )));
    }
    BathRates::thermal(params.bare_rate(bath), branch_energy(params, branch), params.temp(bath))
}

/// Both baths' local rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct LocalRatePair {
    pub hot: BathRates,
    pub cold: BathRates,
}

impl LocalRatePair {
    pub fn new(params: &EngineParams) -> Result<Self> {
        Ok(LocalRatePair {
            hot: local_rates(params, Bath::Hot)?,
            cold: local_rates(params, Bath::Cold)?,
        })
    }
}

/// The four global rate sets, indexed by bath and branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct GlobalRateSet {
    pub hot_minus: BathRates,
    pub hot_plus: BathRates,
    pub cold_minus: BathRates,
    pub cold_plus: BathRates,
}

impl GlobalRateSet {
    pub fn new(params: &EngineParams) -> Result<Self> {
        Ok(GlobalRateSet {
            hot_minus: global_rates(params, Bath::Hot, Branch::Minus)?,
            hot_plus: global_rates(params, Bath::Hot, Branch::Plus)?,
            cold_minus: global_rates(params, Bath::Cold, Branch::Minus)?,
            cold_plus: global_rates(params, Bath::Cold, Branch::Plus)?,
        })
    }

    pub fn get(&self, bath: Bath, branch: Branch) -> BathRates {
        match (bath, branch) {
            (Bath::Hot, Branch::Minus) => self.hot_minus,
            (Bath::Hot, Branch::Plus) => self.hot_plus,
            (Bath::Cold, Branch::Minus) => self.cold_minus,
            (Bath::Cold, Branch::Plus) => self.cold_plus,
        }
    }

    /// Γ⁺(ε∓g): summed absorption rate of both baths on a branch.
    pub fn absorption(&self, branch: Branch) -> f64 {
        self.get(Bath::Hot, branch).gamma_plus + self.get(Bath::Cold, branch).gamma_plus
    }

    /// Γ⁻(ε∓g): summed emission rate of both baths on a branch.
    pub fn emission(&self, branch: Branch) -> f64 {
        self.get(Bath::Hot, branch).gamma_minus + self.get(Bath::Cold, branch).gamma_minus
    }

    pub fn total(&self, branch: Branch) -> f64 {
        self.absorption(branch) + self.emission(branch)
    }
}
