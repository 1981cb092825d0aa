// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameters of the two-qubit engine.
//!
//! Units are ħ = k_B = 1. All energies, rates and temperatures are usually
//! given as ratios to the hot-qubit gap `eps_h`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// Which master equation governs the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Each bath acts on its own qubit's bare ladder operators.
    #[default]
    Local,
    /// Baths drive transitions between eigenstates of the interacting Hamiltonian.
    Global,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Local => f.write_str("local"),
            Regime::Global => f.write_str("global"),
        }
    }
}

impl FromStr for Regime {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "local" => Ok(Regime::Local),
            "global" => Ok(Regime::Global),
            other => Err(EngineError::Spec(format!("unknown regime `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bath {
    Hot,
    Cold,
}

impl Bath {
    pub const BOTH: [Bath; 2] = [Bath::Hot, Bath::Cold];
}

/// Dressed transition energy `ε ∓ g` used by the global dissipators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Minus, Branch::Plus];
}

/// Scalar fields of [`EngineParams`] that sweeps and optimizers can address by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamName {
    EpsH,
    Delta,
    G,
    GammaH,
    GammaC,
    TempH,
    TempC,
    KappaH,
    KappaC,
}

impl ParamName {
    pub const ALL: [ParamName; 9] = [
        ParamName::EpsH,
        ParamName::Delta,
        ParamName::G,
        ParamName::GammaH,
        ParamName::GammaC,
        ParamName::TempH,
        ParamName::TempC,
        ParamName::KappaH,
        ParamName::KappaC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::EpsH => "eps_h",
            ParamName::Delta => "delta",
            ParamName::G => "g",
            ParamName::GammaH => "gamma_h",
            ParamName::GammaC => "gamma_c",
            ParamName::TempH => "temp_h",
            ParamName::TempC => "temp_c",
            ParamName::KappaH => "kappa_h",
            ParamName::KappaC => "kappa_c",
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_").to_ascii_lowercase();
        ParamName::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| EngineError::Spec(format!("unknown parameter `{s}`")))
    }
}

/// All physical parameters of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineParams {
    /// Hot-qubit gap ε_h.
    pub eps_h: f64,
    /// Detuning δ = ε_c − ε_h.
    #[serde(default)]
    pub delta: f64,
    /// Exchange coupling between the qubits.
    pub g: f64,
    pub gamma_h: f64,
    pub gamma_c: f64,
    pub temp_h: f64,
    pub temp_c: f64,
    /// σ_x tunnelling amplitude on the hot qubit.
    #[serde(default)]
    pub kappa_h: f64,
    /// σ_x tunnelling amplitude on the cold qubit.
    #[serde(default)]
    pub kappa_c: f64,
    #[serde(default)]
    pub regime: Regime,
}

/// Non-fatal warning about the physical validity of a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Advisory {
    /// Local regime with g well above the bath couplings.
    InterQubitCouplingNotWeak,
    /// Some γ_j is not small compared to the qubit gap.
    BathCouplingNotWeak,
    /// |δ|/ε_h above 0.1.
    LargeDetuning,
    /// Tunnelling present while the dissipators still act on bare σ±.
    TunnellingWithBareDissipators,
    /// Global regime with g not much larger than the bath couplings.
    InterQubitCouplingNotStrong,
}

impl EngineParams {
    /// Local-regime parameters with zero detuning and tunnelling.
    pub fn local(eps_h: f64, g: f64, gamma_h: f64, gamma_c: f64, temp_h: f64, temp_c: f64) -> Self {
        EngineParams {
            eps_h,
            delta: 0.0,
            g,
            gamma_h,
            gamma_c,
            temp_h,
            temp_c,
            kappa_h: 0.0,
            kappa_c: 0.0,
            regime: Regime::Local,
        }
    }

    /// Resonant global-regime parameters (ε_h = ε_c = `eps`).
    pub fn global(eps: f64, g: f64, gamma_h: f64, gamma_c: f64, temp_h: f64, temp_c: f64) -> Self {
        EngineParams {
            regime: Regime::Global,
            ..Self::local(eps, g, gamma_h, gamma_c, temp_h, temp_c)
        }
    }

    /// Cold-qubit gap ε_c = ε_h + δ.
    pub fn eps_c(&self) -> f64 {
        self.eps_h + self.delta
    }

    pub fn gap(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Hot => self.eps_h,
            Bath::Cold => self.eps_c(),
        }
    }

    pub fn bare_rate(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Hot => self.gamma_h,
            Bath::Cold => self.gamma_c,
        }
    }

    pub fn temp(&self, bath: Bath) -> f64 {
        match bath {
            Bath::Hot => self.temp_h,
            Bath::Cold => self.temp_c,
        }
    }

    pub fn has_tunnelling(&self) -> bool {
        self.kappa_h != 0.0 || self.kappa_c != 0.0
    }

    pub fn get(&self, name: ParamName) -> f64 {
        match name {
            ParamName::EpsH => self.eps_h,
            ParamName::Delta => self.delta,
            ParamName::G => self.g,
            ParamName::GammaH => self.gamma_h,
            ParamName::GammaC => self.gamma_c,
            ParamName::TempH => self.temp_h,
            ParamName::TempC => self.temp_c,
            ParamName::KappaH => self.kappa_h,
            ParamName::KappaC => self.kappa_c,
        }
    }

    pub fn set(&mut self, name: ParamName, value: f64) {
        let slot = match name {
            ParamName::EpsH => &mut self.eps_h,
            ParamName::Delta => &mut self.delta,
            ParamName::G => &mut self.g,
            ParamName::GammaH => &mut self.gamma_h,
            ParamName::GammaC => &mut self.gamma_c,
            ParamName::TempH => &mut self.temp_h,
            ParamName::TempC => &mut self.temp_c,
            ParamName::KappaH => &mut self.kappa_h,
            ParamName::KappaC => &mut self.kappa_c,
        };
        *slot = value;
    }

    pub fn with(mut self, name: ParamName, value: f64) -> Self {
        self.set(name, value);
        self
    }

    /// Checks the invariants shared by both regimes.
    pub fn validate_common(&self) -> Result<()> {
        for name in ParamName::ALL {
            let v = self.get(name);
            if !v.is_finite() {
                return Err(EngineError::domain(format!("{name} must be finite, got {v}")));
            }
        }
        if self.eps_h <= 0.0 {
            return Err(EngineError::domain(format!("eps_h must be positive, got {}", self.eps_h)));
        }
        if self.eps_c() <= 0.0 {
            return Err(EngineError::domain(format!(
                "eps_c = eps_h + delta must be positive, got {}",
                self.eps_c()
            )));
        }
        if self.gamma_h <= 0.0 || self.gamma_c <= 0.0 {
            return Err(EngineError::domain(format!(
                "bath couplings must be positive, got gamma_h={}, gamma_c={}",
                self.gamma_h, self.gamma_c
            )));
        }
        if self.temp_h < 0.0 || self.temp_c < 0.0 {
            return Err(EngineError::domain(format!(
                "temperatures must be non-negative, got temp_h={}, temp_c={}",
                self.temp_h, self.temp_c
            )));
        }
        if self.g < 0.0 {
            return Err(EngineError::domain(format!("g must be non-negative, got {}", self.g)));
        }
        Ok(())
    }

    /// Checks every invariant, including the regime-specific ones.
    pub fn validate(&self) -> Result<()> {
        self.validate_common()?;
        if self.regime == Regime::Global {
            if self.delta != 0.0 {
                return Err(EngineError::domain("global regime requires delta = 0"));
            }
            if self.has_tunnelling() {
                return Err(EngineError::domain("global regime requires kappa_h = kappa_c = 0"));
            }
            if !(self.g > 0.0 && self.g < self.eps_h) {
                return Err(EngineError::domain(format!(
                    "global regime requires 0 < g < eps_h, got g={} eps_h={}",
                    self.g, self.eps_h
                )));
            }
        }
        Ok(())
    }

    /// Validity warnings for the chosen regime. Never fails.
    pub fn advisories(&self) -> Vec<Advisory> {
        let mut out = Vec::new();
        let max_gamma = self.gamma_h.max(self.gamma_c);
        if self.gamma_h > 0.1 * self.eps_h || self.gamma_c > 0.1 * self.eps_c() {
            out.push(Advisory::BathCouplingNotWeak);
        }
        match self.regime {
            Regime::Local => {
                if self.g > self.gamma_h + self.gamma_c {
                    out.push(Advisory::InterQubitCouplingNotWeak);
                }
                if self.delta.abs() > 0.1 * self.eps_h {
                    out.push(Advisory::LargeDetuning);
                }
                if self.has_tunnelling() {
                    out.push(Advisory::TunnellingWithBareDissipators);
                }
            }
            Regime::Global => {
                if self.g < 10.0 * max_gamma {
                    out.push(Advisory::InterQubitCouplingNotStrong);
                }
            }
        }
        out
    }
}
