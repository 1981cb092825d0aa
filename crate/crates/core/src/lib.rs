// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady states, heat currents and entanglement of two qubits coupled to
//! a hot and a cold bosonic bath.

pub mod analytic;
pub mod bath;
pub mod error;
pub mod evolve;
pub mod experiments;
pub mod liouvillian;
pub mod observables;
pub mod operators;
pub mod params;
pub mod state;

pub use error::{EngineError, Result};
pub use params::{Bath, Branch, EngineParams, ParamName, Regime};
pub use state::DensityMatrix;
