// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, EngineError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    /// A parameter or argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// No closed form exists for the requested parameters (e.g. tunnelling);
    /// the numeric path must be used instead.
    #[error("no closed form available: {0}")]
    UnsupportedAnalytic(String),

    /// The affine generator is numerically singular, so the steady state is not unique.
    #[error(
        "steady state is not unique: generator condition number {condition:.3e}, \
         null space dimension {null_space_dim}"
    )]
    DegenerateSteadyState { condition: f64, null_space_dim: usize },

    #[error("integration failed: {0}")]
    Integration(String),

    /// A matrix failed the density-matrix checks (Hermitian, unit trace, PSD).
    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid specification: {0}")]
    Spec(String),

    #[error("objective is flat across the search bracket")]
    FlatObjective,
}

impl EngineError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        EngineError::Domain(msg.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            EngineError::Domain(_)
            | EngineError::UnsupportedAnalytic(_)
            | EngineError::InvalidState(_)
            | EngineError::Spec(_) => 2,
            EngineError::DegenerateSteadyState { .. }
            | EngineError::Integration(_)
            | EngineError::FlatObjective => 3,
        }
    }
}
