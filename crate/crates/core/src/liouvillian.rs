// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Vectorised Lindblad generators and the numeric steady state.
//!
//! The full generator acts on the 16 entries of ρ in row-major order. The
//! affine form drops ρ₄₄ (the |00⟩ population) through Tr ρ = 1, leaving a
//! 15-component coordinate vector `p` with `dp/dt = M p + b`.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;

use crate::analytic::dressed_eigensystem;
use crate::bath::{global_rates, local_rates};
use crate::error::{EngineError, Result};
use crate::operators::{
    dissipator_superop, hamiltonian_superop, on_qubit, sigma_minus, sigma_plus, total_hamiltonian,
    unvectorize, vectorize, Superoperator, VecState,
};
use crate::params::{Bath, Branch, EngineParams, Regime};
use crate::state::{DensityMatrix, Operator};

pub type AffineMatrix = SMatrix<Complex64, 15, 15>;
pub type Coordinates = SVector<Complex64, 15>;

/// Positions of ρ₁₁, ρ₂₂, ρ₃₃ in the coordinate vector.
pub const POPULATION_COORDS: [usize; 3] = [0, 5, 10];

/// Condition number above which the affine system is treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// One Lindblad channel: `rate · D[op]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jump {
    pub rate: f64,
    pub op: Operator,
}

impl Jump {
    pub fn new(rate: f64, op: Operator) -> Self {
        Jump { rate, op }
    }
}

/// Dissipative channels contributed by one bath.
pub fn bath_jumps(params: &EngineParams, bath: Bath) -> Result<Vec<Jump>> {
    params.validate()?;
    match params.regime {
        Regime::Local => {
            let r = local_rates(params, bath)?;
            Ok(vec![
                Jump::new(r.gamma_plus, on_qubit(&sigma_plus(), bath)),
                Jump::new(r.gamma_minus, on_qubit(&sigma_minus(), bath)),
            ])
        }
        Regime::Global => {
            let mut jumps = Vec::with_capacity(4);
            for branch in Branch::BOTH {
                let r = global_rates(params, bath, branch)?;
                let l = dressed_lowering(params, bath, branch);
                jumps.push(Jump::new(r.gamma_minus, l));
                jumps.push(Jump::new(r.gamma_plus, l.adjoint()));
            }
            Ok(jumps)
        }
    }
}

/// Lowering operator L̂_j(ε∓g) between eigenstates of H_S + H_int:
///
/// L(ε₋) = |0⟩⟨0|σ₋|ε₋⟩⟨ε₋| + |ε₊⟩⟨ε₊|σ₋|2⟩⟨2|,
/// L(ε₊) = |0⟩⟨0|σ₋|ε₊⟩⟨ε₊| + |ε₋⟩⟨ε₋|σ₋|2⟩⟨2|.
pub fn dressed_lowering(params: &EngineParams, bath: Bath, branch: Branch) -> Operator {
    let levels = dressed_eigensystem(params.eps_h, params.g);
    let proj = |k: usize| levels[k].state * levels[k].state.adjoint();
    let sm = on_qubit(&sigma_minus(), bath);
    let (ground, minus, plus, top) = (0, 1, 2, 3);
    match branch {
        Branch::Minus => proj(ground) * sm * proj(minus) + proj(plus) * sm * proj(top),
        Branch::Plus => proj(ground) * sm * proj(plus) + proj(minus) * sm * proj(top),
    }
}

/// The vectorised generator of a two-qubit Lindblad equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Liouvillian {
    full: Superoperator,
    affine: AffineMatrix,
    inhomogeneity: Coordinates,
    regime: Regime,
}

impl Liouvillian {
    /// Generator of `−i[H, ρ] + Σ rate·D[op]ρ`.
    pub fn from_operators(hamiltonian: &Operator, jumps: &[Jump], regime: Regime) -> Self {
        let mut full = hamiltonian_superop(hamiltonian);
        for j in jumps {
            if j.rate != 0.0 {
                full += dissipator_superop(&j.op) * Complex64::from(j.rate);
            }
        }
        Self::from_superoperator(full, regime)
    }

    pub fn from_superoperator(full: Superoperator, regime: Regime) -> Self {
        let inhomogeneity = Coordinates::from_fn(|a, _| full[(a, 15)]);
        let affine = AffineMatrix::from_fn(|a, b| {
            let shift = if POPULATION_COORDS.contains(&b) { full[(a, 15)] } else { Complex64::from(0.0) };
            full[(a, b)] - shift
        });
        Liouvillian { full, affine, inhomogeneity, regime }
    }

    /// Local master equation, including any σ_x tunnelling terms in H_S.
    pub fn build_local(params: &EngineParams) -> Result<Self> {
        if params.regime != Regime::Local {
            return Err(EngineError::domain("build_local needs regime = local"));
        }
        Self::build(params)
    }

    /// Global master equation with jumps between dressed eigenstates.
    pub fn build_global(params: &EngineParams) -> Result<Self> {
        if params.regime != Regime::Global {
            return Err(EngineError::domain("build_global needs regime = global"));
        }
        Self::build(params)
    }

    /// Builds the generator for whichever regime `params` selects.
    pub fn build(params: &EngineParams) -> Result<Self> {
        params.validate()?;
        let mut jumps = bath_jumps(params, Bath::Hot)?;
        jumps.extend(bath_jumps(params, Bath::Cold)?);
        Ok(Self::from_operators(&total_hamiltonian(params), &jumps, params.regime))
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// The 16×16 generator acting on the row-major vectorised ρ.
    pub fn full_superoperator(&self) -> &Superoperator {
        &self.full
    }

    /// M in `dp/dt = M p + b`.
    pub fn affine_matrix(&self) -> &AffineMatrix {
        &self.affine
    }

    /// b in `dp/dt = M p + b`.
    pub fn inhomogeneity(&self) -> &Coordinates {
        &self.inhomogeneity
    }

    /// dρ/dt for an arbitrary operator.
    pub fn apply(&self, rho: &Operator) -> Operator {
        unvectorize(&(self.full * vectorize(rho)))
    }

    /// M p + b.
    pub fn derivative(&self, p: &Coordinates) -> Coordinates {
        self.affine * p + self.inhomogeneity
    }

    /// Eigenvalues of the full superoperator.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let t = self.full.schur().unpack().1;
        (0..16).map(|i| t[(i, i)]).collect()
    }

    /// Number of singular values of the full superoperator below `rel_tol · σ_max`.
    pub fn null_space_dimension(&self, rel_tol: f64) -> usize {
        let sv = self.full.singular_values();
        let max = sv.max();
        sv.iter().filter(|s| **s <= rel_tol * max).count()
    }

    /// Unique steady state from the dense solve `p = −M⁻¹ b`.
    pub fn steady_state_numeric(&self) -> Result<DensityMatrix> {
        let sv = self.affine.singular_values();
        let (max, min) = (sv.max(), sv.min());
        let condition = if min > 0.0 { max / min } else { f64::INFINITY };
        if !(condition <= MAX_CONDITION) {
            return Err(EngineError::DegenerateSteadyState {
                condition,
                null_space_dim: self.null_space_dimension(1e-10),
            });
        }
        let lu = self.affine.lu();
        let rhs = -self.inhomogeneity;
        let mut p = lu.solve(&rhs).ok_or(EngineError::DegenerateSteadyState {
            condition,
            null_space_dim: self.null_space_dimension(1e-10),
        })?;
        // one step of iterative refinement
        let residual = rhs - self.affine * p;
        if let Some(correction) = lu.solve(&residual) {
            p += correction;
        }
        DensityMatrix::new(coordinates_to_matrix(&p))
    }
}

/// The first 15 row-major entries of ρ.
pub fn matrix_to_coordinates(rho: &Operator) -> Coordinates {
    Coordinates::from_fn(|k, _| rho[(k / 4, k % 4)])
}

/// Rebuilds ρ from its coordinates, restoring ρ₄₄ from the trace constraint.
pub fn coordinates_to_matrix(p: &Coordinates) -> Operator {
    let mut v = VecState::zeros();
    v.fixed_rows_mut::<15>(0).copy_from(p);
    v[15] = Complex64::from(1.0) - POPULATION_COORDS.iter().map(|&k| p[k]).sum::<Complex64>();
    unvectorize(&v)
}
