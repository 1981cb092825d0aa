// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit operators and their superoperator representations.
//!
//! Density matrices are vectorised row by row: `vec(ρ)[4i + j] = ρ_ij`.
//! With that layout `vec(A ρ B) = (A ⊗ Bᵀ) vec(ρ)`.

use nalgebra::{Matrix2, SMatrix, SVector};
use num_complex::Complex64;

use crate::params::{Bath, EngineParams};
use crate::state::Operator;

pub type Superoperator = SMatrix<Complex64, 16, 16>;
pub type VecState = SVector<Complex64, 16>;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// σ₊ = |1⟩⟨0| with |1⟩ = (1, 0)ᵀ.
pub fn sigma_plus() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, ONE, ZERO, ZERO)
}

pub fn sigma_minus() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, ZERO, ONE, ZERO)
}

pub fn sigma_x() -> Matrix2<Complex64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

/// Embeds a single-qubit operator on the given qubit (hot is the first factor).
pub fn on_qubit(op: &Matrix2<Complex64>, bath: Bath) -> Operator {
    let id = Matrix2::<Complex64>::identity();
    match bath {
        Bath::Hot => op.kronecker(&id).fixed_view::<4, 4>(0, 0).into_owned(),
        Bath::Cold => id.kronecker(op).fixed_view::<4, 4>(0, 0).into_owned(),
    }
}

pub fn number(bath: Bath) -> Operator {
    on_qubit(&(sigma_plus() * sigma_minus()), bath)
}

/// H_S = Σ_j ε_j σ₊σ₋ + κ_j σ_x.
pub fn system_hamiltonian(params: &EngineParams) -> Operator {
    let mut h = Operator::zeros();
    for bath in Bath::BOTH {
        h += number(bath) * Complex64::from(params.gap(bath));
    }
    let kappa = [(Bath::Hot, params.kappa_h), (Bath::Cold, params.kappa_c)];
    for (bath, k) in kappa {
        if k != 0.0 {
            h += on_qubit(&sigma_x(), bath) * Complex64::from(k);
        }
    }
    h
}

/// H_int = g (σ₊ʰσ₋ᶜ + σ₋ʰσ₊ᶜ).
pub fn interaction_hamiltonian(g: f64) -> Operator {
    let flip = on_qubit(&sigma_plus(), Bath::Hot) * on_qubit(&sigma_minus(), Bath::Cold);
    (flip + flip.adjoint()) * Complex64::from(g)
}

/// H_S + H_int.
pub fn total_hamiltonian(params: &EngineParams) -> Operator {
    system_hamiltonian(params) + interaction_hamiltonian(params.g)
}

pub fn vectorize(m: &Operator) -> VecState {
    VecState::from_fn(|k, _| m[(k / 4, k % 4)])
}

pub fn unvectorize(v: &VecState) -> Operator {
    Operator::from_fn(|i, j| v[4 * i + j])
}

fn kron4(a: &Operator, b: &Operator) -> Superoperator {
    Superoperator::from_fn(|r, c| a[(r / 4, c / 4)] * b[(r % 4, c % 4)])
}

/// ρ ↦ A ρ
pub fn left(a: &Operator) -> Superoperator {
    kron4(a, &Operator::identity())
}

/// ρ ↦ ρ B
pub fn right(b: &Operator) -> Superoperator {
    kron4(&Operator::identity(), &b.transpose())
}

/// ρ ↦ −i[H, ρ]
pub fn hamiltonian_superop(h: &Operator) -> Superoperator {
    (left(h) - right(h)) * Complex64::new(0.0, -1.0)
}

/// ρ ↦ A ρ A† − ½{A†A, ρ}
pub fn dissipator_superop(a: &Operator) -> Superoperator {
    let ad = a.adjoint();
    let ada = ad * a;
    kron4(a, &ad.transpose()) - (left(&ada) + right(&ada)) * Complex64::from(0.5)
}

/// Direct operator-form dissipator, independent of the vectorisation.
pub fn apply_dissipator(a: &Operator, rho: &Operator) -> Operator {
    let ad = a.adjoint();
    let ada = ad * a;
    a * rho * ad - (ada * rho + rho * ada) * Complex64::from(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{IDX_00, IDX_01, IDX_10, IDX_11};

    #[test]
    fn ladder_operators_act_on_the_right_qubit() {
        let sp_h = on_qubit(&sigma_plus(), Bath::Hot);
        // σ₊ʰ|01⟩ = |11⟩ and σ₊ʰ|00⟩ = |10⟩
        assert_eq!(sp_h[(IDX_11, IDX_01)], ONE);
        assert_eq!(sp_h[(IDX_10, IDX_00)], ONE);
        assert_eq!(sp_h.iter().filter(|z| **z != ZERO).count(), 2);
        let sm_c = on_qubit(&sigma_minus(), Bath::Cold);
        assert_eq!(sm_c[(IDX_10, IDX_11)], ONE);
        assert_eq!(sm_c[(IDX_00, IDX_01)], ONE);
    }

    #[test]
    fn hamiltonian_is_diagonal_plus_flip_flop() {
        let p = EngineParams { delta: 0.02, ..EngineParams::local(1.0, 0.1, 1e-3, 1e-3, 0.5, 0.1) };
        let h = total_hamiltonian(&p);
        assert_eq!(h[(IDX_11, IDX_11)].re, 2.02);
        assert_eq!(h[(IDX_10, IDX_10)].re, 1.0);
        assert_eq!(h[(IDX_01, IDX_01)].re, 1.02);
        assert_eq!(h[(IDX_10, IDX_01)].re, 0.1);
        assert_eq!(h[(IDX_01, IDX_10)].re, 0.1);
        assert_eq!(h[(IDX_00, IDX_00)].re, 0.0);
    }

    #[test]
    fn superoperators_match_operator_products() {
        let a = Operator::from_fn(|i, j| Complex64::new((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.07));
        let b = Operator::from_fn(|i, j| Complex64::new(((i * j) % 3) as f64 * 0.2, 0.05 * i as f64));
        let rho = Operator::from_fn(|i, j| Complex64::new(0.01 * (i + j) as f64, 0.03 * (i as f64 - j as f64)));
        let lhs = unvectorize(&(left(&a) * vectorize(&rho)));
        assert!((lhs - a * rho).norm() < 1e-15);
        let rhs = unvectorize(&(right(&b) * vectorize(&rho)));
        assert!((rhs - rho * b).norm() < 1e-15);
        let d = unvectorize(&(dissipator_superop(&a) * vectorize(&rho)));
        assert!((d - apply_dissipator(&a, &rho)).norm() < 1e-14);
    }
}
