// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit density matrices in the basis {|11⟩, |10⟩, |01⟩, |00⟩}.
//!
//! The first label is the hot qubit, the second the cold qubit, and `1`
//! denotes the excited level.

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{EngineError, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Index of |11⟩.
pub const IDX_11: usize = 0;
/// Index of |10⟩ (hot excited, cold ground).
pub const IDX_10: usize = 1;
/// Index of |01⟩ (hot ground, cold excited).
pub const IDX_01: usize = 2;
/// Index of |00⟩.
pub const IDX_00: usize = 3;

pub type Operator = Matrix4<Complex64>;

/// Which qubit a partial transpose acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Hot,
    Cold,
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Operator);

impl DensityMatrix {
    /// Validates `m` and wraps it.
    pub fn new(m: Operator) -> Result<Self> {
        check_density(&m)?;
        Ok(DensityMatrix(m))
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: &Vector4<Complex64>) -> Result<Self> {
        let norm = psi.norm();
        if !(norm > 0.0) {
            return Err(EngineError::InvalidState("zero state vector".into()));
        }
        let psi = psi / Complex64::from(norm);
        Self::new(psi * psi.adjoint())
    }

    /// |k⟩⟨k| for a computational basis index.
    pub fn basis(index: usize) -> Self {
        let mut m = Operator::zeros();
        m[(index, index)] = Complex64::from(1.0);
        DensityMatrix(m)
    }

    /// ρ_h ⊗ ρ_c from the two single-qubit excited-state probabilities.
    pub fn product_diagonal(p_hot: f64, p_cold: f64) -> Result<Self> {
        let diag = [
            p_hot * p_cold,
            p_hot * (1.0 - p_cold),
            (1.0 - p_hot) * p_cold,
            (1.0 - p_hot) * (1.0 - p_cold),
        ];
        Self::new(Operator::from_diagonal(&Vector4::from(diag.map(Complex64::from))))
    }

    /// The X-form state with populations `r` and coherence `c = ⟨10|ρ|01⟩`.
    pub fn x_form(r: [f64; 4], c: Complex64) -> Result<Self> {
        let mut m = Operator::from_diagonal(&Vector4::from(r.map(Complex64::from)));
        m[(IDX_10, IDX_01)] = c;
        m[(IDX_01, IDX_10)] = c.conj();
        Self::new(m)
    }

    pub fn matrix(&self) -> &Operator {
        &self.0
    }

    pub fn into_matrix(self) -> Operator {
        self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn populations(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.0[(i, i)].re)
    }

    /// ⟨10|ρ|01⟩, the inter-qubit coherence of the X-form.
    pub fn coherence(&self) -> Complex64 {
        self.0[(IDX_10, IDX_01)]
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.0)
    }

    pub fn partial_transpose(&self, sub: Subsystem) -> Operator {
        partial_transpose(&self.0, sub)
    }

    /// Tr[A ρ].
    pub fn expectation(&self, op: &Operator) -> Complex64 {
        (op * self.0).trace()
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix) -> f64 {
        (self.0 - other.0).norm()
    }

    pub fn max_entry_distance(&self, other: &DensityMatrix) -> f64 {
        max_abs_entry(&(self.0 - other.0))
    }

    /// Excited-state probabilities of the hot and cold qubits.
    pub fn excitations(&self) -> (f64, f64) {
        let [r1, r2, r3, _] = self.populations();
        (r1 + r2, r1 + r3)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |f: fn(&Complex64) -> f64| -> Vec<[f64; 4]> {
            (0..4).map(|i| [0, 1, 2, 3].map(|j| f(&self.0[(i, j)]))).collect()
        };
        let mut s = serializer.serialize_struct("DensityMatrix", 3)?;
        s.serialize_field("basis", &["11", "10", "01", "00"])?;
        s.serialize_field("re", &rows(|z| z.re))?;
        s.serialize_field("im", &rows(|z| z.im))?;
        s.end()
    }
}

pub(crate) fn max_abs_entry(m: &Operator) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Ascending eigenvalues of a Hermitian 4×4 matrix (only the lower triangle is read).
pub fn hermitian_eigenvalues(m: &Operator) -> [f64; 4] {
    let eig = SymmetricEigen::new(*m);
    let mut ev = [0, 1, 2, 3].map(|i| eig.eigenvalues[i]);
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Partial transpose over one qubit of a two-qubit operator.
pub fn partial_transpose(m: &Operator, sub: Subsystem) -> Operator {
    // index = 2 * hot + cold, with bit value 0 meaning "excited"
    Operator::from_fn(|row, col| {
        let (hr, cr) = (row / 2, row % 2);
        let (hc, cc) = (col / 2, col % 2);
        let (src_row, src_col) = match sub {
            Subsystem::Hot => (2 * hc + cr, 2 * hr + cc),
            Subsystem::Cold => (2 * hr + cc, 2 * hc + cr),
        };
        m[(src_row, src_col)]
    })
}

fn check_density(m: &Operator) -> Result<()> {
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(EngineError::InvalidState("non-finite entry".into()));
    }
    let herm = max_abs_entry(&(m - m.adjoint()));
    if herm > HERMITIAN_TOL {
        return Err(EngineError::InvalidState(format!("not Hermitian (deviation {herm:.3e})")));
    }
    let tr = m.trace();
    if (tr - Complex64::from(1.0)).norm() > TRACE_TOL {
        return Err(EngineError::InvalidState(format!("trace {tr} differs from 1")));
    }
    let lowest = hermitian_eigenvalues(&((m + m.adjoint()) * Complex64::from(0.5)))[0];
    if lowest < -PSD_TOL {
        return Err(EngineError::InvalidState(format!("negative eigenvalue {lowest:.3e}")));
    }
    Ok(())
}
