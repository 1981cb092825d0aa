// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps, searches and figure datasets.

pub mod figures;
pub mod search;
pub mod sweep;
pub mod table;

pub use figures::{emit_figure, FigureId, FigureOverrides};
pub use search::{
    bisect, find_kappa_max, golden_section_max, optimize_negativity, thermal_negativity_max, FreeParam,
    KappaMax, KappaObjective, OptimizationResult,
};
pub use sweep::{sweep, Axis, Observable, Scale, SweepSpec};
pub use table::{Cell, SweepTable};
