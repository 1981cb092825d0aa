// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random parameter sets shared by the integration tests.

#![allow(dead_code)]

use entanglement_engine::EngineParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform draw on `[lo, hi]`.
pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

/// Weak-coupling set without tunnelling. Either bath may be the hotter one.
pub fn random_local(rng: &mut impl Rng) -> EngineParams {
    let eps_h = rng.random_range(0.5..2.0);
    let t_c = rng.random_range(0.05..1.0);
    EngineParams {
        delta: rng.random_range(-0.2..0.2) * eps_h,
        ..EngineParams::local(
            eps_h,
            log_uniform(rng, 1e-4, 1e-2),
            log_uniform(rng, 1e-4, 1e-2),
            log_uniform(rng, 1e-4, 1e-2),
            rng.random_range(0.05..2.0),
            t_c,
        )
    }
}

/// Weak-coupling set with a hot bath at least as warm as the cold one, drawn
/// near the working point so that both entangled and separable states occur.
pub fn random_local_engine(rng: &mut impl Rng) -> EngineParams {
    let t_c = rng.random_range(0.01..0.3);
    EngineParams {
        delta: rng.random_range(0.0..0.1),
        ..EngineParams::local(
            1.0,
            log_uniform(rng, 1e-4, 1e-2),
            log_uniform(rng, 1e-4, 1e-2),
            log_uniform(rng, 1e-3, 1e-1),
            rng.random_range(t_c..2.0),
            t_c,
        )
    }
}

/// Weak-coupling set with tunnelling on one or both qubits.
pub fn random_tunnelling(rng: &mut impl Rng) -> EngineParams {
    let mut p = random_local(rng);
    p.kappa_h = rng.random_range(0.0..0.2) * p.eps_h;
    p.kappa_c = if rng.random_bool(0.5) { rng.random_range(0.0..0.2) * p.eps_h } else { 0.0 };
    if p.kappa_h == 0.0 && p.kappa_c == 0.0 {
        p.kappa_h = 0.05 * p.eps_h;
    }
    p
}

/// Strong-coupling set on resonance.
pub fn random_global(rng: &mut impl Rng) -> EngineParams {
    let eps = rng.random_range(0.5..2.0);
    EngineParams::global(
        eps,
        rng.random_range(0.05..0.9) * eps,
        log_uniform(rng, 1e-4, 1e-2),
        log_uniform(rng, 1e-4, 1e-2),
        rng.random_range(0.05..2.0),
        rng.random_range(0.05..1.0),
    )
}

/// Which family [`random_driven`] draws from.
#[derive(Debug, Clone, Copy)]
pub enum Family {
    Local,
    Tunnelling,
    Global,
}

/// A set with a clear temperature bias and a current well above the
/// rounding floor of the dissipator traces: T_h between 1.5 and 6 times T_c,
/// g at least 1e-3 and small detuning.
pub fn random_driven(rng: &mut impl Rng, family: Family) -> EngineParams {
    let t_c = rng.random_range(0.05..0.5);
    let t_h = t_c * rng.random_range(1.5..6.0);
    let g = log_uniform(rng, 1e-3, 1e-2);
    let (gh, gc) = (log_uniform(rng, 1e-4, 1e-2), log_uniform(rng, 1e-4, 1e-2));
    match family {
        Family::Local => EngineParams { delta: rng.random_range(-0.05..0.05), ..EngineParams::local(1.0, g, gh, gc, t_h, t_c) },
        Family::Tunnelling => EngineParams {
            delta: rng.random_range(0.0..0.05),
            kappa_h: rng.random_range(0.0..0.1),
            ..EngineParams::local(1.0, g, gh, gc, t_h, t_c)
        },
        Family::Global => EngineParams::global(1.0, rng.random_range(0.05..0.9), gh, gc, t_h, t_c),
    }
}
