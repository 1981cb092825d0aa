// Copyright 2026 The entanglement-engine Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::{Command, ExitCode};
use std::time::Instant;

use nalgebra::Vector4;
use num_complex::Complex64;
use rand::Rng;

use entanglement_engine::analytic::{global_closed_form, local_closed_form, thermal_negativity};
use entanglement_engine::evolve::evolve;
use entanglement_engine::experiments::figures::{
    entanglement_boundary, weak_coupling_base, strong_coupling_base, FIG2_TEMPS, FIG3A_DELTA_MAX, FIG3A_TEMP_H,
    FIG3B_DELTA, FIG3B_TEMP_RANGE, FIG4_DELTA, FIG4_KAPPA_MAX, FIG6B_GAMMA_C, FIG6B_G_RANGE, FIG6_TEMP_H_MAX,
};
use entanglement_engine::experiments::{
    bisect, find_kappa_max, optimize_negativity, thermal_negativity_max, FreeParam, KappaObjective,
};
use entanglement_engine::liouvillian::Liouvillian;
use entanglement_engine::observables::{negativity, negativity_x_form, report};
use entanglement_engine::state::{IDX_00, IDX_01, IDX_10};
use entanglement_engine::{DensityMatrix, EngineParams, ParamName};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn occupation(energy: f64, temp: f64) -> f64 {
    1.0 / (energy / temp).exp_m1()
}

/// The 15×15 affine generator and inhomogeneity written out entry by entry.
fn reference_generator(p: &EngineParams) -> ([[Complex64; 15]; 15], [Complex64; 15]) {
    let (eh, ec, g, d) = (p.eps_h, p.eps_h + p.delta, p.g, p.delta);
    let nh = occupation(eh, p.temp_h);
    let nc = occupation(ec, p.temp_c);
    let (hp, hm) = (p.gamma_h * nh, p.gamma_h * (nh + 1.0));
    let (cp, cm) = (p.gamma_c * nc, p.gamma_c * (nc + 1.0));
    let (big_h, big_c) = (hp + hm, cp + cm);
    let big = big_h + big_c;
    let z = c(0.0, 0.0);
    let ig = c(0.0, g);
    let mut m = [[z; 15]; 15];
    let mut set = |row: usize, entries: &[(usize, Complex64)]| {
        for (col, v) in entries {
            m[row][*col] = *v;
        }
    };
    set(0, &[(0, c(-hm - cm, 0.0)), (5, c(cp, 0.0)), (10, c(hp, 0.0))]);
    set(1, &[(1, c(0.5 * (-2.0 * hm - big_c), -ec)), (2, ig), (11, c(hp, 0.0))]);
    set(2, &[(1, ig), (2, c(0.5 * (-big_h - 2.0 * cm), -eh)), (7, c(cp, 0.0))]);
    set(3, &[(3, c(-0.5 * big, -(eh + ec)))]);
    set(4, &[(4, c(0.5 * (-2.0 * hm - big_c), ec)), (8, -ig), (14, c(hp, 0.0))]);
    set(
        5,
        &[(0, c(cm - hp, 0.0)), (5, c(-big_h - cp, 0.0)), (6, ig), (9, -ig), (10, c(-hp, 0.0))],
    );
    set(6, &[(5, ig), (6, c(-0.5 * big, d)), (10, -ig)]);
    set(7, &[(2, c(cm, 0.0)), (7, c(0.5 * (-big_h - 2.0 * cp), -eh)), (11, -ig)]);
    set(8, &[(4, -ig), (8, c(0.5 * (-big_h - 2.0 * cm), eh)), (13, c(cp, 0.0))]);
    set(9, &[(5, -ig), (9, c(-0.5 * big, -d)), (10, ig)]);
    set(
        10,
        &[(0, c(hm - cp, 0.0)), (5, c(-cp, 0.0)), (6, -ig), (9, ig), (10, c(-hp - big_c, 0.0))],
    );
    set(11, &[(1, c(hm, 0.0)), (7, -ig), (11, c(0.5 * (-2.0 * hp - big_c), -ec))]);
    set(12, &[(12, c(-0.5 * big, eh + ec))]);
    set(13, &[(8, c(cm, 0.0)), (13, c(0.5 * (-big_h - 2.0 * cp), eh)), (14, ig)]);
    set(14, &[(4, c(hm, 0.0)), (13, ig), (14, c(0.5 * (-2.0 * hp - big_c), ec))]);
    let mut b = [z; 15];
    b[5] = c(hp, 0.0);
    b[10] = c(cp, 0.0);
    (m, b)
}

fn criterion_1() -> Outcome {
    let mut rng = common::rng(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = common::random_local(&mut rng);
        let liou = Liouvillian::build_local(&p).map_err(|e| e.to_string())?;
        let (m, b) = reference_generator(&p);
        let built = liou.affine_matrix();
        for (i, row) in m.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                worst = worst.max((built[(i, j)] - want).norm());
            }
            worst = worst.max((liou.inhomogeneity()[i] - b[i]).norm());
        }
    }
    let detail = format!("max |M - M_ref|, |b - b_ref| over 20 sets = {worst:.2e}");
    if worst <= 1e-14 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(2);
    let (mut worst_local, mut worst_global) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let p = common::random_local(&mut rng);
        let exact = local_closed_form(&p).and_then(|s| s.density_matrix()).map_err(|e| e.to_string())?;
        let numeric = Liouvillian::build(&p).and_then(|l| l.steady_state_numeric()).map_err(|e| e.to_string())?;
        worst_local = worst_local.max(exact.max_entry_distance(&numeric));
    }
    for _ in 0..200 {
        let p = common::random_global(&mut rng);
        let exact = global_closed_form(&p).and_then(|s| s.density_matrix()).map_err(|e| e.to_string())?;
        let numeric = Liouvillian::build(&p).and_then(|l| l.steady_state_numeric()).map_err(|e| e.to_string())?;
        worst_global = worst_global.max(exact.max_entry_distance(&numeric));
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = format!("max entry gap local {worst_local:.2e}, global {worst_global:.2e}, {secs:.2} s");
    if worst_local < 1e-11 && worst_global < 1e-11 && secs < 5.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_3() -> Outcome {
    let p = weak_coupling_base();
    let liou = Liouvillian::build(&p).map_err(|e| e.to_string())?;
    let target = liou.steady_state_numeric().map_err(|e| e.to_string())?;
    let t_final = 100.0 / p.gamma_h;
    let run = evolve(&liou, &DensityMatrix::basis(IDX_00), t_final, 10.0).map_err(|e| e.to_string())?;
    let dist = run.state.frobenius_distance(&target);
    let detail = format!("Frobenius distance {dist:.2e} at t = {:.3e} (budget {t_final:.0e})", run.time);
    if dist < 1e-8 && run.time <= t_final {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_4() -> Outcome {
    use common::Family;
    let mut rng = common::rng(4);

    // relative bound where the current is well above the rounding floor
    let mut worst = 0.0f64;
    for family in [Family::Local, Family::Tunnelling, Family::Global] {
        for _ in 0..100 {
            let p = common::random_driven(&mut rng, family);
            let r = report(&p).map_err(|e| e.to_string())?;
            if r.heat_flow_hot == 0.0 {
                return Err(format!("no heat flow at {p:?}"));
            }
            worst = worst.max((r.heat_flow_hot + r.heat_flow_cold).abs() / r.heat_flow_hot.abs());
        }
    }

    // absolute bound, in units of the dissipator scale, everywhere else
    let mut sets: Vec<EngineParams> = Vec::new();
    sets.extend((0..300).map(|_| common::random_local(&mut rng)));
    sets.extend((0..300).map(|_| common::random_tunnelling(&mut rng)));
    sets.extend((0..300).map(|_| common::random_global(&mut rng)));
    let mut worst_abs = 0.0f64;
    for p in &sets {
        let r = report(p).map_err(|e| e.to_string())?;
        let scale = p.gamma_h * p.eps_h + p.gamma_c * p.eps_c();
        worst_abs = worst_abs.max((r.heat_flow_hot + r.heat_flow_cold).abs() / scale);
    }

    let detail = format!(
        "max |Q_h + Q_c| / |Q_h| = {worst:.2e} on 300 driven sets (100 with tunnelling); \
         max |Q_h + Q_c| / (gamma eps) = {worst_abs:.2e} on 900 unrestricted sets"
    );
    if worst < 1e-12 && worst_abs < 1e-14 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5);
    let (mut entangled, mut disagreements) = (0usize, Vec::new());
    for _ in 0..500 {
        let p = common::random_local_engine(&mut rng);
        let r = report(&p).map_err(|e| e.to_string())?;
        let ent = r.negativity > 0.0;
        entangled += ent as usize;
        if ent != r.witness_fires() {
            disagreements.push(p);
        }
    }
    let detail = format!("{} disagreements, {entangled}/500 entangled", disagreements.len());
    if disagreements.is_empty() && entangled > 25 && entangled < 475 {
        Ok(detail)
    } else {
        Err(format!("{detail}; first: {:?}", disagreements.first()))
    }
}

/// Bracket of the first change in entanglement along a grid.
fn first_switch(base: &EngineParams, name: ParamName, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let xs: Vec<f64> = (0..=400).map(|i| lo + (hi - lo) * i as f64 / 400.0).collect();
    let ent: Vec<bool> = xs.iter().map(|x| report(&base.with(name, *x)).map(|r| r.negativity > 0.0).unwrap_or(false)).collect();
    (1..xs.len()).find(|i| ent[*i] != ent[i - 1]).map(|i| (xs[i - 1], xs[i]))
}

fn criterion_6() -> Outcome {
    let base = weak_coupling_base();
    let panels = [
        ("delta", base.with(ParamName::TempH, FIG3A_TEMP_H), ParamName::Delta, (0.0, FIG3A_DELTA_MAX)),
        ("temp_h", base.with(ParamName::Delta, FIG3B_DELTA), ParamName::TempH, FIG3B_TEMP_RANGE),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (label, p, name, (lo, hi)) in panels {
        let (a, b) = first_switch(&p, name, lo, hi).ok_or(format!("no entanglement boundary in {label}"))?;
        let (neg, wit) = entanglement_boundary(&p, name, a, b).map_err(|e| e.to_string())?;
        let gap = (neg - wit).abs();
        ok &= gap < 1e-6 * p.eps_h;
        parts.push(format!("{label}: N root {neg:.9}, witness root {wit:.9}, gap {gap:.1e}"));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_7() -> Outcome {
    let base = weak_coupling_base().with(ParamName::Delta, FIG4_DELTA);
    let mut ok = true;
    let mut parts = Vec::new();
    let mut kappas = Vec::new();
    for th in FIG2_TEMPS {
        let p = base.with(ParamName::TempH, th);
        let resonant = report(&p.with(ParamName::Delta, 0.0)).map_err(|e| e.to_string())?;
        for (obj, baseline, label) in [
            (KappaObjective::Current, resonant.current, "J"),
            (KappaObjective::Negativity, resonant.negativity, "N"),
        ] {
            let k = find_kappa_max(&p, obj, (0.0, FIG4_KAPPA_MAX)).map_err(|e| e.to_string())?;
            let rel = (k.value - baseline).abs() / baseline;
            ok &= rel < 1e-3;
            kappas.push(k.kappa);
            parts.push(format!("T_h={th} {label}: k_max {:.5}, rel gap {rel:.2e}", k.kappa));
        }
    }
    let (kmin, kmax) = kappas.iter().fold((f64::INFINITY, 0.0f64), |(a, b), k| (a.min(*k), b.max(*k)));
    let spread = (kmax - kmin) / kmax;
    ok &= spread < 0.1;
    let detail = format!("{}; k_max spread {:.1}%", parts.join("; "), 100.0 * spread);
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_8() -> Outcome {
    let mut worst = 0.0f64;
    for g in [0.1, 0.3, 0.8] {
        let expected = g / 1.0f64.asinh();
        let f = |t: f64| match thermal_negativity(1.0, g, t) {
            Ok(n) if n > 0.0 => 1.0,
            Ok(_) => -1.0,
            Err(_) => f64::NAN,
        };
        let root = bisect(f, 0.5 * expected, 2.0 * expected, 1e-14).map_err(|e| e.to_string())?;
        worst = worst.max((root - expected).abs() / expected);
    }
    let detail = format!("max relative offset from g/asinh(1): {worst:.2e}");
    if worst < 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let gs: Vec<f64> = (0..64).map(|i| FIG6B_G_RANGE.0 + (FIG6B_G_RANGE.1 - FIG6B_G_RANGE.0) * i as f64 / 63.0).collect();
    let (mut order_violations, mut bound_violations) = (0usize, 0usize);
    let mut worst_ratio = 0.0f64;
    for g in &gs {
        let mut previous = f64::NEG_INFINITY;
        let base = strong_coupling_base(*g);
        let (_, thermal) = thermal_negativity_max(base.eps_h, *g, base.temp_c, FIG6_TEMP_H_MAX).map_err(|e| e.to_string())?;
        for gc in FIG6B_GAMMA_C {
            let p = base.with(ParamName::GammaC, gc);
            let free = [FreeParam::left_open(ParamName::TempH, p.temp_c, FIG6_TEMP_H_MAX)];
            let n = optimize_negativity(&p, &free).map_err(|e| e.to_string())?.best_value;
            if n < previous {
                order_violations += 1;
            }
            if n > thermal {
                bound_violations += 1;
            }
            if thermal > 0.0 {
                worst_ratio = worst_ratio.max(n / thermal);
            }
            previous = n;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = format!(
        "{order_violations} ordering and {bound_violations} thermal-bound violations on 64 g points, max N/N_th {worst_ratio:.4}, {secs:.1} s"
    );
    if order_violations == 0 && bound_violations == 0 && secs < 60.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_10() -> Outcome {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut bell = Vector4::zeros();
    bell[IDX_10] = c(s, 0.0);
    bell[IDX_01] = c(s, 0.0);
    let n_bell = negativity(&DensityMatrix::pure(&bell).map_err(|e| e.to_string())?);

    let mut rng = common::rng(10);
    let mut worst_product = 0.0f64;
    for _ in 0..100 {
        let a = Vector4::from([0, 1, 2, 3].map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))));
        // |a⟩ ⊗ |b⟩ from two random qubit states
        let psi = Vector4::new(a[0] * a[2], a[0] * a[3], a[1] * a[2], a[1] * a[3]);
        let n = negativity(&DensityMatrix::pure(&psi).map_err(|e| e.to_string())?);
        worst_product = worst_product.max(n);
        let mixed = DensityMatrix::product_diagonal(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0))
            .map_err(|e| e.to_string())?;
        worst_product = worst_product.max(negativity(&mixed));
    }

    let mut worst_x = 0.0f64;
    for _ in 0..500 {
        let w: [f64; 4] = [0, 1, 2, 3].map(|_| -rng.random_range(1e-12f64..1.0).ln());
        let total: f64 = w.iter().sum();
        let r = w.map(|x| x / total);
        let modulus = rng.random_range(0.0..1.0) * (r[1] * r[2]).sqrt();
        let coh = Complex64::from_polar(modulus, rng.random_range(0.0..std::f64::consts::TAU));
        let rho = DensityMatrix::x_form(r, coh).map_err(|e| e.to_string())?;
        worst_x = worst_x.max((negativity(&rho) - negativity_x_form(r[0], r[3], coh)).abs());
    }
    let detail = format!("|N(Bell) - 1/2| {:.1e}, max N(product) {worst_product:.1e}, max X-form gap {worst_x:.1e}", (n_bell - 0.5).abs());
    if (n_bell - 0.5).abs() < 1e-14 && worst_product == 0.0 && worst_x < 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_11() -> Outcome {
    let run = || -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_entanglement-engine"))
            .args(["figure", "Fig3"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    let detail = format!("{} and {} bytes", a.len(), b.len());
    if a == b && !a.is_empty() {
        Ok(format!("byte-identical, {detail}"))
    } else {
        Err(format!("outputs differ, {detail}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("generator matches the reference matrix", criterion_1),
        ("analytic and numeric steady states agree", criterion_2),
        ("time evolution reaches the steady state", criterion_3),
        ("first law", criterion_4),
        ("local witness equivalence", criterion_5),
        ("negativity and witness boundaries coincide", criterion_6),
        ("tunnelling recovers current and negativity", criterion_7),
        ("thermal entanglement threshold", criterion_8),
        ("global steady state below thermal negativity", criterion_9),
        ("negativity unit checks", criterion_10),
        ("figure CSV determinism", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.2} s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.2} s]: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
