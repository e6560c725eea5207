//! Invariant suites behind the `selfcheck` subcommand: every module's core
//! identities on fixed grids, reported as named sections with their worst
//! deviation.

use crate::algebra::{commutator_check, Undeformed, WellDeformation, WellF1};
use crate::dynamics::{build_interaction_hamiltonian, dark_state_residual, CompositeState};
use crate::nlcs::{
    build_state, eigen_residual, glauber_state, structure_function_f_with, DriveParams,
    NlcsDeformation,
};
use crate::observables::{quadrature_report, squeezing_sweep};
use crate::specfun::{bessel_zeros, spherical_bessel_j};
use crate::Result;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
}

fn check(name: &'static str, max_dev: f64, tol: f64) -> Check {
    Check {
        name,
        max_dev,
        tol,
        pass: max_dev.is_finite() && max_dev <= tol,
    }
}

fn classical_laguerre(i: usize, n: usize, x: f64) -> f64 {
    let mut lm1 = 1.0_f64;
    if n == 0 {
        return 1.0;
    }
    let mut l_cur = 1.0 + i as f64 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + i as f64 - x) * l_cur - (kf + i as f64) * lm1) / (kf + 1.0);
        lm1 = l_cur;
        l_cur = next;
    }
    l_cur
}

fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    (z ^ (z >> 31)) as f64 / u64::MAX as f64
}

/// Runs all sections. Individual failures are reported in the returned list;
/// hard errors (table construction and the like) abort.
pub fn run_all() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    // bessel zero residuals and l = 0 closed form
    let mut dev = 0.0_f64;
    let mut dev_l0 = 0.0_f64;
    for l in 0..=10u32 {
        let t = bessel_zeros(l, 41, 1e-12)?;
        for (k, &z) in t.zeros.iter().enumerate() {
            dev = dev.max(spherical_bessel_j(l, z)?.abs());
            if l == 0 {
                dev_l0 = dev_l0.max((z - (k as f64 + 1.0) * std::f64::consts::PI).abs());
            }
        }
    }
    out.push(check("bessel zero residual (l<=10, k<=40)", dev, 1e-12));
    out.push(check("l=0 zeros vs (k+1)pi", dev_l0, 1e-12));

    // spacing -> pi
    let mut dev = 0.0_f64;
    for l in 0..=5u32 {
        let t = bessel_zeros(l, 41, 1e-12)?;
        for k in 30..40 {
            dev = dev.max(((t.zeros[k + 1] - t.zeros[k]) - std::f64::consts::PI).abs());
        }
    }
    out.push(check("zero spacing vs pi (k>=30)", dev, 0.1));

    // recurrence consistency at seeded random points
    let mut seed = 0x5eed_u64;
    let mut dev = 0.0_f64;
    for _ in 0..100 {
        let x = 1.0 + 99.0 * splitmix(&mut seed);
        for l in 1..=9u32 {
            let jm = spherical_bessel_j(l - 1, x)?;
            let j = spherical_bessel_j(l, x)?;
            let jp = spherical_bessel_j(l + 1, x)?;
            dev = dev.max((jp - ((2 * l + 1) as f64 / x * j - jm)).abs());
        }
    }
    out.push(check("bessel recurrence consistency", dev, 1e-10));

    // spectrum closure / telescoping
    let mut dev = 0.0_f64;
    for l in [0u32, 1, 2] {
        let d = WellDeformation::new(l, 1.3, 35)?;
        for n in 0..=30usize {
            let alpha = d.zeros.get(n)?;
            dev = dev.max((d.energy(n)? - 0.5 * d.epsilon * alpha * alpha).abs());
        }
    }
    out.push(check("spectrum closure (l<=2, n<=30)", dev, 1e-10));

    // commutator diagonal
    let mut dev = 0.0_f64;
    for (l, r) in [(0u32, 1.0), (1, 0.5), (2, 2.0)] {
        let d = WellDeformation::new(l, r, 32)?;
        dev = dev.max(commutator_check(&d, 30)?);
    }
    out.push(check("deformed commutator diagonal", dev, 1e-9));

    // harmonic-limit structure functions
    let mut dev = 0.0_f64;
    for &kappa in &[0.1, 0.3, 0.5] {
        let k2 = kappa * kappa;
        for n in 0..=20usize {
            let f0 = structure_function_f_with(&Undeformed, 0, n, kappa)?;
            let f1 = structure_function_f_with(&Undeformed, 1, n, kappa)?;
            dev = dev.max((f0 - (-k2 / 2.0).exp() * classical_laguerre(0, n, k2)).abs());
            dev = dev.max(
                (f1 - (-k2 / 2.0).exp() * classical_laguerre(1, n, k2) / (n as f64 + 1.0)).abs(),
            );
        }
    }
    out.push(check("harmonic-limit Laguerre forms", dev, 1e-12));

    // NLCS: norm, eigen residual, dark-state residual
    let mut dev_norm = 0.0_f64;
    let mut dev_eig = 0.0_f64;
    let mut dev_dark = 0.0_f64;
    for &ratio in &[0.5, 0.2] {
        let drive = DriveParams::new(0.3, ratio, 0.0);
        for &r in &[0.5, 1.0, 2.0, 5.0] {
            let d = WellDeformation::new(0, r, 205)?;
            let st = build_state(&d, &drive, 200, 1e-12)?;
            dev_norm = dev_norm.max((st.norm_sq() - 1.0).abs());
            dev_eig = dev_eig.max(eigen_residual(
                &st,
                &NlcsDeformation {
                    def: &d,
                    drive: &drive,
                },
                drive.chi(),
            )?);
            let h = build_interaction_hamiltonian(&d, &drive, 1.0, st.trunc)?;
            dev_dark = dev_dark.max(dark_state_residual(&h, &CompositeState::excited(st)));
        }
    }
    out.push(check("NLCS normalization", dev_norm, 1e-12));
    out.push(check("NLCS eigenvalue residual", dev_eig, 1e-8));
    out.push(check("dark-state residual", dev_dark, 1e-8));

    // uncertainty floor over the Fig.-1 sweep
    let grid: Vec<f64> = (0..50).map(|i| 0.2 + i as f64 * (5.0 - 0.2) / 49.0).collect();
    let mut worst = f64::INFINITY;
    for &ratio in &[0.5, 0.2] {
        let drive = DriveParams::new(0.3, ratio, 0.0);
        for row in squeezing_sweep(0, &drive, &grid, 0.0, 200, 1e-12)? {
            if let Ok(rep) = row.outcome {
                worst = worst.min(
                    rep.uncertainty_product - rep.g_expect * rep.g_expect / 16.0,
                );
            }
        }
    }
    out.push(check("uncertainty floor margin", (-worst).max(0.0), 1e-10));

    // undeformed benchmarks
    let st = glauber_state(Complex64::new(0.0, 1.0), 200, 1e-12)?;
    let rep = quadrature_report(&st, &Undeformed, 0.0)?;
    let dev = rep
        .s1
        .abs()
        .max(rep.s2.abs())
        .max(rep.mandel_q.abs())
        .max((rep.g_expect - 1.0).abs());
    out.push(check("Glauber benchmarks", dev, 1e-10));

    // well quadratures at Fig. 1 parameters keep f1 through the trait
    let d = WellDeformation::new(0, 0.5, 205)?;
    let drive = DriveParams::new(0.3, 0.5, 0.0);
    let st = build_state(&d, &drive, 200, 1e-12)?;
    let rep = quadrature_report(&st, &WellF1(&d), 0.0)?;
    out.push(check(
        "squeezing present at R/a_B = 0.5",
        if rep.s1 < 0.0 { 0.0 } else { rep.s1 },
        0.0,
    ));

    Ok(out)
}
