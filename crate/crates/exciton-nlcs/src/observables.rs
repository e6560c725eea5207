//! Deformed quadratures, variances, squeezing parameters and number
//! statistics on a truncated Fock state.
//!
//! X1 = (A e^{i phi} + A+ e^{-i phi})/2, X2 = (A e^{i phi} - A+ e^{-i phi})/(2i)
//! with A[n-1][n] = sqrt(n) f(n). Variances are evaluated as <Xv|Xv> with the
//! operator applied on a basis padded two levels past the truncation, which
//! is exact on the state's support; s_i = 4 var_i - <g> with
//! g = (n+1) f^2(n+1) - n f^2(n) is the deformed commutator expectation.

use crate::algebra::Deformation;
use crate::nlcs::FockState;
use crate::{Error, Result};
use num_complex::Complex64;

/// Edge weight above which truncated-operator variances are untrustworthy.
const EDGE_WEIGHT_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy)]
pub struct QuadratureReport {
    pub phi: f64,
    pub var_x1: f64,
    pub var_x2: f64,
    pub g_expect: f64,
    pub s1: f64,
    pub s2: f64,
    pub uncertainty_product: f64,
    pub mandel_q: f64,
}

fn apply_lowering(f: &dyn Deformation, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = vec![Complex64::default(); v.len()];
    for n in 0..v.len() - 1 {
        out[n] = ((n as f64 + 1.0).sqrt() * f.f(n + 1)?) * v[n + 1];
    }
    Ok(out)
}

fn apply_raising(f: &dyn Deformation, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = vec![Complex64::default(); v.len()];
    for n in 1..v.len() {
        out[n] = ((n as f64).sqrt() * f.f(n)?) * v[n - 1];
    }
    Ok(out)
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Quadrature variances, squeezing parameters and Mandel Q of `state` for the
/// deformation `f` at phase `phi`. `f` must be defined up to trunc + 2.
pub fn quadrature_report(state: &FockState, f: &dyn Deformation, phi: f64) -> Result<QuadratureReport> {
    if state.tail_bound > EDGE_WEIGHT_LIMIT {
        return Err(Error::TruncationTooSmall {
            weight: state.tail_bound,
        });
    }
    let n_t = state.trunc;
    let dim = n_t + 3;
    let mut v = vec![Complex64::default(); dim];
    v[..=n_t].copy_from_slice(&state.coeffs[..=n_t]);

    let av = apply_lowering(f, &v)?;
    let adv = apply_raising(f, &v)?;
    let eip = Complex64::from_polar(1.0, phi);
    let emip = eip.conj();
    let half = Complex64::new(0.5, 0.0);
    let half_i = Complex64::new(0.0, -0.5); // 1/(2i)
    let x1v: Vec<Complex64> = av.iter().zip(&adv).map(|(a, b)| half * (eip * a + emip * b)).collect();
    let x2v: Vec<Complex64> = av.iter().zip(&adv).map(|(a, b)| half_i * (eip * a - emip * b)).collect();

    let m1 = inner(&v, &x1v).re;
    let m2 = inner(&v, &x2v).re;
    let var_x1 = inner(&x1v, &x1v).re - m1 * m1;
    let var_x2 = inner(&x2v, &x2v).re - m2 * m2;

    let mut g_expect = 0.0;
    for n in 0..=n_t {
        let p = state.coeffs[n].norm_sqr();
        let f_up = f.f(n + 1)?;
        let f_n = if n == 0 { 0.0 } else { f.f(n)? };
        g_expect += p * ((n as f64 + 1.0) * f_up * f_up - n as f64 * f_n * f_n);
    }

    Ok(QuadratureReport {
        phi,
        var_x1,
        var_x2,
        g_expect,
        s1: 4.0 * var_x1 - g_expect,
        s2: 4.0 * var_x2 - g_expect,
        uncertainty_product: var_x1 * var_x2,
        mandel_q: mandel_q(state),
    })
}

/// (<n^2> - <n>^2 - <n>)/<n>; 0 for the vacuum by convention.
pub fn mandel_q(state: &FockState) -> f64 {
    let mut mean = 0.0;
    let mut mean_sq = 0.0;
    for (n, c) in state.coeffs.iter().enumerate() {
        let p = c.norm_sqr();
        mean += n as f64 * p;
        mean_sq += (n as f64) * (n as f64) * p;
    }
    if mean == 0.0 {
        return 0.0;
    }
    (mean_sq - mean * mean - mean) / mean
}

/// One sweep row; failed points carry the error instead of numbers.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub r_over_ab: f64,
    pub outcome: Result<QuadratureReport>,
}

/// Fig.-1-style sweep: for each R/a_B on the grid, build the NLCS and report
/// squeezing of the well quadratures (deformation f1). Singular or
/// non-convergent points come back as flagged rows, never dropped.
pub fn squeezing_sweep(
    l: u32,
    drive: &crate::nlcs::DriveParams,
    r_grid: &[f64],
    phi: f64,
    n_max: usize,
    tail_tol: f64,
) -> Result<Vec<SweepPoint>> {
    if r_grid.is_empty() || r_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "r_grid must be nonempty and strictly ascending".into(),
        ));
    }
    let zeros = crate::specfun::bessel_zeros(l, n_max + 4, 1e-12)?;
    let mut rows = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let def = crate::algebra::WellDeformation::from_zeros(zeros.clone(), r);
        let outcome = crate::nlcs::build_state(&def, drive, n_max, tail_tol)
            .and_then(|st| quadrature_report(&st, &crate::algebra::WellF1(&def), phi));
        rows.push(SweepPoint { r_over_ab: r, outcome });
    }
    Ok(rows)
}
