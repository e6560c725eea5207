//! The f-deformed oscillator of the infinite spherical well: deformation
//! function f1(n), energies, ladder matrices, commutator and transition
//! frequencies.
//!
//! Units: hbar = 1 and M a_B^2 = 1, so the well scale hbar^2/(M R^2) becomes
//! the dimensionless epsilon = (a_B/R)^2 and R/a_B is the single geometry
//! knob.

use crate::specfun::{bessel_zeros, BesselZeroTable};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

/// Spherical-well deformation f1^2(n) = epsilon * S(n) with
/// S(n) = ((-1)^n / n) * sum_{i=1..n} (-1)^i alpha_{i-1,l}^2.
#[derive(Debug, Clone)]
pub struct WellDeformation {
    pub l: u32,
    pub r_over_ab: f64,
    pub epsilon: f64,
    pub zeros: BesselZeroTable,
    s_cache: Vec<f64>,
}

impl WellDeformation {
    /// Builds the zero table to cover levels up to `n_cap` (plus the slack the
    /// quadrature machinery needs).
    pub fn new(l: u32, r_over_ab: f64, n_cap: usize) -> Result<Self> {
        if !(r_over_ab > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "r_over_ab must be positive, got {r_over_ab}"
            )));
        }
        let zeros = bessel_zeros(l, n_cap + 4, 1e-12)?;
        Ok(Self::from_zeros(zeros, r_over_ab))
    }

    /// Reuses an existing zero table (sweeps vary R/a_B at fixed l, and the
    /// zeros depend only on l).
    pub fn from_zeros(zeros: BesselZeroTable, r_over_ab: f64) -> Self {
        let mut s_cache = Vec::with_capacity(zeros.len() + 1);
        s_cache.push(0.0); // S(0), unused
        let mut acc = 0.0;
        for n in 1..=zeros.len() {
            acc += if n % 2 == 0 { 1.0 } else { -1.0 } * zeros.zeros[n - 1].powi(2);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            s_cache.push(sign / n as f64 * acc);
        }
        let l = zeros.l;
        WellDeformation {
            l,
            r_over_ab,
            epsilon: 1.0 / (r_over_ab * r_over_ab),
            zeros,
            s_cache,
        }
    }

    /// S(n) for n >= 1.
    pub fn s(&self, n: usize) -> Result<f64> {
        if n == 0 || n >= self.s_cache.len() {
            return Err(Error::TableExhausted {
                l: self.l,
                have: self.zeros.len(),
                want: n,
            });
        }
        Ok(self.s_cache[n])
    }

    /// f1^2(n); f1(0) = 1 by convention (the sqrt(n) factor removes it from
    /// every matrix element).
    pub fn f1_sq(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(1.0);
        }
        Ok(self.epsilon * self.s(n)?)
    }

    pub fn f1(&self, n: usize) -> Result<f64> {
        Ok(self.f1_sq(n)?.sqrt())
    }

    /// E_n = (1/2)[(n+1) f1^2(n+1) + n f1^2(n)] = (epsilon/2) alpha_{n,l}^2.
    pub fn energy(&self, n: usize) -> Result<f64> {
        Ok(0.5 * ((n as f64 + 1.0) * self.f1_sq(n + 1)? + n as f64 * self.f1_sq(n)?))
    }

    /// omega_n = E_{n+1} - E_n = (epsilon/2)(alpha_{n+1,l}^2 - alpha_{n,l}^2).
    pub fn transition_frequency(&self, n: usize) -> Result<f64> {
        let a0 = self.zeros.get(n)?;
        let a1 = self.zeros.get(n + 1)?;
        Ok(0.5 * self.epsilon * (a1 * a1 - a0 * a0))
    }
}

/// Deformation-function abstraction used by ladder matrices, state builders
/// and quadratures. `f(n)` is only ever queried for n >= 1.
pub trait Deformation {
    fn f(&self, n: usize) -> Result<f64>;
}

/// f == 1: the ordinary boson algebra.
#[derive(Debug, Clone, Copy)]
pub struct Undeformed;

impl Deformation for Undeformed {
    fn f(&self, _n: usize) -> Result<f64> {
        Ok(1.0)
    }
}

/// The well deformation f1 viewed through the `Deformation` trait.
#[derive(Debug, Clone, Copy)]
pub struct WellF1<'a>(pub &'a WellDeformation);

impl Deformation for WellF1<'_> {
    fn f(&self, n: usize) -> Result<f64> {
        self.0.f1(n)
    }
}

/// Dense matrix of a deformed ladder operator on the truncated basis
/// {|0>, ..., |N>}.
#[derive(Debug, Clone)]
pub struct LadderMatrix {
    pub dim: usize,
    pub entries: Array2<Complex64>,
}

/// Lowering and raising matrices for the deformation `f` on dimension N+1:
/// A[n-1][n] = sqrt(n) f(n), raising = conjugate transpose.
pub fn ladder_matrices(f: &dyn Deformation, n_trunc: usize) -> Result<(LadderMatrix, LadderMatrix)> {
    let dim = n_trunc + 1;
    let mut a = Array2::<Complex64>::zeros((dim, dim));
    for n in 1..dim {
        a[[n - 1, n]] = Complex64::new((n as f64).sqrt() * f.f(n)?, 0.0);
    }
    let adag = a.t().mapv(|z| z.conj());
    Ok((
        LadderMatrix { dim, entries: a },
        LadderMatrix {
            dim,
            entries: adag,
        },
    ))
}

/// Max deviation of the [A, A+] diagonal from
/// epsilon alpha_{n,l}^2 - 2 n f1^2(n) over the interior block n <= N-2 (the
/// last rows of any truncated product are contaminated). The closed form
/// follows from (n+1) f1^2(n+1) + n f1^2(n) = epsilon alpha_{n,l}^2.
pub fn commutator_check(def: &WellDeformation, n_trunc: usize) -> Result<f64> {
    let (a, adag) = ladder_matrices(&WellF1(def), n_trunc)?;
    let comm = a.entries.dot(&adag.entries) - adag.entries.dot(&a.entries);
    let mut max_dev = 0.0_f64;
    for n in 0..=n_trunc.saturating_sub(2) {
        let alpha = def.zeros.get(n)?;
        let expected = def.epsilon * alpha * alpha - 2.0 * n as f64 * def.f1_sq(n)?;
        let dev = (comm[[n, n]].re - expected).abs().max(comm[[n, n]].im.abs());
        max_dev = max_dev.max(dev);
    }
    Ok(max_dev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn well(l: u32, r: f64, cap: usize) -> WellDeformation {
        WellDeformation::new(l, r, cap).unwrap()
    }

    #[test]
    fn f1_l0_closed_forms() {
        let d = well(0, 1.0, 10);
        assert_abs_diff_eq!(d.f1(1).unwrap(), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(d.f1(2).unwrap(), PI * (1.5_f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn telescoping_identity() {
        for l in [0u32, 1, 2, 5] {
            let d = well(l, 0.7, 35);
            for n in 1..=30usize {
                let alpha = d.zeros.get(n).unwrap();
                let lhs = (n as f64 + 1.0) * d.s(n + 1).unwrap() + n as f64 * d.s(n).unwrap();
                assert!((lhs - alpha * alpha).abs() < 1e-9, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn energy_closure_and_scaling() {
        let d = well(0, 1.0, 5);
        assert_abs_diff_eq!(d.energy(0).unwrap(), PI * PI / 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(d.energy(1).unwrap(), 2.0 * PI * PI, epsilon = 1e-10);
        let d2 = well(0, 2.0, 5);
        assert_abs_diff_eq!(d2.energy(3).unwrap(), d.energy(3).unwrap() / 4.0, epsilon = 1e-10);
    }

    #[test]
    fn spectrum_consistency_all_l() {
        for l in [0u32, 1, 2] {
            let d = well(l, 1.3, 35);
            for n in 0..=30usize {
                let alpha = d.zeros.get(n).unwrap();
                let e = d.energy(n).unwrap();
                assert!(
                    (e - 0.5 * d.epsilon * alpha * alpha).abs() < 1e-10,
                    "l={l} n={n}"
                );
            }
        }
    }

    #[test]
    fn s_positive_f1_real() {
        for l in [0u32, 3, 10] {
            let d = well(l, 0.4, 41);
            for n in 1..=40 {
                assert!(d.s(n).unwrap() > 0.0, "l={l} n={n}");
                assert!(d.f1(n).unwrap().is_finite());
            }
        }
    }

    #[test]
    fn ladder_matrix_elements() {
        let d = well(0, 1.0, 5);
        let (a, adag) = ladder_matrices(&Undeformed, 2).unwrap();
        assert_abs_diff_eq!(a.entries[[0, 1]].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.entries[[1, 2]].re, 2.0_f64.sqrt(), epsilon = 1e-15);
        assert_eq!(adag.entries[[1, 0]], a.entries[[0, 1]].conj());

        let (af, _) = ladder_matrices(&WellF1(&d), 3).unwrap();
        assert_abs_diff_eq!(af.entries[[0, 1]].re, PI, epsilon = 1e-12);
        // A |0> = 0: first column vanishes
        for row in 0..4 {
            assert_eq!(af.entries[[row, 0]], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn number_operator_recovery() {
        let d = well(1, 0.8, 12);
        let (a, adag) = ladder_matrices(&WellF1(&d), 10).unwrap();
        let num = adag.entries.dot(&a.entries);
        for n in 0..=10usize {
            let expected = n as f64 * d.f1_sq(n).unwrap();
            assert_abs_diff_eq!(num[[n, n]].re, expected, epsilon = 1e-12 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn commutator_diagonal() {
        let d = well(0, 1.0, 32);
        assert!(commutator_check(&d, 30).unwrap() < 1e-9);
        let d1 = well(1, 0.5, 32);
        assert!(commutator_check(&d1, 30).unwrap() < 1e-9);
        // n = 0 entry equals epsilon alpha_{0,l}^2 = f1^2(1)
        let (a, adag) = ladder_matrices(&WellF1(&d), 4).unwrap();
        let comm = a.entries.dot(&adag.entries) - adag.entries.dot(&a.entries);
        assert_abs_diff_eq!(comm[[0, 0]].re, PI * PI, epsilon = 1e-10);
    }

    #[test]
    fn transition_frequency_values() {
        let d = well(0, 1.0, 35);
        assert_abs_diff_eq!(
            d.transition_frequency(0).unwrap(),
            1.5 * PI * PI,
            epsilon = 1e-10
        );
        for l in [0u32, 1, 5] {
            let dl = well(l, 1.7, 35);
            for n in 0..=30usize {
                let w = dl.transition_frequency(n).unwrap();
                assert!(w > 0.0);
                // equals (1/2)[(n+2) f1^2(n+2) - n f1^2(n)]
                let alt = 0.5
                    * ((n as f64 + 2.0) * dl.f1_sq(n + 2).unwrap()
                        - n as f64 * dl.f1_sq(n).unwrap());
                assert!((w - alt).abs() < 1e-9, "l={l} n={n}");
            }
        }
    }

    #[test]
    fn energy_decreases_with_radius() {
        let rs = [0.5, 1.0, 2.0, 4.0, 8.0, 16.0];
        for n in [0usize, 3, 7] {
            let mut prev = f64::INFINITY;
            for &r in &rs {
                let e = well(0, r, 10).energy(n).unwrap();
                assert!(e < prev);
                prev = e;
            }
        }
    }
}
