//! Drive-induced structure functions F_i(n, kappa), deformed Laguerre
//! functions, the composite deformation f(n) = F1(n-1)/F0(n-1) and the
//! nonlinear coherent state they select.
//!
//! F_i(n, kappa) = exp(E(n)) * (f1(n+i)!/f1(n)!) * sigma_i(n) with
//!   E(n) = -(kappa^2/2) [(n+1) f1^2(n+1) - n f1^2(n)]
//!   sigma_i(n) = sum_{l=0..n} u_l,  u_0 = 1,
//!   u_{l+1}/u_l = -kappa^2 (n-l) f1^2(n-l) / ((l+1)(l+1+i)).
//!
//! With f1 == 1 this is the trapped-ion pair e^{-k^2/2} L_n^0(k^2) and
//! e^{-k^2/2} L_n^1(k^2)/(n+1). The sigma sums are alternating with huge
//! intermediate terms; they are accumulated with Neumaier compensation and
//! guarded against total digit loss. The Gaussian factor exp(E) cancels
//! identically in the ratio f(n) = F1/F0, which is therefore computed
//! without it.

use crate::algebra::{Deformation, Undeformed, WellDeformation, WellF1};
use crate::{Error, Result};
use num_complex::Complex64;

/// Threshold under which the carrier sum counts as a genuine zero
/// (decoupled sideband) rather than a number.
pub const SINGULARITY_EPS: f64 = 1e-12;

/// If |sigma| falls below max|term| * this, cancellation has consumed all
/// significant digits of a double.
const PRECISION_GUARD: f64 = 1e-13;

/// Truncation runs past the first tail_tol crossing down to
/// tail_tol * TAIL_SAFETY, so operator residuals (which scale with |c_N|,
/// not |c_N|^2) stay well under the advertised bounds.
const TAIL_SAFETY: f64 = 1e-8;

/// Laser-drive configuration. chi = i * omega_ratio / kappa is the NLCS
/// eigenvalue.
#[derive(Debug, Clone, Copy)]
pub struct DriveParams {
    pub kappa: f64,
    pub omega_ratio: f64,
    pub phi: f64,
}

impl DriveParams {
    pub fn new(kappa: f64, omega_ratio: f64, phi: f64) -> Self {
        DriveParams {
            kappa,
            omega_ratio,
            phi,
        }
    }

    pub fn chi(&self) -> Complex64 {
        Complex64::new(0.0, self.omega_ratio / self.kappa)
    }
}

/// Truncated number-basis expansion of a normalized state.
#[derive(Debug, Clone)]
pub struct FockState {
    pub coeffs: Vec<Complex64>,
    pub trunc: usize,
    /// |c_N|^2 at acceptance; 0 for states that are finite by construction.
    pub tail_bound: f64,
}

impl FockState {
    /// Wraps an explicit coefficient vector, normalizing it. The tail beyond
    /// the last entry is exactly zero, so tail_bound = 0.
    pub fn from_coeffs(mut coeffs: Vec<Complex64>) -> Self {
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        for c in &mut coeffs {
            *c /= norm;
        }
        let trunc = coeffs.len() - 1;
        FockState {
            coeffs,
            trunc,
            tail_bound: 0.0,
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn f1_sq(f1: &dyn Deformation, n: usize) -> Result<f64> {
    let v = f1.f(n)?;
    Ok(v * v)
}

/// Sum of the unit-leading-term series for F_i at level n, plus the largest
/// |term| met on the way.
fn sigma(f1: &dyn Deformation, i: usize, n: usize, kappa: f64) -> Result<(f64, f64)> {
    let k2 = kappa * kappa;
    let mut u = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64; // Neumaier compensation
    let mut mx = 1.0_f64;
    for l in 0..n {
        u *= -k2 * (n - l) as f64 * f1_sq(f1, n - l)? / ((l + 1) as f64 * (l + 1 + i) as f64);
        mx = mx.max(u.abs());
        let t = sum + u;
        if sum.abs() >= u.abs() {
            comp += (sum - t) + u;
        } else {
            comp += (u - t) + sum;
        }
        sum = t;
    }
    let total = sum + comp;
    if !total.is_finite() || mx > 1e290 {
        return Err(Error::PrecisionLoss { n });
    }
    Ok((total, mx))
}

/// f1(n)! = f1(n) f1(n-1) ... f1(1), with f1(0)! = 1.
fn f1_factorial(f1: &dyn Deformation, n: usize) -> Result<f64> {
    let mut p = 1.0;
    for m in 1..=n {
        p *= f1.f(m)?;
    }
    Ok(p)
}

/// Gaussian exponent E(n): the deformed analogue of -kappa^2/2, built from
/// the commutator expectation at level n. Shared by i = 0 and i = 1.
fn gauss_exponent(f1: &dyn Deformation, n: usize, kappa: f64) -> Result<f64> {
    let k2 = kappa * kappa;
    Ok(-(k2 / 2.0) * ((n as f64 + 1.0) * f1_sq(f1, n + 1)? - n as f64 * f1_sq(f1, n)?))
}

/// Deformed associated Laguerre function for an arbitrary well profile:
/// L^i_{f,n}(x) = sum_{l=0..n} (1/[f1(n-l)!]^2) ((n+i)!/((n-l)! l! (l+i)!)) (-x)^l.
pub fn deformed_laguerre_with(f1: &dyn Deformation, i: usize, n: usize, x: f64) -> Result<f64> {
    // leading term (l = 0): C(n+i, i) / [f1(n)!]^2, then the same term ratio
    // as the sigma series with kappa^2 -> x
    let mut binom = 1.0_f64;
    for j in 1..=i {
        binom *= (n + j) as f64 / j as f64;
    }
    let ff = f1_factorial(f1, n)?;
    let mut term = binom / (ff * ff);
    let mut sum = term;
    for l in 0..n {
        term *= -x * (n - l) as f64 * f1_sq(f1, n - l)? / ((l + 1) as f64 * (l + 1 + i) as f64);
        sum += term;
    }
    Ok(sum)
}

/// Deformed Laguerre function of the spherical-well profile.
pub fn deformed_laguerre(def: &WellDeformation, i: usize, n: usize, x: f64) -> Result<f64> {
    deformed_laguerre_with(&WellF1(def), i, n, x)
}

/// Structure function F_i(n, kappa), i in {0, 1}, for an arbitrary well
/// profile (f1 == `Undeformed` gives the trapped-ion forms).
pub fn structure_function_f_with(
    f1: &dyn Deformation,
    i: usize,
    n: usize,
    kappa: f64,
) -> Result<f64> {
    assert!(i <= 1, "only carrier (0) and first sideband (1) exist");
    let (s, mx) = sigma(f1, i, n, kappa)?;
    if s.abs() < mx * PRECISION_GUARD {
        return Err(Error::PrecisionLoss { n });
    }
    let t0 = if i == 0 { 1.0 } else { f1.f(n + 1)? };
    Ok(gauss_exponent(f1, n, kappa)?.exp() * t0 * s)
}

/// Structure function of the spherical-well profile.
pub fn structure_function_f(def: &WellDeformation, i: usize, n: usize, kappa: f64) -> Result<f64> {
    structure_function_f_with(&WellF1(def), i, n, kappa)
}

/// f(n) = F1(n-1, kappa)/F0(n-1, kappa) for n >= 1, with the Gaussian
/// factors cancelled analytically.
pub fn deformation_function_with(f1: &dyn Deformation, kappa: f64, n: usize) -> Result<f64> {
    assert!(n >= 1, "deformation function starts at n = 1");
    let m = n - 1;
    let (s0, mx0) = sigma(f1, 0, m, kappa)?;
    if s0.abs() < mx0 * PRECISION_GUARD {
        return Err(Error::PrecisionLoss { n });
    }
    if s0.abs() < SINGULARITY_EPS {
        return Err(Error::SingularDeformation {
            n,
            threshold: SINGULARITY_EPS,
        });
    }
    let (s1, _) = sigma(f1, 1, m, kappa)?;
    Ok(f1.f(n)? * s1 / s0)
}

/// Drive deformation of the spherical well.
pub fn deformation_function(def: &WellDeformation, drive: &DriveParams, n: usize) -> Result<f64> {
    deformation_function_with(&WellF1(def), drive.kappa, n)
}

/// Trapped-ion drive deformation: the f1 == 1 limit of the composite f(n).
#[derive(Debug, Clone, Copy)]
pub struct TrappedIonDeformation {
    pub kappa: f64,
}

impl Deformation for TrappedIonDeformation {
    fn f(&self, n: usize) -> Result<f64> {
        deformation_function_with(&Undeformed, self.kappa, n)
    }
}

/// The drive deformation viewed through the `Deformation` trait.
#[derive(Debug, Clone, Copy)]
pub struct NlcsDeformation<'a> {
    pub def: &'a WellDeformation,
    pub drive: &'a DriveParams,
}

impl Deformation for NlcsDeformation<'_> {
    fn f(&self, n: usize) -> Result<f64> {
        deformation_function(self.def, self.drive, n)
    }
}

/// NLCS for the given well and drive: right eigenstate of f(n̂) â with
/// eigenvalue chi, built by the stable recursion
/// c_{n+1} = c_n chi / (sqrt(n+1) f(n+1)).
pub fn build_state(
    def: &WellDeformation,
    drive: &DriveParams,
    n_max: usize,
    tail_tol: f64,
) -> Result<FockState> {
    build_state_with(&NlcsDeformation { def, drive }, drive.chi(), n_max, tail_tol)
}

/// Same recursion for an arbitrary deformation (e.g. `Undeformed` to get a
/// Glauber state).
pub fn build_state_with(
    f: &dyn Deformation,
    chi: Complex64,
    n_max: usize,
    tail_tol: f64,
) -> Result<FockState> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
        return Err(Error::InvalidArgument(format!(
            "tail_tol must lie in (0, 1e-6], got {tail_tol:e}"
        )));
    }
    let cut = tail_tol * TAIL_SAFETY;
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    let mut total = 1.0_f64;
    let mut trunc = None;
    for n in 1..=n_max {
        let fn_val = f.f(n)?;
        let c = coeffs[n - 1] * chi / ((n as f64).sqrt() * fn_val);
        let p = c.norm_sqr();
        coeffs.push(c);
        total += p;
        if p / total < cut {
            trunc = Some(n);
            break;
        }
    }
    let n = match trunc {
        Some(n) => n,
        None => return Err(Error::NoConvergence { n_max, tail_tol }),
    };
    let norm = total.sqrt();
    for c in &mut coeffs {
        *c /= norm;
    }
    let tail_bound = coeffs[n].norm_sqr();
    Ok(FockState {
        coeffs,
        trunc: n,
        tail_bound,
    })
}

/// || f(n̂) â |psi> - chi |psi> || for a truncated state; bounded by the tail.
pub fn eigen_residual(state: &FockState, f: &dyn Deformation, chi: Complex64) -> Result<f64> {
    let n_t = state.trunc;
    let mut acc = 0.0_f64;
    for n in 0..n_t {
        let applied =
            ((n as f64 + 1.0).sqrt() * f.f(n + 1)?) * state.coeffs[n + 1] - chi * state.coeffs[n];
        acc += applied.norm_sqr();
    }
    acc += (chi * state.coeffs[n_t]).norm_sqr();
    Ok(acc.sqrt())
}

/// Coherent state with amplitude alpha on the undeformed algebra.
pub fn glauber_state(alpha: Complex64, n_max: usize, tail_tol: f64) -> Result<FockState> {
    build_state_with(&Undeformed, alpha, n_max, tail_tol)
}
