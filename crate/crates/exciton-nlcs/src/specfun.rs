//! Spherical Bessel functions j_l(x) and their positive zeros alpha_{k,l}.
//!
//! Zeros are indexed from k = 0 (the smallest positive zero), so that the
//! well ground state |0> carries energy proportional to alpha_{0,l}^2.

use crate::{Error, Result};

/// Cached positive zeros of j_l, strictly increasing, each with residual
/// |j_l(alpha)| <= tol.
#[derive(Debug, Clone)]
pub struct BesselZeroTable {
    pub l: u32,
    pub zeros: Vec<f64>,
    pub tol: f64,
}

impl BesselZeroTable {
    pub fn get(&self, k: usize) -> Result<f64> {
        self.zeros.get(k).copied().ok_or(Error::TableExhausted {
            l: self.l,
            have: self.zeros.len(),
            want: k,
        })
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

/// j_l(x) for x > 0.
///
/// Closed trigonometric forms for l <= 2; upward recurrence where it is
/// stable (x > l) and Miller's downward recurrence with the
/// sum (2k+1) j_k^2 = 1 normalization otherwise.
pub fn spherical_bessel_j(l: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(x));
    }
    if l <= 2 && x < 0.5 {
        // the closed forms cancel catastrophically near 0
        return Ok(series(l, x));
    }
    Ok(match l {
        0 => x.sin() / x,
        1 => x.sin() / (x * x) - x.cos() / x,
        2 => (3.0 / (x * x * x) - 1.0 / x) * x.sin() - 3.0 / (x * x) * x.cos(),
        _ => {
            if x > l as f64 {
                upward(l, x)
            } else {
                downward(l, x)
            }
        }
    })
}

fn series(l: u32, x: f64) -> f64 {
    let mut lead = 1.0_f64;
    for k in 0..l {
        lead *= x / (2 * k + 3) as f64;
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 0..20 {
        term *= -(x * x) / 2.0 / ((k + 1) as f64 * (2 * l + 2 * k + 3) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn upward(l: u32, x: f64) -> f64 {
    let mut jm1 = x.sin() / x;
    let mut j = x.sin() / (x * x) - x.cos() / x;
    for k in 1..l {
        let jp1 = (2 * k + 1) as f64 / x * j - jm1;
        jm1 = j;
        j = jp1;
    }
    j
}

fn downward(l: u32, x: f64) -> f64 {
    let start = l as usize + 20 + (1.5 * x) as usize;
    let mut jp1 = 0.0_f64;
    let mut j = 1.0_f64;
    let mut norm = 0.0_f64;
    let mut target = 0.0_f64;
    for k in (0..=start).rev() {
        let jm1 = (2 * k + 3) as f64 / x * j - jp1;
        jp1 = j;
        j = jm1;
        norm += (2 * k + 1) as f64 * j * j;
        if k == l as usize {
            target = j;
        }
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp1 *= s;
            norm *= s * s;
            target *= s;
        }
    }
    // seed index start+1 exceeds x, where j_k > 0, so the Miller constant is positive
    target / norm.sqrt()
}

/// First `count` positive zeros of j_l.
///
/// Sign changes are bracketed by a pi/4 scan from max(l, 1), then refined by
/// bisection until the interval collapses to adjacent floats, then checked
/// against `tol`.
pub fn bessel_zeros(l: u32, count: usize, tol: f64) -> Result<BesselZeroTable> {
    if count == 0 || !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::InvalidArgument(format!(
            "bessel_zeros: count = {count}, tol = {tol:e}"
        )));
    }
    let step = std::f64::consts::FRAC_PI_4;
    let mut zeros = Vec::with_capacity(count);
    let mut x = (l as f64).max(1.0);
    let mut fx = spherical_bessel_j(l, x)?;
    // generous scan window: zeros are about pi apart, first zero < l + 4 l^(1/3) + 4
    let limit = (l as f64) + 4.0 * (l as f64).cbrt() + 4.0 + (count as f64 + 2.0) * std::f64::consts::PI + 10.0;
    while zeros.len() < count {
        if x > limit {
            return Err(Error::Bracketing { l, k: zeros.len() });
        }
        let x2 = x + step;
        let fx2 = spherical_bessel_j(l, x2)?;
        if fx == 0.0 {
            zeros.push(x);
        } else if fx * fx2 < 0.0 {
            let root = bisect(l, x, x2)?;
            let res = spherical_bessel_j(l, root)?.abs();
            if res > tol {
                return Err(Error::Bracketing { l, k: zeros.len() });
            }
            zeros.push(root);
        }
        x = x2;
        fx = fx2;
    }
    Ok(BesselZeroTable { l, zeros, tol })
}

fn bisect(l: u32, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = spherical_bessel_j(l, lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = spherical_bessel_j(l, mid)?;
        if fmid == 0.0 {
            return Ok(mid);
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    // pick the endpoint with the smaller residual
    let rlo = spherical_bessel_j(l, lo)?.abs();
    let rhi = spherical_bessel_j(l, hi)?.abs();
    Ok(if rlo <= rhi { lo } else { hi })
}
