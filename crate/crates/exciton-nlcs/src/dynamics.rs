//! Sideband interaction Hamiltonian on the two-level (x) truncated-Fock
//! space and the dark-state property of |e> (x) |psi_NLCS>.
//!
//! H = Omega1 S12 [ (Omega0/Omega1) F0(n̂) + i kappa F1(n̂) a ] + H.c.,
//! with a the undeformed boson operator; all well physics enters through the
//! structure functions. Basis ordering: |g,0..N> then |e,0..N>.

use crate::algebra::{Deformation, WellDeformation, WellF1};
use crate::nlcs::{structure_function_f_with, DriveParams, FockState};
use crate::Result;
use ndarray::Array2;
use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct CompositeOperator {
    pub n_trunc: usize,
    pub omega1: f64,
    pub entries: Array2<Complex64>,
}

#[derive(Debug, Clone)]
pub struct CompositeState {
    pub ground_amp: Complex64,
    pub excited_amp: Complex64,
    pub motional: FockState,
}

impl CompositeState {
    pub fn excited(motional: FockState) -> Self {
        CompositeState {
            ground_amp: Complex64::new(0.0, 0.0),
            excited_amp: Complex64::new(1.0, 0.0),
            motional,
        }
    }

    pub fn ground(motional: FockState) -> Self {
        CompositeState {
            ground_amp: Complex64::new(1.0, 0.0),
            excited_amp: Complex64::new(0.0, 0.0),
            motional,
        }
    }

    fn vector(&self, n_trunc: usize) -> Vec<Complex64> {
        let block = n_trunc + 1;
        let mut v = vec![Complex64::default(); 2 * block];
        for n in 0..=self.motional.trunc.min(n_trunc) {
            v[n] = self.ground_amp * self.motional.coeffs[n];
            v[block + n] = self.excited_amp * self.motional.coeffs[n];
        }
        v
    }
}

/// H on the truncated composite basis. The g-e block carries
/// <g,n|H|e,n> = Omega0 F0(n) and <g,n-1|H|e,n> = i kappa Omega1 sqrt(n) F1(n-1);
/// the Hermitian conjugate block is filled in explicitly.
pub fn build_interaction_hamiltonian(
    def: &WellDeformation,
    drive: &DriveParams,
    omega1: f64,
    n_trunc: usize,
) -> Result<CompositeOperator> {
    build_interaction_hamiltonian_with(&WellF1(def), drive, omega1, n_trunc)
}

/// Same construction for an arbitrary well profile (`Undeformed` gives the
/// trapped-ion sideband Hamiltonian).
pub fn build_interaction_hamiltonian_with(
    f1: &dyn Deformation,
    drive: &DriveParams,
    omega1: f64,
    n_trunc: usize,
) -> Result<CompositeOperator> {
    let block = n_trunc + 1;
    let dim = 2 * block;
    let mut h = Array2::<Complex64>::zeros((dim, dim));
    let omega0 = omega1 * drive.omega_ratio;
    for n in 0..=n_trunc {
        let carrier =
            Complex64::new(omega0 * structure_function_f_with(f1, 0, n, drive.kappa)?, 0.0);
        h[[n, block + n]] = carrier;
        h[[block + n, n]] = carrier.conj();
        if n >= 1 {
            let side = Complex64::new(0.0, 1.0)
                * (drive.kappa
                    * omega1
                    * (n as f64).sqrt()
                    * structure_function_f_with(f1, 1, n - 1, drive.kappa)?);
            h[[n - 1, block + n]] = side;
            h[[block + n, n - 1]] = side.conj();
        }
    }
    Ok(CompositeOperator {
        n_trunc,
        omega1,
        entries: h,
    })
}

/// ||H v|| / (Omega1 ||v||).
pub fn dark_state_residual(h: &CompositeOperator, state: &CompositeState) -> f64 {
    let v = state.vector(h.n_trunc);
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let dim = v.len();
    let mut acc = 0.0;
    for row in 0..dim {
        let mut e = Complex64::default();
        for col in 0..dim {
            e += h.entries[[row, col]] * v[col];
        }
        acc += e.norm_sqr();
    }
    acc.sqrt() / (h.omega1 * norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Undeformed;
    use crate::nlcs::{
        build_state, build_state_with, structure_function_f, FockState, TrappedIonDeformation,
    };
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn setup(r: f64, ratio: f64) -> (WellDeformation, DriveParams) {
        (
            WellDeformation::new(0, r, 205).unwrap(),
            DriveParams::new(0.3, ratio, 0.0),
        )
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let (d, drive) = setup(1.0, 0.5);
        let h = build_interaction_hamiltonian(&d, &drive, 1.0, 12).unwrap();
        let dim = 2 * 13;
        for i in 0..dim {
            for j in 0..dim {
                let dev = (h.entries[[i, j]] - h.entries[[j, i]].conj()).norm();
                assert!(dev <= 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn couplings_scale_with_omega1() {
        let (d, drive) = setup(0.8, 0.5);
        let h1 = build_interaction_hamiltonian(&d, &drive, 1.0, 8).unwrap();
        let h3 = build_interaction_hamiltonian(&d, &drive, 3.0, 8).unwrap();
        for i in 0..18 {
            for j in 0..18 {
                assert_abs_diff_eq!(
                    (h3.entries[[i, j]] - h1.entries[[i, j]] * 3.0).norm(),
                    0.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn nlcs_is_dark() {
        for &ratio in &[0.5, 0.2] {
            for &r in &[0.5, 1.0, 2.0, 5.0] {
                let (d, drive) = setup(r, ratio);
                let st = build_state(&d, &drive, 200, 1e-12).unwrap();
                let h = build_interaction_hamiltonian(&d, &drive, 1.0, st.trunc).unwrap();
                let res = dark_state_residual(&h, &CompositeState::excited(st));
                assert!(res <= 1e-8, "ratio={ratio} r={r} residual={res}");
            }
        }
    }

    #[test]
    fn excited_vacuum_is_not_dark() {
        let (d, drive) = setup(1.0, 0.5);
        let vac = FockState::from_coeffs(vec![Complex64::new(1.0, 0.0)]);
        let h = build_interaction_hamiltonian(&d, &drive, 1.0, 6).unwrap();
        let res = dark_state_residual(&h, &CompositeState::excited(vac));
        let f0 = structure_function_f(&d, 0, 0, drive.kappa).unwrap();
        assert_abs_diff_eq!(res, (drive.omega_ratio * f0).abs(), epsilon = 1e-12);
        assert!(res > 0.0);
    }

    #[test]
    fn ground_states_are_lifted() {
        let (d, drive) = setup(1.0, 0.5);
        let st = build_state(&d, &drive, 200, 1e-12).unwrap();
        let h = build_interaction_hamiltonian(&d, &drive, 1.0, st.trunc).unwrap();
        let res = dark_state_residual(&h, &CompositeState::ground(st));
        assert!(res > 1e-3);
    }

    #[test]
    fn trapped_ion_limit_is_dark_too() {
        let drive = DriveParams::new(0.3, 0.5, 0.0);
        let f = TrappedIonDeformation { kappa: drive.kappa };
        let st = build_state_with(&f, drive.chi(), 200, 1e-12).unwrap();
        let h = build_interaction_hamiltonian_with(&Undeformed, &drive, 1.0, st.trunc).unwrap();
        let res = dark_state_residual(&h, &CompositeState::excited(st));
        assert!(res <= 1e-8, "residual={res}");
    }

    #[test]
    fn residual_tightens_with_tail() {
        let (d, drive) = setup(1.0, 0.5);
        let loose = build_state(&d, &drive, 200, 1e-6).unwrap();
        let tight = build_state(&d, &drive, 200, 1e-12).unwrap();
        let h_loose = build_interaction_hamiltonian(&d, &drive, 1.0, loose.trunc).unwrap();
        let h_tight = build_interaction_hamiltonian(&d, &drive, 1.0, tight.trunc).unwrap();
        let r_loose = dark_state_residual(&h_loose, &CompositeState::excited(loose));
        let r_tight = dark_state_residual(&h_tight, &CompositeState::excited(tight));
        assert!(r_loose <= 1e-4);
        assert!(
            r_tight * 10.0 <= r_loose,
            "loose {r_loose} tight {r_tight}"
        );
    }
}
