//! The NLCS paired with the excited exciton level is annihilated by the
//! sideband Hamiltonian: residuals at several radii, plus non-dark controls.
//!
//! Run with: cargo run --example dark_state

use exciton_nlcs::algebra::WellDeformation;
use exciton_nlcs::dynamics::{
    build_interaction_hamiltonian, dark_state_residual, CompositeState,
};
use exciton_nlcs::nlcs::{build_state, DriveParams, FockState};
use num_complex::Complex64;

fn main() {
    let drive = DriveParams::new(0.3, 0.5, 0.0);
    println!("||H (|e> x |psi>)|| / Omega1 for the NLCS:");
    for r in [0.5, 1.0, 2.0, 5.0] {
        let d = WellDeformation::new(0, r, 205).expect("well");
        let st = build_state(&d, &drive, 200, 1e-12).expect("state");
        let h = build_interaction_hamiltonian(&d, &drive, 1.0, st.trunc).expect("hamiltonian");
        let n = st.trunc;
        let res = dark_state_residual(&h, &CompositeState::excited(st));
        println!("  R/a_B = {r:>4}: residual = {res:.3e}  (N = {n})");
    }

    let d = WellDeformation::new(0, 1.0, 205).expect("well");
    let st = build_state(&d, &drive, 200, 1e-12).expect("state");
    let h = build_interaction_hamiltonian(&d, &drive, 1.0, st.trunc).expect("hamiltonian");
    let vac = FockState::from_coeffs(vec![Complex64::new(1.0, 0.0)]);
    let h_small = build_interaction_hamiltonian(&d, &drive, 1.0, 4).expect("hamiltonian");
    println!("\ncontrols (not dark):");
    println!(
        "  |e> x |0>     residual = {:.3e}",
        dark_state_residual(&h_small, &CompositeState::excited(vac))
    );
    println!(
        "  |g> x |psi>   residual = {:.3e}",
        dark_state_residual(&h, &CompositeState::ground(st))
    );
}
