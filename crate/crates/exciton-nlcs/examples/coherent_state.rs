//! Build the nonlinear coherent state selected by the drive and inspect its
//! number distribution against the Glauber state of equal |chi|.
//!
//! Run with: cargo run --example coherent_state

use exciton_nlcs::algebra::WellDeformation;
use exciton_nlcs::nlcs::{
    build_state, eigen_residual, glauber_state, DriveParams, NlcsDeformation,
};
use exciton_nlcs::observables::mandel_q;
use num_complex::Complex64;

fn main() {
    let drive = DriveParams::new(0.3, 0.5, 0.0);
    let d = WellDeformation::new(0, 1.0, 205).expect("well");
    let st = build_state(&d, &drive, 200, 1e-12).expect("state");
    let chi = drive.chi();
    let glauber = glauber_state(Complex64::new(0.0, chi.im), 200, 1e-12).expect("glauber");

    println!(
        "kappa = {}, Omega0/Omega1 = {}, |chi| = {:.6}, truncation N = {}",
        drive.kappa,
        drive.omega_ratio,
        chi.norm(),
        st.trunc
    );
    println!("{:>3} {:>14} {:>14}", "n", "NLCS |c_n|^2", "Glauber");
    let probs = st.probabilities();
    let gp = glauber.probabilities();
    for n in 0..probs.len().min(14) {
        println!(
            "{n:>3} {:>14.8} {:>14.8}",
            probs[n],
            gp.get(n).copied().unwrap_or(0.0)
        );
    }

    let res = eigen_residual(
        &st,
        &NlcsDeformation {
            def: &d,
            drive: &drive,
        },
        chi,
    )
    .expect("residual");
    println!("\neigenvalue residual ||f(n) a |psi> - chi |psi>|| = {res:.2e}");
    println!("Mandel Q: NLCS {:.6}, Glauber {:.2e}", mandel_q(&st), mandel_q(&glauber));
}
