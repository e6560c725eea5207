//! Infinite-spherical-well spectrum through the deformed-oscillator lens:
//! f1(n), level energies and the closure E_n = (eps/2) alpha_{n,l}^2.
//!
//! Run with: cargo run --example well_spectrum

use exciton_nlcs::algebra::WellDeformation;

fn main() {
    let r_over_ab = 1.0;
    for l in [0u32, 1] {
        let d = WellDeformation::new(l, r_over_ab, 12).expect("well");
        println!("l = {l}, R/a_B = {r_over_ab}, epsilon = {:.3}", d.epsilon);
        println!(
            "{:>3} {:>14} {:>14} {:>14} {:>12}",
            "n", "f1(n)", "E_n", "(eps/2)a^2", "omega_n"
        );
        for n in 0..=10usize {
            let alpha = d.zeros.get(n).unwrap();
            println!(
                "{n:>3} {:>14.8} {:>14.8} {:>14.8} {:>12.6}",
                d.f1(n).unwrap(),
                d.energy(n).unwrap(),
                0.5 * d.epsilon * alpha * alpha,
                d.transition_frequency(n).unwrap()
            );
        }
        println!();
    }
}
