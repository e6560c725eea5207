//! Zeros of the spherical Bessel functions: accuracy and interlacing.
//!
//! Run with: cargo run --example bessel_zeros

use exciton_nlcs::specfun::{bessel_zeros, spherical_bessel_j};

fn main() {
    println!("first five zeros of j_l, l = 0..4");
    println!("{:>3} {:>18} {:>18} {:>18} {:>18} {:>18}", "k", "l=0", "l=1", "l=2", "l=3", "l=4");
    let tables: Vec<_> = (0..5)
        .map(|l| bessel_zeros(l, 5, 1e-12).expect("zero search"))
        .collect();
    for k in 0..5 {
        print!("{k:>3}");
        for t in &tables {
            print!(" {:>18.12}", t.zeros[k]);
        }
        println!();
    }

    println!("\nl = 0 zeros are (k+1)*pi:");
    for (k, &z) in tables[0].zeros.iter().enumerate() {
        let exact = (k as f64 + 1.0) * std::f64::consts::PI;
        println!("  k={k}: {z:.15}  dev={:.2e}", (z - exact).abs());
    }

    let worst = tables
        .iter()
        .flat_map(|t| t.zeros.iter().map(|&z| spherical_bessel_j(t.l, z).unwrap().abs()))
        .fold(0.0_f64, f64::max);
    println!("\nworst residual |j_l(alpha)| = {worst:.2e}");
}
