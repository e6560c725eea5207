//! Squeezing parameter s1 of the well quadratures versus R/a_B, for two
//! drive ratios: s1 < 0 marks squeezing at small radii, gone at large radii.
//!
//! Run with: cargo run --example squeezing_sweep

use exciton_nlcs::nlcs::DriveParams;
use exciton_nlcs::observables::squeezing_sweep;

fn main() {
    let grid: Vec<f64> = (0..25).map(|i| 0.2 + i as f64 * (5.0 - 0.2) / 24.0).collect();
    println!("{:>8} {:>13} {:>13} {:>13} {:>13}", "R/a_B", "s1 (0.5)", "s2 (0.5)", "s1 (0.2)", "s2 (0.2)");
    let sweeps: Vec<_> = [0.5, 0.2]
        .iter()
        .map(|&ratio| {
            let drive = DriveParams::new(0.3, ratio, 0.0);
            squeezing_sweep(0, &drive, &grid, 0.0, 200, 1e-12).expect("sweep")
        })
        .collect();
    for i in 0..grid.len() {
        print!("{:>8.3}", grid[i]);
        for sweep in &sweeps {
            match &sweep[i].outcome {
                Ok(rep) => print!(" {:>13.6} {:>13.6}", rep.s1, rep.s2),
                Err(e) => print!(" {:>27}", format!("[{e}]")),
            }
        }
        println!();
    }
    for (sweep, ratio) in sweeps.iter().zip([0.5, 0.2]) {
        let squeezed: Vec<f64> = sweep
            .iter()
            .filter(|p| p.outcome.as_ref().map(|r| r.s1 < 0.0).unwrap_or(false))
            .map(|p| p.r_over_ab)
            .collect();
        match (squeezed.first(), squeezed.last()) {
            (Some(a), Some(b)) => {
                println!("ratio {ratio}: s1 < 0 for R/a_B in [{a:.2}, {b:.2}] on this grid")
            }
            _ => println!("ratio {ratio}: no squeezing on this grid"),
        }
    }
}
