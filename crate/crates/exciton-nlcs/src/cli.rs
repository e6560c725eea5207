//! Command-line front end used by the `nlcs` binary.
//!
//! Subcommands: `zeros`, `state`, `squeeze`, `darkstate`, `selfcheck`.
//! Output is CSV with `#`-prefixed metadata lines. Exit codes: 0 ok,
//! 2 usage, 3 singular deformation, 4 non-convergence. Every flag can also
//! be set through the environment with the `NLCS_` prefix; command line
//! wins over environment wins over defaults.

use crate::algebra::{Undeformed, WellDeformation};
use crate::dynamics::{
    build_interaction_hamiltonian, build_interaction_hamiltonian_with, dark_state_residual,
    CompositeState,
};
use crate::nlcs::{build_state, build_state_with, DriveParams, TrappedIonDeformation};
use crate::observables::{squeezing_sweep, SweepPoint};
use crate::specfun::{bessel_zeros, spherical_bessel_j};
use crate::Error;
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nlcs", version, about = "Nonlinear coherent states of a driven quantum-dot exciton")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Positive zeros of the spherical Bessel function j_l
    Zeros {
        #[arg(long, default_value_t = 0, env = "NLCS_L", allow_negative_numbers = true)]
        l: i64,
        #[arg(long, default_value_t = 3, env = "NLCS_COUNT")]
        count: usize,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Fock expansion of the nonlinear coherent state
    State {
        #[command(flatten)]
        phys: PhysOpts,
        #[arg(long, default_value_t = 1.0, env = "NLCS_R")]
        r: f64,
        #[arg(long, default_value_t = 0.5, env = "NLCS_RATIO")]
        ratio: f64,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Squeezing parameters over an R/a_B grid
    Squeeze {
        #[command(flatten)]
        phys: PhysOpts,
        /// grid spec start:stop:points, or a single value
        #[arg(long, default_value = "0.2:5:50", env = "NLCS_R")]
        r: String,
        /// comma-separated list of Omega0/Omega1 values
        #[arg(long, default_value = "0.5,0.2", env = "NLCS_RATIOS")]
        ratios: String,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Dark-state residual of |e> (x) |psi>
    Darkstate {
        #[command(flatten)]
        phys: PhysOpts,
        #[arg(long, default_value_t = 1.0, env = "NLCS_R")]
        r: f64,
        #[arg(long, default_value_t = 0.5, env = "NLCS_RATIO")]
        ratio: f64,
        #[command(flatten)]
        io: IoOpts,
    },
    /// Run every module's invariant suite
    Selfcheck,
}

#[derive(Debug, Args)]
pub struct PhysOpts {
    #[arg(long, default_value_t = 0, env = "NLCS_L", allow_negative_numbers = true)]
    pub l: i64,
    #[arg(long, default_value_t = 0.3, env = "NLCS_KAPPA")]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.0, env = "NLCS_PHI", allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 200, env = "NLCS_N_MAX")]
    pub n_max: usize,
    #[arg(long, default_value_t = 1e-12, env = "NLCS_TAIL_TOL")]
    pub tail_tol: f64,
    /// replace the well deformation by f == 1 (trapped-ion limit)
    #[arg(long)]
    pub undeformed: bool,
}

#[derive(Debug, Args)]
pub struct IoOpts {
    /// write CSV here instead of stdout
    #[arg(long, env = "NLCS_OUT")]
    pub out: Option<PathBuf>,
    /// omit the timestamp metadata line for byte-identical reruns
    #[arg(long)]
    pub reproducible: bool,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SingularDeformation { .. } => EXIT_SINGULAR,
        Error::NoConvergence { .. } | Error::PrecisionLoss { .. } => EXIT_NO_CONVERGENCE,
        Error::InvalidArgument(_) | Error::Domain(_) => EXIT_USAGE,
        _ => 1,
    }
}

fn open_sink(io: &IoOpts) -> std::io::Result<Box<dyn Write>> {
    Ok(match &io.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_meta(w: &mut dyn Write, io: &IoOpts, fields: &[(&str, String)]) -> std::io::Result<()> {
    if !io.reproducible {
        writeln!(w, "# generated={}", chrono::Utc::now().to_rfc3339())?;
    }
    for (k, v) in fields {
        writeln!(w, "# {k}={v}")?;
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::InvalidArgument(format!("bad grid spec '{spec}' (want start:stop:points)"));
    if let Ok(single) = spec.parse::<f64>() {
        if single > 0.0 {
            return Ok(vec![single]);
        }
        return Err(bad());
    }
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].parse().map_err(|_| bad())?;
    let points: usize = parts[2].parse().map_err(|_| bad())?;
    if !(start > 0.0) || stop <= start || points < 2 {
        return Err(bad());
    }
    Ok((0..points)
        .map(|i| start + (stop - start) * i as f64 / (points - 1) as f64)
        .collect())
}

fn parse_ratios(spec: &str) -> Result<Vec<f64>, Error> {
    let vals: Result<Vec<f64>, _> = spec.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match vals {
        Ok(v) if !v.is_empty() && v.iter().all(|&x| x > 0.0) => Ok(v),
        _ => Err(Error::InvalidArgument(format!(
            "bad ratio list '{spec}' (want comma-separated positive reals)"
        ))),
    }
}

fn validate_l(l: i64) -> Result<u32, Error> {
    u32::try_from(l).map_err(|_| Error::InvalidArgument(format!("l must be >= 0, got {l}")))
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.cmd {
        Cmd::Zeros { l, count, io } => cmd_zeros(l, count, &io),
        Cmd::State { phys, r, ratio, io } => cmd_state(&phys, r, ratio, &io),
        Cmd::Squeeze { phys, r, ratios, io } => cmd_squeeze(&phys, &r, &ratios, &io),
        Cmd::Darkstate { phys, r, ratio, io } => cmd_darkstate(&phys, r, ratio, &io),
        Cmd::Selfcheck => cmd_selfcheck(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn cmd_zeros(l: i64, count: usize, io: &IoOpts) -> Result<i32, Error> {
    let l = validate_l(l)?;
    if count == 0 {
        return Err(Error::InvalidArgument("count must be >= 1".into()));
    }
    let table = bessel_zeros(l, count, 1e-12)?;
    let mut w = open_sink(io).map_err(io_err)?;
    write_meta(
        &mut w,
        io,
        &[
            ("l", l.to_string()),
            ("count", count.to_string()),
            ("tol", format!("{:e}", table.tol)),
        ],
    )
    .map_err(io_err)?;
    writeln!(w, "k,alpha,residual").map_err(io_err)?;
    for (k, &z) in table.zeros.iter().enumerate() {
        let res = spherical_bessel_j(l, z)?;
        writeln!(w, "{k},{z},{res}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_state(phys: &PhysOpts, r: f64, ratio: f64, io: &IoOpts) -> Result<i32, Error> {
    let l = validate_l(phys.l)?;
    let drive = DriveParams::new(phys.kappa, ratio, phys.phi);
    let state = if phys.undeformed {
        build_state_with(&Undeformed, drive.chi(), phys.n_max, phys.tail_tol)?
    } else {
        let def = WellDeformation::new(l, r, phys.n_max)?;
        build_state(&def, &drive, phys.n_max, phys.tail_tol)?
    };
    let mut w = open_sink(io).map_err(io_err)?;
    write_meta(
        &mut w,
        io,
        &[
            ("l", l.to_string()),
            ("r_over_ab", r.to_string()),
            ("kappa", phys.kappa.to_string()),
            ("omega_ratio", ratio.to_string()),
            ("chi_abs", (ratio / phys.kappa).to_string()),
            ("undeformed", phys.undeformed.to_string()),
            ("n_max", phys.n_max.to_string()),
            ("tail_tol", format!("{:e}", phys.tail_tol)),
            ("trunc", state.trunc.to_string()),
            ("tail_bound", format!("{:e}", state.tail_bound)),
        ],
    )
    .map_err(io_err)?;
    writeln!(w, "n,prob,re,im").map_err(io_err)?;
    for (n, c) in state.coeffs.iter().enumerate() {
        writeln!(w, "{n},{},{},{}", c.norm_sqr(), c.re, c.im).map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

fn cmd_squeeze(phys: &PhysOpts, r_spec: &str, ratio_spec: &str, io: &IoOpts) -> Result<i32, Error> {
    let l = validate_l(phys.l)?;
    let grid = parse_grid(r_spec)?;
    let ratios = parse_ratios(ratio_spec)?;
    let mut w = open_sink(io).map_err(io_err)?;
    write_meta(
        &mut w,
        io,
        &[
            ("l", l.to_string()),
            ("kappa", phys.kappa.to_string()),
            ("phi", phys.phi.to_string()),
            ("ratios", ratio_spec.to_string()),
            ("r_grid", r_spec.to_string()),
            ("n_max", phys.n_max.to_string()),
            ("tail_tol", format!("{:e}", phys.tail_tol)),
        ],
    )
    .map_err(io_err)?;
    writeln!(
        w,
        "ratio,r_over_ab,s1,s2,var_x1,var_x2,g_expect,mandel_q,status"
    )
    .map_err(io_err)?;
    let mut ok_rows = 0usize;
    let mut saw_singular = false;
    for &ratio in &ratios {
        let drive = DriveParams::new(phys.kappa, ratio, phys.phi);
        let rows: Vec<SweepPoint> =
            squeezing_sweep(l, &drive, &grid, phys.phi, phys.n_max, phys.tail_tol)?;
        for row in rows {
            match row.outcome {
                Ok(rep) => {
                    ok_rows += 1;
                    writeln!(
                        w,
                        "{ratio},{},{},{},{},{},{},{},ok",
                        row.r_over_ab,
                        rep.s1,
                        rep.s2,
                        rep.var_x1,
                        rep.var_x2,
                        rep.g_expect,
                        rep.mandel_q
                    )
                    .map_err(io_err)?;
                }
                Err(e) => {
                    if matches!(e, Error::SingularDeformation { .. }) {
                        saw_singular = true;
                    }
                    let status = match e {
                        Error::SingularDeformation { n, .. } => format!("singular:n={n}"),
                        Error::NoConvergence { .. } => "no-convergence".to_string(),
                        Error::PrecisionLoss { n } => format!("precision-loss:n={n}"),
                        other => format!("error:{other}"),
                    };
                    writeln!(w, "{ratio},{},,,,,,,{status}", row.r_over_ab).map_err(io_err)?;
                }
            }
        }
    }
    if ok_rows > 0 {
        Ok(EXIT_OK)
    } else if saw_singular {
        Ok(EXIT_SINGULAR)
    } else {
        Ok(EXIT_NO_CONVERGENCE)
    }
}

fn cmd_darkstate(phys: &PhysOpts, r: f64, ratio: f64, io: &IoOpts) -> Result<i32, Error> {
    let l = validate_l(phys.l)?;
    let drive = DriveParams::new(phys.kappa, ratio, phys.phi);
    let (residual, trunc, tail_bound) = if phys.undeformed {
        // trapped-ion limit: harmonic well profile everywhere
        let f = TrappedIonDeformation { kappa: phys.kappa };
        let state = build_state_with(&f, drive.chi(), phys.n_max, phys.tail_tol)?;
        let h = build_interaction_hamiltonian_with(&Undeformed, &drive, 1.0, state.trunc)?;
        let trunc = state.trunc;
        let tail = state.tail_bound;
        (
            dark_state_residual(&h, &CompositeState::excited(state)),
            trunc,
            tail,
        )
    } else {
        let def = WellDeformation::new(l, r, phys.n_max)?;
        let state = build_state(&def, &drive, phys.n_max, phys.tail_tol)?;
        let h = build_interaction_hamiltonian(&def, &drive, 1.0, state.trunc)?;
        let trunc = state.trunc;
        let tail = state.tail_bound;
        (
            dark_state_residual(&h, &CompositeState::excited(state)),
            trunc,
            tail,
        )
    };
    let mut w = open_sink(io).map_err(io_err)?;
    write_meta(
        &mut w,
        io,
        &[
            ("l", l.to_string()),
            ("r_over_ab", r.to_string()),
            ("kappa", phys.kappa.to_string()),
            ("omega_ratio", ratio.to_string()),
            ("undeformed", phys.undeformed.to_string()),
            ("tail_tol", format!("{:e}", phys.tail_tol)),
        ],
    )
    .map_err(io_err)?;
    writeln!(w, "residual,trunc,tail_bound").map_err(io_err)?;
    writeln!(w, "{residual},{trunc},{tail_bound:e}").map_err(io_err)?;
    Ok(if residual <= 1e-6 { EXIT_OK } else { 1 })
}

fn cmd_selfcheck() -> Result<i32, Error> {
    let checks = crate::selfcheck::run_all()?;
    let mut all_pass = true;
    for c in &checks {
        println!(
            "{} {:<42} max_dev={:9.3e} tol={:9.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.max_dev,
            c.tol
        );
        all_pass &= c.pass;
    }
    if all_pass {
        println!("selfcheck: all {} sections passed", checks.len());
        Ok(EXIT_OK)
    } else {
        let first = checks.iter().find(|c| !c.pass).unwrap();
        eprintln!("selfcheck failed at: {}", first.name);
        Ok(1)
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("io error: {e}"))
}
