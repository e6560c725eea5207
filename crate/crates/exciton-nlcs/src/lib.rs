//! Nonlinear coherent states of a laser-driven exciton confined to a wide
//! spherical quantum dot.
//!
//! The computational chain goes: zeros of the spherical Bessel functions
//! ([`specfun`]) -> infinite-well deformation function f1 and the associated
//! f-deformed oscillator ([`algebra`]) -> drive-induced structure functions
//! F_i(n, kappa) and the nonlinear coherent state they select ([`nlcs`]) ->
//! squeezing and number statistics ([`observables`]) and the dark-state
//! property of the sideband Hamiltonian ([`dynamics`]).
//!
//! See the crate examples for runnable entry points into each stage; the
//! `nlcs` binary exposes the same capabilities as subcommands.

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod nlcs;
pub mod observables;
pub mod selfcheck;
pub mod specfun;

pub use algebra::{Deformation, LadderMatrix, Undeformed, WellDeformation, WellF1};
pub use nlcs::{DriveParams, FockState};
pub use observables::QuadratureReport;
pub use specfun::BesselZeroTable;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: argument x = {0} must be positive")]
    Domain(f64),
    #[error("zero table for l = {l} holds {have} zeros but index {want} was requested")]
    TableExhausted { l: u32, have: usize, want: usize },
    #[error("failed to bracket zero k = {k} of j_{l} (implementation bug)")]
    Bracketing { l: u32, k: usize },
    #[error("singular deformation at n = {n}: carrier structure function F0({m}, kappa) vanishes (|sum| < {threshold:e})", m = n - 1)]
    SingularDeformation { n: usize, threshold: f64 },
    #[error("structure-function sum at n = {n} lost all significant digits to cancellation")]
    PrecisionLoss { n: usize },
    #[error("tail tolerance {tail_tol:e} not reached by n_max = {n_max}")]
    NoConvergence { n_max: usize, tail_tol: f64 },
    #[error("truncation too small: edge weight {weight:e} would contaminate variances")]
    TruncationTooSmall { weight: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
