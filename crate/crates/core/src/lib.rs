//! Numerical laboratory for the energy-critical focusing Hartree equation
//! iu_t + Δu = −(|x|⁻⁴ ∗ |u|²)u with radial data in d ≥ 5.
//!
//! The crate provides the radial spectral discretization (discrete Hankel
//! transform on Bessel-zero nodes), the nonlocal Hartree operator with an
//! independent quadrature oracle, the conserved functionals and variational
//! inequalities around the ground state W, a fixed-point ground-state solver,
//! a Strang split-step integrator with adaptive steps and blow-up sensors,
//! virial/variance diagnostics, and a classifier that compares the a-priori
//! energy/gradient gate against the observed fate of each trajectory.

pub mod classifier;
pub mod config;
pub mod evolution;
pub mod functionals;
pub mod grid;
pub mod ground_state;
pub mod hartree;
pub mod io;
pub mod quad;
pub mod special;
pub mod svg;
pub mod sweep;
pub mod virial;

pub use grid::{
    integrate_radial, integrate_radial_real, make_grid, transform_forward, transform_inverse,
    PhysicalField, RadialGrid, Side, SpectralField,
};
pub use hartree::{hartree_potential, nonlinearity, oracle_potential, riesz_multiplier, RieszMultiplier};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("grid construction: {0}")]
    Grid(String),
    #[error("sample length mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("field contains non-finite values")]
    NonFinite,
    #[error("grid mismatch between operands")]
    GridMismatch,
    #[error("zero field where a nonzero field is required")]
    ZeroField,
    #[error("solver did not converge: {0}")]
    NoConvergence(String),
    #[error("quadrature did not converge: achieved error {achieved:e} above {requested:e}")]
    QuadratureNoConvergence { achieved: f64, requested: f64 },
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}
