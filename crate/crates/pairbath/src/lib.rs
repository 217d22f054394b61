//! Steady-state thermodynamics of a pair of two-level systems coupled to a
//! shared thermal bath.
//!
//! The crate models two identical two-level atoms with transition energy ω
//! relaxing under either *collective* dissipation (the pair couples to the
//! bath through the symmetric ladder operators S± = σ₁± + σ₂±, which
//! conserves the dark-state weight) or *independent* dissipation (each atom
//! couples separately and the pair thermalizes). It provides
//!
//! - [`algebra`]: product/collective-basis linear algebra, density-matrix
//!   validation, partial trace, entropies;
//! - [`dynamics`]: thermal jump rates, Liouvillian superoperators, an RK4
//!   propagator, closed-form population dynamics, coherence decay rates, and
//!   steady states (analytic and numeric);
//! - [`thermo`]: steady-state observables — energy, von Neumann entropy,
//!   residual-coherence measures, apparent and local temperatures, and the
//!   critical initial conditions where steady-state entropy crosses its
//!   thermal value;
//! - [`sweep`]: parameter sweeps, figure presets, and CSV serialization;
//! - [`cli`]: the `pairbath` command-line interface.
//!
//! Energies are reported in units of ω and inverse temperatures as the
//! dimensionless combination ωβ throughout.

// Parameter validation negates comparisons (`!(x > 0.0)`) so NaN fails
// closed instead of slipping past a `x <= 0.0` check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod sweep;
pub mod thermo;

pub use error::{Error, Result};
