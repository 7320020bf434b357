//! Constrained lattice gas dynamics and their porous-medium hydrodynamics.
//!
//! The crate has four layers:
//!
//! - [`lattice`]: exact integer-rate dynamics of a kinetically constrained
//!   exclusion process on the discrete torus, where the exchange across a
//!   bond is unlocked by fully occupied blocks of `m` neighbouring sites.
//! - [`measures`]: product Bernoulli reference measures, profile sampling,
//!   relative entropy between site-inhomogeneous products, and the
//!   slowly-vanishing truncation schedule `eps_N`.
//! - [`pme`]: a conservative monotone finite-difference solver for the
//!   porous medium equation `d_t rho = d_uu(rho^m)` on the unit torus,
//!   with clamp-and-mollify preparation of initial data and Barenblatt
//!   reference pulses.
//! - [`diag`]: derivative identities of the log-density field, norm-bound
//!   measurements with explicit constants, one-block statistics, site
//!   classification, and Monte Carlo hydrodynamic comparisons.
//!
//! Profile and field arithmetic is generic over the scalar type via
//! [`scalar::Real`] (implemented for `f32` and `f64`); lattice state and
//! jump rates are exact integers throughout.

pub mod diag;
pub mod lattice;
pub mod measures;
pub mod pme;
pub mod scalar;

pub use scalar::Real;

/// Double-precision aliases for the common instantiation.
pub type GridProfile64 = pme::GridProfile<f64>;
pub type LatticeProfile64 = measures::LatticeProfile<f64>;
pub type SolverConfig64 = pme::SolverConfig<f64>;
pub type SpaceTimeField64 = pme::SpaceTimeField<f64>;
