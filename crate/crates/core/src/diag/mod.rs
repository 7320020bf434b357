//! Diagnostics connecting the particle system to its scaling limit:
//! discrete derivative identities, a priori norm bounds, block averages,
//! local-equilibrium errors, and replica-ensemble comparisons.

mod bounds;
mod classify;
mod flux_correction;
mod hydro;
mod identities;
mod lambda;
mod local_eq;
mod one_block;
mod stencil;

pub use bounds::{bound_constants, norm_bounds_report, pressure_lipschitz, BoundConstants, BoundEntry};
pub use classify::{classify_sites, SiteClassification, SiteLabel};
pub use flux_correction::{
    flux_correction_integral, flux_correction_profile, flux_correction_report,
};
pub use hydro::{
    block_density_l1, endpoint_ensemble, run_hydro_compare, HydroCompareConfig, HydroCompareRow,
};
pub use identities::{check_lambda_identities, IdentityResiduals};
pub use lambda::{lambda_from_density, lambda_scalar, LambdaField};
pub use local_eq::{local_equilibrium_error, local_equilibrium_terms};
pub use one_block::one_block_statistic;
pub use stencil::{d1, d2, d3};

use thiserror::Error;

use crate::lattice::LatticeError;
use crate::measures::MeasureError;
use crate::pme::PmeError;

#[derive(Debug, Error)]
pub enum DiagError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Pme(#[from] PmeError),
    #[error("grid of {cells} cells is too coarse for the stencil (needs at least {need})")]
    GridTooCoarse { cells: usize, need: usize },
    #[error("density {value} at snapshot {snapshot}, cell {cell} is not strictly interior")]
    DensityNotInterior {
        snapshot: usize,
        cell: usize,
        value: f64,
    },
    #[error("reference density must lie strictly between 0 and 1, got {0}")]
    BadReferenceDensity(f64),
    #[error("need at least two snapshots for time differences, got {0}")]
    TooFewSnapshots(usize),
    #[error("ensemble is empty")]
    EmptyEnsemble,
    #[error("ensemble configurations disagree on ring size: {0} and {1}")]
    MixedRingSizes(usize, usize),
    #[error("window radius {radius} does not fit a ring of {n} sites")]
    WindowTooWide { radius: usize, n: usize },
    #[error("vanishing threshold {alpha_n} must not exceed the positivity threshold {delta}")]
    ThresholdsOutOfOrder { alpha_n: f64, delta: f64 },
    #[error("replica count must be positive")]
    NoReplicas,
}
