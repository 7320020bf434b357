//! Exact dynamics of the constrained exclusion process on the discrete torus.

mod config;
mod generator;
mod observables;
mod rates;
mod simulate;

pub use config::{Configuration, DynamicsParams};
pub use generator::{Generator, MAX_ENUMERATED_RING};
pub use observables::{
    block_average, g_mean, h_mean, has_mobile_cluster, local_g, local_h,
};
pub use rates::{bond_rate, is_blocked, jump_rate, total_bond_rate};
pub use simulate::{simulate, simulate_with_rng, TrajectoryRecord};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("constraint range m must be at least 2, got {0}")]
    RangeTooSmall(usize),
    #[error("ring of {n} sites is too small for constraint range {m}; need at least {min}")]
    RingTooSmall { n: usize, m: usize, min: usize },
    #[error("reference density must lie strictly between 0 and 1, got {0}")]
    DensityOutOfRange(f64),
    #[error("generator enumeration is limited to rings of at most {max} sites, got {n}")]
    RingTooLarge { n: usize, max: usize },
}

/// Shared parameter validation: m >= 2 and N >= 2m+2, so every constraint
/// window of m+1 consecutive sites fits on the ring without touching its
/// own bond from the far side.
pub(crate) fn validate_ring(n: usize, m: usize) -> Result<(), LatticeError> {
    if m < 2 {
        return Err(LatticeError::RangeTooSmall(m));
    }
    let min = 2 * m + 2;
    if n < min {
        return Err(LatticeError::RingTooSmall { n, m, min });
    }
    Ok(())
}
