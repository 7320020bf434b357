use thiserror::Error;

use crate::pme::{regularize_initial, GridProfile, PmeError};
use crate::scalar::Real;

use super::{
    relative_entropy_product, LatticeProfile, MeasureError, RegularizationSchedule,
    RelativeEntropy,
};

#[derive(Debug, Error)]
pub enum ScanError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Pme(#[from] PmeError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyScanRow<F: Real = f64> {
    pub n: usize,
    pub eps: F,
    /// H(nu_raw | nu_regularized) over the whole ring.
    pub entropy: F,
    /// entropy / (N eps^(1/(m-1)) |ln eps|), the combination the initial
    /// bound controls uniformly in N.
    pub normalized: F,
}

/// Initial-entropy cost of regularisation across a family of ring sizes.
///
/// For each N the macroscopic initial density is sampled at the lattice
/// points x/N, regularised at the scheduled level eps_N, and the relative
/// entropy between the product measures with the raw and the regularised
/// profiles is computed exactly. The lattice points are treated directly
/// as grid values; the regularisation pipeline is shift-invariant, so the
/// half-cell phase between the two conventions is immaterial.
pub fn initial_entropy_scan<F: Real>(
    rho_ini: impl Fn(F) -> F,
    schedule: &RegularizationSchedule<F>,
    sizes: &[usize],
) -> Result<Vec<EntropyScanRow<F>>, ScanError> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let eps = schedule.eps_checked(n)?;
        let nf = F::of_usize(n);
        let raw: Vec<F> = (0..n).map(|x| rho_ini(F::of_usize(x) / nf)).collect();
        let smoothed = regularize_initial(&GridProfile::density(raw.clone())?, eps, schedule.m)?;
        let p = LatticeProfile::new(raw)?;
        let q = LatticeProfile::new(smoothed.values().to_vec())?;
        let entropy = match relative_entropy_product(&p, &q)? {
            RelativeEntropy::Finite(h) => h,
            // The regularised profile lives in [eps, 1-eps].
            RelativeEntropy::Infinite => unreachable!("interior reference profile"),
        };
        let exponent = F::one() / F::of_usize(schedule.m - 1);
        let normalized = entropy / (nf * eps.powf(exponent) * eps.ln().abs());
        rows.push(EntropyScanRow {
            n,
            eps,
            entropy,
            normalized,
        });
    }
    Ok(rows)
}
