use crate::pme::SpaceTimeField;
use crate::scalar::Real;

use super::stencil::{d1, d2};
use super::DiagError;

fn logit_row<F: Real>(rho: &[F]) -> Result<Vec<F>, DiagError> {
    rho.iter()
        .enumerate()
        .map(|(cell, &r)| {
            if r > F::zero() && r < F::one() {
                Ok((r / (F::one() - r)).ln())
            } else {
                Err(DiagError::DensityNotInterior {
                    snapshot: 0,
                    cell,
                    value: r.as_f64(),
                })
            }
        })
        .collect()
}

/// Gradient-expansion correction to the hydrodynamic flux:
///
///   d_uu lambda rho^m + (d_u lambda)^2 m rho^m (1 - rho),
///
/// which collapses to the exact derivative d_u [rho^(m-1) d_u rho / (1-rho)],
/// so its integral over the torus vanishes. The reference level in lambda
/// only shifts it by a constant; the logit is used directly.
pub fn flux_correction_profile<F: Real>(
    rho: &[F],
    du: F,
    m: usize,
) -> Result<Vec<F>, DiagError> {
    if rho.len() < 5 {
        return Err(DiagError::GridTooCoarse {
            cells: rho.len(),
            need: 5,
        });
    }
    let lam = logit_row(rho)?;
    let mf = F::of_usize(m);
    let one = F::one();
    Ok((0..rho.len())
        .map(|j| {
            let rm = rho[j].powi(m as i32);
            let dl = d1(&lam, j, du);
            d2(&lam, j, du) * rm + dl * dl * mf * rm * (one - rho[j])
        })
        .collect())
}

/// Torus integral of the correction term; zero in the continuum, and at
/// the order of the stencil error on a grid.
pub fn flux_correction_integral<F: Real>(rho: &[F], du: F, m: usize) -> Result<F, DiagError> {
    let profile = flux_correction_profile(rho, du, m)?;
    Ok(profile.iter().copied().fold(F::zero(), |a, v| a + v) * du)
}

/// |integral of the correction| for every snapshot of a solver run.
pub fn flux_correction_report<F: Real>(
    field: &SpaceTimeField<F>,
    m: usize,
) -> Result<Vec<F>, DiagError> {
    let du = field.du();
    field
        .snapshots()
        .iter()
        .map(|rho| flux_correction_integral(rho, du, m).map(|v| v.abs()))
        .collect()
}
