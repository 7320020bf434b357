use crate::pme::SpaceTimeField;
use crate::scalar::Real;

use super::stencil::{d1, d2, d3};
use super::{lambda_from_density, DiagError};

/// Worst-case residuals of the chain-rule identities tying derivatives of
/// lambda(rho) to derivatives of rho, measured with the same stencils on
/// both sides, plus the residual of the evolution equation for lambda.
/// All residuals vanish at the rate of the discretisation, not exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityResiduals<F: Real = f64> {
    pub gradient: F,
    pub hessian: F,
    pub third: F,
    pub evolution: F,
}

/// The identities checked, writing l for lambda and r for rho:
///
///   d_u l   = d_u r / (r(1-r))
///   d_uu l  = d_uu r (1/r + 1/(1-r)) + (d_u r)^2 (1/(1-r)^2 - 1/r^2)
///   d_uuu l = d_uuu r (1/r + 1/(1-r)) + 3 d_uu r d_u r (1/(1-r)^2 - 1/r^2)
///             + 2 (d_u r)^3 (1/r^3 + 1/(1-r)^3)
///   d_t l   = m r^(m-1) d_uu l + m r^(m-1) (m - (m+1) r) (d_u l)^2
///
/// The spatial residuals are evaluated on every snapshot; the evolution
/// residual uses the forward time difference between consecutive snapshots
/// with the right side frozen at the earlier one.
pub fn check_lambda_identities<F: Real>(
    field: &SpaceTimeField<F>,
    alpha: F,
    m: usize,
) -> Result<IdentityResiduals<F>, DiagError> {
    if field.len() < 2 {
        return Err(DiagError::TooFewSnapshots(field.len()));
    }
    let cells = field.cells();
    if cells < 5 {
        return Err(DiagError::GridTooCoarse { cells, need: 5 });
    }
    let lam = lambda_from_density(field, alpha)?;
    let du = field.du();
    let one = F::one();
    let mf = F::of_usize(m);

    let mut res = IdentityResiduals {
        gradient: F::zero(),
        hessian: F::zero(),
        third: F::zero(),
        evolution: F::zero(),
    };
    for k in 0..field.len() {
        let r = field.snapshot(k);
        let l = lam.snapshot(k);
        for j in 0..cells {
            let rj = r[j];
            let (dr, ddr, dddr) = (d1(r, j, du), d2(r, j, du), d3(r, j, du));
            let (dl, ddl, dddl) = (d1(l, j, du), d2(l, j, du), d3(l, j, du));
            let inv_sum = one / rj + one / (one - rj);
            let sq_diff = one / ((one - rj) * (one - rj)) - one / (rj * rj);
            let cube_sum = one / (rj * rj * rj) + one / ((one - rj) * (one - rj) * (one - rj));

            res.gradient = res.gradient.max((dl - dr / (rj * (one - rj))).abs());
            res.hessian = res
                .hessian
                .max((ddl - (ddr * inv_sum + dr * dr * sq_diff)).abs());
            res.third = res.third.max(
                (dddl
                    - (dddr * inv_sum
                        + F::of(3.0) * ddr * dr * sq_diff
                        + F::of(2.0) * dr * dr * dr * cube_sum))
                    .abs(),
            );

            if k + 1 < field.len() {
                let dt = field.times()[k + 1] - field.times()[k];
                let forward = (lam.snapshot(k + 1)[j] - l[j]) / dt;
                let mob = mf * rj.powi(m as i32 - 1);
                let rhs = mob * ddl + mob * (mf - (mf + one) * rj) * dl * dl;
                res.evolution = res.evolution.max((forward - rhs).abs());
            }
        }
    }
    Ok(res)
}
