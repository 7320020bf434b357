use crate::pme::{FieldKind, GridProfile, PmeError};
use crate::scalar::Real;

use super::DiagError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteLabel {
    /// Reference density at least delta on the whole window.
    Good,
    /// Reference density at most alpha_n on the whole window.
    Zero,
    /// Neither uniformly positive nor uniformly vanishing.
    Bad,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SiteClassification<F: Real = f64> {
    pub delta: F,
    pub alpha_n: F,
    /// Window half-width: block radius plus the safety margin.
    pub radius: usize,
    pub labels: Vec<SiteLabel>,
    pub good_fraction: F,
    pub zero_fraction: F,
    pub bad_fraction: F,
}

/// Labels every lattice site by the behaviour of the reference density on
/// the closed window [(x - l - l0)/N, (x + l + l0)/N], sampled at lattice
/// points through periodic interpolation of the reference grid. Sites are
/// good where the density is uniformly at least delta, zero where it is
/// uniformly at most alpha_n, bad otherwise; the margin l0 shields the
/// block estimates used on good sites from the interface.
pub fn classify_sites<F: Real>(
    rho_ref: &GridProfile<F>,
    delta: F,
    alpha_n: F,
    ell: usize,
    ell0: usize,
    n: usize,
) -> Result<SiteClassification<F>, DiagError> {
    if rho_ref.kind() != FieldKind::Density {
        return Err(DiagError::Pme(PmeError::KindMismatch {
            expected: FieldKind::Density,
            got: rho_ref.kind(),
        }));
    }
    if !(alpha_n <= delta) {
        return Err(DiagError::ThresholdsOutOfOrder {
            alpha_n: alpha_n.as_f64(),
            delta: delta.as_f64(),
        });
    }
    let radius = ell + ell0;
    if 2 * radius + 1 > n {
        return Err(DiagError::WindowTooWide { radius, n });
    }
    let nf = F::of_usize(n);
    let values: Vec<F> = (0..n)
        .map(|x| rho_ref.value_at(F::of_usize(x) / nf))
        .collect();
    let mut labels = Vec::with_capacity(n);
    let (mut good, mut zero) = (0usize, 0usize);
    for x in 0..n {
        let mut lo = F::infinity();
        let mut hi = F::neg_infinity();
        for y in -(radius as isize)..=(radius as isize) {
            let v = values[(x as isize + y).rem_euclid(n as isize) as usize];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let label = if lo >= delta {
            good += 1;
            SiteLabel::Good
        } else if hi <= alpha_n {
            zero += 1;
            SiteLabel::Zero
        } else {
            SiteLabel::Bad
        };
        labels.push(label);
    }
    let bad = n - good - zero;
    Ok(SiteClassification {
        delta,
        alpha_n,
        radius,
        labels,
        good_fraction: F::of_usize(good) / nf,
        zero_fraction: F::of_usize(zero) / nf,
        bad_fraction: F::of_usize(bad) / nf,
    })
}
