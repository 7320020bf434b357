use crate::pme::SpaceTimeField;
use crate::scalar::Real;

use super::DiagError;

/// Chemical-potential-like coordinate of a density relative to a flat
/// reference level alpha: log of the ratio of the two Bernoulli odds.
/// Vanishes at rho = alpha; differs from logit(rho) by a constant.
pub fn lambda_scalar<F: Real>(rho: F, alpha: F) -> F {
    (rho * (F::one() - alpha) / (alpha * (F::one() - rho))).ln()
}

/// Snapshots of lambda(rho) along a solver run.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaField<F: Real = f64> {
    alpha: F,
    times: Vec<F>,
    values: Vec<Vec<F>>,
    cells: usize,
}

impl<F: Real> LambdaField<F> {
    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn times(&self) -> &[F] {
        &self.times
    }

    pub fn snapshot(&self, k: usize) -> &[F] {
        &self.values[k]
    }

    pub fn snapshots(&self) -> &[Vec<F>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn du(&self) -> F {
        F::one() / F::of_usize(self.cells)
    }
}

/// Maps every density snapshot through `lambda_scalar`, rejecting any value
/// at the degenerate endpoints where the log diverges.
pub fn lambda_from_density<F: Real>(
    field: &SpaceTimeField<F>,
    alpha: F,
) -> Result<LambdaField<F>, DiagError> {
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(DiagError::BadReferenceDensity(alpha.as_f64()));
    }
    let mut values = Vec::with_capacity(field.len());
    for (snapshot, row) in field.snapshots().iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (cell, &rho) in row.iter().enumerate() {
            if !(rho > F::zero() && rho < F::one()) {
                return Err(DiagError::DensityNotInterior {
                    snapshot,
                    cell,
                    value: rho.as_f64(),
                });
            }
            out.push(lambda_scalar(rho, alpha));
        }
        values.push(out);
    }
    Ok(LambdaField {
        alpha,
        times: field.times().to_vec(),
        values,
        cells: field.cells(),
    })
}
