use crate::scalar::Real;

use super::PmeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Density,
    Pressure,
}

/// Periodic profile on the unit torus, stored as cell values at the
/// midpoints u_j = (j + 1/2) / M.
#[derive(Clone, Debug, PartialEq)]
pub struct GridProfile<F: Real = f64> {
    kind: FieldKind,
    values: Vec<F>,
}

impl<F: Real> GridProfile<F> {
    pub fn density(values: Vec<F>) -> Result<Self, PmeError> {
        if values.is_empty() {
            return Err(PmeError::EmptyProfile);
        }
        for (cell, &v) in values.iter().enumerate() {
            if !(v >= F::zero() && v <= F::one()) {
                return Err(PmeError::DensityOutOfRange {
                    cell,
                    value: v.as_f64(),
                });
            }
        }
        Ok(Self {
            kind: FieldKind::Density,
            values,
        })
    }

    pub fn pressure(values: Vec<F>) -> Result<Self, PmeError> {
        if values.is_empty() {
            return Err(PmeError::EmptyProfile);
        }
        for (cell, &v) in values.iter().enumerate() {
            if !(v >= F::zero() && v.is_finite()) {
                return Err(PmeError::BadPressure {
                    cell,
                    value: v.as_f64(),
                });
            }
        }
        Ok(Self {
            kind: FieldKind::Pressure,
            values,
        })
    }

    /// Samples `f` at the cell midpoints.
    pub fn from_fn(cells: usize, kind: FieldKind, f: impl Fn(F) -> F) -> Result<Self, PmeError> {
        let mf = F::of_usize(cells);
        let half = F::of(0.5);
        let values = (0..cells)
            .map(|j| f((F::of_usize(j) + half) / mf))
            .collect();
        match kind {
            FieldKind::Density => Self::density(values),
            FieldKind::Pressure => Self::pressure(values),
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn du(&self) -> F {
        F::one() / F::of_usize(self.values.len())
    }

    /// Midpoint coordinate of cell `j`.
    pub fn u(&self, j: usize) -> F {
        (F::of_usize(j) + F::of(0.5)) / F::of_usize(self.values.len())
    }

    pub fn value(&self, j: usize) -> F {
        self.values[j]
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Periodic linear interpolation between cell midpoints.
    pub fn value_at(&self, u: F) -> F {
        let m = self.values.len();
        let s = u * F::of_usize(m) - F::of(0.5);
        let base = s.floor();
        let frac = s - base;
        let j0 = (base.as_f64() as isize).rem_euclid(m as isize) as usize;
        let j1 = (j0 + 1) % m;
        self.values[j0] * (F::one() - frac) + self.values[j1] * frac
    }

    pub fn mass(&self) -> F {
        self.values.iter().copied().fold(F::zero(), |a, v| a + v) * self.du()
    }

    pub fn min(&self) -> F {
        self.values.iter().copied().fold(F::infinity(), F::min)
    }

    pub fn max(&self) -> F {
        self.values
            .iter()
            .copied()
            .fold(F::neg_infinity(), F::max)
    }

    /// Discrete Lipschitz seminorm: max over periodic neighbour pairs of
    /// |v_{j+1} - v_j| / du.
    pub fn lipschitz(&self) -> F {
        let m = self.values.len();
        let mut worst = F::zero();
        for j in 0..m {
            let d = (self.values[(j + 1) % m] - self.values[j]).abs();
            worst = worst.max(d);
        }
        worst * F::of_usize(m)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PmeError> {
        if self.kind != other.kind {
            return Err(PmeError::KindMismatch {
                expected: self.kind,
                got: other.kind,
            });
        }
        if self.len() != other.len() {
            return Err(PmeError::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn linf_diff(&self, other: &Self) -> Result<F, PmeError> {
        self.check_compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(F::zero(), |a, (&x, &y)| a.max((x - y).abs())))
    }

    pub fn l1_diff(&self, other: &Self) -> Result<F, PmeError> {
        self.check_compatible(other)?;
        let total = self
            .values
            .iter()
            .zip(&other.values)
            .fold(F::zero(), |a, (&x, &y)| a + (x - y).abs());
        Ok(total * self.du())
    }
}

/// pi = m/(m-1) rho^(m-1).
pub fn pressure_from_density<F: Real>(
    rho: &GridProfile<F>,
    m: usize,
) -> Result<GridProfile<F>, PmeError> {
    if rho.kind() != FieldKind::Density {
        return Err(PmeError::KindMismatch {
            expected: FieldKind::Density,
            got: rho.kind(),
        });
    }
    if m < 2 {
        return Err(PmeError::RangeTooSmall(m));
    }
    let scale = F::of_usize(m) / F::of_usize(m - 1);
    let values = rho
        .values()
        .iter()
        .map(|&r| scale * r.powi(m as i32 - 1))
        .collect();
    GridProfile::pressure(values)
}

/// Inverse of `pressure_from_density`; the quadratic case avoids powf so
/// the round trip is exact there.
pub fn density_from_pressure<F: Real>(
    pi: &GridProfile<F>,
    m: usize,
) -> Result<GridProfile<F>, PmeError> {
    if pi.kind() != FieldKind::Pressure {
        return Err(PmeError::KindMismatch {
            expected: FieldKind::Pressure,
            got: pi.kind(),
        });
    }
    if m < 2 {
        return Err(PmeError::RangeTooSmall(m));
    }
    let scale = F::of_usize(m - 1) / F::of_usize(m);
    let values: Vec<F> = if m == 2 {
        pi.values().iter().map(|&p| scale * p).collect()
    } else {
        let inv = F::one() / F::of_usize(m - 1);
        pi.values().iter().map(|&p| (scale * p).powf(inv)).collect()
    };
    GridProfile::density(values)
}
