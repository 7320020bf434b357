use crate::scalar::Real;

use super::MeasureError;

/// How the truncation level shrinks with the lattice size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EpsRule<F: Real = f64> {
    /// eps_N = N^(-exponent).
    PowerLaw { exponent: F },
    /// Size-independent level, mainly for experiments that pin eps.
    Fixed { value: F },
}

/// Truncation-level schedule tied to a constraint range `m`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularizationSchedule<F: Real = f64> {
    pub m: usize,
    pub rule: EpsRule<F>,
}

impl<F: Real> RegularizationSchedule<F> {
    /// Default rule eps_N = N^(-1/(7(m-1))): slow enough that the initial
    /// entropy stays o(N) while the profile bounds still degrade only
    /// polynomially in eps.
    pub fn default_for(m: usize) -> Result<Self, MeasureError> {
        if m < 2 {
            return Err(MeasureError::RangeTooSmall(m));
        }
        let exponent = F::one() / F::of_usize(7 * (m - 1));
        Ok(Self {
            m,
            rule: EpsRule::PowerLaw { exponent },
        })
    }

    pub fn eps(&self, n: usize) -> F {
        match self.rule {
            EpsRule::PowerLaw { exponent } => F::of_usize(n).powf(-exponent),
            EpsRule::Fixed { value } => value,
        }
    }

    /// Like `eps`, but rejects levels outside the admissible band (0, 1/2).
    pub fn eps_checked(&self, n: usize) -> Result<F, MeasureError> {
        let eps = self.eps(n);
        if eps <= F::zero() || eps >= F::of(0.5) {
            return Err(MeasureError::TruncationOutOfRange(eps.as_f64()));
        }
        Ok(eps)
    }

    /// N eps_N^(6(m-1)), the index that must diverge for the entropy
    /// argument to close. Under the default rule it equals N^(1/7).
    pub fn growth_index(&self, n: usize) -> F {
        let eps = self.eps(n);
        F::of_usize(n) * eps.powi(6 * (self.m as i32 - 1))
    }
}
