use crate::scalar::Real;

use super::{LatticeProfile, MeasureError};

/// Relative entropy of one product measure with respect to another.
/// `Infinite` marks a support violation: the first measure charges an
/// event the second gives probability zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeEntropy<F: Real = f64> {
    Finite(F),
    Infinite,
}

impl<F: Real> RelativeEntropy<F> {
    pub fn finite(self) -> Option<F> {
        match self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite => None,
        }
    }
}

// a ln(a/b) with the conventions 0 ln 0 = 0 and a ln(a/0) = infinity for a > 0.
fn xlog_ratio<F: Real>(a: F, b: F) -> Option<F> {
    if a == F::zero() {
        return Some(F::zero());
    }
    if b == F::zero() {
        return None;
    }
    Some(a * (a.ln() - b.ln()))
}

/// H(nu_p | nu_q) for product Bernoulli measures with site-wise densities
/// `p` and `q`. Entropy tensorises over sites, so the sum of per-site
/// Bernoulli divergences is exact.
pub fn relative_entropy_product<F: Real>(
    p: &LatticeProfile<F>,
    q: &LatticeProfile<F>,
) -> Result<RelativeEntropy<F>, MeasureError> {
    if p.len() != q.len() {
        return Err(MeasureError::LengthMismatch(p.len(), q.len()));
    }
    let one = F::one();
    let mut total = F::zero();
    for x in 0..p.len() {
        let (a, b) = (p.value(x), q.value(x));
        let occupied = match xlog_ratio(a, b) {
            Some(v) => v,
            None => return Ok(RelativeEntropy::Infinite),
        };
        let vacant = match xlog_ratio(one - a, one - b) {
            Some(v) => v,
            None => return Ok(RelativeEntropy::Infinite),
        };
        total = total + occupied + vacant;
    }
    Ok(RelativeEntropy::Finite(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_of_a_measure_against_itself_vanishes() {
        let p = LatticeProfile::from_density_fn(32, |u: f64| 0.3 + 0.4 * u).unwrap();
        assert_eq!(
            relative_entropy_product(&p, &p).unwrap(),
            RelativeEntropy::Finite(0.0)
        );
    }

    #[test]
    fn single_site_value_matches_closed_form() {
        let p = LatticeProfile::new(vec![0.9]).unwrap();
        let q = LatticeProfile::new(vec![0.5]).unwrap();
        let got = relative_entropy_product(&p, &q).unwrap().finite().unwrap();
        let expected = 0.9 * (0.9f64 / 0.5).ln() + 0.1 * (0.1f64 / 0.5).ln();
        assert!((got - expected).abs() < 1e-15);
    }

    #[test]
    fn support_violation_is_infinite() {
        let p = LatticeProfile::new(vec![0.5]).unwrap();
        let q0 = LatticeProfile::new(vec![0.0]).unwrap();
        let q1 = LatticeProfile::new(vec![1.0]).unwrap();
        assert_eq!(relative_entropy_product(&p, &q0).unwrap(), RelativeEntropy::Infinite);
        assert_eq!(relative_entropy_product(&p, &q1).unwrap(), RelativeEntropy::Infinite);
        // Matching degeneracy stays finite: the zero-probability event is
        // never charged.
        let got = relative_entropy_product(&q1, &q1).unwrap();
        assert_eq!(got, RelativeEntropy::Finite(0.0));
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let p = LatticeProfile::constant(4, 0.5).unwrap();
        let q = LatticeProfile::constant(5, 0.5).unwrap();
        assert_eq!(
            relative_entropy_product(&p, &q).unwrap_err(),
            MeasureError::LengthMismatch(4, 5)
        );
    }
}
