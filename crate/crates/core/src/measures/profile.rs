use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::Configuration;
use crate::scalar::Real;

use super::MeasureError;

/// Site-indexed density profile on the ring, the parameter vector of a
/// product Bernoulli measure. Entry `x` is the occupation probability of
/// site `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeProfile<F: Real = f64> {
    values: Vec<F>,
}

impl<F: Real> LatticeProfile<F> {
    pub fn new(values: Vec<F>) -> Result<Self, MeasureError> {
        for (site, &v) in values.iter().enumerate() {
            if !(v >= F::zero() && v <= F::one()) {
                return Err(MeasureError::ProfileOutOfRange {
                    site,
                    value: v.as_f64(),
                });
            }
        }
        Ok(Self { values })
    }

    pub fn constant(n: usize, alpha: F) -> Result<Self, MeasureError> {
        Self::new(vec![alpha; n])
    }

    /// Samples a macroscopic density at the lattice points x/N.
    pub fn from_density_fn(n: usize, f: impl Fn(F) -> F) -> Result<Self, MeasureError> {
        let nf = F::of_usize(n);
        Self::new((0..n).map(|x| f(F::of_usize(x) / nf)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, x: usize) -> F {
        self.values[x]
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }
}

/// Draws one configuration from the product measure with the given profile.
pub fn sample_product<F: Real>(profile: &LatticeProfile<F>, rng: &mut ChaCha8Rng) -> Configuration {
    let mut cfg = Configuration::empty(profile.len());
    for x in 0..profile.len() {
        let u: f64 = rng.gen();
        if u < profile.value(x).as_f64() {
            cfg.set(x, 1);
        }
    }
    cfg
}

pub fn sample_product_seeded<F: Real>(profile: &LatticeProfile<F>, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_product(profile, &mut rng)
}
