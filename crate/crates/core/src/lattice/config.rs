//! Particle configurations and dynamics parameters.

use std::fmt;

use super::{validate_ring, LatticeError};

/// Hard-core occupancy configuration on the discrete torus Z/NZ.
///
/// Site indices wrap, so callers may address sites with negative offsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    occ: Vec<u8>,
}

impl Configuration {
    /// Build from explicit occupancies, each 0 or 1.
    pub fn new(occ: Vec<u8>) -> Self {
        assert!(!occ.is_empty(), "configuration needs at least one site");
        assert!(occ.iter().all(|&v| v <= 1), "occupancies must be 0 or 1");
        Self { occ }
    }

    pub fn empty(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    pub fn full(n: usize) -> Self {
        Self::new(vec![1; n])
    }

    /// Parse a string of '0'/'1' characters, site 0 first.
    pub fn from_bits(bits: &str) -> Self {
        let occ = bits
            .chars()
            .map(|c| match c {
                '0' => 0,
                '1' => 1,
                other => panic!("invalid occupancy character {other:?}"),
            })
            .collect();
        Self::new(occ)
    }

    /// Configuration whose site x carries bit x of `index`. Used by the
    /// exact-generator enumeration of small rings.
    pub fn from_index(index: u64, n: usize) -> Self {
        assert!(n <= 63, "bit-indexed configurations need n <= 63");
        let occ = (0..n).map(|x| ((index >> x) & 1) as u8).collect();
        Self::new(occ)
    }

    /// Inverse of [`Configuration::from_index`].
    pub fn to_index(&self) -> u64 {
        assert!(self.occ.len() <= 63, "bit-indexed configurations need n <= 63");
        self.occ
            .iter()
            .enumerate()
            .fold(0u64, |acc, (x, &v)| acc | (u64::from(v) << x))
    }

    pub fn len(&self) -> usize {
        self.occ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occ.is_empty()
    }

    /// Occupancy at site x, taken modulo N.
    #[inline]
    pub fn occ(&self, x: isize) -> u8 {
        let n = self.occ.len() as isize;
        self.occ[x.rem_euclid(n) as usize]
    }

    pub fn set(&mut self, x: usize, value: u8) {
        assert!(value <= 1, "occupancies must be 0 or 1");
        self.occ[x] = value;
    }

    /// Exchange the contents of sites x and x+1 (modulo N).
    #[inline]
    pub fn swap_bond(&mut self, x: usize) {
        let n = self.occ.len();
        let y = if x + 1 == n { 0 } else { x + 1 };
        self.occ.swap(x, y);
    }

    pub fn particle_count(&self) -> usize {
        self.occ.iter().map(|&v| v as usize).sum()
    }

    pub fn occupancies(&self) -> &[u8] {
        &self.occ
    }

    pub fn bit_string(&self) -> String {
        self.occ.iter().map(|&v| if v == 1 { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({})", self.bit_string())
    }
}

/// Parameters of the constrained exchange dynamics run at diffusive speed.
///
/// `alpha` is the density of the homogeneous reversible reference measure;
/// the dynamics itself never reads it, but entropy comparisons and
/// observable means do.
#[derive(Clone, Debug, PartialEq)]
pub struct DynamicsParams {
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub seed: u64,
}

impl DynamicsParams {
    /// Validated constructor: m >= 2, N >= 2m+2, 0 < alpha < 1.
    pub fn new(n: usize, m: usize, alpha: f64, seed: u64) -> Result<Self, LatticeError> {
        validate_ring(n, m)?;
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(LatticeError::DensityOutOfRange(alpha));
        }
        Ok(Self { n, m, alpha, seed })
    }
}
