//! Local observables entering the entropy-production expansion and the
//! block statistics.

use crate::scalar::Real;

use super::{bond_rate, Configuration};

/// Window observable centred at x:
///
/// ```text
/// h(eta, x) = sum_{y=x-m+1}^{x}   prod_{z=y}^{y+m-1} eta(z)
///           - sum_{y=x-m+1}^{x-1} prod_{z in [y, y+m], z != x} eta(z)
/// ```
///
/// Bounded by 2m in absolute value; its mean under the density-rho product
/// measure is rho^m. For m = 2:
/// h = eta(-1)eta(0) + eta(0)eta(1) - eta(-1)eta(1) around x = 0.
pub fn local_h(cfg: &Configuration, x: usize, m: usize) -> i64 {
    let xi = x as isize;
    let mi = m as isize;
    let mut value = 0i64;
    for y in (xi - mi + 1)..=xi {
        let mut occupied = 1u8;
        for z in y..(y + mi) {
            occupied &= cfg.occ(z);
        }
        value += i64::from(occupied);
    }
    for y in (xi - mi + 1)..xi {
        let mut occupied = 1u8;
        for z in y..=(y + mi) {
            if z == xi {
                continue;
            }
            occupied &= cfg.occ(z);
        }
        value -= i64::from(occupied);
    }
    value
}

/// Exchange observable g(eta, x) = (1/2) r_{x,x+1}(eta) (eta(x) - eta(x+1))^2,
/// in {0, 1/2, 1, ..., m/2}; its mean under the density-rho product measure
/// is m rho^m (1 - rho).
pub fn local_g(cfg: &Configuration, x: usize, m: usize) -> f64 {
    0.5 * f64::from(bond_rate(cfg, x, m))
}

/// Product-measure mean of `local_h` at density rho: rho^m.
pub fn h_mean<F: Real>(rho: F, m: usize) -> F {
    rho.powi(m as i32)
}

/// Product-measure mean of `local_g` at density rho: m rho^m (1 - rho).
pub fn g_mean<F: Real>(rho: F, m: usize) -> F {
    F::of_usize(m) * rho.powi(m as i32) * (F::one() - rho)
}

/// Average occupancy over the 2l+1 sites centred at x.
pub fn block_average(cfg: &Configuration, x: usize, ell: usize) -> f64 {
    let width = 2 * ell + 1;
    assert!(width <= cfg.len(), "block wider than the ring");
    let xi = x as isize;
    let li = ell as isize;
    let sum: u32 = (xi - li..=xi + li).map(|y| u32::from(cfg.occ(y))).sum();
    f64::from(sum) / width as f64
}

/// Whether [x-l, x+l] contains two adjacent particles, the pattern that
/// keeps the constrained exchange alive inside the block.
pub fn has_mobile_cluster(cfg: &Configuration, x: usize, ell: usize) -> bool {
    let xi = x as isize;
    let li = ell as isize;
    (xi - li..xi + li).any(|y| cfg.occ(y) == 1 && cfg.occ(y + 1) == 1)
}
