use crate::lattice::{block_average, Configuration};

use super::DiagError;

/// Replacement error of a local observable by its equilibrium mean at the
/// empirical block density:
///
///   V_{l,psi}(eta, x) = | (2l+1)^{-1} sum_{|y| <= l} psi(eta, x+y)
///                         - psi_mean(block_average(eta, x, l)) |,
///
/// averaged over every configuration in the ensemble and every site x.
/// For psi(eta, x) = eta(x) the window average IS the block density, so
/// the statistic vanishes identically; nontrivial observables decay with
/// the block size on near-product ensembles.
pub fn one_block_statistic(
    ensemble: &[Configuration],
    psi: impl Fn(&Configuration, usize) -> f64,
    psi_mean: impl Fn(f64) -> f64,
    ell: usize,
) -> Result<f64, DiagError> {
    let first = ensemble.first().ok_or(DiagError::EmptyEnsemble)?;
    let n = first.len();
    if 2 * ell + 1 > n {
        return Err(DiagError::WindowTooWide { radius: ell, n });
    }
    let width = (2 * ell + 1) as f64;
    let mut total = 0.0;
    for cfg in ensemble {
        if cfg.len() != n {
            return Err(DiagError::MixedRingSizes(n, cfg.len()));
        }
        for x in 0..n {
            let mut window = 0.0;
            for y in -(ell as isize)..=(ell as isize) {
                let site = (x as isize + y).rem_euclid(n as isize) as usize;
                window += psi(cfg, site);
            }
            let empirical = window / width;
            total += (empirical - psi_mean(block_average(cfg, x, ell))).abs();
        }
    }
    Ok(total / (ensemble.len() * n) as f64)
}
