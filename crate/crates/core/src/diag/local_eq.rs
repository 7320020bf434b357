use crate::lattice::Configuration;
use crate::pme::{FieldKind, GridProfile, PmeError};

use super::DiagError;

/// Per-configuration weighted empirical averages of a local observable,
/// together with the analytic value the hydrodynamic limit predicts:
///
///   empirical_k = N^{-1} sum_x G(x/N) psi(eta_k, x),
///   analytic    = integral of G(u) psi_mean(rho_ref(u)) du,
///
/// the integral taken by the midpoint rule on the reference grid.
pub fn local_equilibrium_terms(
    ensemble: &[Configuration],
    weight: impl Fn(f64) -> f64,
    psi: impl Fn(&Configuration, usize) -> f64,
    psi_mean: impl Fn(f64) -> f64,
    rho_ref: &GridProfile<f64>,
) -> Result<(Vec<f64>, f64), DiagError> {
    let first = ensemble.first().ok_or(DiagError::EmptyEnsemble)?;
    let n = first.len();
    if rho_ref.kind() != FieldKind::Density {
        return Err(DiagError::Pme(PmeError::KindMismatch {
            expected: FieldKind::Density,
            got: rho_ref.kind(),
        }));
    }
    let mut empirical = Vec::with_capacity(ensemble.len());
    for cfg in ensemble {
        if cfg.len() != n {
            return Err(DiagError::MixedRingSizes(n, cfg.len()));
        }
        let mut acc = 0.0;
        for x in 0..n {
            acc += weight(x as f64 / n as f64) * psi(cfg, x);
        }
        empirical.push(acc / n as f64);
    }
    let du = rho_ref.du();
    let mut analytic = 0.0;
    for j in 0..rho_ref.len() {
        analytic += weight(rho_ref.u(j)) * psi_mean(rho_ref.value(j)) * du;
    }
    Ok((empirical, analytic))
}

/// Mean absolute gap between the weighted empirical averages and the
/// analytic prediction, the quantitative local-equilibrium statement for
/// one test function G and one observable psi.
pub fn local_equilibrium_error(
    ensemble: &[Configuration],
    weight: impl Fn(f64) -> f64,
    psi: impl Fn(&Configuration, usize) -> f64,
    psi_mean: impl Fn(f64) -> f64,
    rho_ref: &GridProfile<f64>,
) -> Result<f64, DiagError> {
    let (empirical, analytic) =
        local_equilibrium_terms(ensemble, weight, psi, psi_mean, rho_ref)?;
    let total: f64 = empirical.iter().map(|e| (e - analytic).abs()).sum();
    Ok(total / empirical.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{h_mean, local_h};
    use crate::measures::{sample_product_seeded, LatticeProfile};

    #[test]
    fn product_samples_at_flat_density_have_small_error() {
        let n = 4096;
        let alpha = 0.5;
        let profile = LatticeProfile::constant(n, alpha).unwrap();
        let ensemble: Vec<Configuration> = (0..20)
            .map(|r| sample_product_seeded(&profile, 1000 + r))
            .collect();
        let rho_ref = GridProfile::density(vec![alpha; 256]).unwrap();
        let err = local_equilibrium_error(
            &ensemble,
            |_| 1.0,
            |cfg, x| local_h(cfg, x, 2) as f64,
            |rho| h_mean(rho, 2),
            &rho_ref,
        )
        .unwrap();
        // CLT scale for a bounded local observable over 4096 sites.
        assert!(err < 0.05, "{err}");
    }

    #[test]
    fn constant_shift_of_the_weight_moves_both_terms_together() {
        let n = 512;
        let profile = LatticeProfile::from_density_fn(n, |u: f64| {
            0.3 + 0.2 * (std::f64::consts::TAU * u).cos()
        })
        .unwrap();
        let ensemble: Vec<Configuration> =
            (0..8).map(|r| sample_product_seeded(&profile, r)).collect();
        let rho_ref =
            GridProfile::from_fn(512, FieldKind::Density, |u: f64| {
                0.3 + 0.2 * (std::f64::consts::TAU * u).cos()
            })
            .unwrap();
        let psi = |cfg: &Configuration, x: usize| f64::from(cfg.occ(x as isize));
        let g = |u: f64| (std::f64::consts::TAU * u).sin();
        let shift = 5.0;
        let (emp_g, ana_g) =
            local_equilibrium_terms(&ensemble, g, psi, |r| r, &rho_ref).unwrap();
        let (emp_shifted, ana_shifted) =
            local_equilibrium_terms(&ensemble, |u| g(u) + shift, psi, |r| r, &rho_ref).unwrap();
        // The shifted terms differ by shift times the particle mass on each
        // side; per configuration the two gaps differ by exactly shift times
        // (empirical mass - reference mass).
        let ref_mass = rho_ref.mass();
        for (k, cfg) in ensemble.iter().enumerate() {
            let mass = cfg.particle_count() as f64 / n as f64;
            let gap = (emp_shifted[k] - ana_shifted) - (emp_g[k] - ana_g);
            assert!((gap - shift * (mass - ref_mass)).abs() < 1e-12);
        }
    }

    #[test]
    fn empty_ensemble_is_rejected() {
        let rho_ref = GridProfile::density(vec![0.5; 8]).unwrap();
        assert!(matches!(
            local_equilibrium_error(&[], |_| 1.0, |_, _| 0.0, |_| 0.0, &rho_ref).unwrap_err(),
            DiagError::EmptyEnsemble
        ));
    }
}
