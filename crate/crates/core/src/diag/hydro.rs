use crate::lattice::{
    block_average, h_mean, local_h, simulate_with_rng, Configuration, DynamicsParams,
};
use crate::measures::{sample_product, LatticeProfile};
use crate::pme::{regularize_initial, solve_pme, FieldKind, GridProfile, SolverConfig};

use super::{local_equilibrium_error, DiagError};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Draws `replicas` initial configurations from the product measure with
/// the given profile, runs each to macroscopic time `t_end`, and returns
/// the endpoint configurations in replica order.
///
/// Replica r uses the seed `seed ^ r`, so the ensemble is independent of
/// `threads`; workers own contiguous replica ranges and results are
/// reassembled by index.
pub fn endpoint_ensemble(
    profile: &LatticeProfile<f64>,
    m: usize,
    t_end: f64,
    replicas: usize,
    seed: u64,
    threads: usize,
) -> Result<Vec<Configuration>, DiagError> {
    if replicas == 0 {
        return Err(DiagError::NoReplicas);
    }
    let params = DynamicsParams::new(profile.len(), m, 0.5, seed)?;
    let run_one = |r: usize| -> Configuration {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ r as u64);
        let initial = sample_product(profile, &mut rng);
        let record = simulate_with_rng(&initial, &params, t_end, &[t_end], &mut rng);
        record.snapshots.into_iter().next().expect("one snapshot requested")
    };

    let workers = threads.max(1).min(replicas);
    if workers == 1 {
        return Ok((0..replicas).map(run_one).collect());
    }
    let mut out: Vec<Option<Configuration>> = vec![None; replicas];
    let chunk = replicas.div_ceil(workers);
    std::thread::scope(|scope| {
        for (w, slot) in out.chunks_mut(chunk).enumerate() {
            let run_one = &run_one;
            scope.spawn(move || {
                for (i, cell) in slot.iter_mut().enumerate() {
                    *cell = Some(run_one(w * chunk + i));
                }
            });
        }
    });
    Ok(out.into_iter().map(|c| c.expect("worker filled slot")).collect())
}

/// Mean over the ensemble of the sitewise L1 distance between the
/// block-averaged empirical density and a reference profile interpolated
/// at the lattice points.
pub fn block_density_l1(
    ensemble: &[Configuration],
    ell: usize,
    reference: &GridProfile<f64>,
) -> Result<f64, DiagError> {
    let first = ensemble.first().ok_or(DiagError::EmptyEnsemble)?;
    let n = first.len();
    if 2 * ell + 1 > n {
        return Err(DiagError::WindowTooWide { radius: ell, n });
    }
    let mut total = 0.0;
    for cfg in ensemble {
        if cfg.len() != n {
            return Err(DiagError::MixedRingSizes(n, cfg.len()));
        }
        let mut acc = 0.0;
        for x in 0..n {
            acc += (block_average(cfg, x, ell) - reference.value_at(x as f64 / n as f64)).abs();
        }
        total += acc / n as f64;
    }
    Ok(total / ensemble.len() as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HydroCompareConfig {
    pub m: usize,
    /// Ring sizes scanned, one output row each.
    pub sizes: Vec<usize>,
    pub t_end: f64,
    pub replicas: usize,
    pub seed: u64,
    /// Block radius for the empirical density.
    pub block_radius: usize,
    /// Reference-solver grid cells.
    pub solver_cells: usize,
    pub cfl_safety: f64,
    /// Truncation level for the reference solve; the ensemble always
    /// starts from the raw profile. None solves from the raw datum, which
    /// keeps small rings meaningful where a vanishing-in-N schedule would
    /// not be admissible.
    pub eps: Option<f64>,
    pub threads: usize,
}

/// One ring size of the scan: empirical-vs-PDE block error plus the
/// local-equilibrium errors for the built-in observable/weight pairs
/// (occupation eta(0) and the constraint observable h; flat and cos(2 pi u)
/// weights).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HydroCompareRow {
    pub n: usize,
    pub replicas: usize,
    pub l1_error: f64,
    pub eq_occ_flat: f64,
    pub eq_occ_cos: f64,
    pub eq_h_flat: f64,
    pub eq_h_cos: f64,
}

fn mix_seed(seed: u64, n: usize) -> u64 {
    let mut z = seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Scans ring sizes at a fixed macroscopic time: for each N, sample the
/// initial ensemble from the product measure of the raw profile, run the
/// dynamics to t, and compare against the reference solve on the grid.
/// Deterministic given the seed.
pub fn run_hydro_compare(
    initial: impl Fn(f64) -> f64,
    config: &HydroCompareConfig,
) -> Result<Vec<HydroCompareRow>, DiagError> {
    if config.replicas == 0 {
        return Err(DiagError::NoReplicas);
    }
    let mut datum = GridProfile::from_fn(config.solver_cells, FieldKind::Density, &initial)?;
    if let Some(eps) = config.eps {
        datum = regularize_initial(&datum, eps, config.m)?;
    }
    let field = solve_pme(
        &datum,
        &SolverConfig {
            m: config.m,
            cfl_safety: config.cfl_safety,
            t_end: config.t_end,
            snapshot_times: vec![config.t_end],
            dt_cap: None,
        },
    )?;
    let reference = field.profile(field.len() - 1)?;

    let m = config.m;
    let mut rows = Vec::with_capacity(config.sizes.len());
    for &n in &config.sizes {
        let profile = LatticeProfile::from_density_fn(n, &initial)?;
        let ensemble = endpoint_ensemble(
            &profile,
            m,
            config.t_end,
            config.replicas,
            mix_seed(config.seed, n),
            config.threads,
        )?;
        let occ = |cfg: &Configuration, x: usize| f64::from(cfg.occ(x as isize));
        let h = |cfg: &Configuration, x: usize| local_h(cfg, x, m) as f64;
        let flat = |_: f64| 1.0;
        let cos = |u: f64| (std::f64::consts::TAU * u).cos();
        rows.push(HydroCompareRow {
            n,
            replicas: config.replicas,
            l1_error: block_density_l1(&ensemble, config.block_radius, &reference)?,
            eq_occ_flat: local_equilibrium_error(&ensemble, flat, occ, |r| r, &reference)?,
            eq_occ_cos: local_equilibrium_error(&ensemble, cos, occ, |r| r, &reference)?,
            eq_h_flat: local_equilibrium_error(&ensemble, flat, h, |r| h_mean(r, m), &reference)?,
            eq_h_cos: local_equilibrium_error(&ensemble, cos, h, |r| h_mean(r, m), &reference)?,
        });
    }
    Ok(rows)
}
