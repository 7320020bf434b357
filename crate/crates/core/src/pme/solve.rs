use crate::scalar::Real;

use super::{FieldKind, GridProfile, PmeError};

/// Explicit solver parameters for d_t rho = d_uu (rho^m) on the unit torus.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig<F: Real = f64> {
    pub m: usize,
    /// Fraction of the stability limit taken each step, in (0, 1].
    pub cfl_safety: F,
    pub t_end: F,
    /// Strictly increasing times in [0, t_end] at which the state is
    /// recorded. The solver lands on each exactly.
    pub snapshot_times: Vec<F>,
    /// Optional hard ceiling on the step, for runs that must share an
    /// identical step sequence.
    pub dt_cap: Option<F>,
}

impl<F: Real> SolverConfig<F> {
    fn validate(&self) -> Result<(), PmeError> {
        if self.m < 2 {
            return Err(PmeError::RangeTooSmall(self.m));
        }
        if !(self.cfl_safety > F::zero() && self.cfl_safety <= F::one()) {
            return Err(PmeError::BadCfl(self.cfl_safety.as_f64()));
        }
        if !(self.t_end >= F::zero() && self.t_end.is_finite()) {
            return Err(PmeError::BadHorizon(self.t_end.as_f64()));
        }
        let st = &self.snapshot_times;
        for (i, &s) in st.iter().enumerate() {
            if !(s >= F::zero() && s <= self.t_end) || (i > 0 && s <= st[i - 1]) {
                return Err(PmeError::BadSnapshotTimes);
            }
        }
        if let Some(cap) = self.dt_cap {
            if !(cap > F::zero() && cap.is_finite()) {
                return Err(PmeError::BadStepCap(cap.as_f64()));
            }
        }
        Ok(())
    }
}

/// Density snapshots along a solver run, one row per requested time.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceTimeField<F: Real = f64> {
    times: Vec<F>,
    snapshots: Vec<Vec<F>>,
}

impl<F: Real> SpaceTimeField<F> {
    pub fn times(&self) -> &[F] {
        &self.times
    }

    pub fn snapshots(&self) -> &[Vec<F>] {
        &self.snapshots
    }

    pub fn snapshot(&self, k: usize) -> &[F] {
        &self.snapshots[k]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&[F]> {
        self.snapshots.last().map(Vec::as_slice)
    }

    pub fn cells(&self) -> usize {
        self.snapshots.first().map_or(0, Vec::len)
    }

    pub fn du(&self) -> F {
        F::one() / F::of_usize(self.cells())
    }

    pub fn profile(&self, k: usize) -> Result<GridProfile<F>, PmeError> {
        GridProfile::density(self.snapshots[k].clone())
    }
}

/// Forward-Euler, second-order-centred flux form on v = rho^m. The flux
/// differences telescope around the ring, so mass is conserved to rounding;
/// under the CFL bound each update is a convex combination of neighbours,
/// so [0, 1] is invariant up to the guard tolerance.
pub fn solve_pme<F: Real>(
    rho0: &GridProfile<F>,
    config: &SolverConfig<F>,
) -> Result<SpaceTimeField<F>, PmeError> {
    if rho0.kind() != FieldKind::Density {
        return Err(PmeError::KindMismatch {
            expected: FieldKind::Density,
            got: rho0.kind(),
        });
    }
    config.validate()?;
    let cells = rho0.len();
    let du2 = rho0.du() * rho0.du();
    let two_m = F::of_usize(2 * config.m);
    let guard = F::of(1e-12);

    let mut v: Vec<F> = rho0.values().to_vec();
    let mut w = vec![F::zero(); cells];
    let mut t = F::zero();
    let mut si = 0usize;
    let mut field = SpaceTimeField {
        times: Vec::with_capacity(config.snapshot_times.len()),
        snapshots: Vec::with_capacity(config.snapshot_times.len()),
    };
    let record_due = |t: F, v: &[F], si: &mut usize, field: &mut SpaceTimeField<F>| {
        while *si < config.snapshot_times.len() && config.snapshot_times[*si] <= t {
            field.times.push(config.snapshot_times[*si]);
            field.snapshots.push(v.to_vec());
            *si += 1;
        }
    };
    record_due(t, &v, &mut si, &mut field);

    while t < config.t_end {
        let rmax = v.iter().copied().fold(F::zero(), F::max);
        let next_stop = config
            .snapshot_times
            .get(si)
            .copied()
            .unwrap_or(config.t_end)
            .min(config.t_end);
        let remaining = next_stop - t;
        let mut dt = if rmax > F::zero() {
            config.cfl_safety * du2 / (two_m * rmax.powi(config.m as i32 - 1))
        } else {
            remaining
        };
        if let Some(cap) = config.dt_cap {
            dt = dt.min(cap);
        }
        let lands = dt >= remaining;
        if lands {
            dt = remaining;
        }

        let c = dt / du2;
        for j in 0..cells {
            w[j] = v[j].powi(config.m as i32);
        }
        let mut prev_flux = w[0] - w[cells - 1];
        let mut next = Vec::with_capacity(cells);
        for j in 0..cells {
            let flux = w[(j + 1) % cells] - w[j];
            next.push(v[j] + c * (flux - prev_flux));
            prev_flux = flux;
        }
        t = if lands { next_stop } else { t + dt };
        for (cell, &value) in next.iter().enumerate() {
            if !(value >= -guard && value <= F::one() + guard) {
                return Err(PmeError::RangeViolation {
                    time: t.as_f64(),
                    cell,
                    value: value.as_f64(),
                });
            }
        }
        v = next;
        record_due(t, &v, &mut si, &mut field);
    }
    Ok(field)
}
