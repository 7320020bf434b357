use crate::scalar::Real;

use super::{FieldKind, GridProfile, PmeError};

/// Default floor separating "numerically zero" from genuinely small
/// densities when measuring the width of a moving interface.
pub const DEFAULT_POSITIVITY_FLOOR: f64 = 10.0 * f64::EPSILON;

/// Free-boundary bookkeeping at a threshold delta.
#[derive(Clone, Debug, PartialEq)]
pub struct InterfaceEntry<F: Real = f64> {
    pub delta: F,
    pub floor: F,
    /// Maximal circular runs of cells with rho > delta, as (start, length).
    /// A single full-ring run is reported as (0, cells).
    pub components: Vec<(usize, usize)>,
    /// Lebesgue measure of { floor < rho < delta }, the diffuse shoulder
    /// around the theoretical sharp interface.
    pub transition_measure: F,
}

pub fn interface_entry<F: Real>(
    rho: &GridProfile<F>,
    delta: F,
    floor: F,
) -> Result<InterfaceEntry<F>, PmeError> {
    if rho.kind() != FieldKind::Density {
        return Err(PmeError::KindMismatch {
            expected: FieldKind::Density,
            got: rho.kind(),
        });
    }
    if !(floor >= F::zero() && floor < delta) {
        return Err(PmeError::BadInterfaceThresholds {
            floor: floor.as_f64(),
            delta: delta.as_f64(),
        });
    }
    let cells = rho.len();
    let above: Vec<bool> = rho.values().iter().map(|&v| v > delta).collect();
    let mut components = Vec::new();
    if above.iter().all(|&b| b) {
        components.push((0, cells));
    } else if above.iter().any(|&b| b) {
        // Anchor the circular scan at a below-threshold cell so every run
        // is seen contiguously.
        let anchor = above.iter().position(|&b| !b).unwrap();
        let mut run_start = None;
        for step in 1..=cells {
            let j = (anchor + step) % cells;
            match (above[j], run_start) {
                (true, None) => run_start = Some(j),
                (false, Some(start)) => {
                    let len = (j + cells - start) % cells;
                    components.push((start, len));
                    run_start = None;
                }
                _ => {}
            }
        }
        debug_assert!(run_start.is_none());
    }
    let shoulder = rho
        .values()
        .iter()
        .filter(|&&v| v > floor && v < delta)
        .count();
    Ok(InterfaceEntry {
        delta,
        floor,
        components,
        transition_measure: F::of_usize(shoulder) * rho.du(),
    })
}
