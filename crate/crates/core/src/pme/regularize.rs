use crate::scalar::Real;

use super::{
    build_mollifier, density_from_pressure, pressure_from_density, FieldKind, GridProfile,
    PmeError,
};

/// Clamp window for the pressure, the image of [eps, 1 - eps] under the
/// density-to-pressure map.
pub fn pressure_clamp_window<F: Real>(eps: F, m: usize) -> (F, F) {
    let scale = F::of_usize(m) / F::of_usize(m - 1);
    let e = m as i32 - 1;
    (scale * eps.powi(e), scale * (F::one() - eps).powi(e))
}

/// Regularised initial datum: clamp the pressure away from the degenerate
/// endpoints, mollify at scale eps, and map back. The output density lies
/// in [eps, 1 - eps] exactly and its discrete pressure Lipschitz seminorm
/// does not exceed that of the clamped input (both clamping and averaging
/// are contractions).
pub fn regularize_initial<F: Real>(
    rho: &GridProfile<F>,
    eps: F,
    m: usize,
) -> Result<GridProfile<F>, PmeError> {
    if rho.kind() != FieldKind::Density {
        return Err(PmeError::KindMismatch {
            expected: FieldKind::Density,
            got: rho.kind(),
        });
    }
    if m < 2 {
        return Err(PmeError::RangeTooSmall(m));
    }
    if !(eps > F::zero() && eps < F::of(0.5)) {
        return Err(PmeError::TruncationOutOfRange(eps.as_f64()));
    }
    let kernel = build_mollifier(eps, rho.len())?;
    let (lo, hi) = pressure_clamp_window(eps, m);

    let pi = pressure_from_density(rho, m)?;
    let clamped: Vec<F> = pi.values().iter().map(|&p| p.max(lo).min(hi)).collect();
    let smoothed = kernel.convolve(&clamped);
    // Rounding insurance: the convex combination can leave the window by
    // an ulp, and so can the root below.
    let back: Vec<F> = smoothed.iter().map(|&p| p.max(lo).min(hi)).collect();
    let rho_reg = density_from_pressure(&GridProfile::pressure(back)?, m)?;
    let final_values: Vec<F> = rho_reg
        .values()
        .iter()
        .map(|&r| r.max(eps).min(F::one() - eps))
        .collect();
    GridProfile::density(final_values)
}
