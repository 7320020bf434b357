use crate::lattice::Configuration;
use crate::scalar::Real;

use super::MeasureError;

/// Enumeration cap: a local observable may read at most this many sites.
pub const MAX_WINDOW: usize = 24;

/// Exact expectation of a local observable under the homogeneous product
/// Bernoulli measure with density `alpha`.
///
/// `phi` must depend only on the sites within `support_radius` of its
/// second argument. The window is enumerated exhaustively, so the
/// expectation is exact up to rounding.
pub fn bernoulli_average<F: Real>(
    phi: impl Fn(&Configuration, usize) -> F,
    support_radius: usize,
    alpha: F,
) -> Result<F, MeasureError> {
    let window = 2 * support_radius + 1;
    if window > MAX_WINDOW {
        return Err(MeasureError::WindowTooWide {
            window,
            max: MAX_WINDOW,
        });
    }
    let one = F::one();
    let mut pow_a = vec![one; window + 1];
    let mut pow_b = vec![one; window + 1];
    for j in 1..=window {
        pow_a[j] = pow_a[j - 1] * alpha;
        pow_b[j] = pow_b[j - 1] * (one - alpha);
    }
    let mut total = F::zero();
    for bits in 0u64..(1u64 << window) {
        let cfg = Configuration::from_index(bits, window);
        let k = bits.count_ones() as usize;
        total = total + phi(&cfg, support_radius) * pow_a[k] * pow_b[window - k];
    }
    Ok(total)
}

/// Expectation of a local observable as a polynomial in the density.
///
/// Returns the coefficient vector `c` with mean(alpha) = sum_j c[j] alpha^j,
/// obtained by expanding each configuration weight alpha^k (1-alpha)^(w-k)
/// into monomials. Coefficients are exact for windows within the cap since
/// the binomials stay far below 2^53.
pub fn mean_polynomial<F: Real>(
    phi: impl Fn(&Configuration, usize) -> F,
    support_radius: usize,
) -> Result<Vec<F>, MeasureError> {
    let window = 2 * support_radius + 1;
    if window > MAX_WINDOW {
        return Err(MeasureError::WindowTooWide {
            window,
            max: MAX_WINDOW,
        });
    }
    // binom[n][i] for n, i <= window
    let mut binom = vec![vec![0f64; window + 1]; window + 1];
    for n in 0..=window {
        binom[n][0] = 1.0;
        for i in 1..=n {
            binom[n][i] = binom[n - 1][i - 1] + if i <= n - 1 { binom[n - 1][i] } else { 0.0 };
        }
    }
    let mut coeffs = vec![F::zero(); window + 1];
    for bits in 0u64..(1u64 << window) {
        let cfg = Configuration::from_index(bits, window);
        let value = phi(&cfg, support_radius);
        if value == F::zero() {
            continue;
        }
        let k = bits.count_ones() as usize;
        for i in 0..=(window - k) {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[k + i] = coeffs[k + i] + value * F::of(sign * binom[window - k][i]);
        }
    }
    Ok(coeffs)
}

/// Horner evaluation of a coefficient vector produced by `mean_polynomial`.
pub fn eval_polynomial<F: Real>(coeffs: &[F], alpha: F) -> F {
    coeffs
        .iter()
        .rev()
        .fold(F::zero(), |acc, &c| acc * alpha + c)
}
