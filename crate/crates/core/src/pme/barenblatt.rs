use crate::scalar::Real;

use super::{GridProfile, PmeError};

fn check_params<F: Real>(t: F, m: usize, c: F) -> Result<(), PmeError> {
    if m < 2 {
        return Err(PmeError::RangeTooSmall(m));
    }
    if !(t > F::zero() && t.is_finite()) {
        return Err(PmeError::BadPulseTime(t.as_f64()));
    }
    if !(c >= F::zero() && c.is_finite()) {
        return Err(PmeError::BadPulseConstant(c.as_f64()));
    }
    Ok(())
}

/// Self-similar source solution on the real line:
///
///   rho(t, u) = t^(-a) (C - kappa u^2 t^(-2a))_+^(1/(m-1)),
///   a = 1/(m+1),  kappa = (m-1) / (2m(m+1)).
pub fn barenblatt_point<F: Real>(t: F, offset: F, m: usize, c: F) -> Result<F, PmeError> {
    check_params(t, m, c)?;
    let a = F::one() / F::of_usize(m + 1);
    let kappa = F::of_usize(m - 1) / F::of_usize(2 * m * (m + 1));
    let ta = t.powf(-a);
    let core = c - kappa * offset * offset * ta * ta;
    if core <= F::zero() {
        return Ok(F::zero());
    }
    let shaped = match m {
        2 => core,
        3 => core.sqrt(),
        _ => core.powf(F::one() / F::of_usize(m - 1)),
    };
    Ok(ta * shaped)
}

/// Half-width of the support of the pulse at time t.
pub fn positivity_radius<F: Real>(t: F, m: usize, c: F) -> F {
    let scale = (F::of_usize(2 * m * (m + 1)) * c / F::of_usize(m - 1)).sqrt();
    scale * t.powf(F::one() / F::of_usize(m + 1))
}

/// Pulse on the unit torus, evaluated at the nearest periodic image.
/// Rejected once the support reaches half the circumference, where the
/// images would start to overlap.
pub fn barenblatt<F: Real>(t: F, u: F, m: usize, c: F) -> Result<F, PmeError> {
    check_params(t, m, c)?;
    let radius = positivity_radius(t, m, c);
    if !(radius < F::of(0.5)) {
        return Err(PmeError::PulseWrapsTorus {
            radius: radius.as_f64(),
        });
    }
    let nearest = u - u.round();
    barenblatt_point(t, nearest, m, c)
}

/// Grid sampling of the torus pulse centred at `centre`.
pub fn barenblatt_profile<F: Real>(
    t: F,
    m: usize,
    c: F,
    centre: F,
    cells: usize,
) -> Result<GridProfile<F>, PmeError> {
    let mut values = Vec::with_capacity(cells);
    let half = F::of(0.5);
    let mf = F::of_usize(cells);
    for j in 0..cells {
        let u = (F::of_usize(j) + half) / mf;
        values.push(barenblatt(t, u - centre, m, c)?);
    }
    if values.is_empty() {
        return Err(PmeError::EmptyProfile);
    }
    GridProfile::density(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pme::FieldKind;

    #[test]
    fn quadratic_pulse_values_at_landmarks() {
        // m = 2, C = 1/12, t = 1: peak C at the centre, support radius 1.
        let c = 1.0f64 / 12.0;
        assert_eq!(barenblatt_point(1.0, 0.0, 2, c).unwrap(), c);
        assert_eq!(barenblatt_point(1.0, 1.0, 2, c).unwrap(), 0.0);
        assert_eq!(barenblatt_point(1.0, -1.5, 2, c).unwrap(), 0.0);
        assert!((positivity_radius(1.0, 2, c) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn support_spreads_like_a_power_law() {
        let c = 0.01;
        for m in 2..=4 {
            let r1 = positivity_radius(1.0f64, m, c);
            let r16 = positivity_radius(16.0f64, m, c);
            let expected = 16f64.powf(1.0 / (m as f64 + 1.0));
            assert!((r16 / r1 - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn wide_pulses_are_rejected_on_the_torus() {
        let err = barenblatt(1.0, 0.3, 2, 1.0 / 12.0).unwrap_err();
        assert!(matches!(err, PmeError::PulseWrapsTorus { .. }));
        // Narrow pulse is fine and symmetric across the seam.
        let v1: f64 = barenblatt(1.0, 0.1, 2, 1.0 / 80.0).unwrap();
        let v2 = barenblatt(1.0, -0.1, 2, 1.0 / 80.0).unwrap();
        let v3 = barenblatt(1.0, 0.9, 2, 1.0 / 80.0).unwrap();
        assert_eq!(v1, v2);
        assert!((v1 - v3).abs() < 1e-15);
    }

    #[test]
    fn profile_peaks_at_the_centre() {
        let p: GridProfile<f64> = barenblatt_profile(1.0, 2, 1.0 / 80.0, 0.5, 512).unwrap();
        let peak = (0..512).max_by(|&a, &b| p.value(a).total_cmp(&p.value(b))).unwrap();
        // Centre 0.5 falls between cells 255 and 256.
        assert!(peak == 255 || peak == 256);
        assert_eq!(p.kind(), FieldKind::Density);
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            barenblatt_point(0.0, 0.0, 2, 0.1).unwrap_err(),
            PmeError::BadPulseTime(_)
        ));
        assert!(matches!(
            barenblatt_point(1.0, 0.0, 2, -0.1).unwrap_err(),
            PmeError::BadPulseConstant(_)
        ));
        assert!(matches!(
            barenblatt_point(1.0, 0.0, 1, 0.1).unwrap_err(),
            PmeError::RangeTooSmall(1)
        ));
    }
}
