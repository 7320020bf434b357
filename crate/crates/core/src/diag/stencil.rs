//! Centred periodic difference stencils, second-order accurate.

use crate::scalar::Real;

fn wrap(j: isize, m: usize) -> usize {
    j.rem_euclid(m as isize) as usize
}

/// (v_{j+1} - v_{j-1}) / (2 du)
pub fn d1<F: Real>(v: &[F], j: usize, du: F) -> F {
    let m = v.len();
    debug_assert!(m >= 3);
    let j = j as isize;
    (v[wrap(j + 1, m)] - v[wrap(j - 1, m)]) / (F::of(2.0) * du)
}

/// (v_{j+1} - 2 v_j + v_{j-1}) / du^2
pub fn d2<F: Real>(v: &[F], j: usize, du: F) -> F {
    let m = v.len();
    debug_assert!(m >= 3);
    let i = j as isize;
    (v[wrap(i + 1, m)] - F::of(2.0) * v[j] + v[wrap(i - 1, m)]) / (du * du)
}

/// (v_{j+2} - 2 v_{j+1} + 2 v_{j-1} - v_{j-2}) / (2 du^3)
pub fn d3<F: Real>(v: &[F], j: usize, du: F) -> F {
    let m = v.len();
    debug_assert!(m >= 5);
    let j = j as isize;
    (v[wrap(j + 2, m)] - F::of(2.0) * v[wrap(j + 1, m)] + F::of(2.0) * v[wrap(j - 1, m)]
        - v[wrap(j - 2, m)])
        / (F::of(2.0) * du * du * du)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn sampled(m: usize) -> (Vec<f64>, f64) {
        let du = 1.0 / m as f64;
        let v = (0..m)
            .map(|j| (TAU * (j as f64 + 0.5) * du).sin())
            .collect();
        (v, du)
    }

    #[test]
    fn stencils_recover_sine_derivatives() {
        let (v, du) = sampled(512);
        let j = 100;
        let u = (j as f64 + 0.5) * du;
        assert!((d1(&v, j, du) - TAU * (TAU * u).cos()).abs() < 1e-3);
        assert!((d2(&v, j, du) + TAU * TAU * (TAU * u).sin()).abs() < 1e-2);
        assert!((d3(&v, j, du) + TAU.powi(3) * (TAU * u).cos()).abs() < 0.1);
    }

    #[test]
    fn stencils_are_second_order() {
        // Max residual against the exact derivative should drop ~4x per halving.
        for deriv in 0..3 {
            let residual = |m: usize| -> f64 {
                let (v, du) = sampled(m);
                (0..m)
                    .map(|j| {
                        let u = (j as f64 + 0.5) * du;
                        let exact = match deriv {
                            0 => TAU * (TAU * u).cos(),
                            1 => -TAU * TAU * (TAU * u).sin(),
                            _ => -TAU.powi(3) * (TAU * u).cos(),
                        };
                        let got = match deriv {
                            0 => d1(&v, j, du),
                            1 => d2(&v, j, du),
                            _ => d3(&v, j, du),
                        };
                        (got - exact).abs()
                    })
                    .fold(0.0, f64::max)
            };
            let ratio = residual(128) / residual(256);
            assert!(ratio > 3.5 && ratio < 4.5, "deriv {deriv}: ratio {ratio}");
        }
    }

    #[test]
    fn cubic_third_derivative_is_exact_away_from_the_seam() {
        // On u^3 the third-difference stencil is exact; probe an interior
        // stretch of a non-periodic sample where no wrap is touched.
        let m = 64;
        let du = 1.0 / m as f64;
        let v: Vec<f64> = (0..m).map(|j| ((j as f64 + 0.5) * du).powi(3)).collect();
        for j in 2..m - 2 {
            assert!((d3(&v, j, du) - 6.0).abs() < 1e-9, "cell {j}");
        }
    }

    #[test]
    fn constants_are_annihilated() {
        let v = vec![0.7f64; 16];
        let du = 1.0 / 16.0;
        for j in 0..16 {
            assert_eq!(d1(&v, j, du), 0.0);
            assert_eq!(d2(&v, j, du), 0.0);
            assert_eq!(d3(&v, j, du), 0.0);
        }
    }
}
