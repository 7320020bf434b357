use std::f64::consts::TAU;

use porous_core::diag::pressure_lipschitz;
use porous_core::pme::{
    barenblatt_point, barenblatt_profile, build_mollifier, density_from_pressure,
    interface_entry, kernel_sup_constant, positivity_radius, pressure_from_density,
    regularize_initial, solve_pme, FieldKind, GridProfile, PmeError, SolverConfig,
};

fn barenblatt_l1_error(field_last: &GridProfile<f64>, t: f64, c: f64) -> f64 {
    let cells = field_last.len();
    let mut err = 0.0;
    for j in 0..cells {
        let u = field_last.u(j);
        let exact = barenblatt_point(t, u - 0.5, 2, c).unwrap();
        err += (field_last.value(j) - exact).abs();
    }
    err / cells as f64
}

fn stability_dt(rho: &GridProfile<f64>, m: usize, cfl: f64) -> f64 {
    let rmax = rho.max();
    cfl * rho.du() * rho.du() / (2.0 * m as f64 * rmax.powi(m as i32 - 1))
}

#[test]
fn pulse_landmarks_and_pressure_values() {
    // Peak value C, support radius exactly 1 for the classical parameters.
    let c = 1.0f64 / 12.0;
    assert_eq!(barenblatt_point(1.0, 0.0, 2, c).unwrap(), c);
    assert_eq!(barenblatt_point(1.0, 1.0, 2, c).unwrap(), 0.0);
    assert!((positivity_radius(1.0, 2, c) - 1.0).abs() < 1e-15);

    // Pressure of a constant half-filled profile, cubic case: (3/2)(1/4).
    let rho = GridProfile::<f64>::density(vec![0.5; 8]).unwrap();
    let p = pressure_from_density(&rho, 3).unwrap();
    assert_eq!(p.value(0), 0.375);

    let back = density_from_pressure(&p, 3).unwrap();
    for j in 0..back.len() {
        assert!((back.value(j) - 0.5).abs() <= 1e-15);
    }
}

#[test]
fn pulse_mass_is_conserved_across_time() {
    // The exact solution conserves mass; quadrature at M = 4096 resolves it.
    let m1: f64 = barenblatt_profile(1.0, 2, 1.0 / 80.0, 0.5, 4096).unwrap().mass();
    let m15 = barenblatt_profile(1.5, 2, 1.0 / 80.0, 0.5, 4096).unwrap().mass();
    assert!(
        (m1 - m15).abs() <= 1e-6,
        "mass drift between t = 1 and t = 1.5: {}",
        (m1 - m15).abs()
    );
}

#[test]
fn kernel_mass_symmetry_and_sup() {
    let c_h = kernel_sup_constant();
    for eps in [0.1, 0.01] {
        let k = build_mollifier(eps, 4096).unwrap();
        let mass: f64 = k.weights().iter().sum();
        assert!((mass - 1.0).abs() <= 1e-14, "eps = {eps}");
        let w = k.weights();
        for i in 0..w.len() {
            assert_eq!(w[i], w[w.len() - 1 - i], "eps = {eps}");
        }
        let sup = k.kernel_sup();
        assert!(
            (sup / (c_h / eps) - 1.0).abs() <= 0.01,
            "eps = {eps}: sup {sup} vs {}",
            c_h / eps
        );
    }
}

#[test]
fn regularizer_fixes_the_stated_constants() {
    // Vacuum maps to the truncation level; quadratic case lands bitwise.
    for eps in [0.1, 0.01] {
        let zero = GridProfile::<f64>::density(vec![0.0; 1024]).unwrap();
        let reg = regularize_initial(&zero, eps, 2).unwrap();
        for j in 0..reg.len() {
            assert_eq!(reg.value(j), eps, "m = 2, eps = {eps}");
        }
        // Cubic case goes through a fractional power; allow rounding but
        // never leave the band.
        let reg3 = regularize_initial(&zero, eps, 3).unwrap();
        for j in 0..reg3.len() {
            assert!(reg3.value(j) >= eps);
            assert!((reg3.value(j) - eps).abs() <= eps * 1e-14, "m = 3, eps = {eps}");
        }
    }

    let half = GridProfile::<f64>::density(vec![0.5; 1024]).unwrap();
    let reg = regularize_initial(&half, 0.01, 2).unwrap();
    for j in 0..reg.len() {
        assert_eq!(reg.value(j), 0.5);
    }
}

#[test]
fn regularizer_respects_band_lipschitz_and_sup_distance() {
    let shapes: Vec<(&str, GridProfile<f64>)> = vec![
        ("pulse", barenblatt_profile(1.0, 2, 1.0 / 80.0, 0.5, 2048).unwrap()),
        (
            "clipped sine",
            GridProfile::from_fn(2048, FieldKind::Density, |u: f64| {
                (1.5 * (TAU * u).sin()).clamp(0.0, 1.0)
            })
            .unwrap(),
        ),
    ];
    for m in [2usize, 3] {
        for eps in [0.1, 0.01] {
            for (name, rho) in &shapes {
                let reg = regularize_initial(rho, eps, m).unwrap();
                assert!(reg.min() >= eps, "{name}, m = {m}, eps = {eps}");
                assert!(reg.max() <= 1.0 - eps, "{name}, m = {m}, eps = {eps}");

                let lip_in = pressure_lipschitz(rho, m).unwrap();
                let lip_out = pressure_lipschitz(&reg, m).unwrap();
                assert!(
                    lip_out <= lip_in * (1.0 + 1e-12),
                    "{name}, m = {m}, eps = {eps}: {lip_out} > {lip_in}"
                );

                // Sup distance bound with the measured Lipschitz constant.
                let c_ini = ((m as f64 - 1.0) * (m as f64 + lip_in) / m as f64)
                    .powf(1.0 / (m as f64 - 1.0));
                let bound = c_ini * eps.powf(1.0 / (m as f64 - 1.0));
                let dist = reg.linf_diff(rho).unwrap();
                assert!(
                    dist <= bound,
                    "{name}, m = {m}, eps = {eps}: {dist} > {bound}"
                );
            }
        }
    }
}

#[test]
fn solver_tracks_the_exact_pulse_and_refines() {
    let c = 1.0 / 80.0;
    let horizon = 0.5;
    let mut errors = Vec::new();
    for cells in [512usize, 1024] {
        let rho0 = barenblatt_profile(1.0, 2, c, 0.5, cells).unwrap();
        let config = SolverConfig {
            m: 2,
            cfl_safety: 0.5,
            t_end: horizon,
            snapshot_times: vec![horizon],
            dt_cap: None,
        };
        let field = solve_pme(&rho0, &config).unwrap();
        let last = field.profile(field.len() - 1).unwrap();
        errors.push(barenblatt_l1_error(&last, 1.0 + horizon, c));
    }
    assert!(errors[1] <= 2e-3, "fine-grid L1 error {}", errors[1]);
    assert!(
        errors[0] / errors[1] >= 1.8,
        "refinement ratio {} (errors {:?})",
        errors[0] / errors[1],
        errors
    );
}

#[test]
fn mass_invariant_on_generic_data() {
    let rho0 = GridProfile::from_fn(512, FieldKind::Density, |u: f64| {
        0.5 + 0.35 * (TAU * u).sin() + 0.1 * (2.0 * TAU * u).cos()
    })
    .unwrap();
    let t_end = 0.25;
    let config = SolverConfig {
        m: 3,
        cfl_safety: 0.6,
        t_end,
        snapshot_times: vec![0.0, t_end],
        dt_cap: None,
    };
    let field = solve_pme(&rho0, &config).unwrap();
    let first = field.profile(0).unwrap();
    let last = field.profile(field.len() - 1).unwrap();
    assert!((first.mass() - last.mass()).abs() <= 1e-12 * (1.0 + t_end));
    // Discrete maximum principle.
    assert!(last.max() <= first.max() + 1e-15);
    assert!(last.min() >= first.min() - 1e-15);
}

/// Ordered data stay ordered: run both under one step cap below either
/// initial stability limit, so the two trajectories share their step
/// sequence exactly and the monotone scheme preserves the order.
#[test]
fn comparison_principle_for_ordered_data() {
    let lower = GridProfile::from_fn(256, FieldKind::Density, |u: f64| {
        0.3 + 0.2 * (TAU * u).sin()
    })
    .unwrap();
    let upper = GridProfile::from_fn(256, FieldKind::Density, |u: f64| {
        0.45 + 0.25 * (TAU * u).sin() + 0.05 * (2.0 * TAU * u).cos()
    })
    .unwrap();
    for j in 0..256 {
        assert!(lower.value(j) <= upper.value(j));
    }
    let m = 2;
    let cap = 0.999 * stability_dt(&lower, m, 0.5).min(stability_dt(&upper, m, 0.5));
    let config = SolverConfig {
        m,
        cfl_safety: 0.5,
        t_end: 0.1,
        snapshot_times: vec![0.05, 0.1],
        dt_cap: Some(cap),
    };
    let low = solve_pme(&lower, &config).unwrap();
    let high = solve_pme(&upper, &config).unwrap();
    for k in 0..low.len() {
        let a = low.snapshot(k);
        let b = high.snapshot(k);
        for j in 0..a.len() {
            assert!(
                a[j] <= b[j] + 1e-12,
                "snapshot {k}, cell {j}: {} > {}",
                a[j],
                b[j]
            );
        }
    }
}

/// The numerical support may only creep out by a bounded number of cells
/// per snapshot beyond the exact positivity radius.
#[test]
fn support_spreads_no_faster_than_the_pulse() {
    let c = 1.0 / 80.0;
    let cells = 1024usize;
    let du = 1.0 / cells as f64;
    let rho0 = barenblatt_profile(1.0, 2, c, 0.5, cells).unwrap();
    let snapshot_times: Vec<f64> = (1..=5).map(|k| 0.1 * k as f64).collect();
    let config = SolverConfig {
        m: 2,
        cfl_safety: 0.5,
        t_end: 0.5,
        snapshot_times,
        dt_cap: None,
    };
    let field = solve_pme(&rho0, &config).unwrap();
    for (k, t) in field.times().iter().enumerate() {
        let radius = positivity_radius(1.0 + t, 2, c);
        let numerical = field
            .snapshot(k)
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v > 1e-12)
            .map(|(j, _)| ((j as f64 + 0.5) * du - 0.5).abs())
            .fold(0.0, f64::max);
        assert!(
            numerical <= radius + (4.0 + 2.0 * (k as f64 + 1.0)) * du,
            "snapshot {k} (t = {t}): support {numerical} vs radius {radius}"
        );
    }
}

#[test]
fn interface_components_on_pulse_shapes() {
    // Two disjoint pulses: component count 2 at a small threshold.
    let a = barenblatt_profile(0.2, 2, 1.0 / 200.0, 0.25, 2048).unwrap();
    let b = barenblatt_profile(0.2, 2, 1.0 / 200.0, 0.75, 2048).unwrap();
    let sum: Vec<f64> = (0..2048).map(|j| a.value(j) + b.value(j)).collect();
    let two = GridProfile::density(sum).unwrap();
    let entry = interface_entry(&two, 1e-4, 0.0).unwrap();
    assert_eq!(entry.components.len(), 2);

    // Single pulse: the transition layer shrinks with the threshold.
    let one = barenblatt_profile(0.05, 2, 0.1, 0.5, 2048).unwrap();
    let mut widths = Vec::new();
    for delta in [0.05, 0.02, 0.01, 0.005] {
        let e = interface_entry(&one, delta, 0.0).unwrap();
        assert_eq!(e.components.len(), 1);
        widths.push(e.transition_measure);
    }
    for pair in widths.windows(2) {
        assert!(pair[1] <= pair[0], "widths {widths:?}");
    }
    assert!(*widths.last().unwrap() < 0.02, "widths {widths:?}");
}

#[test]
fn wrap_guard_rejects_wide_pulses() {
    assert!(matches!(
        barenblatt_profile(1.0, 2, 1.0 / 12.0, 0.5, 256).unwrap_err(),
        PmeError::PulseWrapsTorus { .. }
    ));
}
