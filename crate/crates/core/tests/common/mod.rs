#![allow(dead_code)]

//! Helpers shared by the integration suites: a matrix-exponential oracle
//! independent of the library's uniformization path, and a multinomial
//! band check for empirical endpoint laws.

fn identity(n: usize) -> Vec<Vec<f64>> {
    let mut e = vec![vec![0.0; n]; n];
    for (i, row) in e.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    e
}

fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Row `initial` of exp(Q t) by scaling and squaring with a Taylor series.
/// Plain dense linear algebra, no uniformization: an independent oracle
/// for transition laws of the enumerated generator.
pub fn expm_distribution(q: &[Vec<f64>], initial: usize, t: f64) -> Vec<f64> {
    let n = q.len();
    let norm = q
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t;
    // Scale so the series argument has norm <= 0.5; 20 terms then leave a
    // remainder far below f64 resolution.
    let s = if norm > 0.5 { norm.log2().ceil() as i32 + 1 } else { 0 };
    let scale = t * 0.5f64.powi(s);
    let a: Vec<Vec<f64>> = q
        .iter()
        .map(|row| row.iter().map(|v| v * scale).collect())
        .collect();

    let mut e = identity(n);
    let mut term = identity(n);
    for k in 1..=20 {
        term = matmul(&term, &a);
        let inv = 1.0 / k as f64;
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v *= inv;
            }
        }
        for (er, tr) in e.iter_mut().zip(&term) {
            for (ev, tv) in er.iter_mut().zip(tr) {
                *ev += tv;
            }
        }
    }
    for _ in 0..s {
        e = matmul(&e, &e);
    }
    e[initial].clone()
}

pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Checks observed counts against a multinomial law: every state whose
/// expected count is at least `lump_below` gets a z-band of `sigmas`
/// standard deviations; the remaining states are lumped into one tail
/// bucket tested the same way. Returns the offending description on
/// failure.
pub fn multinomial_band_check(
    counts: &[u64],
    probs: &[f64],
    draws: u64,
    sigmas: f64,
    lump_below: f64,
) -> Result<(), String> {
    assert_eq!(counts.len(), probs.len());
    let n = draws as f64;
    let mut tail_p = 0.0;
    let mut tail_count = 0u64;
    for (s, (&c, &p)) in counts.iter().zip(probs).enumerate() {
        let mean = n * p;
        if mean < lump_below {
            tail_p += p;
            tail_count += c;
            continue;
        }
        let sd = (mean * (1.0 - p)).sqrt();
        if (c as f64 - mean).abs() > sigmas * sd {
            return Err(format!(
                "state {s}: observed {c}, expected {mean:.1} +- {:.1}",
                sigmas * sd
            ));
        }
    }
    let mean = n * tail_p;
    let sd = (mean * (1.0 - tail_p)).sqrt();
    if (tail_count as f64 - mean).abs() > sigmas * sd.max(1.0) {
        return Err(format!(
            "tail bucket: observed {tail_count}, expected {mean:.1} +- {:.1}",
            sigmas * sd.max(1.0)
        ));
    }
    Ok(())
}
