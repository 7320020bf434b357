use std::sync::OnceLock;

use crate::scalar::Real;

use super::PmeError;

fn bump(s: f64) -> f64 {
    if s.abs() < 1.0 {
        (-1.0 / (1.0 - s * s)).exp()
    } else {
        0.0
    }
}

/// Sup of the unit-scale mollifier kernel: bump(0) divided by the mass of
/// the bump on [-1, 1]. The eps-scale kernel then has sup C_h / eps.
pub fn kernel_sup_constant() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| {
        // Simpson on [0, 1]; the integrand vanishes to all orders at 1.
        let panels = 1usize << 16;
        let h = 1.0 / panels as f64;
        let mut acc = bump(0.0);
        for i in 1..panels {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * bump(i as f64 * h);
        }
        let half_mass = acc * h / 3.0;
        bump(0.0) / (2.0 * half_mass)
    })
}

/// Discrete mollifier of support radius eps on a periodic grid of `cells`
/// cells: bump samples renormalised to sum to one.
#[derive(Clone, Debug)]
pub struct Mollifier<F: Real = f64> {
    eps: F,
    cells: usize,
    half_width: usize,
    /// Offsets -half_width ..= half_width; symmetric; sums to one.
    weights: Vec<F>,
}

pub fn build_mollifier<F: Real>(eps: F, cells: usize) -> Result<Mollifier<F>, PmeError> {
    if !(eps > F::zero() && eps < F::of(0.5)) {
        return Err(PmeError::TruncationOutOfRange(eps.as_f64()));
    }
    let scale = eps.as_f64() * cells as f64;
    if scale <= 2.0 {
        return Err(PmeError::MollifierTooNarrow {
            eps: eps.as_f64(),
            cells,
        });
    }
    // Last sample strictly inside the support: k_max < eps * cells.
    let half_width = scale.ceil() as usize - 1;
    let mut half: Vec<F> = (0..=half_width)
        .map(|k| F::of(bump(k as f64 / scale)))
        .collect();
    let total = half
        .iter()
        .skip(1)
        .fold(half[0], |a, &w| a + w + w);
    for w in &mut half {
        *w = *w / total;
    }
    let mut weights = Vec::with_capacity(2 * half_width + 1);
    weights.extend(half.iter().rev().copied());
    weights.extend(half.iter().skip(1).copied());
    Ok(Mollifier {
        eps,
        cells,
        half_width,
        weights,
    })
}

impl<F: Real> Mollifier<F> {
    pub fn eps(&self) -> F {
        self.eps
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn weights(&self) -> &[F] {
        &self.weights
    }

    /// Sup of the kernel as a function on the torus (weight over cell width).
    pub fn kernel_sup(&self) -> F {
        self.weights[self.half_width] * F::of_usize(self.cells)
    }

    /// Circular convolution, accumulated as deviations from the centre
    /// value: out_j = v_j + sum_i w_i (v_i - v_j). Since the weights sum
    /// to one this is the plain weighted average, but cells whose whole
    /// window is constant are returned bitwise unchanged, so clamp
    /// plateaus survive the smoothing exactly.
    pub fn convolve(&self, values: &[F]) -> Vec<F> {
        assert_eq!(values.len(), self.cells, "profile/mollifier grid mismatch");
        let m = self.cells;
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let base = j + m - self.half_width;
            let centre = values[j];
            let mut acc = F::zero();
            for (i, &w) in self.weights.iter().enumerate() {
                acc = acc + w * (values[(base + i) % m] - centre);
            }
            out.push(centre + acc);
        }
        out
    }
}
