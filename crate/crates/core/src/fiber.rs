//! Periodized Fourier transform fibers and bracket products.
//!
//! For f ∈ L²(ℝ) and ω = e^{2πiθ}, the fiber of f at θ is the ℓ²(ℤ) vector
//! with entries conj(f̂(θ+k)). Truncation to |k| ≤ K is certified by a tail
//! bound from the polynomial decay of compactly supported piecewise
//! polynomials. The bracket [f̂, ĝ](θ) = Σ_k f̂(θ+k) conj(ĝ(θ+k)) is the
//! fiberwise inner product after conjugation bookkeeping.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::signals::{fourier_eval, spectral_tail_sq, CompactPiecewisePoly};
use num_complex::Complex64;
use num_traits::Zero;

/// Truncated fiber { conj(f̂(θ+k)) : |k| ≤ K } with a certified ℓ² tail bound.
#[derive(Clone, Debug)]
pub struct FiberVector {
    pub theta: f64,
    trunc: usize,
    entries: Vec<Complex64>,
    /// Certified bound for Σ_{|k|>K} |f̂(θ+k)|².
    pub tail_sq: f64,
}

impl FiberVector {
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Entry v_k = conj(f̂(θ+k)) for |k| ≤ K.
    pub fn entry(&self, k: i64) -> Complex64 {
        let kk = k + self.trunc as i64;
        if kk < 0 || kk as usize >= self.entries.len() {
            Complex64::zero()
        } else {
            self.entries[kk as usize]
        }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|v| v.norm_sqr()).sum()
    }

    /// ⟨self, other⟩_{ℓ²} = Σ_k v_k conj(w_k) over the common truncation.
    pub fn inner(&self, other: &FiberVector) -> Complex64 {
        let k_max = self.trunc.min(other.trunc) as i64;
        let mut acc = Complex64::zero();
        for k in -k_max..=k_max {
            acc += self.entry(k) * other.entry(k).conj();
        }
        acc
    }

    /// Difference norm over the common truncation.
    pub fn sub_norm(&self, other: &FiberVector) -> f64 {
        let k_max = self.trunc.max(other.trunc) as i64;
        let mut acc = 0.0;
        for k in -k_max..=k_max {
            acc += (self.entry(k) - other.entry(k)).norm_sqr();
        }
        acc.sqrt()
    }

    pub fn scale(&self, c: Complex64) -> FiberVector {
        FiberVector {
            theta: self.theta,
            trunc: self.trunc,
            entries: self.entries.iter().map(|v| c * v).collect(),
            tail_sq: self.tail_sq * c.norm_sqr(),
        }
    }
}

/// Fiber of the periodized Fourier transform of f at θ, truncated at |k| ≤ K.
pub fn fiber_vector(f: &CompactPiecewisePoly, theta: f64, trunc: usize) -> Result<FiberVector> {
    if trunc == 0 {
        return Err(Error::InvalidArgument("fiber truncation K must be ≥ 1".into()));
    }
    let k = trunc as i64;
    let entries = (-k..=k)
        .map(|kk| fourier_eval(f, theta + kk as f64).conj())
        .collect();
    Ok(FiberVector { theta, trunc, entries, tail_sq: spectral_tail_sq(f, trunc) })
}

/// Bracket product value with a certified truncation error bound.
#[derive(Clone, Copy, Debug)]
pub struct BracketValue {
    pub value: Complex64,
    /// |true bracket − value| ≤ tail_bound.
    pub tail_bound: f64,
}

/// [f̂, ĝ](θ) = Σ_{|k| ≤ K} f̂(θ+k) conj(ĝ(θ+k)), with a Cauchy–Schwarz bound
/// on the omitted tail.
pub fn bracket(
    f: &CompactPiecewisePoly,
    g: &CompactPiecewisePoly,
    theta: f64,
    trunc: usize,
) -> Result<BracketValue> {
    if trunc == 0 {
        return Err(Error::InvalidArgument("bracket truncation K must be ≥ 1".into()));
    }
    let mut acc = Complex64::zero();
    let k = trunc as i64;
    for kk in -k..=k {
        let t = theta + kk as f64;
        acc += fourier_eval(f, t) * fourier_eval(g, t).conj();
    }
    let tail = (spectral_tail_sq(f, trunc) * spectral_tail_sq(g, trunc)).sqrt();
    Ok(BracketValue { value: acc, tail_bound: tail })
}

/// Grid-sampled spectral support σ(f) = supp [f̂, f̂].
#[derive(Clone, Debug)]
pub struct SpectralSupport {
    pub grid: Grid,
    pub indicator: Vec<bool>,
    pub threshold: f64,
    /// Bracket samples [φ̂, φ̂](θ_i) the indicator was derived from.
    pub bracket_samples: Vec<f64>,
}

impl SpectralSupport {
    pub fn is_marked(&self, i: usize) -> bool {
        self.indicator[i]
    }

    pub fn marked_count(&self) -> usize {
        self.indicator.iter().filter(|m| **m).count()
    }

    pub fn all_marked(&self) -> bool {
        self.indicator.iter().all(|m| *m)
    }
}

/// Mark the grid points where [φ̂, φ̂](θ) exceeds `threshold` times the grid
/// maximum. The zero function yields an empty marking.
pub fn support_sigma(
    phi: &CompactPiecewisePoly,
    grid: &Grid,
    trunc: usize,
    threshold: f64,
) -> Result<SpectralSupport> {
    if grid.len() == 0 {
        return Err(Error::InvalidArgument("empty grid".into()));
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "threshold must lie in (0,1), got {threshold}"
        )));
    }
    let samples: Vec<f64> = grid
        .points()
        .map(|t| bracket(phi, phi, t, trunc).map(|b| b.value.re))
        .collect::<Result<_>>()?;
    let max = samples.iter().cloned().fold(0.0f64, f64::max);
    let cut = threshold * max;
    let indicator = samples.iter().map(|v| max > 0.0 && *v > cut).collect();
    Ok(SpectralSupport { grid: grid.clone(), indicator, threshold, bracket_samples: samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signals::{apply_dyadic, bspline};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn box_fiber_at_zero_is_delta() {
        let b1 = bspline(1).unwrap();
        let v = fiber_vector(&b1, 0.0, 8).unwrap();
        assert_abs_diff_eq!(v.entry(0).re, 1.0, epsilon = 1e-13);
        for k in 1..=8i64 {
            assert!(v.entry(k).norm() < 1e-13);
            assert!(v.entry(-k).norm() < 1e-13);
        }
    }

    #[test]
    fn box_fiber_at_half() {
        let b1 = bspline(1).unwrap();
        let v = fiber_vector(&b1, 0.5, 8).unwrap();
        assert_abs_diff_eq!(v.entry(0).norm(), 2.0 / PI, epsilon = 1e-13);
    }

    #[test]
    fn translation_multiplies_fiber_by_omega() {
        let b2 = bspline(2).unwrap();
        let theta = 0.37;
        let shifted = apply_dyadic(&b2, 0, 1);
        let v = fiber_vector(&b2, theta, 6).unwrap();
        let w = fiber_vector(&shifted, theta, 6).unwrap();
        let omega = Complex64::from_polar(1.0, 2.0 * PI * theta);
        for k in -6..=6i64 {
            assert!((w.entry(k) - omega * v.entry(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn bracket_of_box_is_one() {
        // orthonormal integer shifts: [φ̂,φ̂] ≡ 1
        let b1 = bspline(1).unwrap();
        for theta in [0.0, 0.21, 0.5, 0.77] {
            let b = bracket(&b1, &b1, theta, 10_000).unwrap();
            assert!((b.value.re - 1.0).abs() <= b.tail_bound + 1e-10);
            assert!(b.value.im.abs() < 1e-12);
        }
    }

    #[test]
    fn bracket_conjugate_symmetry() {
        let b2 = bspline(2).unwrap();
        let b3 = bspline(3).unwrap();
        for theta in [0.1, 0.63] {
            let fg = bracket(&b2, &b3, theta, 32).unwrap().value;
            let gf = bracket(&b3, &b2, theta, 32).unwrap().value;
            assert!((fg - gf.conj()).norm() < 1e-13);
        }
    }

    #[test]
    fn bracket_matches_fiber_inner_product() {
        // [f̂, ĝ](θ) = ⟨ĝ_*(ω), f̂_*(ω)⟩ after conjugation bookkeeping
        let f = bspline(2).unwrap();
        let g = bspline(3).unwrap();
        for theta in [0.12, 0.5, 0.9] {
            let br = bracket(&f, &g, theta, 24).unwrap().value;
            let vf = fiber_vector(&f, theta, 24).unwrap();
            let vg = fiber_vector(&g, theta, 24).unwrap();
            assert!((br - vg.inner(&vf)).norm() < 1e-12);
        }
    }

    #[test]
    fn bracket_of_self_is_real_positive() {
        let b4 = bspline(4).unwrap();
        for theta in [0.0, 0.25, 0.5, 0.8] {
            let b = bracket(&b4, &b4, theta, 32).unwrap();
            assert!(b.value.im.abs() < 1e-14);
            assert!(b.value.re > -b.tail_bound);
        }
    }

    #[test]
    fn sigma_of_bspline_is_everything() {
        let grid = Grid::new(128).unwrap();
        let s = support_sigma(&bspline(1).unwrap(), &grid, 32, 0.1).unwrap();
        assert!(s.all_marked());
        let s2 = support_sigma(&bspline(2).unwrap(), &grid, 32, 0.1).unwrap();
        assert!(s2.all_marked());
    }

    #[test]
    fn sigma_of_zero_is_empty() {
        let grid = Grid::new(64).unwrap();
        let z = CompactPiecewisePoly::zero();
        let s = support_sigma(&z, &grid, 8, 0.5).unwrap();
        assert_eq!(s.marked_count(), 0);
    }

    #[test]
    fn hat_bracket_min_value_is_one_third() {
        // Σ_k sinc⁴(1/2 + k) = 1/3
        let b2 = bspline(2).unwrap();
        let b = bracket(&b2, &b2, 0.5, 2000).unwrap();
        assert_abs_diff_eq!(b.value.re, 1.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        for order in 1..=3u32 {
            let f = bspline(order).unwrap();
            for theta in [0.0, 0.4] {
                let coarse = bracket(&f, &f, theta, 16).unwrap();
                let fine = bracket(&f, &f, theta, 4096).unwrap();
                let actual = (fine.value.re - coarse.value.re).abs();
                assert!(
                    actual <= coarse.tail_bound,
                    "order {order}: actual {actual} vs bound {}",
                    coarse.tail_bound
                );
            }
        }
    }
}
