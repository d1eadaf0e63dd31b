//! Shared test oracles, independent of the library's closed-form paths.

use framelets::signals::CompactPiecewisePoly;
use num_complex::Complex64;

/// Adaptive Simpson quadrature with a forced initial subdivision, so that
/// oscillatory integrands cannot alias the first Simpson stencil (a phase
/// e^{2πirx} with integer r samples as a constant on unit panels).
pub fn oscillatory_simpson<F>(f: &F, a: f64, b: f64, tol: f64, min_panels: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let n = min_panels.max(1);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let lo = a + (b - a) * i as f64 / n as f64;
        let hi = a + (b - a) * (i + 1) as f64 / n as f64;
        acc += adaptive_simpson(f, lo, hi, tol / n as f64);
    }
    acc
}

/// Adaptive Simpson quadrature for complex-valued integrands.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Complex64 {
        let m = 0.5 * (a + b);
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.norm() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let whole = simpson(f, a, b);
    recurse(f, a, b, whole, tol, 40)
}

/// Quadrature oracle for f̂(θ) = ∫ f(x) e^{−2πixθ} dx, splitting at the
/// breakpoints so the integrand is smooth on every panel.
pub fn fourier_oracle(f: &CompactPiecewisePoly, theta: f64, tol: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let bps = f.breakpoints();
    for w in bps.windows(2) {
        let a = framelets::algebra::rat_to_f64(&w[0]);
        let b = framelets::algebra::rat_to_f64(&w[1]);
        let g = |x: f64| {
            // evaluate strictly inside the panel to dodge breakpoint edges
            let xx = x.clamp(a, b - (b - a) * 1e-15);
            f.eval(xx) * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * x * theta)
        };
        let panels = 8 + (4.0 * theta.abs() * (b - a)).ceil() as usize;
        acc += oscillatory_simpson(&g, a, b, tol, panels);
    }
    acc
}

/// Quadrature oracle for ⟨f, g⟩ on piecewise-smooth real functions.
pub fn inner_product_oracle(f: &CompactPiecewisePoly, g: &CompactPiecewisePoly, tol: f64) -> f64 {
    let mut cuts: Vec<f64> = f
        .breakpoints()
        .iter()
        .chain(g.breakpoints().iter())
        .map(framelets::algebra::rat_to_f64)
        .collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let mut acc = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = |x: f64| {
            let xx = x.clamp(a, b - (b - a) * 1e-15);
            Complex64::new(f.eval(xx) * g.eval(xx), 0.0)
        };
        acc += adaptive_simpson(&h, a, b, tol).re;
    }
    acc
}
