//! Derived example values checked against independent quadrature oracles.

mod common;

use common::{fourier_oracle, inner_product_oracle};
use framelets::algebra::{rat, rat_int, QSqrt2};
use framelets::dilation::{alpha, l_atom_g_component, OnbConfig, Sign};
use framelets::fiber::{bracket, fiber_vector};
use framelets::signals::{apply_dyadic, bspline, fourier_eval, inner_product};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

#[test]
fn fourier_eval_matches_quadrature_for_splines() {
    // 100 random θ ∈ [−8, 8] per order, tolerance 1e−10
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for order in 1..=4 {
        let b = bspline(order).unwrap();
        for _ in 0..100 {
            let theta: f64 = rng.gen_range(-8.0..8.0);
            let fast = fourier_eval(&b, theta);
            let slow = fourier_oracle(&b, theta, 1e-13);
            assert!(
                (fast - slow).norm() < 1e-10,
                "order {order}, θ = {theta}: {fast} vs {slow}"
            );
        }
    }
}

#[test]
fn fourier_of_box_at_half_matches_oracle() {
    let b1 = bspline(1).unwrap();
    let oracle = fourier_oracle(&b1, 0.5, 1e-13);
    // −(2/π)i from ∫₀¹ e^{−πix} dx
    assert!((oracle - Complex64::new(0.0, -2.0 / PI)).norm() < 1e-11);
    assert!((fourier_eval(&b1, 0.5) - oracle).norm() < 1e-12);
}

#[test]
fn hat_function_is_box_self_convolution() {
    // (χ ∗ χ)(x) = ∫ χ(t) χ(x−t) dt, sampled oracle
    let b1 = bspline(1).unwrap();
    let b2 = bspline(2).unwrap();
    for x in [0.25, 0.5, 1.0, 1.3, 1.9] {
        let shifted = |t: f64| if x - t >= 0.0 && x - t < 1.0 { 1.0 } else { 0.0 };
        let integrand = |t: f64| Complex64::new(b1.eval(t) * shifted(t), 0.0);
        // split at the kinks t = x−1, x so each panel is smooth
        let mut cuts = vec![0.0, 1.0];
        for c in [x - 1.0, x] {
            if c > 0.0 && c < 1.0 {
                cuts.push(c);
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut conv = 0.0;
        for w in cuts.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            if shifted(mid) > 0.0 {
                conv += common::adaptive_simpson(&integrand, w[0], w[1], 1e-13).re;
            }
        }
        assert!((b2.eval(x) - conv).abs() < 1e-10, "x = {x}");
    }
    // peak value 1 at x = 1
    assert_eq!(b2.eval(1.0), 1.0);
}

#[test]
fn hat_norm_matches_quadrature() {
    let b2 = bspline(2).unwrap();
    let oracle = inner_product_oracle(&b2, &b2, 1e-13);
    assert!((oracle - 2.0 / 3.0).abs() < 1e-10);
    assert!((inner_product(&b2, &b2) - oracle).abs() < 1e-10);
}

#[test]
fn box_fiber_entries_match_oracle() {
    let b1 = bspline(1).unwrap();
    let v = fiber_vector(&b1, 0.5, 8).unwrap();
    for k in -8..=8i64 {
        let oracle = fourier_oracle(&b1, 0.5 + k as f64, 1e-13).conj();
        assert!((v.entry(k) - oracle).norm() < 1e-11, "k = {k}");
    }
    assert!((v.entry(0).norm() - 2.0 / PI).abs() < 1e-12);
}

#[test]
fn box_bracket_is_one_with_tail_certificate() {
    let b1 = bspline(1).unwrap();
    for theta in [0.0, 0.125, 0.37, 0.5, 0.93] {
        let b = bracket(&b1, &b1, theta, 10_000).unwrap();
        assert!(
            (b.value.re - 1.0).abs() <= b.tail_bound + 1e-12,
            "θ = {theta}: {} (tail {})",
            b.value.re,
            b.tail_bound
        );
    }
}

#[test]
fn hat_bracket_poisson_and_parseval() {
    // Poisson: [φ̂,φ̂](0) = Σ_k ⟨B₂, T^k B₂⟩ = 2/3 + 2·(1/6) = 1; Parseval
    // identifies ‖B₂‖² = 2/3 with the AVERAGE of the bracket over [0,1)
    let b2 = bspline(2).unwrap();
    let at_zero = bracket(&b2, &b2, 0.0, 2000).unwrap();
    let mut poisson = 0.0;
    for k in -3..=3i64 {
        poisson += inner_product(&b2, &apply_dyadic(&b2, 0, k));
    }
    assert!((poisson - 1.0).abs() < 1e-14);
    assert!((at_zero.value.re - poisson).abs() < 1e-10);
    let n = 256;
    let avg: f64 = (0..n)
        .map(|i| bracket(&b2, &b2, i as f64 / n as f64, 200).unwrap().value.re)
        .sum::<f64>()
        / n as f64;
    assert!((avg - 2.0 / 3.0).abs() < 1e-6, "average {avg}");
}

#[test]
fn alpha_entries_match_quadrature() {
    // α = ⟨L_i^{(n)}, K_{s,j}^{(m)}⟩ against complex Simpson on the
    // interval intersection
    let config = OnbConfig::radius(4);
    let cases = [
        (0i64, 1i64, Sign::Plus, 0i64, 0i32),
        (0, 0, Sign::Plus, 0, 1),
        (2, 1, Sign::Plus, -1, 0),
        (1, 0, Sign::Plus, 2, 2),
        (-1, -2, Sign::Minus, 1, 0),
        (3, 2, Sign::Plus, 3, -1),
        (2, -4, Sign::Minus, -2, -1),
    ];
    for (i, n, s, j, m) in cases {
        let fast = alpha(i, n, s, j, m, &config).unwrap();
        let (lo0, hi0) = match s {
            Sign::Plus => ((2.0f64).powi(-m), (2.0f64).powi(1 - m)),
            Sign::Minus => (-(2.0f64).powi(1 - m), -(2.0f64).powi(-m)),
        };
        let lo = lo0.max(n as f64);
        let hi = hi0.min((n + 1) as f64);
        let slow = if lo < hi {
            // conj(K) = 2^{m/2} e^{−2πi j 2^m x}
            let h = |x: f64| {
                Complex64::from_polar(1.0, 2.0 * PI * i as f64 * (x - n as f64))
                    * (2.0f64).powf(m as f64 / 2.0)
                    * Complex64::from_polar(1.0, -2.0 * PI * j as f64 * (2.0f64).powi(m) * x)
            };
            let rate = (i as f64 - j as f64 * (2.0f64).powi(m)).abs();
            let panels = 8 + (4.0 * rate * (hi - lo)).ceil() as usize;
            common::oscillatory_simpson(&h, lo, hi, 1e-13, panels)
        } else {
            Complex64::new(0.0, 0.0)
        };
        assert!(
            (fast - slow).norm() < 1e-11,
            "α({i},{n},{s:?},{j},{m}): {fast} vs {slow}"
        );
    }
}

#[test]
fn ee2_identity_against_quadrature() {
    // ω ↦ Σ_m ω^m α_{i,n}^{s,j,m} equals the 𝒢-transform component of
    // L_i^{(n)}, i.e. Σ_m ω^m ⟨L_i^{(n)}, K_{s,j}^{(m)}⟩ with the inner
    // products evaluated by quadrature
    let config = OnbConfig::radius(5);
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..8 {
        let i: i64 = rng.gen_range(-3..=3);
        let n: i64 = rng.gen_range(-2..=2);
        let s = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let j: i64 = rng.gen_range(-3..=3);
        let arg: f64 = rng.gen_range(0.0..2.0 * PI);
        let omega = Complex64::from_polar(1.0, arg);
        let lhs = l_atom_g_component(i, n, s, j, omega, &config);
        let mut rhs = Complex64::new(0.0, 0.0);
        for m in -config.scale_radius..=config.scale_radius {
            let (lo0, hi0) = match s {
                Sign::Plus => ((2.0f64).powi(-m), (2.0f64).powi(1 - m)),
                Sign::Minus => (-(2.0f64).powi(1 - m), -(2.0f64).powi(-m)),
            };
            let lo = lo0.max(n as f64);
            let hi = hi0.min((n + 1) as f64);
            if lo >= hi {
                continue;
            }
            let h = |x: f64| {
                Complex64::from_polar(1.0, 2.0 * PI * i as f64 * (x - n as f64))
                    * (2.0f64).powf(m as f64 / 2.0)
                    * Complex64::from_polar(1.0, -2.0 * PI * j as f64 * (2.0f64).powi(m) * x)
            };
            let rate = (i as f64 - j as f64 * (2.0f64).powi(m)).abs();
            let panels = 8 + (4.0 * rate * (hi - lo)).ceil() as usize;
            rhs += omega.powi(m) * common::oscillatory_simpson(&h, lo, hi, 1e-13, panels);
        }
        assert!((lhs - rhs).norm() < 1e-10, "(i,n,s,j) = ({i},{n},{s:?},{j})");
    }
}

#[test]
fn projection_coefficient_matches_brute_force_expansion() {
    // f = χ_[0,1/2): single expansion coefficient ⟨f, φ⟩ = 1/2 against the
    // orthonormal box shifts
    let phi = bspline(1).unwrap();
    let f = framelets::signals::CompactPiecewisePoly::from_pieces(
        vec![rat_int(0), rat(1, 2)],
        vec![framelets::algebra::Poly::one()],
    )
    .unwrap();
    for k in -3..=3i64 {
        let expected = if k == 0 { 0.5 } else { 0.0 };
        let shifted = apply_dyadic(&phi, 0, k);
        assert!((inner_product(&f, &shifted) - expected).abs() < 1e-14);
        let oracle = inner_product_oracle(&f, &shifted, 1e-13);
        assert!((oracle - expected).abs() < 1e-10);
    }
}

#[test]
fn analysis_norm_approaches_parseval_from_below() {
    // Haar ONB: Σ |⟨f, ψ_{j,k}⟩|² ↗ ‖f‖² = 2/3 for f = B₂
    use framelets::frame_engine::{analysis, WaveletSystemSpec};
    use framelets::signals::haar_wavelet;
    let f = bspline(2).unwrap();
    let mut last = 0.0;
    for radius in [2, 4, 6] {
        let spec = WaveletSystemSpec::homogeneous(
            vec![haar_wavelet()],
            radius,
            (rat_int(-8), rat_int(8)),
        );
        let c = analysis(&f, &spec).unwrap();
        assert!(c.norm_sq >= last - 1e-15);
        assert!(c.norm_sq <= 2.0 / 3.0 + 1e-12);
        last = c.norm_sq;
    }
    assert!(last > 0.6, "J = 6 capture {last}");
}

#[test]
fn quadrature_validates_dyadic_weights() {
    // weight 2^{j/2} keeps norms: check against the quadrature oracle once
    let b3 = bspline(3).unwrap();
    let g = apply_dyadic(&b3, -2, 5);
    let oracle = inner_product_oracle(&g, &g, 1e-13);
    assert!((oracle - b3.norm_sq()).abs() < 1e-9);
}

#[test]
fn scaled_haar_atom_keeps_unit_weight_relation() {
    let w = framelets::signals::DyadicAtom {
        base: framelets::signals::haar_wavelet(),
        scale: 1,
        shift: 2,
        weight: 0.75,
    };
    let f = w.realize();
    let oracle = inner_product_oracle(&f, &f, 1e-13).sqrt();
    assert!((oracle - w.norm()).abs() < 1e-9);
    let _ = QSqrt2::one();
}
