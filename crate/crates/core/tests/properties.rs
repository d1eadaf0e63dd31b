//! Property tests for the algebraic invariants of the signal and fiber
//! layers: unitarity of the dyadic action, Fourier covariance, bracket
//! symmetry and the conjugation bookkeeping of the periodized transform.

use framelets::algebra::{rat, rat_int, Poly, QSqrt2};
use framelets::fiber::{bracket, fiber_vector};
use framelets::signals::{apply_dyadic, bspline, fourier_eval, CompactPiecewisePoly};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Random spline: Σ c_k B_order(2^s x − k) with small integer data.
fn random_spline() -> impl Strategy<Value = CompactPiecewisePoly> {
    (
        1u32..=3,
        0i32..=2,
        prop::collection::vec((-8i64..=8, -4i64..=4), 1..5),
    )
        .prop_map(|(order, step, terms)| {
            let base = bspline(order).unwrap();
            let mut acc = CompactPiecewisePoly::zero();
            for (num, shift) in terms {
                if num == 0 {
                    continue;
                }
                let c = QSqrt2::from_rat(rat(num, 8));
                acc = acc.add(&base.dilate_translate(step, &rat_int(shift)).scale(&c));
            }
            acc
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dyadic_action_preserves_norm(f in random_spline(), j in -3i32..=3, k in -6i64..=6) {
        let g = apply_dyadic(&f, j, k);
        prop_assert_eq!(g.norm_sq_exact(), f.norm_sq_exact());
    }

    #[test]
    fn translation_modulates_fourier(f in random_spline(), k in -5i64..=5, t in -2.0f64..2.0) {
        prop_assume!(!f.is_zero());
        let g = apply_dyadic(&f, 0, k);
        let lhs = fourier_eval(&g, t);
        let rhs = Complex64::from_polar(1.0, -2.0 * PI * k as f64 * t) * fourier_eval(&f, t);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn dilation_rescales_fourier(f in random_spline(), t in -2.0f64..2.0) {
        prop_assume!(!f.is_zero());
        let g = apply_dyadic(&f, 1, 0);
        let lhs = fourier_eval(&g, t);
        let rhs = fourier_eval(&f, t / 2.0) / std::f64::consts::SQRT_2;
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn bracket_is_conjugate_symmetric(f in random_spline(), g in random_spline(), t in 0.0f64..1.0) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = bracket(&f, &g, t, 24).unwrap().value;
        let gf = bracket(&g, &f, t, 24).unwrap().value;
        prop_assert!((fg - gf.conj()).norm() < 1e-11);
    }

    #[test]
    fn bracket_equals_fiber_inner_product(f in random_spline(), g in random_spline(), t in 0.0f64..1.0) {
        // [f̂, ĝ](θ) = ⟨ĝ_*(ω), f̂_*(ω)⟩ after the conjugation bookkeeping
        prop_assume!(!f.is_zero() && !g.is_zero());
        let br = bracket(&f, &g, t, 16).unwrap().value;
        let vf = fiber_vector(&f, t, 16).unwrap();
        let vg = fiber_vector(&g, t, 16).unwrap();
        prop_assert!((br - vg.inner(&vf)).norm() < 1e-11);
    }

    #[test]
    fn self_bracket_is_real_nonnegative(f in random_spline(), t in 0.0f64..1.0) {
        let b = bracket(&f, &f, t, 24).unwrap();
        prop_assert!(b.value.im.abs() < 1e-12);
        prop_assert!(b.value.re >= -b.tail_bound - 1e-12);
    }

    #[test]
    fn fiber_translation_intertwining(f in random_spline(), t in 0.0f64..1.0) {
        // ℱ*(Tf)(ω) = ω · ℱ*f(ω) entrywise
        prop_assume!(!f.is_zero());
        let shifted = apply_dyadic(&f, 0, 1);
        let vf = fiber_vector(&f, t, 10).unwrap();
        let vs = fiber_vector(&shifted, t, 10).unwrap();
        let omega = Complex64::from_polar(1.0, 2.0 * PI * t);
        for k in -10..=10i64 {
            prop_assert!((vs.entry(k) - omega * vf.entry(k)).norm() < 1e-11);
        }
    }

    #[test]
    fn addition_is_pointwise(f in random_spline(), g in random_spline(), x in -8.0f64..8.0) {
        let sum = f.add(&g);
        prop_assert!((sum.eval(x) - (f.eval(x) + g.eval(x))).abs() < 1e-12);
    }

    #[test]
    fn frame_operator_is_positive_and_symmetric(f in random_spline(), g in random_spline()) {
        use framelets::frame_engine::{frame_apply, WaveletSystemSpec};
        use framelets::signals::haar_wavelet;
        let spec = WaveletSystemSpec::homogeneous(
            vec![haar_wavelet()],
            3,
            (rat_int(-40), rat_int(40)),
        );
        let sf = frame_apply(&f, &spec).unwrap();
        let sg = frame_apply(&g, &spec).unwrap();
        prop_assert!(f.inner_product_exact(&sf).to_f64() >= -1e-12);
        let a = sf.inner_product_exact(&g).to_f64();
        let b = sg.inner_product_exact(&f).to_f64();
        prop_assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn piecewise_constructor_rejects_bad_data() {
    assert!(CompactPiecewisePoly::from_pieces(vec![rat_int(0)], vec![Poly::one()]).is_err());
    assert!(
        CompactPiecewisePoly::from_pieces(vec![rat_int(1), rat_int(0)], vec![Poly::one()])
            .is_err()
    );
}
