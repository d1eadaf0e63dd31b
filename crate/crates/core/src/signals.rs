//! Compactly supported piecewise-polynomial functions on ℝ.
//!
//! These carry the generators φ, ψ of the wavelet systems. Breakpoints and
//! coefficients are exact (ℚ[√2]), so supports, inner products, L² norms and
//! the dyadic dilation/translation actions are computed without rounding.
//! The Fourier transform f̂(θ) = ∫ f(x) e^{−2πixθ} dx is evaluated in closed
//! form per piece (double precision), with a series branch near the
//! removable singularity at θ = 0.

use crate::algebra::{rat_int, rat_pow2, rat_to_f64, Poly, QSqrt2, Rat};
use crate::error::{Error, Result};
use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::{PI, SQRT_2};

/// A compactly supported piecewise polynomial. `pieces[i]` is the value on
/// `[breakpoints[i], breakpoints[i+1])`; the function is 0 elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactPiecewisePoly {
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
}

impl CompactPiecewisePoly {
    /// The zero function (empty support).
    pub fn zero() -> Self {
        CompactPiecewisePoly { breakpoints: Vec::new(), pieces: Vec::new() }
    }

    /// Build from raw data. Breakpoints must be strictly increasing and
    /// `pieces.len() + 1 == breakpoints.len()`.
    pub fn from_pieces(breakpoints: Vec<Rat>, pieces: Vec<Poly>) -> Result<Self> {
        if breakpoints.is_empty() && pieces.is_empty() {
            return Ok(Self::zero());
        }
        if breakpoints.len() != pieces.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "breakpoint/piece count mismatch: {} vs {}",
                breakpoints.len(),
                pieces.len()
            )));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidArgument(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        let mut f = CompactPiecewisePoly { breakpoints, pieces };
        f.normalize();
        Ok(f)
    }

    /// Trim zero pieces at the ends and merge adjacent intervals carrying the
    /// same polynomial.
    fn normalize(&mut self) {
        while self.pieces.last().map_or(false, |p| p.is_zero()) {
            self.pieces.pop();
            self.breakpoints.pop();
        }
        while self.pieces.first().map_or(false, |p| p.is_zero()) {
            self.pieces.remove(0);
            self.breakpoints.remove(0);
        }
        if self.pieces.is_empty() {
            self.breakpoints.clear();
            return;
        }
        let mut i = 0;
        while i + 1 < self.pieces.len() {
            if self.pieces[i] == self.pieces[i + 1] {
                self.pieces.remove(i + 1);
                self.breakpoints.remove(i + 1);
            } else {
                i += 1;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Support interval [a, b], or `None` for the zero function.
    pub fn support(&self) -> Option<(Rat, Rat)> {
        if self.is_zero() {
            None
        } else {
            Some((
                self.breakpoints[0].clone(),
                self.breakpoints[self.breakpoints.len() - 1].clone(),
            ))
        }
    }

    pub fn support_f64(&self) -> Option<(f64, f64)> {
        self.support().map(|(a, b)| (rat_to_f64(&a), rat_to_f64(&b)))
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    fn piece_index(&self, x: &Rat) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let n = self.breakpoints.len();
        if x < &self.breakpoints[0] || x >= &self.breakpoints[n - 1] {
            return None;
        }
        let idx = self.breakpoints.partition_point(|b| b <= x);
        Some(idx - 1)
    }

    /// Exact evaluation (right-continuous at breakpoints, 0 outside support).
    pub fn eval_exact(&self, x: &Rat) -> QSqrt2 {
        match self.piece_index(x) {
            Some(i) => self.pieces[i].eval(x),
            None => QSqrt2::zero(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let n = self.breakpoints.len();
        let lo = rat_to_f64(&self.breakpoints[0]);
        let hi = rat_to_f64(&self.breakpoints[n - 1]);
        if x < lo || x >= hi {
            return 0.0;
        }
        // f64 comparison against f64 images of the breakpoints is fine for
        // evaluation purposes; exact logic should use eval_exact.
        let mut i = self.breakpoints.partition_point(|b| rat_to_f64(b) <= x);
        if i == 0 {
            i = 1;
        }
        self.pieces[(i - 1).min(self.pieces.len() - 1)].eval_f64(x)
    }

    /// Pointwise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        merge_op(self, rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        merge_op(self, rhs, |a, b| a.sub(b))
    }

    /// Scalar multiple with an exact ℚ[√2] factor.
    pub fn scale(&self, c: &QSqrt2) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CompactPiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// f(x − t) for rational t.
    pub fn translate(&self, t: &Rat) -> Self {
        CompactPiecewisePoly {
            breakpoints: self.breakpoints.iter().map(|b| b + t).collect(),
            pieces: self
                .pieces
                .iter()
                .map(|p| p.compose_affine(&rat_int(1), &(-t.clone())))
                .collect(),
        }
    }

    /// 2^{j/2} f(2^j x − t) for integer j and rational t. This is D^j followed
    /// by a (possibly fractional) translation; `apply_dyadic` is the integer
    /// case T^k.
    pub fn dilate_translate(&self, j: i32, t: &Rat) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let two_j = rat_pow2(j);
        let inv = rat_pow2(-j);
        let w = QSqrt2::sqrt2_pow(j);
        let breakpoints: Vec<Rat> = self
            .breakpoints
            .iter()
            .map(|b| (b + t) * &inv)
            .collect();
        let pieces: Vec<Poly> = self
            .pieces
            .iter()
            .map(|p| p.compose_affine(&two_j, &(-t.clone())).scale(&w))
            .collect();
        CompactPiecewisePoly { breakpoints, pieces }
    }

    /// Exact derivative (a.e.; jump locations are recorded separately).
    pub fn derivative(&self) -> Self {
        let mut f = CompactPiecewisePoly {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.derivative()).collect(),
        };
        f.normalize();
        f
    }

    /// Jump discontinuities (location, jump height) including the support
    /// endpoints, exact.
    pub fn jumps(&self) -> Vec<(Rat, QSqrt2)> {
        let mut out = Vec::new();
        if self.is_zero() {
            return out;
        }
        let n = self.breakpoints.len();
        for i in 0..n {
            let b = &self.breakpoints[i];
            let left = if i == 0 {
                QSqrt2::zero()
            } else {
                self.pieces[i - 1].eval(b)
            };
            let right = if i == n - 1 {
                QSqrt2::zero()
            } else {
                self.pieces[i].eval(b)
            };
            let jump = &right - &left;
            if !jump.is_zero() {
                out.push((b.clone(), jump));
            }
        }
        out
    }

    /// Exact L² inner product ⟨f, g⟩ = ∫ f g (real-valued functions).
    /// Only the breakpoints inside the support overlap are visited.
    pub fn inner_product_exact(&self, rhs: &Self) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        if self.is_zero() || rhs.is_zero() {
            return acc;
        }
        let (a0, b0) = self.support().unwrap();
        let (a1, b1) = rhs.support().unwrap();
        if b0 <= a1 || b1 <= a0 {
            return acc;
        }
        let lo = if a0 > a1 { a0 } else { a1 };
        let hi = if b0 < b1 { b0 } else { b1 };
        let window = |bps: &[Rat]| -> (usize, usize) {
            (
                bps.partition_point(|b| *b < lo),
                bps.partition_point(|b| *b <= hi),
            )
        };
        let (s0, e0) = window(&self.breakpoints);
        let (s1, e1) = window(&rhs.breakpoints);
        let mut cuts: Vec<&Rat> = Vec::with_capacity(e0 - s0 + e1 - s1 + 2);
        cuts.push(&lo);
        cuts.extend(self.breakpoints[s0..e0].iter());
        cuts.extend(rhs.breakpoints[s1..e1].iter());
        cuts.push(&hi);
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            let (u, v) = (w[0], w[1]);
            let pi = match self.piece_index(u) {
                Some(i) => &self.pieces[i],
                None => continue,
            };
            let qi = match rhs.piece_index(u) {
                Some(i) => &rhs.pieces[i],
                None => continue,
            };
            acc += &pi.mul(qi).integrate(u, v);
        }
        acc
    }

    /// ⟨f, g⟩ by closed-form piece integration in double precision: the same
    /// cut structure as the exact route, with f64 coefficient images. Exactly
    /// linear in either operand's coefficients, so power-of-two rescalings
    /// scale the result bitwise.
    pub fn inner_product_f64(&self, rhs: &Self) -> f64 {
        if self.is_zero() || rhs.is_zero() {
            return 0.0;
        }
        let (a0, b0) = self.support().unwrap();
        let (a1, b1) = rhs.support().unwrap();
        if b0 <= a1 || b1 <= a0 {
            return 0.0;
        }
        let lo = if a0 > a1 { a0 } else { a1 };
        let hi = if b0 < b1 { b0 } else { b1 };
        let window = |bps: &[Rat]| -> (usize, usize) {
            (
                bps.partition_point(|b| *b < lo),
                bps.partition_point(|b| *b <= hi),
            )
        };
        let (s0, e0) = window(&self.breakpoints);
        let (s1, e1) = window(&rhs.breakpoints);
        let mut cuts: Vec<&Rat> = Vec::with_capacity(e0 - s0 + e1 - s1 + 2);
        cuts.push(&lo);
        cuts.extend(self.breakpoints[s0..e0].iter());
        cuts.extend(rhs.breakpoints[s1..e1].iter());
        cuts.push(&hi);
        cuts.sort();
        cuts.dedup();
        let mut acc = 0.0f64;
        let mut prod = [0.0f64; 16];
        for w in cuts.windows(2) {
            let (u, v) = (w[0], w[1]);
            let pi = match self.piece_index(u) {
                Some(i) => &self.pieces[i],
                None => continue,
            };
            let qi = match rhs.piece_index(u) {
                Some(i) => &rhs.pieces[i],
                None => continue,
            };
            let pc = pi.coeffs();
            let qc = qi.coeffs();
            if pc.is_empty() || qc.is_empty() {
                continue;
            }
            let terms = pc.len() + qc.len() - 1;
            debug_assert!(terms < 16);
            prod[..terms].fill(0.0);
            for (i, a) in pc.iter().enumerate() {
                let av = a.to_f64();
                if av == 0.0 {
                    continue;
                }
                for (j, b) in qc.iter().enumerate() {
                    prod[i + j] += av * b.to_f64();
                }
            }
            let uf = rat_to_f64(u);
            let vf = rat_to_f64(v);
            let mut upow = uf; // u^{i+1}
            let mut vpow = vf; // v^{i+1}
            for (i, c) in prod[..terms].iter().enumerate() {
                acc += c * (vpow - upow) / (i as f64 + 1.0);
                upow *= uf;
                vpow *= vf;
            }
        }
        acc
    }

    /// Exact squared L² norm.
    pub fn norm_sq_exact(&self) -> QSqrt2 {
        self.inner_product_exact(self)
    }

    pub fn norm_sq(&self) -> f64 {
        self.norm_sq_exact().to_f64()
    }

    /// ∫_{[lo,hi]} f² exactly, converted to f64.
    pub fn norm_sq_between(&self, lo: &Rat, hi: &Rat) -> f64 {
        let mut acc = QSqrt2::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let a = if &self.breakpoints[i] > lo { self.breakpoints[i].clone() } else { lo.clone() };
            let b = if &self.breakpoints[i + 1] < hi { self.breakpoints[i + 1].clone() } else { hi.clone() };
            if a < b {
                acc += &p.mul(p).integrate(&a, &b);
            }
        }
        acc.to_f64()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// ∫ f(x) dx, exact.
    pub fn integral_exact(&self) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            acc += &p.integrate(&self.breakpoints[i], &self.breakpoints[i + 1]);
        }
        acc
    }

    /// The two rational component integrals (∫P₀ e, ∫P₁ e) of
    /// ∫_{[lo,hi] ∩ supp} f(x) e^{−2πi·freq·x} dx, where f = P₀ + √2·P₁.
    /// Callers that need the plain value combine them; callers that track
    /// exact √2 parity keep them separate.
    pub fn fourier_on_interval_parts(
        &self,
        freq: f64,
        lo: &Rat,
        hi: &Rat,
    ) -> (Complex64, Complex64) {
        let mut acc0 = Complex64::zero();
        let mut acc1 = Complex64::zero();
        if self.is_zero() || lo >= hi {
            return (acc0, acc1);
        }
        for (i, p) in self.pieces.iter().enumerate() {
            let a = if &self.breakpoints[i] > lo { self.breakpoints[i].clone() } else { lo.clone() };
            let b = if &self.breakpoints[i + 1] < hi { self.breakpoints[i + 1].clone() } else { hi.clone() };
            if a >= b {
                continue;
            }
            let (i0, i1) = fourier_piece(p, &a, &b, freq);
            acc0 += i0;
            acc1 += i1;
        }
        (acc0, acc1)
    }

    pub fn fourier_on_interval(&self, freq: f64, lo: &Rat, hi: &Rat) -> Complex64 {
        let (i0, i1) = self.fourier_on_interval_parts(freq, lo, hi);
        i0 + SQRT_2 * i1
    }
}

/// Pointwise binary operation over merged breakpoint grids.
fn merge_op<F>(f: &CompactPiecewisePoly, g: &CompactPiecewisePoly, op: F) -> CompactPiecewisePoly
where
    F: Fn(&Poly, &Poly) -> Poly,
{
    if f.is_zero() && g.is_zero() {
        return CompactPiecewisePoly::zero();
    }
    let mut cuts: Vec<Rat> = f
        .breakpoints
        .iter()
        .chain(g.breakpoints.iter())
        .cloned()
        .collect();
    cuts.sort();
    cuts.dedup();
    let zero = Poly::zero();
    let mut pieces = Vec::with_capacity(cuts.len().saturating_sub(1));
    for w in cuts.windows(2) {
        let pf = f.piece_index(&w[0]).map(|i| &f.pieces[i]).unwrap_or(&zero);
        let pg = g.piece_index(&w[0]).map(|i| &g.pieces[i]).unwrap_or(&zero);
        pieces.push(op(pf, pg));
    }
    let mut out = CompactPiecewisePoly { breakpoints: cuts, pieces };
    out.normalize();
    out
}

/// Cardinal B-spline of the given order, supported on [0, order].
/// Order 1 is the characteristic function of [0, 1); each further order
/// convolves with that box.
pub fn bspline(order: u32) -> Result<CompactPiecewisePoly> {
    if order == 0 {
        return Err(Error::InvalidArgument("B-spline order must be ≥ 1".into()));
    }
    let mut f = CompactPiecewisePoly::from_pieces(
        vec![rat_int(0), rat_int(1)],
        vec![Poly::one()],
    )?;
    for _ in 1..order {
        f = convolve_unit_box(&f);
    }
    Ok(f)
}

/// (f * χ_[0,1))(x) = ∫_{x−1}^x f(t) dt, exact.
fn convolve_unit_box(f: &CompactPiecewisePoly) -> CompactPiecewisePoly {
    if f.is_zero() {
        return CompactPiecewisePoly::zero();
    }
    // cumulative antiderivative G with G(x) = 0 left of the support
    let n = f.pieces.len();
    let mut antis = Vec::with_capacity(n);
    let mut cums = Vec::with_capacity(n + 1);
    let mut total = QSqrt2::zero();
    cums.push(QSqrt2::zero());
    for i in 0..n {
        let anti = f.pieces[i].antiderivative();
        total += &(&anti.eval(&f.breakpoints[i + 1]) - &anti.eval(&f.breakpoints[i]));
        antis.push(anti);
        cums.push(total.clone());
    }
    // G restricted to [b_i, b_{i+1}): cums[i] + anti_i(x) - anti_i(b_i)
    let g_piece = |i: usize| -> Poly {
        let base = &cums[i] - &antis[i].eval(&f.breakpoints[i]);
        antis[i].add(&Poly::constant(base))
    };
    // result breakpoints: union of b and b+1
    let mut cuts: Vec<Rat> = f.breakpoints.clone();
    for b in &f.breakpoints {
        cuts.push(b + &rat_int(1));
    }
    cuts.sort();
    cuts.dedup();
    let lookup_g = |x: &Rat| -> Poly {
        // piecewise form of G at point x (as polynomial valid on the local interval)
        if x < &f.breakpoints[0] {
            Poly::zero()
        } else if x >= &f.breakpoints[n] {
            Poly::constant(total.clone())
        } else {
            let idx = f.breakpoints.partition_point(|b| b <= x) - 1;
            g_piece(idx)
        }
    };
    let one = rat_int(1);
    let mut pieces = Vec::with_capacity(cuts.len() - 1);
    for w in cuts.windows(2) {
        let x = &w[0];
        let ga = lookup_g(x);
        let shifted = &x.clone() - &one;
        let gb = lookup_g(&shifted).compose_affine(&rat_int(1), &(-one.clone()));
        pieces.push(ga.sub(&gb));
    }
    let mut out = CompactPiecewisePoly { breakpoints: cuts, pieces };
    out.normalize();
    out
}

/// Dyadic action: 2^{j/2} f(2^j x − k), the operator D^j T^k. Unitary, so the
/// L² norm is preserved exactly.
pub fn apply_dyadic(f: &CompactPiecewisePoly, j: i32, k: i64) -> CompactPiecewisePoly {
    f.dilate_translate(j, &rat_int(k))
}

/// ⟨f, g⟩ for real-valued piecewise polynomials, exact up to the final
/// conversion to f64.
pub fn inner_product(f: &CompactPiecewisePoly, g: &CompactPiecewisePoly) -> f64 {
    f.inner_product_exact(g).to_f64()
}

/// f̂(θ) = ∫ f(x) e^{−2πixθ} dx via per-piece closed forms.
pub fn fourier_eval(f: &CompactPiecewisePoly, theta: f64) -> Complex64 {
    if f.is_zero() {
        return Complex64::zero();
    }
    let (a, b) = f.support().unwrap();
    f.fourier_on_interval(theta, &a, &b)
}

/// ∫_a^b p(x) e^{−2πiθx} dx split into the two ℚ-parts of p = P₀ + √2 P₁.
fn fourier_piece(p: &Poly, a: &Rat, b: &Rat, theta: f64) -> (Complex64, Complex64) {
    // recenter on the midpoint to keep the series branch well-conditioned
    let c = (a + b) / rat_int(2);
    let q = p.compose_affine(&rat_int(1), &c);
    let h = rat_to_f64(&(&(b - a) / rat_int(2)));
    let cf = rat_to_f64(&c);
    let s = Complex64::new(0.0, -2.0 * PI * theta);
    let deg = q.degree();
    let moments = exp_moments(s, h, deg);
    let phase = Complex64::from_polar(1.0, -2.0 * PI * theta * cf);
    let mut i0 = Complex64::zero();
    let mut i1 = Complex64::zero();
    for (j, coef) in q.coeffs().iter().enumerate() {
        i0 += rat_to_f64(&coef.a) * moments[j];
        i1 += rat_to_f64(&coef.b) * moments[j];
    }
    (phase * i0, phase * i1)
}

/// I_j = ∫_{−h}^{h} t^j e^{st} dt for j = 0..=deg.
fn exp_moments(s: Complex64, h: f64, deg: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); deg + 1];
    let sh = s.norm() * h;
    if sh <= 4.0 {
        // series: Σ_m s^m/m! · ∫ t^{j+m}; odd total powers vanish
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::zero();
            let mut s_pow = Complex64::new(1.0, 0.0); // s^m / m!
            let mut h_pow = h.powi(j as i32 + 1); // h^{j+m+1}
            let mut max_mag = 0.0f64;
            for m in 0..200 {
                if (j + m) % 2 == 0 {
                    let term = s_pow * (2.0 * h_pow / (j + m + 1) as f64);
                    acc += term;
                    max_mag = max_mag.max(term.norm());
                    if term.norm() < 1e-22 * (max_mag + 1e-300) && m > 2 {
                        break;
                    }
                }
                s_pow *= s / (m + 1) as f64;
                h_pow *= h;
            }
            *slot = acc;
        }
    } else {
        let ep = (s * h).exp();
        let em = (-s * h).exp();
        out[0] = (ep - em) / s;
        let mut hp = 1.0; // h^j
        for j in 1..=deg {
            hp *= h;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out[j] = (hp * ep - sign * hp * em) / s - (j as f64 / s) * out[j - 1];
        }
    }
    out
}

/// Certified Fourier decay: returns (r, C) with |f̂(θ)| ≤ C / |θ|^r for all
/// θ ≠ 0, obtained by integrating by parts r times. r−1 is the order of the
/// first derivative of f carrying a jump.
pub fn spectral_decay(f: &CompactPiecewisePoly) -> (u32, f64) {
    if f.is_zero() {
        return (1, 0.0);
    }
    let mut g = f.clone();
    let mut r = 0u32;
    loop {
        r += 1;
        let jumps = g.jumps();
        let deriv = g.derivative();
        if !jumps.is_empty() || deriv.is_zero() {
            let jump_sum: f64 = jumps.iter().map(|(_, j)| j.abs().to_f64()).sum();
            let var = l1_upper_bound(&deriv);
            let c = (jump_sum + var) / (2.0 * PI).powi(r as i32);
            return (r, c);
        }
        g = deriv;
    }
}

/// Upper bound for ∫ |f| via per-piece sup bounds.
fn l1_upper_bound(f: &CompactPiecewisePoly) -> f64 {
    let mut acc = 0.0;
    for (i, p) in f.pieces().iter().enumerate() {
        let a = rat_to_f64(&f.breakpoints()[i]);
        let b = rat_to_f64(&f.breakpoints()[i + 1]);
        let m = a.abs().max(b.abs());
        let sup: f64 = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.to_f64().abs() * m.powi(k as i32))
            .sum();
        acc += (b - a) * sup;
    }
    acc
}

/// Certified bound for Σ_{|k| > K} |f̂(θ+k)|² uniform over θ ∈ [0,1).
pub fn spectral_tail_sq(f: &CompactPiecewisePoly, trunc: usize) -> f64 {
    if f.is_zero() || trunc == 0 {
        return 0.0;
    }
    let (r, c) = spectral_decay(f);
    let k = trunc as f64;
    let p = 2 * r as i32;
    2.0 * c * c * (k.powi(-p) + k.powi(1 - p) / (p as f64 - 1.0))
}

/// A weighted dyadic translate-dilate of a base function:
/// `weight · D^j T^k base`.
#[derive(Clone, Debug)]
pub struct DyadicAtom {
    pub base: CompactPiecewisePoly,
    pub scale: i32,
    pub shift: i64,
    pub weight: f64,
}

impl DyadicAtom {
    pub fn realize(&self) -> CompactPiecewisePoly {
        let w = QSqrt2::from_rat(crate::algebra::rat_from_f64(self.weight));
        apply_dyadic(&self.base, self.scale, self.shift).scale(&w)
    }

    /// ‖atom‖ = |weight| · ‖base‖ by unitarity of D and T.
    pub fn norm(&self) -> f64 {
        self.weight.abs() * self.base.norm()
    }
}

/// The Haar wavelet χ_[0,1/2) − χ_[1/2,1).
pub fn haar_wavelet() -> CompactPiecewisePoly {
    CompactPiecewisePoly::from_pieces(
        vec![rat_int(0), crate::algebra::rat(1, 2), rat_int(1)],
        vec![Poly::one(), Poly::constant(QSqrt2::from_int(-1))],
    )
    .expect("static data")
}
