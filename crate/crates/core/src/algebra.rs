//! Exact scalar and polynomial arithmetic used by the signal layer.
//!
//! Coefficients live in the ring ℚ[√2] = { a + b·√2 : a, b ∈ ℚ }, which is
//! closed under the dyadic dilation weight 2^{j/2} for every integer j. This
//! keeps norms, inner products and two-scale relations exact; conversion to
//! `f64` happens once, at the edge of a computation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::SQRT_2;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Rat = BigRational;

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as an exact rational.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// 2^e as an exact rational (e may be negative).
pub fn rat_pow2(e: i32) -> Rat {
    let two = BigInt::from(2);
    if e >= 0 {
        Rat::from_integer(two.pow(e as u32))
    } else {
        Rat::new(BigInt::one(), two.pow((-e) as u32))
    }
}

/// Exact conversion of a finite `f64` into a rational.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational in f64 range")
}

/// Element of ℚ[√2]: value = `a + b·√2`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSqrt2 {
    pub a: Rat,
    pub b: Rat,
}

impl QSqrt2 {
    pub fn zero() -> Self {
        QSqrt2 { a: Rat::zero(), b: Rat::zero() }
    }

    pub fn one() -> Self {
        QSqrt2 { a: Rat::one(), b: Rat::zero() }
    }

    pub fn from_rat(a: Rat) -> Self {
        QSqrt2 { a, b: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// 2^{e/2} represented exactly: even e is a power of two, odd e carries √2.
    pub fn sqrt2_pow(e: i32) -> Self {
        if e.rem_euclid(2) == 0 {
            QSqrt2 { a: rat_pow2(e / 2), b: Rat::zero() }
        } else {
            // e = 2t + 1
            let t = (e - 1) / 2;
            QSqrt2 { a: Rat::zero(), b: rat_pow2(t) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * SQRT_2
    }

    pub fn abs(&self) -> QSqrt2 {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Sign test without floating point: a + b√2 < 0 iff ...
    pub fn is_negative(&self) -> bool {
        // compare a against -b√2 by comparing squares with sign bookkeeping
        if self.b.is_zero() {
            return self.a.is_negative();
        }
        if self.a.is_zero() {
            return self.b.is_negative();
        }
        let a_neg = self.a.is_negative();
        let b_neg = self.b.is_negative();
        if a_neg && b_neg {
            return true;
        }
        if !a_neg && !b_neg {
            return false;
        }
        // mixed signs: a + b√2 < 0  ⟺  a² sign-adjusted vs 2b²
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * rat_int(2);
        if a_neg {
            // a < 0 < b: negative iff a² > 2b²
            a2 > b2
        } else {
            // b < 0 < a: negative iff a² < 2b²
            a2 < b2
        }
    }

    pub fn scale2(&self, e: i32) -> QSqrt2 {
        let f = rat_pow2(e);
        QSqrt2 { a: &self.a * &f, b: &self.b * &f }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}·√2", self.a, self.b)
        }
    }
}

impl Add for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        // (a + b√2)(c + d√2) = ac + 2bd + (ad + bc)√2
        QSqrt2 {
            a: &self.a * &rhs.a + rat_int(2) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2 { a: -self.a, b: -self.b }
    }
}

impl AddAssign<&QSqrt2> for QSqrt2 {
    fn add_assign(&mut self, rhs: &QSqrt2) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

/// Polynomial with ℚ[√2] coefficients in ascending powers.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly {
    coeffs: Vec<QSqrt2>,
}

impl Poly {
    pub fn new(coeffs: Vec<QSqrt2>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: QSqrt2) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(QSqrt2::one())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[QSqrt2] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> QSqrt2 {
        let mut acc = QSqrt2::zero();
        for c in self.coeffs.iter().rev() {
            acc = &QSqrt2 { a: &acc.a * x, b: &acc.b * x } + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn scale(&self, s: &QSqrt2) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(QSqrt2::zero);
            if let Some(d) = rhs.coeffs.get(i) {
                c += d;
            }
            out.push(c);
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.scale(&QSqrt2::from_int(-1)))
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![QSqrt2::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// p(a·x + b) for rational a, b.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        // Horner in the substituted variable: result = Σ c_i (a x + b)^i
        let mut result = Poly::zero();
        let lin = Poly::new(vec![
            QSqrt2::from_rat(b.clone()),
            QSqrt2::from_rat(a.clone()),
        ]);
        for c in self.coeffs.iter().rev() {
            result = result.mul(&lin);
            result = result.add(&Poly::constant(c.clone()));
        }
        result
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| {
                    let k = QSqrt2::from_int(i as i64);
                    c * &k
                })
                .collect(),
        )
    }

    pub fn antiderivative(&self) -> Poly {
        let mut out = vec![QSqrt2::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let inv = QSqrt2::from_rat(rat(1, (i + 1) as i64));
            out.push(c * &inv);
        }
        Poly::new(out)
    }

    /// ∫_lo^hi p(x) dx, exact.
    pub fn integrate(&self, lo: &Rat, hi: &Rat) -> QSqrt2 {
        let anti = self.antiderivative();
        &anti.eval(hi) - &anti.eval(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_arithmetic() {
        let r2 = QSqrt2::sqrt2_pow(1);
        let two = &r2 * &r2;
        assert_eq!(two, QSqrt2::from_int(2));
        assert!((r2.to_f64() - SQRT_2).abs() < 1e-15);
        assert_eq!(QSqrt2::sqrt2_pow(-2), QSqrt2::from_rat(rat(1, 2)));
        assert_eq!(
            &QSqrt2::sqrt2_pow(-1) * &QSqrt2::sqrt2_pow(3),
            QSqrt2::from_int(2)
        );
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 3 - 2√2 > 0 since 9 > 8
        let x = QSqrt2 { a: rat_int(3), b: rat_int(-2) };
        assert!(!x.is_negative());
        // 2 - 2√2 < 0
        let y = QSqrt2 { a: rat_int(2), b: rat_int(-2) };
        assert!(y.is_negative());
    }

    #[test]
    fn poly_compose_and_integrate() {
        // p(x) = x², p(2x+1) = 4x² + 4x + 1
        let p = Poly::new(vec![
            QSqrt2::zero(),
            QSqrt2::zero(),
            QSqrt2::one(),
        ]);
        let q = p.compose_affine(&rat_int(2), &rat_int(1));
        assert_eq!(
            q.coeffs(),
            &[
                QSqrt2::from_int(1),
                QSqrt2::from_int(4),
                QSqrt2::from_int(4)
            ]
        );
        // ∫₀¹ x² = 1/3
        assert_eq!(p.integrate(&rat_int(0), &rat_int(1)), QSqrt2::from_rat(rat(1, 3)));
    }
}
