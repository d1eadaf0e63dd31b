//! Small dense linear algebra helpers: Hermitian Jacobi eigenvalues,
//! Cholesky, conjugate gradients and power iteration. Matrices are row-major
//! `Vec<Complex64>` / `Vec<f64>` at the modest sizes used here.

use num_complex::Complex64;
use num_traits::Zero;

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// The input is consumed. Thresholds are relative, so the routine is exactly
/// equivariant under scaling the matrix by powers of two.
pub fn hermitian_eigenvalues(a: &mut Vec<Vec<Complex64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let norm: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|v| v.norm_sqr()))
        .sum::<f64>()
        .sqrt();
    if norm == 0.0 {
        return vec![0.0; n];
    }
    let tol = 1e-14 * norm;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq.norm() <= tol / (n as f64) {
                    continue;
                }
                let app = a[p][p].re;
                let aqq = a[q][q].re;
                // unitary 2x2 diagonalization: a[p][q] = |apq| e^{iφ}
                let phase = apq / apq.norm();
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // rotate rows/columns p and q
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * phase.conj() * akq;
                    a[k][q] = s * phase * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * phase * aqk;
                    a[q][k] = s * phase.conj() * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i].re).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}

/// Singular values of a complex matrix via eigenvalues of A^H A.
pub fn singular_values(a: &[Vec<Complex64>]) -> Vec<f64> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut gram = vec![vec![Complex64::zero(); cols]; cols];
    for (i, gi) in gram.iter_mut().enumerate() {
        for j in 0..cols {
            let mut acc = Complex64::zero();
            for row in a {
                acc += row[i].conj() * row[j];
            }
            gi[j] = acc;
        }
    }
    hermitian_eigenvalues(&mut gram)
        .into_iter()
        .map(|e| e.max(0.0).sqrt())
        .collect()
}

/// Cholesky factor L (lower triangular) of a symmetric positive definite
/// matrix; returns None when a pivot is not positive.
pub fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = g.len();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = g[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solve L y = b (forward) for lower-triangular L.
pub fn forward_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = l.len();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    y
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn matvec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub struct IterationOutcome {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest eigenvalue of a symmetric matrix by power iteration with a
/// relative Rayleigh-quotient stopping rule.
pub fn power_iteration(m: &[Vec<f64>], tol: f64, max_iter: usize) -> IterationOutcome {
    let n = m.len();
    if n == 0 {
        return IterationOutcome { value: 0.0, iterations: 0, converged: true };
    }
    // deterministic start vector
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
    let nv = norm(&v);
    for x in v.iter_mut() {
        *x /= nv;
    }
    let mut lambda = 0.0f64;
    for it in 1..=max_iter {
        let mut w = matvec(m, &v);
        let nw = norm(&w);
        if nw == 0.0 {
            return IterationOutcome { value: 0.0, iterations: it, converged: true };
        }
        for x in w.iter_mut() {
            *x /= nw;
        }
        let new_lambda = dot(&w, &matvec(m, &w));
        let done = (new_lambda - lambda).abs() <= tol * new_lambda.abs().max(1e-300);
        lambda = new_lambda;
        v = w;
        if done && it > 2 {
            return IterationOutcome { value: lambda, iterations: it, converged: true };
        }
    }
    IterationOutcome { value: lambda, iterations: max_iter, converged: false }
}

/// Conjugate-gradient solve M x = b for symmetric positive definite M, with
/// a relative residual stopping rule.
pub fn cg_solve(m: &[Vec<f64>], b: &[f64], tol: f64, max_iter: usize) -> (Vec<f64>, bool) {
    let n = b.len();
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut p = r.clone();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        return (x, true);
    }
    let mut rs = dot(&r, &r);
    for _ in 0..max_iter {
        if rs.sqrt() <= tol * b_norm {
            return (x, true);
        }
        let mp = matvec(m, &p);
        let alpha = rs / dot(&p, &mp);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * mp[i];
        }
        let rs_new = dot(&r, &r);
        let beta = rs_new / rs;
        rs = rs_new;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
    }
    (x, rs.sqrt() <= tol * b_norm)
}

/// Smallest eigenvalue of a symmetric positive definite matrix by inverse
/// power iteration (CG solves).
pub fn smallest_eigenvalue(m: &[Vec<f64>], tol: f64, max_iter: usize) -> IterationOutcome {
    let n = m.len();
    if n == 0 {
        return IterationOutcome { value: 0.0, iterations: 0, converged: true };
    }
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 / (1.0 + i as f64)).collect();
    let nv = norm(&v);
    for x in v.iter_mut() {
        *x /= nv;
    }
    let mut lambda = 0.0f64;
    let cg_iter = 10 * n;
    for it in 1..=max_iter {
        let (mut w, ok) = cg_solve(m, &v, 1e-12, cg_iter);
        if !ok {
            return IterationOutcome { value: lambda, iterations: it, converged: false };
        }
        let nw = norm(&w);
        if nw == 0.0 {
            return IterationOutcome { value: 0.0, iterations: it, converged: false };
        }
        for x in w.iter_mut() {
            *x /= nw;
        }
        let new_lambda = dot(&w, &matvec(m, &w));
        let done = (new_lambda - lambda).abs() <= tol * new_lambda.abs().max(1e-300);
        lambda = new_lambda;
        v = w;
        if done && it > 2 {
            return IterationOutcome { value: lambda, iterations: it, converged: true };
        }
    }
    IterationOutcome { value: lambda, iterations: max_iter, converged: false }
}
