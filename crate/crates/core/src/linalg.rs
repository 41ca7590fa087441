//! Floating-point dense linear algebra on complex matrices: norms,
//! one-sided Jacobi SVD, Hermitian eigensolvers and the complex Schur form.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

// std-linked builds provide these methods inherently
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
#[allow(unused_imports)]
use num_traits::Float;

const EPS: f64 = f64::EPSILON;

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `a^H b`.
pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_fro(m: &CMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum absolute column sum.
pub fn norm_1(m: &CMatrix) -> f64 {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| m[(i, j)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Condition estimate `‖V‖₁·‖V⁻¹‖₁`.
pub fn cond_1(v: &CMatrix, v_inv: &CMatrix) -> f64 {
    norm_1(v) * norm_1(v_inv)
}

/// Singular value decomposition `M = U·diag(s)·Vᴴ` (thin in the column
/// dimension: `U` is rows×cols, `V` is cols×cols). Singular values are not
/// sorted; their order matches the columns of `U` and `V`.
pub struct Svd {
    pub u: CMatrix,
    pub s: Vec<f64>,
    pub v: CMatrix,
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(m: &CMatrix) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    // work on columns stored contiguously
    let mut a: Vec<Vec<Complex64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..cols)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); cols];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let mut converged = false;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let alpha: f64 = a[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = a[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g; // e^{i phi}
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let ph = phase.conj();
                rotate_pair(&mut a, p, q, c, s, ph);
                rotate_pair(&mut v, p, q, c, s, ph);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("Jacobi SVD"));
    }
    let s: Vec<f64> = a.iter().map(|col| vec_norm(col)).collect();
    let mut u = CMatrix::zeros(rows, cols);
    for j in 0..cols {
        if s[j] > 0.0 {
            for i in 0..rows {
                u[(i, j)] = a[j][i] / s[j];
            }
        }
    }
    Ok(Svd { u, s, v: CMatrix::from_columns(cols, &v) })
}

// p <- c p - s (ph q),  q <- s p + c (ph q)
fn rotate_pair(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, ph: Complex64) {
    let (lo, hi) = cols.split_at_mut(q);
    let cp = &mut lo[p];
    let cq = &mut hi[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yq = ph * *y;
        let xp = *x;
        *x = xp * c - yq * s;
        *y = xp * s + yq * c;
    }
}

impl Svd {
    pub fn max_singular(&self) -> f64 {
        self.s.iter().cloned().fold(0.0, f64::max)
    }

    /// Numeric rank with singular values above `thresh`.
    pub fn rank(&self, thresh: f64) -> usize {
        self.s.iter().filter(|&&x| x > thresh).count()
    }

    /// Right null-space vectors (singular values at or below `thresh`).
    pub fn nullspace(&self, thresh: f64) -> Vec<Vec<Complex64>> {
        (0..self.s.len()).filter(|&j| self.s[j] <= thresh).map(|j| self.v.column(j)).collect()
    }

    /// Minimum-norm least-squares solution of `M x = b`, dropping singular
    /// values below `rcond·σ_max`.
    pub fn solve_min_norm(&self, b: &[Complex64], rcond: f64) -> Vec<Complex64> {
        let cutoff = rcond * self.max_singular();
        let mut x = vec![Complex64::new(0.0, 0.0); self.v.rows()];
        for j in 0..self.s.len() {
            if self.s[j] <= cutoff || self.s[j] == 0.0 {
                continue;
            }
            let coef = dot(&self.u.column(j), b) / self.s[j];
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += self.v[(i, j)] * coef;
            }
        }
        x
    }
}

/// Eigen-decomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and a unitary matrix of eigenvectors.
pub fn eig_hermitian(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if a.as_slice().iter().all(|z| z.im == 0.0) {
        let n = a.rows();
        let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)].re).collect()).collect();
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n];
        if n > 0 {
            tred2(&mut v, &mut d, &mut e);
            tql2(&mut v, &mut d, &mut e)?;
        }
        let vm = CMatrix::from_fn(n, n, |i, j| Complex64::new(v[i][j], 0.0));
        Ok((d, vm))
    } else {
        jacobi_hermitian(a)
    }
}

// Householder tridiagonalisation of a real symmetric matrix (EISPACK tred2).
fn tred2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for k in 0..i {
            scale += d[k].abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
                v[j][i] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g += v[k][j] * d[k];
                    e[k] += v[k][j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] -= f * e[k] + g * d[k];
                }
                d[j] = v[i - 1][j];
                v[i][j] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[n - 1][i] = v[i][i];
        v[i][i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] -= g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = 0.0;
    }
    v[n - 1][n - 1] = 1.0;
    e[0] = 0.0;
}

// Implicit QL on the tridiagonal form, accumulating into v (EISPACK tql2).
fn tql2(v: &mut [Vec<f64>], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= EPS * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 100 {
                    return Err(Error::NoConvergence("symmetric QL iteration"));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= EPS * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // selection sort ascending, permuting vectors along
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            for row in v.iter_mut() {
                row.swap(i, k);
            }
        }
    }
    Ok(())
}

// Cyclic two-sided Jacobi for complex Hermitian matrices.
fn jacobi_hermitian(a: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let n = a.rows();
    let mut h = a.clone();
    let mut v = CMatrix::identity(n);
    let total = norm_fro(a);
    let mut converged = n <= 1;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += h[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= EPS * total * 0.5 || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let hpq = h[(p, q)];
                let g = hpq.norm();
                if g == 0.0 {
                    continue;
                }
                let w = hpq / g; // e^{i phi}
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                let zeta = (aqq - app) / (2.0 * g);
                let t = if zeta == 0.0 { 1.0 } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let wc = w.conj();
                // columns: H <- H G, G = [[c, s], [-s w̄, c w̄]]
                for i in 0..n {
                    let hp = h[(i, p)];
                    let hq = h[(i, q)];
                    h[(i, p)] = hp * c - hq * wc * s;
                    h[(i, q)] = hp * s + hq * wc * c;
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = vp * c - vq * wc * s;
                    v[(i, q)] = vp * s + vq * wc * c;
                }
                // rows: H <- Gᴴ H
                for j in 0..n {
                    let hp = h[(p, j)];
                    let hq = h[(q, j)];
                    h[(p, j)] = hp * c - hq * w * s;
                    h[(q, j)] = hp * s + hq * w * c;
                }
                h[(p, q)] = Complex64::new(0.0, 0.0);
                h[(q, p)] = Complex64::new(0.0, 0.0);
                h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
                h[(q, q)] = Complex64::new(h[(q, q)].re, 0.0);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence("Hermitian Jacobi"));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| h[(x, x)].re.total_cmp(&h[(y, y)].re));
    let d = order.iter().map(|&k| h[(k, k)].re).collect();
    let vs = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((d, vs))
}

/// Complex Schur form `A = Q·T·Qᴴ` with `T` upper triangular.
pub struct Schur {
    pub t: CMatrix,
    pub q: CMatrix,
}

pub fn schur(a: &CMatrix) -> Result<Schur> {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    hessenberg(&mut h, &mut q);
    if n <= 1 {
        return Ok(Schur { t: h, q });
    }
    let zero = Complex64::new(0.0, 0.0);
    let scale = norm_fro(a).max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    while hi > 0 {
        // locate the active unreduced window [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= EPS * diag || sub <= EPS * EPS * scale {
                h[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total_iter += 1;
        if total_iter > 100 * n {
            return Err(Error::NoConvergence("complex QR iteration"));
        }
        let mu = if iter % 11 == 0 {
            // exceptional shift
            h[(hi, hi)] + Complex64::new(0.75, 0.43) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        for k in lo..hi {
            let (x, y) = if k == lo { (h[(k, k)] - mu, h[(k + 1, k)]) } else { (h[(k, k - 1)], h[(k + 1, k - 1)]) };
            let (c, s) = givens(x, y);
            let col_start = if k == lo { k } else { k - 1 };
            for j in col_start..n {
                let a0 = h[(k, j)];
                let a1 = h[(k + 1, j)];
                h[(k, j)] = a0 * c + s * a1;
                h[(k + 1, j)] = -s.conj() * a0 + a1 * c;
            }
            if k > lo {
                h[(k + 1, k - 1)] = zero;
            }
            let row_end = (k + 2).min(hi);
            for i in 0..=row_end {
                let a0 = h[(i, k)];
                let a1 = h[(i, k + 1)];
                h[(i, k)] = a0 * c + a1 * s.conj();
                h[(i, k + 1)] = -a0 * s + a1 * c;
            }
            for i in 0..n {
                let a0 = q[(i, k)];
                let a1 = q[(i, k + 1)];
                q[(i, k)] = a0 * c + a1 * s.conj();
                q[(i, k + 1)] = -a0 * s + a1 * c;
            }
        }
    }
    // clean strictly lower part
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = zero;
        }
    }
    Ok(Schur { t: h, q })
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m = (a + d) * 0.5;
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

// (c, s) with c real so that [[c, s], [-s̄, c]]·[x; y] = [r; 0].
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    let c = ax / r;
    let s = (x / ax) * y.conj() / r;
    (c, s)
}

fn hessenberg(h: &mut CMatrix, q: &mut CMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&v);
        if xnorm == 0.0 {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vn = vec_norm(&v);
        if vn == 0.0 {
            continue;
        }
        for x in v.iter_mut() {
            *x /= vn;
        }
        // H <- P H, rows k+1..n
        for j in k..n {
            let s: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= v[i] * s * 2.0;
            }
        }
        // H <- H P and Q <- Q P
        for m in [&mut *h, &mut *q] {
            for i in 0..n {
                let s: Complex64 = (0..v.len()).map(|j| m[(i, k + 1 + j)] * v[j]).sum();
                for j in 0..v.len() {
                    m[(i, k + 1 + j)] -= s * v[j].conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// All eigenvalues of a square matrix (diagonal of its Schur form).
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    let s = schur(a)?;
    Ok((0..a.rows()).map(|i| s.t[(i, i)]).collect())
}

/// Unit eigenvector for the eigenvalue `T[k,k]` by back substitution on the
/// triangular factor, mapped back through `Q`.
pub fn schur_eigenvector(s: &Schur, k: usize) -> Vec<Complex64> {
    let n = s.t.rows();
    let lambda = s.t[(k, k)];
    let small = EPS * norm_fro(&s.t).max(f64::MIN_POSITIVE);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    y[k] = Complex64::new(1.0, 0.0);
    for i in (0..k).rev() {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in i + 1..=k {
            acc += s.t[(i, j)] * y[j];
        }
        let mut denom = s.t[(i, i)] - lambda;
        if denom.norm() < small {
            denom = Complex64::new(small, 0.0);
        }
        y[i] = -acc / denom;
    }
    let mut x = s.q.matvec(&y);
    let nx = vec_norm(&x);
    for z in x.iter_mut() {
        *z /= nx;
    }
    x
}

/// Whether `A = Aᴴ` up to a relative tolerance on the largest entry.
pub fn is_hermitian(a: &CMatrix, rel_tol: f64) -> bool {
    if !a.is_square() {
        return false;
    }
    let tol = rel_tol * a.max_abs();
    for i in 0..a.rows() {
        for j in i..a.cols() {
            if (a[(i, j)] - a[(j, i)].conj()).norm() > tol {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64;

    fn sample(n: usize, seed: u64) -> CMatrix {
        // small LCG keeps the unit tests free of RNG dependencies
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        CMatrix::from_fn(n, n, |_, _| c64(next(), next()))
    }

    #[test]
    fn svd_reconstructs() {
        let m = sample(5, 3);
        let d = svd(&m).unwrap();
        let sig = CMatrix::from_fn(5, 5, |i, j| if i == j { c64(d.s[i], 0.0) } else { c64(0.0, 0.0) });
        let rec = d.u.matmul(&sig).matmul(&d.v.conj_transpose());
        assert!(norm_fro(&rec.sub(&m)) < 1e-12);
    }

    #[test]
    fn schur_is_unitary_similarity() {
        for seed in 0..5 {
            let m = sample(7, seed);
            let s = schur(&m).unwrap();
            let rec = s.q.matmul(&s.t).matmul(&s.q.conj_transpose());
            assert!(norm_fro(&rec.sub(&m)) < 1e-12 * norm_fro(&m).max(1.0));
            for i in 0..7 {
                for j in 0..i {
                    assert_eq!(s.t[(i, j)], c64(0.0, 0.0));
                }
                let v = schur_eigenvector(&s, i);
                let r: Vec<_> = m.matvec(&v).iter().zip(&v).map(|(a, b)| a - s.t[(i, i)] * b).collect();
                assert!(vec_norm(&r) < 1e-10);
            }
        }
    }

    #[test]
    fn hermitian_paths_agree_on_real_input() {
        let m = sample(6, 9);
        let sym = CMatrix::from_fn(6, 6, |i, j| c64(m[(i, j)].re + m[(j, i)].re, 0.0));
        let (d1, v1) = eig_hermitian(&sym).unwrap();
        let (d2, _) = jacobi_hermitian(&sym).unwrap();
        for (a, b) in d1.iter().zip(&d2) {
            assert!((a - b).abs() < 1e-12);
        }
        let rec = v1
            .matmul(&CMatrix::from_fn(6, 6, |i, j| if i == j { c64(d1[i], 0.0) } else { c64(0.0, 0.0) }))
            .matmul(&v1.conj_transpose());
        assert!(norm_fro(&rec.sub(&sym)) < 1e-12);
    }

    #[test]
    fn complex_hermitian_jacobi() {
        let m = sample(5, 4);
        let h = m.add(&m.conj_transpose());
        let (d, v) = eig_hermitian(&h).unwrap();
        let rec = v
            .matmul(&CMatrix::from_fn(5, 5, |i, j| if i == j { c64(d[i], 0.0) } else { c64(0.0, 0.0) }))
            .matmul(&v.conj_transpose());
        assert!(norm_fro(&rec.sub(&h)) < 1e-12);
        assert!(d.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn min_norm_least_squares() {
        // rank-one system: minimum-norm solution of [1 1] x = 2 is (1, 1)
        let m = CMatrix::from_rows(&[vec![c64(1.0, 0.0), c64(1.0, 0.0)]]);
        let x = svd(&m).unwrap().solve_min_norm(&[c64(2.0, 0.0)], 1e-10);
        assert!((x[0] - c64(1.0, 0.0)).norm() < 1e-12);
        assert!((x[1] - c64(1.0, 0.0)).norm() < 1e-12);
    }
}
