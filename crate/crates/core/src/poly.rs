//! Polynomial algebra: arithmetic, division with remainder, derivatives,
//! characteristic/minimal polynomials, polynomials of Jordan blocks and
//! confluent (Hermite) interpolation.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

// std-linked builds provide these methods inherently
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::linalg::{self, norm_1};
use crate::matrix::{CMatrix, Mat};
use crate::scalar::Scalar;
use crate::spectral::SpectralBasis;
#[allow(unused_imports)]
use num_traits::Float;

/// Default absolute threshold for trimming leading coefficients.
pub const TRIM_DEFAULT: f64 = 1e-12;

/// Polynomial with ascending coefficients; the empty list is the zero
/// polynomial and the leading coefficient of any other is non-negligible.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type Polynomial = Poly<Complex64>;
pub type ExactPolynomial = Poly<GaussRat>;

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial, trimming leading coefficients below [`TRIM_DEFAULT`].
    pub fn new(coeffs: Vec<T>) -> Self {
        Self::with_tolerance(coeffs, TRIM_DEFAULT)
    }

    pub fn with_tolerance(mut coeffs: Vec<T>, tol: f64) -> Self {
        while coeffs.last().is_some_and(|c| c.negligible(tol)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self { coeffs: vec![T::zero(), T::one()] }
    }

    /// Monic `∏ (x − rᵢ)`.
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = vec![T::one()];
        for r in roots {
            let mut next = vec![T::zero(); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() - r.clone() * c.clone();
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn trimmed(&self, tol: f64) -> Self {
        Self::with_tolerance(self.coeffs.clone(), tol)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = T::one() / l.clone();
                let mut p = self.scale(&inv);
                if let Some(last) = p.coeffs.last_mut() {
                    *last = T::one();
                }
                p
            }
        }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * T::from_i64(k as i64)).collect();
        Self::new(coeffs)
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..order {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    /// `p^{(order)}(x)` by exact coefficient differentiation.
    pub fn eval_derivative(&self, x: &T, order: usize) -> T {
        self.nth_derivative(order).eval(x)
    }

    /// Taylor coefficients `p^{(k)}(λ)/k!` for `k < count`, by repeated
    /// synthetic division by `(x − λ)`.
    pub fn taylor(&self, lambda: &T, count: usize) -> Vec<T> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            if work.is_empty() {
                out.push(T::zero());
                continue;
            }
            // Horner division: quotient left in work[1..], remainder in work[0]
            let n = work.len();
            for i in (0..n - 1).rev() {
                work[i] = work[i].clone() + lambda.clone() * work[i + 1].clone();
            }
            out.push(work.remove(0));
        }
        out
    }

    /// Division with remainder, `self = q·m + r` with `deg r < deg m`.
    pub fn div_rem(&self, m: &Self) -> Result<(Self, Self)> {
        let dm = m.degree().ok_or(Error::ZeroModulus)?;
        let lead = m.coeffs[dm].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dm {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dm];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dm].clone() / lead.clone();
            for (j, mc) in m.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * mc.clone();
            }
            rem[k + dm] = T::zero();
            quot[k] = q;
        }
        rem.truncate(dm);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, m: &Self) -> Result<Self> {
        Ok(self.div_rem(m)?.1)
    }

    /// `h(r(x))`.
    pub fn compose(&self, r: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * r) + &Self::constant(c.clone());
        }
        acc
    }

    /// Monic greatest common divisor (Euclid). Intended for the exact field.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p(M)` for a square matrix by Horner's scheme.
    pub fn eval_matrix(&self, m: &Mat<T>) -> Mat<T> {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.matmul(m);
            for i in 0..n {
                acc[(i, i)] = acc[(i, i)].clone() + c.clone();
            }
        }
        acc
    }

    pub fn to_complex(&self) -> Polynomial {
        Poly::new(self.coeffs.iter().map(|c| c.to_complex()).collect())
    }
}

impl Polynomial {
    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Taps padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), Complex64::new(0.0, 0.0));
        v
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, o: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                let b = o.coeffs.get(k).cloned().unwrap_or_else(T::zero);
                a + b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, o: &Poly<T>) -> Poly<T> {
        self + &(-o)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, o: &Poly<T>) -> Poly<T> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

/// `p^{(order)}(x)`.
pub fn poly_eval(p: &Polynomial, x: Complex64, order: usize) -> Complex64 {
    p.eval_derivative(&x, order)
}

/// `(a·b) mod m`.
pub fn poly_mod_mul<T: Scalar>(a: &Poly<T>, b: &Poly<T>, m: &Poly<T>) -> Result<Poly<T>> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    (a * b).rem(m)
}

/// Characteristic polynomial `det(xI − A)` assembled from the eigenvalues.
pub fn char_poly(a: &CMatrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    if a.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix"));
    }
    let eig = linalg::eigenvalues(a)?;
    Ok(Poly { coeffs: Poly::from_roots(&eig).coeffs })
}

/// Characteristic polynomial over Q(i) by the Faddeev–LeVerrier recurrence.
pub fn char_poly_exact(a: &Mat<GaussRat>) -> Result<ExactPolynomial> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    let mut coeffs = vec![GaussRat::zero(); n + 1];
    coeffs[n] = GaussRat::one();
    let mut m = Mat::<GaussRat>::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        m = a.matmul(&m);
        for i in 0..n {
            m[(i, i)] = m[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        let am = a.matmul(&m);
        coeffs[n - k] = -(am.trace() / GaussRat::from_i64(k as i64));
    }
    Ok(Poly { coeffs })
}

/// Minimal polynomial `∏ (x − λ_m)^{R_m}` with `R_m` the longest chain.
pub fn min_poly(basis: &SpectralBasis) -> Polynomial {
    let mut roots = Vec::new();
    for (lambda, chains) in basis.eigenvalues().iter().zip(basis.chains()) {
        let r = chains.iter().copied().max().unwrap_or(0);
        roots.extend(core::iter::repeat_n(*lambda, r));
    }
    Poly { coeffs: Poly::from_roots(&roots).coeffs }
}

/// `h(J_r(λ))`: entry `(i, j)` is `h^{(j−i)}(λ)/(j−i)!` on and above the
/// diagonal.
pub fn eval_on_jordan_block<T: Scalar>(h: &Poly<T>, lambda: &T, r: usize) -> Mat<T> {
    let t = h.taylor(lambda, r);
    Mat::from_fn(r, r, |i, j| if j >= i { t[j - i].clone() } else { T::zero() })
}

/// Value and derivative constraints at one point: `p^{(k)}(point) = values[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteConstraint<T> {
    pub point: T,
    pub values: Vec<T>,
}

impl<T: Scalar> HermiteConstraint<T> {
    pub fn new(point: T, values: Vec<T>) -> Self {
        Self { point, values }
    }
}

// Confluent Vandermonde rows in Taylor form: row (λ, k) has entry
// C(j, k)·λ^{j−k} in column j.
fn confluent_matrix<T: Scalar>(nodes: &[(T, usize)]) -> Mat<T> {
    let total: usize = nodes.iter().map(|(_, r)| r).sum();
    // Pascal triangle in the field itself (exact for GaussRat, no overflow)
    let mut binom = vec![vec![T::zero(); total]; total];
    for j in 0..total {
        binom[j][0] = T::one();
        for k in 1..=j {
            binom[j][k] = binom[j - 1][k - 1].clone() + if k < j { binom[j - 1][k].clone() } else { T::zero() };
        }
    }
    let mut m = Mat::zeros(total, total);
    let mut row = 0;
    for (lambda, r) in nodes {
        let mut pows = vec![T::one(); total];
        for j in 1..total {
            pows[j] = pows[j - 1].clone() * lambda.clone();
        }
        for k in 0..*r {
            for j in k..total {
                m[(row, j)] = binom[j][k].clone() * pows[j - k].clone();
            }
            row += 1;
        }
    }
    m
}

fn factorial<T: Scalar>(k: usize) -> T {
    let mut f = T::one();
    for i in 2..=k {
        f = f * T::from_i64(i as i64);
    }
    f
}

/// Taylor-form right-hand side: derivative values divided by `k!`.
fn taylor_rhs<T: Scalar>(constraints: &[HermiteConstraint<T>]) -> Vec<T> {
    constraints.iter().flat_map(|c| c.values.iter().enumerate().map(|(k, v)| v.clone() / factorial::<T>(k))).collect()
}

fn check_distinct(points: &[Complex64], sep: f64) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (points[i] - points[j]).norm() <= sep {
                return Err(Error::InvalidParameter(alloc::format!(
                    "interpolation points {} and {} are not separated by more than {sep:e}",
                    points[i],
                    points[j]
                )));
            }
        }
    }
    Ok(())
}

/// Floating-point interpolation sharing one confluent system across several
/// right-hand sides. `nodes` lists each point with its constraint count and
/// every column of `rhs` holds Taylor-form data (values divided by `k!`).
pub fn hermite_solve_taylor(nodes: &[(Complex64, usize)], rhs: &CMatrix, tol: &Tolerances) -> Result<Vec<Polynomial>> {
    let total: usize = nodes.iter().map(|(_, r)| r).sum();
    if total == 0 {
        return Err(Error::InvalidParameter("no interpolation constraints".into()));
    }
    if rhs.rows() != total {
        return Err(Error::DimensionMismatch { expected: total, found: rhs.rows() });
    }
    let points: Vec<Complex64> = nodes.iter().map(|(p, _)| *p).collect();
    check_distinct(&points, tol.lambda_sep)?;
    let m = confluent_matrix(nodes);
    let inv = m.inverse(0.0).map_err(|_| Error::IllConditioned { cond: f64::INFINITY, limit: tol.cond_limit })?;
    let cond = linalg::cond_1(&m, &inv);
    if !cond.is_finite() || cond > tol.cond_limit {
        return Err(Error::IllConditioned { cond, limit: tol.cond_limit });
    }
    let sol = m.solve(rhs, 0.0)?;
    let resid = m.matmul(&sol).sub(rhs);
    let scale = norm_1(&m) * norm_1(&sol) + norm_1(rhs);
    let r = norm_1(&resid);
    if r > tol.solve * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::IllConditioned { cond, limit: tol.cond_limit });
    }
    Ok((0..sol.cols()).map(|j| Poly::new(sol.column(j))).collect())
}

/// Unique polynomial of degree below the total constraint count meeting all
/// value/derivative constraints (floating point).
pub fn hermite_interpolate(constraints: &[HermiteConstraint<Complex64>], tol: &Tolerances) -> Result<Polynomial> {
    let nodes: Vec<(Complex64, usize)> = constraints.iter().map(|c| (c.point, c.values.len())).collect();
    let rhs = taylor_rhs(constraints);
    let rhs = CMatrix::from_vec(rhs.len(), 1, rhs);
    Ok(hermite_solve_taylor(&nodes, &rhs, tol)?.remove(0))
}

/// Exact counterpart of [`hermite_solve_taylor`].
pub fn hermite_solve_taylor_exact(nodes: &[(GaussRat, usize)], rhs: &Mat<GaussRat>) -> Result<Vec<ExactPolynomial>> {
    let total: usize = nodes.iter().map(|n| n.1).sum();
    if total == 0 {
        return Err(Error::InvalidParameter("no interpolation constraints".into()));
    }
    if rhs.rows() != total {
        return Err(Error::DimensionMismatch { expected: total, found: rhs.rows() });
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i].0 == nodes[j].0 {
                return Err(Error::InvalidParameter("repeated interpolation point".into()));
            }
        }
    }
    let sol = confluent_matrix(nodes).solve(rhs, 0.0)?;
    Ok((0..sol.cols()).map(|j| Poly::new(sol.column(j))).collect())
}

/// Exact interpolation over Q(i).
pub fn hermite_interpolate_exact(constraints: &[HermiteConstraint<GaussRat>]) -> Result<ExactPolynomial> {
    let nodes: Vec<(GaussRat, usize)> = constraints.iter().map(|c| (c.point.clone(), c.values.len())).collect();
    let rhs = taylor_rhs(constraints);
    let rhs = Mat::from_vec(rhs.len(), 1, rhs);
    Ok(hermite_solve_taylor_exact(&nodes, &rhs)?.remove(0))
}

/// Taylor coefficients of `1/h` at a point, given those of `h` (`t[0] ≠ 0`).
pub fn reciprocal_series<T: Scalar>(t: &[T]) -> Vec<T> {
    let mut c: Vec<T> = Vec::with_capacity(t.len());
    for k in 0..t.len() {
        let mut acc = if k == 0 { T::one() } else { T::zero() };
        for j in 1..=k {
            acc = acc - t[j].clone() * c[k - j].clone();
        }
        c.push(acc / t[0].clone());
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64;

    fn p(c: &[f64]) -> Polynomial {
        Poly::new(c.iter().map(|&x| c64(x, 0.0)).collect())
    }

    fn close(a: &Polynomial, b: &Polynomial, tol: f64) -> bool {
        let n = a.coeffs().len().max(b.coeffs().len());
        (0..n).all(|k| (a.padded(n)[k] - b.padded(n)[k]).norm() <= tol)
    }

    #[test]
    fn eval_and_derivatives() {
        let sq = p(&[0.0, 0.0, 1.0]);
        assert_eq!(poly_eval(&sq, c64(3.0, 0.0), 0), c64(9.0, 0.0));
        assert_eq!(poly_eval(&sq, c64(3.0, 0.0), 1), c64(6.0, 0.0));
        assert_eq!(poly_eval(&sq, c64(3.0, 0.0), 3), c64(0.0, 0.0));
    }

    #[test]
    fn modular_products() {
        let x = Polynomial::x();
        let m = p(&[-1.0, 0.0, 1.0]);
        assert_eq!(poly_mod_mul(&x, &x, &m).unwrap(), Polynomial::one());
        let b = p(&[2.0, -1.0, 4.0, 3.0]);
        assert_eq!(poly_mod_mul(&Polynomial::one(), &b, &m).unwrap(), b.rem(&m).unwrap());
        // (x+1)(x+2) mod x^2+1 = 3x + 1
        let r = poly_mod_mul(&p(&[1.0, 1.0]), &p(&[2.0, 1.0]), &p(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(r, p(&[1.0, 3.0]));
        assert_eq!(poly_mod_mul(&x, &x, &Polynomial::zero()), Err(Error::ZeroModulus));
    }

    #[test]
    fn char_poly_examples() {
        let z = CMatrix::zeros(2, 2);
        assert!(close(&char_poly(&z).unwrap(), &p(&[0.0, 0.0, 1.0]), 1e-14));
        let d = CMatrix::from_rows(&[vec![c64(1.0, 0.0), c64(0.0, 0.0)], vec![c64(0.0, 0.0), c64(2.0, 0.0)]]);
        assert!(close(&char_poly(&d).unwrap(), &p(&[2.0, -3.0, 1.0]), 1e-12));
        let c4 = CMatrix::from_fn(4, 4, |n, m| if (n + 4 - m) % 4 == 1 { c64(1.0, 0.0) } else { c64(0.0, 0.0) });
        assert!(close(&char_poly(&c4).unwrap(), &p(&[-1.0, 0.0, 0.0, 0.0, 1.0]), 1e-12));
    }

    #[test]
    fn char_poly_exact_cycle() {
        let c4 = Mat::from_fn(4, 4, |n, m| GaussRat::from_i64(((n + 4 - m) % 4 == 1) as i64));
        let pc = char_poly_exact(&c4).unwrap();
        let expect: Vec<GaussRat> = [-1, 0, 0, 0, 1].iter().map(|&v| GaussRat::from_i64(v)).collect();
        assert_eq!(pc.coeffs(), &expect[..]);
    }

    #[test]
    fn jordan_block_values() {
        let lam = c64(0.7, -0.2);
        let sq = p(&[0.0, 0.0, 1.0]);
        let m = eval_on_jordan_block(&sq, &lam, 2);
        assert!((m[(0, 0)] - lam * lam).norm() < 1e-15);
        assert!((m[(0, 1)] - lam * 2.0).norm() < 1e-15);
        assert_eq!(m[(1, 0)], c64(0.0, 0.0));
        assert_eq!(eval_on_jordan_block(&Polynomial::one(), &lam, 3), CMatrix::identity(3));
        // J3(2)^3 computed by explicit matrix cubing
        let j = Mat::from_rows(&[
            vec![GaussRat::from_i64(2), GaussRat::from_i64(1), GaussRat::from_i64(0)],
            vec![GaussRat::from_i64(0), GaussRat::from_i64(2), GaussRat::from_i64(1)],
            vec![GaussRat::from_i64(0), GaussRat::from_i64(0), GaussRat::from_i64(2)],
        ]);
        let cube = j.pow(3);
        let h = Poly::new(vec![GaussRat::zero(), GaussRat::zero(), GaussRat::zero(), GaussRat::one()]);
        assert_eq!(eval_on_jordan_block(&h, &GaussRat::from_i64(2), 3), cube);
        assert_eq!(cube[(0, 1)], GaussRat::from_i64(12));
        assert_eq!(cube[(0, 2)], GaussRat::from_i64(6));
    }

    #[test]
    fn hermite_examples() {
        let tol = Tolerances::default();
        let one = c64(1.0, 0.0);
        let r = hermite_interpolate(&[HermiteConstraint::new(one, vec![one, one])], &tol).unwrap();
        assert!(close(&r, &Polynomial::x(), 1e-12));
        let r = hermite_interpolate(
            &[HermiteConstraint::new(c64(0.0, 0.0), vec![one]), HermiteConstraint::new(one, vec![one])],
            &tol,
        )
        .unwrap();
        assert!(close(&r, &Polynomial::one(), 1e-12));
        let r = hermite_interpolate(
            &[HermiteConstraint::new(one, vec![one]), HermiteConstraint::new(c64(2.0, 0.0), vec![c64(0.5, 0.0)])],
            &tol,
        )
        .unwrap();
        assert!(close(&r, &p(&[1.5, -0.5]), 1e-12));
    }

    #[test]
    fn hermite_exact_matches_constraints() {
        let c = [
            HermiteConstraint::new(
                GaussRat::from_i64(1),
                vec![GaussRat::from_i64(2), GaussRat::from_i64(-1), GaussRat::from_i64(3)],
            ),
            HermiteConstraint::new(GaussRat::from_ints(0, 1), vec![GaussRat::from_i64(5)]),
        ];
        let r = hermite_interpolate_exact(&c).unwrap();
        assert!(r.degree().unwrap() < 4);
        for con in &c {
            for (k, v) in con.values.iter().enumerate() {
                assert_eq!(&r.eval_derivative(&con.point, k), v);
            }
        }
    }

    #[test]
    fn hermite_ill_conditioned_is_reported() {
        let tol = Tolerances::default();
        let cons: Vec<_> =
            (0..60).map(|k| HermiteConstraint::new(c64(1.0 + k as f64 * 0.01, 0.0), vec![c64(1.0, 0.0)])).collect();
        assert!(matches!(hermite_interpolate(&cons, &tol), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn compose_and_gcd() {
        let h = p(&[1.0, 0.0, 1.0]);
        let r = p(&[1.0, 1.0]);
        // (x+1)^2 + 1
        assert!(close(&h.compose(&r), &p(&[2.0, 2.0, 1.0]), 1e-14));
        let a = Poly::from_roots(&[GaussRat::from_i64(1), GaussRat::from_i64(1), GaussRat::from_i64(2)]);
        let g = a.gcd(&a.derivative());
        assert_eq!(g, Poly::from_roots(&[GaussRat::from_i64(1)]));
    }
}
