//! Graph filters `h(A)` represented by their taps.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::exact::GaussRat;
use crate::graph::{check_len, Graph, GraphId, GraphSignal};
use crate::linalg::{self, norm_fro, vec_norm};
use crate::matrix::{CMatrix, Mat};
use crate::poly::{
    hermite_solve_taylor, hermite_solve_taylor_exact, min_poly, reciprocal_series, ExactPolynomial, Poly, Polynomial,
};
use crate::scalar::Scalar;
use crate::spectral::{SpectralBasis, Spectrum};

/// A polynomial `h(A)` in the shift of one particular graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphFilter {
    taps: Polynomial,
    graph: GraphId,
}

impl GraphFilter {
    pub fn new(g: &Graph, taps: Polynomial) -> Self {
        Self { taps, graph: g.id() }
    }

    pub fn from_taps(g: &Graph, taps: &[Complex64]) -> Self {
        Self::new(g, Polynomial::new(taps.to_vec()))
    }

    /// Filter for a graph known only by its fingerprint.
    pub fn with_id(taps: Polynomial, graph: GraphId) -> Self {
        Self { taps, graph }
    }

    pub fn identity(g: &Graph) -> Self {
        Self::new(g, Polynomial::one())
    }

    pub fn taps(&self) -> &Polynomial {
        &self.taps
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.graph != g.id() {
            return Err(Error::GraphMismatch);
        }
        Ok(())
    }
}

/// `h(A) x` by Horner's scheme: `deg h` shifts, `h(A)` is never formed.
pub fn horner(g: &Graph, h: &Polynomial, x: &[Complex64]) -> Vec<Complex64> {
    let c = h.coeffs();
    let Some((last, rest)) = c.split_last() else {
        return vec![Complex64::new(0.0, 0.0); x.len()];
    };
    let mut acc: Vec<Complex64> = x.iter().map(|v| last * v).collect();
    for hk in rest.iter().rev() {
        acc = g.shift_values(&acc);
        for (a, v) in acc.iter_mut().zip(x) {
            *a += hk * v;
        }
    }
    acc
}

pub fn apply_filter(g: &Graph, f: &GraphFilter, s: &GraphSignal) -> Result<GraphSignal> {
    f.check(g)?;
    check_len(g, s)?;
    GraphSignal::new(g, horner(g, f.taps(), s.values()))
}

/// The dense matrix `h(A)`.
pub fn filter_matrix(g: &Graph, h: &Polynomial) -> CMatrix {
    h.eval_matrix(&g.to_dense())
}

/// Whether `‖AH − HA‖ ≤ tol·‖A‖·‖H‖` (Frobenius norms).
pub fn is_shift_invariant(g: &Graph, h: &CMatrix, tol: f64) -> Result<bool> {
    let n = g.n_nodes();
    if h.rows() != n || h.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: h.rows() });
    }
    let a = g.to_dense();
    let comm = a.matmul(h).sub(&h.matmul(&a));
    Ok(norm_fro(&comm) <= tol * norm_fro(&a) * norm_fro(h))
}

/// Replaces the taps by `h mod m`; with `m = m_A` the filter matrix is
/// unchanged and the degree drops below `N_A`.
pub fn reduce_filter(f: &GraphFilter, m: &Polynomial) -> Result<GraphFilter> {
    Ok(GraphFilter { taps: f.taps.rem(m)?, graph: f.graph })
}

// Fails when h vanishes, relative to its coefficient norm, at an eigenvalue.
fn check_invertible(h: &Polynomial, basis: &SpectralBasis, tol: &Tolerances) -> Result<()> {
    let scale = h.coeff_norm().max(f64::MIN_POSITIVE);
    for lambda in basis.eigenvalues() {
        let v = h.eval(lambda);
        if v.norm() <= tol.invert * scale {
            return Err(Error::NotInvertible { eigenvalue: *lambda, value: v.norm() });
        }
    }
    Ok(())
}

/// The inverse filter `g` with `g(A) h(A) = I` and `deg g < N_A`.
pub fn invert_filter(f: &GraphFilter, basis: &SpectralBasis, tol: &Tolerances) -> Result<GraphFilter> {
    if f.graph != basis.graph_id() {
        return Err(Error::GraphMismatch);
    }
    let h = f.taps();
    check_invertible(h, basis, tol)?;
    let orders: Vec<usize> = basis.chains().iter().map(|c| c.iter().copied().max().unwrap_or(0)).collect();
    let taps = match basis.exact() {
        Some(ex) => {
            let hx: ExactPolynomial =
                Poly::new(h.coeffs().iter().map(|c| GaussRat::from_complex_exact(*c).expect("finite taps")).collect());
            let nodes: Vec<(GaussRat, usize)> = ex.eigenvalues.iter().cloned().zip(orders.iter().copied()).collect();
            let rhs: Vec<GaussRat> = nodes.iter().flat_map(|(l, r)| reciprocal_series(&hx.taylor(l, *r))).collect();
            let rhs = Mat::from_vec(rhs.len(), 1, rhs);
            hermite_solve_taylor_exact(&nodes, &rhs)?.remove(0).to_complex()
        }
        None => {
            let nodes: Vec<(Complex64, usize)> =
                basis.eigenvalues().iter().copied().zip(orders.iter().copied()).collect();
            let rhs: Vec<Complex64> = nodes.iter().flat_map(|(l, r)| reciprocal_series(&h.taylor(l, *r))).collect();
            let rhs = CMatrix::from_vec(rhs.len(), 1, rhs);
            hermite_solve_taylor(&nodes, &rhs, tol)?.remove(0)
        }
    };
    Ok(GraphFilter { taps, graph: f.graph })
}

/// `h(A)⁻¹ s` computed in the spectral domain as `V h(J)⁻¹ F s`. Unlike
/// [`invert_filter`] this never interpolates, so it scales to graphs whose
/// interpolation system would be too ill-conditioned.
pub fn apply_inverse(h: &Polynomial, basis: &SpectralBasis, s: &GraphSignal, tol: &Tolerances) -> Result<GraphSignal> {
    check_invertible(h, basis, tol)?;
    let spec = crate::spectral::gft(basis, s)?;
    let c = spec.coeffs();
    let mut out = vec![Complex64::new(0.0, 0.0); c.len()];
    for b in basis.blocks() {
        let inv = reciprocal_series(&h.taylor(&b.lambda, b.size));
        for i in 0..b.size {
            out[b.start + i] = (i..b.size).map(|j| inv[j - i] * c[b.start + j]).sum();
        }
    }
    crate::spectral::igft(basis, &Spectrum::new(basis, out)?)
}

/// `u = h(A) δ`.
pub fn impulse_response(g: &Graph, f: &GraphFilter) -> Result<GraphSignal> {
    apply_filter(g, f, &GraphSignal::impulse(g))
}

/// `Â = (δ, Aδ, …, A^{cols−1}δ)`.
pub fn impulse_matrix(g: &Graph, cols: usize) -> CMatrix {
    let n = g.n_nodes();
    let mut columns = Vec::with_capacity(cols);
    let mut x = GraphSignal::impulse(g).into_values();
    for _ in 0..cols {
        let next = g.shift_values(&x);
        columns.push(core::mem::replace(&mut x, next));
    }
    CMatrix::from_columns(n, &columns)
}

/// Recovers the reduced taps (`deg h < N_A`) from an impulse response by
/// solving `Â h = u`.
pub fn taps_from_impulse(g: &Graph, basis: &SpectralBasis, u: &GraphSignal, tol: &Tolerances) -> Result<GraphFilter> {
    check_len(g, u)?;
    let na = basis.min_poly_degree();
    let a_hat = impulse_matrix(g, na);
    let sv = linalg::svd(&a_hat)?;
    let rank = sv.rank(tol.rank * sv.max_singular());
    if rank < na {
        return Err(Error::UnrecoverableTaps { rank, required: na, residual: f64::NAN });
    }
    let h = sv.solve_min_norm(u.values(), tol.rank);
    let fit = a_hat.matvec(&h);
    let diff: Vec<Complex64> = fit.iter().zip(u.values()).map(|(x, y)| x - y).collect();
    let residual = vec_norm(&diff) / u.norm().max(f64::MIN_POSITIVE);
    if residual > tol.solve {
        return Err(Error::UnrecoverableTaps { rank, required: na, residual });
    }
    Ok(GraphFilter::new(g, Polynomial::new(h)))
}

/// A shift `Ã` with `p_Ã = m_Ã` and a polynomial `r` with `r(Ã) = A`.
#[derive(Clone, Debug)]
pub struct EquivalentShift {
    pub graph: Graph,
    pub r: Polynomial,
    /// Decomposition of `Ã`: the same `V` and `F`, one chain per eigenvalue.
    pub basis: SpectralBasis,
    /// Substitute eigenvalue per Jordan block, in the block order of the
    /// input basis.
    pub substitutes: Vec<Complex64>,
}

/// Substitute eigenvalues, one per Jordan block: chain `d` of `λ_m` moves to
/// `λ_m + d·ε·(1 + |λ_m|)`, with `ε` small enough that substitutes of
/// different eigenvalues stay less than a quarter of their gap apart.
pub fn substitute_eigenvalues(basis: &SpectralBasis, tol: &Tolerances) -> Result<Vec<Complex64>> {
    let lambdas = basis.eigenvalues();
    let max_d = basis.chains().iter().map(|c| c.len()).max().unwrap_or(1) as f64;
    let max_abs = lambdas.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let mut gap = f64::INFINITY;
    for i in 0..lambdas.len() {
        for j in i + 1..lambdas.len() {
            gap = gap.min((lambdas[i] - lambdas[j]).norm());
        }
    }
    let eps = (1.0 / (4.0 * max_d)).min(gap / (4.0 * max_d * (1.0 + max_abs)));
    let mut out = Vec::new();
    for (lambda, chains) in lambdas.iter().zip(basis.chains()) {
        let step = eps * (1.0 + lambda.norm());
        if chains.len() > 1 && step <= tol.lambda_sep {
            return Err(Error::InvalidParameter("eigenvalues too close to separate substitutes".into()));
        }
        for d in 0..chains.len() {
            out.push(lambda + Complex64::new(d as f64 * step, 0.0));
        }
    }
    Ok(out)
}

pub fn equivalent_shift(g: &Graph, basis: &SpectralBasis, tol: &Tolerances) -> Result<EquivalentShift> {
    if basis.graph_id() != g.id() {
        return Err(Error::GraphMismatch);
    }
    let blocks = basis.blocks();
    if basis.is_nonderogatory() {
        return Ok(EquivalentShift {
            graph: g.clone(),
            r: Polynomial::x(),
            basis: basis.clone(),
            substitutes: blocks.iter().map(|b| b.lambda).collect(),
        });
    }
    let subs = substitute_eigenvalues(basis, tol)?;
    let (a_tilde, r) = match basis.exact() {
        Some(ex) => {
            let subs_x: Vec<GaussRat> =
                subs.iter().map(|z| GaussRat::from_complex_exact(*z).expect("finite substitute")).collect();
            let j_tilde = exact_jordan(&blocks, &subs_x);
            let a_tilde = ex.v.matmul(&j_tilde).matmul(&ex.f);
            let nodes: Vec<(GaussRat, usize)> = subs_x.iter().cloned().zip(blocks.iter().map(|b| b.size)).collect();
            let rhs: Vec<GaussRat> = blocks
                .iter()
                .flat_map(|b| (0..b.size).map(|k| shift_condition(ex.eigenvalues[b.eigen].clone(), k)))
                .collect();
            let rhs = Mat::from_vec(rhs.len(), 1, rhs);
            let r = hermite_solve_taylor_exact(&nodes, &rhs)?.remove(0).to_complex();
            (a_tilde.to_complex(), r)
        }
        None => {
            let j_tilde = CMatrix::block_diag(
                &blocks.iter().zip(&subs).map(|(b, l)| crate::spectral::jordan_block(*l, b.size)).collect::<Vec<_>>(),
            );
            let a_tilde = basis.v().matmul(&j_tilde).matmul(basis.f());
            let nodes: Vec<(Complex64, usize)> = subs.iter().copied().zip(blocks.iter().map(|b| b.size)).collect();
            let rhs: Vec<Complex64> =
                blocks.iter().flat_map(|b| (0..b.size).map(|k| shift_condition(b.lambda, k))).collect();
            let rhs = CMatrix::from_vec(rhs.len(), 1, rhs);
            (a_tilde, hermite_solve_taylor(&nodes, &rhs, tol)?.remove(0))
        }
    };
    let graph = Graph::from_dense(a_tilde)?;
    let new_basis = basis.relabeled(&subs, graph.id())?;
    Ok(EquivalentShift { graph, r, basis: new_basis, substitutes: subs })
}

// Taylor data of r at a substitute: r = λ, r′ = 1, higher derivatives 0.
fn shift_condition<T: Scalar>(lambda: T, k: usize) -> T {
    match k {
        0 => lambda,
        1 => T::one(),
        _ => T::zero(),
    }
}

fn exact_jordan(blocks: &[crate::spectral::JordanBlock], lambdas: &[GaussRat]) -> Mat<GaussRat> {
    let parts: Vec<Mat<GaussRat>> = blocks
        .iter()
        .zip(lambdas)
        .map(|(b, l)| {
            Mat::from_fn(b.size, b.size, |i, j| {
                if i == j {
                    l.clone()
                } else if j == i + 1 {
                    GaussRat::one()
                } else {
                    GaussRat::zero()
                }
            })
        })
        .collect();
    Mat::block_diag(&parts)
}

/// Polynomial signal representation: a basis `b_0, …, b_{N−1}` with
/// `Σ (A s)_n b_n ≡ x · Σ s_n b_n (mod p_A)`.
#[derive(Clone, Debug)]
pub struct ZTransform {
    polys: Vec<Polynomial>,
    modulus: Polynomial,
    coeff_matrix: CMatrix,
    graph: GraphId,
}

impl ZTransform {
    /// Builds the basis from the decomposition of `Aᵀ`. Requires every
    /// eigenvalue to have a single Jordan chain; otherwise pass through
    /// [`equivalent_shift`] first.
    pub fn new(g: &Graph, basis_of_transpose: &SpectralBasis, tol: &Tolerances) -> Result<Self> {
        let bt = basis_of_transpose;
        if bt.graph_id() != g.transpose().id() {
            return Err(Error::GraphMismatch);
        }
        if !bt.is_nonderogatory() {
            return Err(Error::Precondition(
                "characteristic and minimal polynomials differ; apply equivalent_shift first".into(),
            ));
        }
        let n = g.n_nodes();
        let sizes: Vec<usize> = bt.chains().iter().map(|c| c[0]).collect();
        // row (m, r) of the right-hand side is ṽ_{m,0,r}, i.e. row j is column j of V
        let polys = match bt.exact() {
            Some(ex) => {
                let nodes: Vec<(GaussRat, usize)> = ex.eigenvalues.iter().cloned().zip(sizes.iter().copied()).collect();
                let rhs = ex.v.transpose();
                hermite_solve_taylor_exact(&nodes, &rhs)?.iter().map(|p| p.to_complex()).collect()
            }
            None => {
                let nodes: Vec<(Complex64, usize)> =
                    bt.eigenvalues().iter().copied().zip(sizes.iter().copied()).collect();
                hermite_solve_taylor(&nodes, &bt.v().transpose(), tol)?
            }
        };
        let modulus = min_poly(bt);
        let coeff_matrix = CMatrix::from_columns(n, &polys.iter().map(|p| p.padded(n)).collect::<Vec<_>>());
        Ok(Self { polys, modulus, coeff_matrix, graph: g.id() })
    }

    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    /// `p_A`, which here equals `m_A`.
    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    /// `s(x) = Σ s_n b_n(x)`.
    pub fn signal_polynomial(&self, s: &GraphSignal) -> Result<Polynomial> {
        if s.len() != self.polys.len() {
            return Err(Error::DimensionMismatch { expected: self.polys.len(), found: s.len() });
        }
        let mut acc = Polynomial::zero();
        for (b, v) in self.polys.iter().zip(s.values()) {
            acc = &acc + &b.scale(v);
        }
        Ok(acc)
    }

    /// Signal whose polynomial is `p mod p_A`.
    pub fn signal_from_polynomial(&self, p: &Polynomial) -> Result<GraphSignal> {
        let n = self.polys.len();
        let reduced = p.rem(&self.modulus)?;
        let rhs = CMatrix::from_vec(n, 1, reduced.padded(n)[..n].to_vec());
        let y = self.coeff_matrix.solve(&rhs, 0.0)?;
        Ok(GraphSignal::from_parts(y.column(0), self.graph))
    }

    /// Filtering as polynomial multiplication: `(h · s)(x) mod p_A`.
    pub fn filter(&self, h: &Polynomial, s: &GraphSignal) -> Result<GraphSignal> {
        let sp = self.signal_polynomial(s)?;
        self.signal_from_polynomial(&(h * &sp))
    }
}

pub fn z_transform_basis(g: &Graph, basis_of_transpose: &SpectralBasis, tol: &Tolerances) -> Result<Vec<Polynomial>> {
    Ok(ZTransform::new(g, basis_of_transpose, tol)?.polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::scalar::c64;
    use crate::spectral::{jordan_decompose, DecomposeOptions};

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n, c64(1.0, 0.0))).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn real_graph(rows: &[Vec<f64>]) -> Graph {
        Graph::from_dense(Mat::from_rows(rows).to_complex()).unwrap()
    }

    fn poly(c: &[f64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&x| c64(x, 0.0)).collect())
    }

    fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn apply_examples() {
        let g = cycle(4);
        let s = GraphSignal::from_real(&g, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(apply_filter(&g, &GraphFilter::identity(&g), &s).unwrap(), s);
        let out = apply_filter(&g, &GraphFilter::new(&g, poly(&[0.0, 1.0])), &s).unwrap();
        assert_eq!(out.real_parts(), vec![4.0, 1.0, 2.0, 3.0]);
        // circular convolution on the cycle
        let h = [0.5, -1.0, 2.0, 0.25];
        let out = apply_filter(&g, &GraphFilter::new(&g, poly(&h)), &s).unwrap();
        for n in 0..4 {
            let conv: f64 = (0..4).map(|k| s.real_parts()[k] * h[(n + 4 - k) % 4]).sum();
            assert!((out.values()[n].re - conv).abs() < 1e-12);
        }
        let other = cycle(5);
        assert_eq!(apply_filter(&other, &GraphFilter::identity(&g), &s), Err(Error::GraphMismatch));
    }

    #[test]
    fn shift_invariance_examples() {
        let g = real_graph(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let h = Mat::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).to_complex();
        assert!(!is_shift_invariant(&g, &h, 1e-12).unwrap());
        assert!(is_shift_invariant(&g, &CMatrix::identity(2), 1e-12).unwrap());
        let c = cycle(5);
        let hm = filter_matrix(&c, &poly(&[1.0, -2.0, 0.5]));
        assert!(is_shift_invariant(&c, &hm, 1e-12).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let g = real_graph(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let m = min_poly(&b);
        let f = GraphFilter::new(&g, poly(&[0.0, 0.0, 1.0]));
        let r = reduce_filter(&f, &m).unwrap();
        assert!(max_diff(r.taps().coeffs(), &[c64(-2.0, 0.0), c64(3.0, 0.0)]) < 1e-12);
        let hm = filter_matrix(&g, r.taps());
        assert!((hm[(0, 0)].re - 1.0).abs() < 1e-12 && (hm[(1, 1)].re - 4.0).abs() < 1e-12);
        let low = GraphFilter::new(&g, poly(&[7.0]));
        assert_eq!(reduce_filter(&low, &m).unwrap(), low);
        assert!(reduce_filter(&GraphFilter::new(&g, m.clone()), &m).unwrap().taps().is_zero());
        assert_eq!(reduce_filter(&f, &Polynomial::zero()), Err(Error::ZeroModulus));
    }

    #[test]
    fn invert_examples() {
        let tol = Tolerances::default();
        let g = real_graph(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let one = invert_filter(&GraphFilter::identity(&g), &b, &tol).unwrap();
        assert!(max_diff(one.taps().coeffs(), &[c64(1.0, 0.0)]) < 1e-12);
        let inv = invert_filter(&GraphFilter::new(&g, Polynomial::x()), &b, &tol).unwrap();
        assert!(max_diff(inv.taps().coeffs(), &[c64(1.5, 0.0), c64(-0.5, 0.0)]) < 1e-12);

        let c = cycle(4);
        let bc = jordan_decompose(&c, &DecomposeOptions::default()).unwrap();
        let inv = invert_filter(&GraphFilter::new(&c, Polynomial::x()), &bc, &tol).unwrap();
        let prod = filter_matrix(&c, inv.taps()).matmul(&c.to_dense());
        assert!(norm_fro(&prod.sub(&CMatrix::identity(4))) < 1e-10);
        let err = invert_filter(&GraphFilter::new(&c, poly(&[-1.0, 1.0])), &bc, &tol).unwrap_err();
        assert!(matches!(err, Error::NotInvertible { .. }));
    }

    #[test]
    fn invert_on_defective_exact() {
        let g = real_graph(&[vec![2.0, 1.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, -1.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::exact()).unwrap();
        let f = GraphFilter::new(&g, poly(&[1.0, 0.5, 0.25]));
        let inv = invert_filter(&f, &b, &Tolerances::default()).unwrap();
        assert!(inv.taps().degree().unwrap() < b.min_poly_degree());
        let prod = filter_matrix(&g, inv.taps()).matmul(&filter_matrix(&g, f.taps()));
        assert!(norm_fro(&prod.sub(&CMatrix::identity(3))) < 1e-12);
        let s = GraphSignal::from_real(&g, &[1.0, -2.0, 3.0]).unwrap();
        let x = apply_inverse(f.taps(), &b, &s, &Tolerances::default()).unwrap();
        let back = apply_filter(&g, &f, &x).unwrap();
        assert!(max_diff(back.values(), s.values()) < 1e-12);
    }

    #[test]
    fn impulse_examples() {
        let tol = Tolerances::default();
        let g = cycle(6);
        assert_eq!(impulse_response(&g, &GraphFilter::identity(&g)).unwrap(), GraphSignal::impulse(&g));
        let h = poly(&[0.5, -1.0, 2.0, 0.0, 3.0, 1.5]);
        let u = impulse_response(&g, &GraphFilter::new(&g, h.clone())).unwrap();
        assert!(max_diff(u.values(), &h.padded(6)) < 1e-15);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let back = taps_from_impulse(&g, &b, &u, &tol).unwrap();
        assert!(max_diff(&back.taps().padded(6), &h.padded(6)) < 1e-9);

        let zero = real_graph(&[vec![0.0, 0.0], vec![0.0, 0.0]]);
        let bz = jordan_decompose(&zero, &DecomposeOptions::default()).unwrap();
        let u = GraphSignal::from_real(&zero, &[1.0, 1.0]).unwrap();
        assert!(matches!(taps_from_impulse(&zero, &bz, &u, &tol), Err(Error::UnrecoverableTaps { .. })));
    }

    #[test]
    fn equivalent_shift_identity() {
        let tol = Tolerances::default();
        let g = real_graph(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let eq = equivalent_shift(&g, &b, &tol).unwrap();
        assert_eq!(eq.substitutes, vec![c64(1.0, 0.0), c64(1.25, 0.0)]);
        assert!(max_diff(eq.r.coeffs(), &[c64(1.0, 0.0)]) < 1e-12);
        let ra = filter_matrix(&eq.graph, &eq.r);
        assert!(norm_fro(&ra.sub(&g.to_dense())) < 1e-12);
        assert!(eq.basis.is_nonderogatory());
        assert_eq!(eq.basis.chains(), &[vec![1], vec![1]]);
    }

    #[test]
    fn equivalent_shift_fast_path() {
        let g = cycle(5);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let eq = equivalent_shift(&g, &b, &Tolerances::default()).unwrap();
        assert_eq!(eq.graph, g);
        assert_eq!(eq.r, Polynomial::x());
    }

    #[test]
    fn equivalent_shift_two_blocks() {
        let g = real_graph(&[
            vec![1.0, 1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0],
        ]);
        let b = jordan_decompose(&g, &DecomposeOptions::exact()).unwrap();
        assert_eq!(b.chains(), &[vec![2, 2]]);
        let eq = equivalent_shift(&g, &b, &Tolerances::default()).unwrap();
        assert_eq!(eq.basis.chains(), &[vec![2], vec![2]]);
        let ra = filter_matrix(&eq.graph, &eq.r);
        assert!(norm_fro(&ra.sub(&g.to_dense())) < 1e-10);
        let h = poly(&[0.3, -1.0, 0.5]);
        let direct = filter_matrix(&g, &h);
        let via = filter_matrix(&eq.graph, &h.compose(&eq.r));
        assert!(norm_fro(&direct.sub(&via)) < 1e-10);
    }

    #[test]
    fn z_transform_diag() {
        let tol = Tolerances::default();
        let g = real_graph(&[vec![1.0, 0.0], vec![0.0, 2.0]]);
        let bt = jordan_decompose(&g.transpose(), &DecomposeOptions::default()).unwrap();
        let z = ZTransform::new(&g, &bt, &tol).unwrap();
        for (n, b) in z.polynomials().iter().enumerate() {
            for (m, l) in bt.eigenvalues().iter().enumerate() {
                assert!((b.eval(l) - bt.v()[(n, m)]).norm() < 1e-12);
            }
        }
        let s = GraphSignal::from_real(&g, &[3.0, -1.0]).unwrap();
        let out = z.filter(&Polynomial::x(), &s).unwrap();
        assert!(max_diff(out.values(), &[c64(3.0, 0.0), c64(-2.0, 0.0)]) < 1e-12);
    }

    #[test]
    fn z_transform_defective_exact() {
        let tol = Tolerances::default();
        let g = real_graph(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        let bt = jordan_decompose(&g.transpose(), &DecomposeOptions::exact()).unwrap();
        let z = ZTransform::new(&g, &bt, &tol).unwrap();
        let v = bt.v();
        for (n, b) in z.polynomials().iter().enumerate() {
            assert!((b.eval(&c64(0.0, 0.0)) - v[(n, 0)]).norm() < 1e-15);
            assert!((b.eval_derivative(&c64(0.0, 0.0), 1) - v[(n, 1)]).norm() < 1e-15);
        }
        let s = GraphSignal::from_real(&g, &[2.0, 5.0]).unwrap();
        let h = poly(&[1.5, -2.0]);
        let out = z.filter(&h, &s).unwrap();
        let direct = apply_filter(&g, &GraphFilter::new(&g, h), &s).unwrap();
        assert!(max_diff(out.values(), direct.values()) < 1e-12);
    }

    #[test]
    fn z_transform_requires_single_chains() {
        let g = real_graph(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let bt = jordan_decompose(&g.transpose(), &DecomposeOptions::default()).unwrap();
        assert!(matches!(ZTransform::new(&g, &bt, &Tolerances::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn z_transform_cycle_is_classical() {
        let g = cycle(6);
        let bt = jordan_decompose(&g.transpose(), &DecomposeOptions::default()).unwrap();
        let z = ZTransform::new(&g, &bt, &Tolerances::default()).unwrap();
        // up to a per-eigenvector scale, b_n(λ) = λⁿ b_0(λ)
        for l in bt.eigenvalues() {
            let b0 = z.polynomials()[0].eval(l);
            for (n, b) in z.polynomials().iter().enumerate() {
                assert!((b.eval(l) - b0 * l.powu(n as u32)).norm() < 1e-10);
            }
        }
    }
}
