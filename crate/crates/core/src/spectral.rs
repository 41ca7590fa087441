//! Jordan decomposition of the adjacency matrix, the graph Fourier transform
//! `F = V⁻¹`, frequency responses and spectral-domain filtering.
//!
//! Columns of `V` are grouped by distinct eigenvalue (sorted by `(re, im)`),
//! then by Jordan chain (longest first, ties in discovery order), and within
//! a chain run from the eigenvector `v_0` up to `v_{R-1}`, so that
//! `(A − λI) v_r = v_{r−1}`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

// std-linked builds provide these methods inherently
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::exact::{convergents, GaussRat};
use crate::graph::{Graph, GraphId, GraphSignal};
use crate::linalg::{self, cond_1, norm_fro, vec_norm};
use crate::matrix::{CMatrix, Mat};
use crate::poly::{char_poly_exact, eval_on_jordan_block, ExactPolynomial, Polynomial};
use crate::scalar::Scalar;
#[allow(unused_imports)]
use num_traits::Float;

/// Largest denominator tried when recognising exact eigenvalues.
const ROOT_MAX_DEN: u64 = 1 << 24;
/// Largest denominator used when reading floating-point entries as rationals.
const ENTRY_MAX_DEN: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Numeric,
    Exact,
}

impl Backend {
    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Numeric => "numeric",
            Backend::Exact => "exact",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(Backend::Numeric),
            "exact" => Ok(Backend::Exact),
            _ => Err(Error::InvalidParameter(format!("unknown backend `{s}` (expected exact or numeric)"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DecomposeOptions {
    pub backend: Backend,
    /// Build Jordan chains numerically instead of failing on a defective
    /// eigenvalue. Rank decisions then use `tol.cluster`.
    pub allow_defective: bool,
    pub tol: Tolerances,
}

impl DecomposeOptions {
    pub fn exact() -> Self {
        Self { backend: Backend::Exact, ..Self::default() }
    }
}

/// One Jordan block as it appears in `J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JordanBlock {
    /// Index into [`SpectralBasis::eigenvalues`].
    pub eigen: usize,
    pub lambda: Complex64,
    /// First column of the block in `V`.
    pub start: usize,
    pub size: usize,
}

/// Exact counterparts kept by the exact backend.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactParts {
    pub eigenvalues: Vec<GaussRat>,
    pub v: Mat<GaussRat>,
    pub f: Mat<GaussRat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBasis {
    eigenvalues: Vec<Complex64>,
    chains: Vec<Vec<usize>>,
    v: CMatrix,
    f: CMatrix,
    backend: Backend,
    cond_v: f64,
    graph: GraphId,
    exact: Option<ExactParts>,
}

impl SpectralBasis {
    pub fn n(&self) -> usize {
        self.v.rows()
    }

    /// Distinct eigenvalues, sorted by `(re, im)`.
    pub fn eigenvalues(&self) -> &[Complex64] {
        &self.eigenvalues
    }

    /// Chain lengths per eigenvalue, longest first.
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn v(&self) -> &CMatrix {
        &self.v
    }

    pub fn f(&self) -> &CMatrix {
        &self.f
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// `‖V‖₁·‖V⁻¹‖₁`.
    pub fn cond_v(&self) -> f64 {
        self.cond_v
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn exact(&self) -> Option<&ExactParts> {
        self.exact.as_ref()
    }

    pub fn algebraic_multiplicity(&self, m: usize) -> usize {
        self.chains[m].iter().sum()
    }

    /// Degree of the minimal polynomial, `N_A = Σ_m max_d R_{m,d}`.
    pub fn min_poly_degree(&self) -> usize {
        self.chains.iter().map(|c| c.iter().copied().max().unwrap_or(0)).sum()
    }

    /// Whether every eigenvalue has a single chain (`p_A = m_A`).
    pub fn is_nonderogatory(&self) -> bool {
        self.chains.iter().all(|c| c.len() == 1)
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.chains.iter().flatten().all(|&r| r == 1)
    }

    pub fn blocks(&self) -> Vec<JordanBlock> {
        let mut out = Vec::new();
        let mut start = 0;
        for (m, lengths) in self.chains.iter().enumerate() {
            for &size in lengths {
                out.push(JordanBlock { eigen: m, lambda: self.eigenvalues[m], start, size });
                start += size;
            }
        }
        out
    }

    /// The Jordan normal form `J`.
    pub fn jordan_matrix(&self) -> CMatrix {
        let blocks: Vec<CMatrix> = self.blocks().iter().map(|b| jordan_block(b.lambda, b.size)).collect();
        CMatrix::block_diag(&blocks)
    }

    /// `V J F`, the matrix the basis decomposes.
    pub fn reconstruct(&self) -> CMatrix {
        self.v.matmul(&self.jordan_matrix()).matmul(&self.f)
    }

    /// Same basis attached to another graph, e.g. one whose adjacency was
    /// built from these eigenvectors.
    pub fn with_graph(mut self, id: GraphId) -> Self {
        self.graph = id;
        self
    }

    /// Basis with the given eigenvalue per block and the same `V`/`F`,
    /// regrouped and reordered to the canonical layout. Blocks sharing an
    /// eigenvalue (compared exactly) become chains of that eigenvalue.
    pub fn relabeled(&self, block_lambdas: &[Complex64], graph: GraphId) -> Result<Self> {
        let blocks = self.blocks();
        if block_lambdas.len() != blocks.len() {
            return Err(Error::DimensionMismatch { expected: blocks.len(), found: block_lambdas.len() });
        }
        let mut groups: Vec<(Complex64, Vec<(usize, usize)>)> = Vec::new();
        for (b, &lambda) in blocks.iter().zip(block_lambdas) {
            match groups.iter_mut().find(|(l, _)| *l == lambda) {
                Some((_, list)) => list.push((b.start, b.size)),
                None => groups.push((lambda, vec![(b.start, b.size)])),
            }
        }
        groups.sort_by(|a, b| lex_f64(&a.0, &b.0));
        let mut order = Vec::with_capacity(self.n());
        let mut eigenvalues = Vec::new();
        let mut chains = Vec::new();
        for (lambda, mut list) in groups {
            // stable: equal lengths keep their previous order
            list.sort_by(|a, b| b.1.cmp(&a.1));
            eigenvalues.push(lambda);
            chains.push(list.iter().map(|&(_, s)| s).collect());
            for (start, size) in list {
                order.extend(start..start + size);
            }
        }
        let n = self.n();
        let v = CMatrix::from_fn(n, n, |i, j| self.v[(i, order[j])]);
        let f = CMatrix::from_fn(n, n, |i, j| self.f[(order[i], j)]);
        Ok(Self { eigenvalues, chains, v, f, backend: self.backend, cond_v: self.cond_v, graph, exact: None })
    }
}

/// Expansion coefficients of a signal in the columns of `V`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    coeffs: Vec<Complex64>,
    graph: GraphId,
}

impl Spectrum {
    pub fn new(basis: &SpectralBasis, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != basis.n() {
            return Err(Error::DimensionMismatch { expected: basis.n(), found: coeffs.len() });
        }
        if !coeffs.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("spectrum"));
        }
        Ok(Self { coeffs, graph: basis.graph_id() })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }
}

pub fn jordan_block(lambda: Complex64, size: usize) -> CMatrix {
    CMatrix::from_fn(size, size, |i, j| {
        if i == j {
            lambda
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

fn lex_f64(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Jordan decomposition `A = V J V⁻¹` of a graph's adjacency matrix.
pub fn jordan_decompose(g: &Graph, opts: &DecomposeOptions) -> Result<SpectralBasis> {
    match opts.backend {
        Backend::Numeric => {
            if g.n_nodes() > opts.tol.numeric_limit {
                return Err(Error::GraphTooLarge { n_nodes: g.n_nodes(), limit: opts.tol.numeric_limit });
            }
            decompose_numeric(&g.to_dense(), g.id(), opts)
        }
        Backend::Exact => {
            if g.n_nodes() > opts.tol.exact_limit {
                return Err(Error::GraphTooLarge { n_nodes: g.n_nodes(), limit: opts.tol.exact_limit });
            }
            let a = g.to_dense();
            let exact = Mat::from_fn(a.rows(), a.cols(), |i, j| {
                GaussRat::from_complex_rationalized(a[(i, j)], ENTRY_MAX_DEN).expect("graph weights are finite")
            });
            decompose_exact(&exact, g.id())
        }
    }
}

/// Exact decomposition of a matrix over Q(i). Fails with
/// [`Error::ExactUnsupported`] when an eigenvalue is not a Gaussian rational.
pub fn decompose_exact(a: &Mat<GaussRat>, graph: GraphId) -> Result<SpectralBasis> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    let n = a.rows();
    let p = char_poly_exact(a)?;
    let g = p.gcd(&p.derivative());
    let q = p.div_rem(&g)?.0.monic();
    let mut roots = exact_roots(&q)?;
    roots.sort_by(|x, y| x.lex_cmp(y));

    let mut groups: Vec<(GaussRat, Vec<Vec<Vec<GaussRat>>>)> = Vec::new();
    for lambda in roots {
        let mut rest = p.clone();
        let lin = ExactPolynomial::new(vec![-lambda.clone(), GaussRat::one()]);
        let mut alg = 0;
        loop {
            let (quot, rem) = rest.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            alg += 1;
            rest = quot;
        }
        let b = a.shifted(&lambda);
        let chains = staircase(&b, alg, |m| m.nullspace(0.0), 0.0)?;
        groups.push((lambda, chains));
    }

    let mut columns: Vec<Vec<GaussRat>> = Vec::with_capacity(n);
    let mut chains = Vec::new();
    for (_, cs) in &groups {
        chains.push(cs.iter().map(|c| c.len()).collect::<Vec<_>>());
        for c in cs {
            columns.extend(c.iter().cloned());
        }
    }
    if columns.len() != n {
        return Err(Error::DecompositionFailed { residual: f64::INFINITY, tolerance: 0.0 });
    }
    let v = Mat::from_columns(n, &columns);
    let f = v.inverse(0.0).map_err(|_| Error::DecompositionFailed { residual: f64::INFINITY, tolerance: 0.0 })?;
    let vc = v.to_complex();
    let fc = f.to_complex();
    let cond_v = cond_1(&vc, &fc);
    let eigenvalues: Vec<GaussRat> = groups.into_iter().map(|(l, _)| l).collect();
    Ok(SpectralBasis {
        eigenvalues: eigenvalues.iter().map(|l| l.to_complex()).collect(),
        chains,
        v: vc,
        f: fc,
        backend: Backend::Exact,
        cond_v,
        graph,
        exact: Some(ExactParts { eigenvalues, v, f }),
    })
}

// Roots of a squarefree polynomial over Q(i): locate them numerically via the
// companion matrix, then confirm continued-fraction candidates exactly.
fn exact_roots(q: &ExactPolynomial) -> Result<Vec<GaussRat>> {
    let d = q.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    let c = q.coeffs();
    if d == 1 {
        return Ok(vec![-(c[0].clone() / c[1].clone())]);
    }
    let qc: Vec<Complex64> = c.iter().map(|x| x.to_complex()).collect();
    let companion = CMatrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -qc[i] / qc[d]
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let approx = linalg::eigenvalues(&companion)?;
    let mut roots: Vec<GaussRat> = Vec::with_capacity(d);
    for z in approx {
        let found = recognise_root(q, z);
        match found {
            Some(r) if !roots.contains(&r) => roots.push(r),
            _ => return Err(Error::ExactUnsupported(format!("eigenvalue near {z} is not a Gaussian rational"))),
        }
    }
    Ok(roots)
}

fn recognise_root(q: &ExactPolynomial, z: Complex64) -> Option<GaussRat> {
    let mut re = convergents(z.re, ROOT_MAX_DEN);
    let mut im = convergents(z.im, ROOT_MAX_DEN);
    re.push(BigRational::zero());
    im.push(BigRational::zero());
    // nearest candidates first keeps the search short
    let dist = |r: &BigRational, x: f64| (GaussRat::real(r.clone()).to_complex().re - x).abs();
    re.sort_by(|a, b| dist(a, z.re).total_cmp(&dist(b, z.re)));
    im.sort_by(|a, b| dist(a, z.im).total_cmp(&dist(b, z.im)));
    for r in re.iter().take(8) {
        for i in im.iter().take(8) {
            let cand = GaussRat::new(r.clone(), i.clone());
            if q.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Jordan chains of the eigenvalue whose shifted matrix is `b = A − λI`,
/// built level by level from the kernels of `bᵏ`. Each chain is returned as
/// `v_0, …, v_{R−1}` with `b v_r = v_{r−1}` and `b v_0 = 0`; chains come out
/// longest first.
pub(crate) fn staircase<T: Scalar>(
    b: &Mat<T>,
    alg: usize,
    null: impl Fn(&Mat<T>) -> Vec<Vec<T>>,
    rank_tol: f64,
) -> Result<Vec<Vec<Vec<T>>>> {
    let stalled = || Error::DecompositionFailed { residual: f64::INFINITY, tolerance: rank_tol };
    let mut kernels: Vec<Vec<Vec<T>>> = vec![Vec::new()];
    let mut power = b.clone();
    loop {
        let k = null(&power);
        let prev = kernels.last().map_or(0, |k| k.len());
        if k.len() > alg || k.len() <= prev {
            return Err(stalled());
        }
        let done = k.len() == alg;
        kernels.push(k);
        if done {
            break;
        }
        power = power.matmul(b);
    }
    let top = kernels.len() - 1;
    let mut tops: Vec<(Vec<T>, usize)> = Vec::new();
    for level in (1..=top).rev() {
        let mut span: Vec<Vec<T>> = kernels[level - 1].clone();
        for (t, len) in &tops {
            let mut w = t.clone();
            for _ in 0..len - level {
                w = b.matvec(&w);
            }
            span.push(w);
        }
        let mut rank = rank_of(&span, rank_tol);
        for cand in &kernels[level] {
            span.push(cand.clone());
            let r = rank_of(&span, rank_tol);
            if r > rank {
                rank = r;
                tops.push((cand.clone(), level));
            } else {
                span.pop();
            }
        }
        if rank != kernels[level].len() {
            return Err(stalled());
        }
    }
    let mut chains = Vec::with_capacity(tops.len());
    for (t, len) in tops {
        let mut chain = vec![t];
        for _ in 1..len {
            let next = b.matvec(chain.last().expect("nonempty"));
            chain.push(next);
        }
        chain.reverse();
        chains.push(chain);
    }
    Ok(chains)
}

fn rank_of<T: Scalar>(vectors: &[Vec<T>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<T>> = vectors
        .iter()
        .map(|v| {
            // scale each row to unit max-entry so one tolerance fits all
            let m = v.iter().map(|x| x.magnitude()).fold(0.0, f64::max);
            if tol > 0.0 && m > 0.0 {
                let s = T::one() / T::from_f64(m);
                v.iter().map(|x| x.clone() * s.clone()).collect()
            } else {
                v.clone()
            }
        })
        .collect();
    Mat::from_rows(&rows).rank(tol)
}

struct Cluster {
    lambda: Complex64,
    members: Vec<usize>,
}

// Single-linkage grouping of eigenvalues closer than `thresh`.
fn cluster(values: &[Complex64], thresh: f64) -> Vec<Cluster> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].re.total_cmp(&values[b].re));
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if values[j].re - values[i].re > thresh {
                break;
            }
            if (values[i] - values[j]).norm() <= thresh {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut out: Vec<Cluster> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of[r] {
            Some(c) => out[c].members.push(i),
            None => {
                root_of[r] = Some(out.len());
                out.push(Cluster { lambda: Complex64::new(0.0, 0.0), members: vec![i] });
            }
        }
    }
    for c in &mut out {
        let sum: Complex64 = c.members.iter().map(|&i| values[i]).sum();
        let mut mean = sum / c.members.len() as f64;
        // components within the threshold of zero are zero
        if mean.re.abs() <= thresh {
            mean.re = 0.0;
        }
        if mean.im.abs() <= thresh {
            mean.im = 0.0;
        }
        c.lambda = mean;
    }
    out.sort_by(|a, b| lex_f64(&a.lambda, &b.lambda));
    out
}

fn decompose_numeric(a: &CMatrix, graph: GraphId, opts: &DecomposeOptions) -> Result<SpectralBasis> {
    let n = a.rows();
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let tol = &opts.tol;
    let norm_a = norm_fro(a);
    let scale = norm_a.max(f64::MIN_POSITIVE);
    let thresh = tol.cluster * scale.max(1.0);

    // eigenvalue groups with the columns of V that belong to each chain
    let mut groups: Vec<(Complex64, Vec<Vec<Vec<Complex64>>>)> = Vec::new();
    let hermitian = linalg::is_hermitian(a, 0.0);
    if hermitian {
        let (vals, vecs) = linalg::eig_hermitian(a)?;
        let values: Vec<Complex64> = vals.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for c in cluster(&values, thresh) {
            let chains = c.members.iter().map(|&i| vec![vecs.column(i)]).collect();
            groups.push((c.lambda, chains));
        }
    } else {
        let s = linalg::schur(a)?;
        let values: Vec<Complex64> = (0..n).map(|i| s.t[(i, i)]).collect();
        for c in cluster(&values, thresh) {
            if c.members.len() == 1 {
                groups.push((c.lambda, vec![vec![linalg::schur_eigenvector(&s, c.members[0])]]));
                continue;
            }
            let alg = c.members.len();
            let b = a.shifted(&c.lambda);
            let sv = linalg::svd(&b)?;
            let kernel = sv.nullspace(thresh);
            if kernel.len() == alg {
                groups.push((c.lambda, kernel.into_iter().map(|v| vec![v]).collect()));
            } else if kernel.len() < alg && opts.allow_defective {
                let null = |m: &CMatrix| -> Vec<Vec<Complex64>> {
                    match linalg::svd(m) {
                        Ok(sv) => {
                            let t = tol.cluster * sv.max_singular().max(thresh);
                            sv.nullspace(t)
                        }
                        Err(_) => Vec::new(),
                    }
                };
                let mut chains = staircase(&b, alg, null, tol.cluster.sqrt())?;
                for chain in &mut chains {
                    let m = chain.iter().map(|v| vec_norm(v)).fold(0.0, f64::max);
                    for v in chain.iter_mut() {
                        for x in v.iter_mut() {
                            *x /= m;
                        }
                    }
                }
                groups.push((c.lambda, chains));
            } else if kernel.len() < alg {
                return Err(Error::Defective { eigenvalue: c.lambda, algebraic: alg, geometric: kernel.len() });
            } else {
                return Err(Error::DecompositionFailed { residual: f64::INFINITY, tolerance: tol.chain });
            }
        }
    }

    let mut columns = Vec::with_capacity(n);
    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut chains = Vec::with_capacity(groups.len());
    for (lambda, mut cs) in groups {
        // longest chain first; sort is stable so discovery order breaks ties
        cs.sort_by(|x, y| y.len().cmp(&x.len()));
        eigenvalues.push(lambda);
        chains.push(cs.iter().map(|c| c.len()).collect::<Vec<_>>());
        for c in cs {
            columns.extend(c);
        }
    }
    let v = CMatrix::from_columns(n, &columns);
    let f = if hermitian {
        v.conj_transpose()
    } else {
        v.inverse(0.0).map_err(|_| Error::IllConditioned { cond: f64::INFINITY, limit: tol.v_cond_limit })?
    };
    let cond_v = cond_1(&v, &f);
    if !cond_v.is_finite() || cond_v > tol.v_cond_limit {
        return Err(Error::IllConditioned { cond: cond_v, limit: tol.v_cond_limit });
    }
    let basis = SpectralBasis { eigenvalues, chains, v, f, backend: Backend::Numeric, cond_v, graph, exact: None };
    let residual = chain_residual(a, &basis);
    if residual > tol.chain * scale {
        return Err(Error::DecompositionFailed { residual, tolerance: tol.chain * scale });
    }
    Ok(basis)
}

/// Largest `‖(A − λI) v_r − v_{r−1}‖ / ‖v_r‖` over all columns.
pub fn chain_residual(a: &CMatrix, basis: &SpectralBasis) -> f64 {
    let av = a.matmul(basis.v());
    let vj = basis.v().matmul(&basis.jordan_matrix());
    let n = basis.n();
    (0..n)
        .map(|j| {
            let r: f64 = (0..n).map(|i| (av[(i, j)] - vj[(i, j)]).norm_sqr()).sum::<f64>().sqrt();
            r / vec_norm(&basis.v().column(j)).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

fn check_signal(basis: &SpectralBasis, len: usize, id: GraphId) -> Result<()> {
    if len != basis.n() {
        return Err(Error::DimensionMismatch { expected: basis.n(), found: len });
    }
    if id != basis.graph_id() {
        return Err(Error::GraphMismatch);
    }
    Ok(())
}

/// `ŝ = F s`.
pub fn gft(basis: &SpectralBasis, s: &GraphSignal) -> Result<Spectrum> {
    check_signal(basis, s.len(), s.graph_id())?;
    Ok(Spectrum { coeffs: basis.f.matvec(s.values()), graph: basis.graph })
}

/// `s = V ŝ`.
pub fn igft(basis: &SpectralBasis, spec: &Spectrum) -> Result<GraphSignal> {
    check_signal(basis, spec.len(), spec.graph_id())?;
    Ok(GraphSignal::from_parts(basis.v.matvec(&spec.coeffs), basis.graph))
}

/// `h(J)`, assembled block by block.
pub fn frequency_response(h: &Polynomial, basis: &SpectralBasis) -> CMatrix {
    let blocks: Vec<CMatrix> = basis.blocks().iter().map(|b| eval_on_jordan_block(h, &b.lambda, b.size)).collect();
    CMatrix::block_diag(&blocks)
}

/// `h(J) ŝ` without forming the full block-diagonal matrix.
pub fn apply_frequency_response(h: &Polynomial, basis: &SpectralBasis, coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len()];
    for b in basis.blocks() {
        let t = h.taylor(&b.lambda, b.size);
        for i in 0..b.size {
            out[b.start + i] = (i..b.size).map(|j| t[j - i] * coeffs[b.start + j]).sum();
        }
    }
    out
}

/// Filtering in the spectral domain: `V h(J) F s`.
pub fn spectral_filter(basis: &SpectralBasis, h: &Polynomial, s: &GraphSignal) -> Result<GraphSignal> {
    let spec = gft(basis, s)?;
    let filtered = apply_frequency_response(h, basis, spec.coeffs());
    Ok(GraphSignal::from_parts(basis.v.matvec(&filtered), basis.graph))
}

/// Human-readable chain structure such as `1:[2,1] 2:[3]`.
pub fn describe_chains(basis: &SpectralBasis) -> String {
    let mut out = String::new();
    for (l, c) in basis.eigenvalues.iter().zip(&basis.chains) {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(&format!("{l}:{c:?}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int_matrix;
    use crate::graph::Edge;
    use crate::scalar::c64;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n, c64(1.0, 0.0))).collect();
        Graph::build(n, &edges).unwrap()
    }

    fn graph_of(rows: &[Vec<f64>]) -> Graph {
        let m = Mat::from_rows(rows).to_complex();
        Graph::from_dense(m).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn cycle_four_is_the_dft() {
        let g = cycle(4);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let expect = [c64(-1.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(1.0, 0.0)];
        assert_eq!(b.eigenvalues().len(), 4);
        for (l, e) in b.eigenvalues().iter().zip(expect) {
            assert!(close(*l, e, 1e-12), "{l} vs {e}");
        }
        assert!(b.is_diagonalizable());
        // each row of F is a scaled row of the DFT matrix
        for (k, lambda) in b.eigenvalues().iter().enumerate() {
            let row = b.f().row(k);
            for n in 1..4 {
                // (F A)[k] = λ F[k] with A[m+1, m] = 1 gives F[k][m+1] = λ F[k][m]
                assert!(close(row[n], lambda * row[n - 1], 1e-12));
            }
        }
        let fv = b.f().matmul(b.v());
        assert!(norm_fro(&fv.sub(&CMatrix::identity(4))) < 1e-12);
    }

    #[test]
    fn jordan_block_needs_exact_or_override() {
        let g = graph_of(&[vec![5.0, 1.0], vec![0.0, 5.0]]);
        let err = jordan_decompose(&g, &DecomposeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Defective { algebraic: 2, geometric: 1, .. }));
        let b = jordan_decompose(&g, &DecomposeOptions::exact()).unwrap();
        assert_eq!(b.eigenvalues(), &[c64(5.0, 0.0)]);
        assert_eq!(b.chains(), &[vec![2]]);
        let opts = DecomposeOptions { allow_defective: true, ..Default::default() };
        let b = jordan_decompose(&g, &opts).unwrap();
        assert_eq!(b.chains(), &[vec![2]]);
        assert!(norm_fro(&b.reconstruct().sub(&g.to_dense())) < 1e-10);
    }

    fn prescribed() -> (Mat<GaussRat>, Mat<GaussRat>) {
        let v0 = int_matrix(&[
            vec![1, 2, 0, 0, 1, 0],
            vec![0, 1, 1, 0, 0, 0],
            vec![0, 0, 1, 3, 0, 1],
            vec![1, 0, 0, 1, 0, 0],
            vec![0, 0, 2, 0, 1, 0],
            vec![0, 1, 0, 0, 0, 1],
        ]);
        let j0 = int_matrix(&[
            vec![1, 1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 2, 1, 0],
            vec![0, 0, 0, 0, 2, 1],
            vec![0, 0, 0, 0, 0, 2],
        ]);
        (v0, j0)
    }

    #[test]
    fn recovers_prescribed_structure() {
        let (v0, j0) = prescribed();
        let a = v0.matmul(&j0).matmul(&v0.inverse(0.0).unwrap());
        let b = decompose_exact(&a, GraphId([0; 32])).unwrap();
        assert_eq!(b.eigenvalues(), &[c64(1.0, 0.0), c64(2.0, 0.0)]);
        assert_eq!(b.chains(), &[vec![2, 1], vec![3]]);
        // exact chain relation
        let ex = b.exact().unwrap();
        let jx = int_matrix(&[
            vec![1, 1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 2, 1, 0],
            vec![0, 0, 0, 0, 2, 1],
            vec![0, 0, 0, 0, 0, 2],
        ]);
        assert_eq!(a.matmul(&ex.v), ex.v.matmul(&jx));
        assert_eq!(ex.f.matmul(&ex.v), Mat::identity(6));

        // the same matrix through a graph round-trips its rational entries
        let g = Graph::from_dense(a.to_complex()).unwrap();
        let b2 = jordan_decompose(&g, &DecomposeOptions::exact()).unwrap();
        assert_eq!(b2.chains(), b.chains());
    }

    #[test]
    fn exact_complex_eigenvalues() {
        let b = jordan_decompose(&cycle(4), &DecomposeOptions::exact()).unwrap();
        assert_eq!(b.eigenvalues(), &[c64(-1.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(1.0, 0.0)]);
    }

    #[test]
    fn exact_rejects_irrational_spectrum() {
        let g = graph_of(&[vec![0.0, 1.0], vec![2.0, 0.0]]);
        assert!(matches!(jordan_decompose(&g, &DecomposeOptions::exact()), Err(Error::ExactUnsupported(_))));
    }

    #[test]
    fn hermitian_identity_clusters() {
        let g = graph_of(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        assert_eq!(b.eigenvalues(), &[c64(1.0, 0.0)]);
        assert_eq!(b.chains(), &[vec![1, 1]]);
        assert!(!b.is_nonderogatory());
        assert_eq!(b.min_poly_degree(), 1);
    }

    #[test]
    fn gft_examples() {
        let g = cycle(8);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        for k in 0..8 {
            let col = GraphSignal::new(&g, b.v().column(k)).unwrap();
            let spec = gft(&b, &col).unwrap();
            for (i, c) in spec.coeffs().iter().enumerate() {
                let e = if i == k { 1.0 } else { 0.0 };
                assert!(close(*c, c64(e, 0.0), 1e-12));
            }
            assert!(igft(&b, &spec).unwrap().values().iter().zip(col.values()).all(|(x, y)| close(*x, *y, 1e-12)));
        }
        // impulse: every coefficient has the same magnitude up to the row scaling
        let spec = gft(&b, &GraphSignal::impulse(&g)).unwrap();
        for k in 0..8 {
            let row_scale = b.f().row(k).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!((spec.coeffs()[k].norm() - row_scale).abs() < 1e-12);
        }
        let other = cycle(4);
        let s = GraphSignal::impulse(&other);
        assert!(matches!(gft(&b, &s), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn frequency_response_examples() {
        let g = graph_of(&[vec![3.0, 1.0], vec![0.0, 3.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::exact()).unwrap();
        let x = Polynomial::x();
        assert_eq!(frequency_response(&x, &b), b.jordan_matrix());
        let x2 = Polynomial::new(vec![c64(0.0, 0.0), c64(0.0, 0.0), c64(1.0, 0.0)]);
        let h = frequency_response(&x2, &b);
        assert_eq!(h, Mat::from_rows(&[vec![c64(9.0, 0.0), c64(6.0, 0.0)], vec![c64(0.0, 0.0), c64(9.0, 0.0)]]));
        let d = jordan_decompose(&cycle(4), &DecomposeOptions::default()).unwrap();
        let h = frequency_response(&x2, &d);
        for (k, l) in d.eigenvalues().iter().enumerate() {
            assert!(close(h[(k, k)], l * l, 1e-12));
        }
    }

    #[test]
    fn spectral_filter_matches_shift() {
        let g = cycle(8);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let s = GraphSignal::from_real(&g, &[0.3, -1.0, 2.5, 0.0, 1.0, 4.0, -2.0, 0.5]).unwrap();
        let out = spectral_filter(&b, &Polynomial::one(), &s).unwrap();
        assert!(out.values().iter().zip(s.values()).all(|(x, y)| close(*x, *y, 1e-12)));
        let shifted = spectral_filter(&b, &Polynomial::x(), &s).unwrap();
        let direct = crate::graph::graph_shift(&g, &s).unwrap();
        assert!(shifted.values().iter().zip(direct.values()).all(|(x, y)| close(*x, *y, 1e-12)));
    }

    #[test]
    fn relabel_reorders_blocks() {
        let g = graph_of(&[vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 3.0]]);
        let b = jordan_decompose(&g, &DecomposeOptions::default()).unwrap();
        let r = b.relabeled(&[c64(5.0, 0.0), c64(4.0, 0.0), c64(4.0, 0.0)], b.graph_id()).unwrap();
        assert_eq!(r.eigenvalues(), &[c64(4.0, 0.0), c64(5.0, 0.0)]);
        assert_eq!(r.chains(), &[vec![1, 1], vec![1]]);
        assert!(norm_fro(&r.f().matmul(r.v()).sub(&CMatrix::identity(3))) < 1e-14);
    }
}
