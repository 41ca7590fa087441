//! Graphs, graph signals, the graph shift and the graph constructions used
//! by the applications.
//!
//! Orientation: `A[n, m]` is the weight of the directed edge from node `m`
//! to node `n`, so an edge `(src, dst, w)` sets `A[dst, src] = w` and the
//! shift computes `(A s)[n] = Σ_{m ∈ N(n)} A[n, m]·s[m]`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

// std-linked builds provide these methods inherently
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Mat};
use crate::scalar::Scalar;
#[allow(unused_imports)]
use num_traits::Float;

/// Content fingerprint of a graph (SHA-256 over its canonical edge list).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId(pub [u8; 32]);

impl GraphId {
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(64);
        for b in self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Debug for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GraphId({})", &self.to_hex()[..16])
    }
}

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: Complex64,
}

impl Edge {
    pub fn new(src: usize, dst: usize, weight: Complex64) -> Self {
        Self { src, dst, weight }
    }
}

/// Compressed sparse rows; row `n` lists the sources of edges into `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Csr {
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<Complex64>,
}

impl Csr {
    fn row(&self, n: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[n]..self.row_ptr[n + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Adjacency {
    Dense(CMatrix),
    Sparse(Csr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n_nodes: usize,
    adjacency: Adjacency,
    labels: Option<Vec<String>>,
    id: GraphId,
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

impl Graph {
    /// Builds a graph from directed weighted edges, storing the adjacency
    /// densely below the default threshold.
    pub fn build(n_nodes: usize, edges: &[Edge]) -> Result<Self> {
        Self::build_with_threshold(n_nodes, edges, Tolerances::default().dense_threshold)
    }

    pub fn build_with_threshold(n_nodes: usize, edges: &[Edge], dense_threshold: usize) -> Result<Self> {
        if n_nodes == 0 {
            return Err(Error::InvalidParameter("graph needs at least one node".into()));
        }
        let mut sorted: Vec<Edge> = Vec::with_capacity(edges.len());
        for e in edges {
            for idx in [e.src, e.dst] {
                if idx >= n_nodes {
                    return Err(Error::IndexOutOfRange { index: idx, n_nodes });
                }
            }
            if !finite(e.weight) {
                return Err(Error::NonFinite("edge weight"));
            }
            sorted.push(*e);
        }
        // row-major order: by destination row, then source column
        sorted.sort_by_key(|e| (e.dst, e.src));
        for w in sorted.windows(2) {
            if w[0].dst == w[1].dst && w[0].src == w[1].src {
                return Err(Error::DuplicateEdge { src: w[0].src, dst: w[0].dst });
            }
        }
        sorted.retain(|e| !e.weight.is_zero());
        let adjacency = if n_nodes < dense_threshold {
            let mut m = CMatrix::zeros(n_nodes, n_nodes);
            for e in &sorted {
                m[(e.dst, e.src)] = e.weight;
            }
            Adjacency::Dense(m)
        } else {
            let mut row_ptr = vec![0; n_nodes + 1];
            for e in &sorted {
                row_ptr[e.dst + 1] += 1;
            }
            for i in 0..n_nodes {
                row_ptr[i + 1] += row_ptr[i];
            }
            Adjacency::Sparse(Csr {
                row_ptr,
                col_idx: sorted.iter().map(|e| e.src).collect(),
                values: sorted.iter().map(|e| e.weight).collect(),
            })
        };
        let mut g = Self { n_nodes, adjacency, labels: None, id: GraphId([0; 32]) };
        g.id = g.compute_id();
        Ok(g)
    }

    /// Graph whose adjacency is the given square matrix (stored densely).
    pub fn from_dense(a: CMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
        }
        if a.rows() == 0 {
            return Err(Error::InvalidParameter("graph needs at least one node".into()));
        }
        if !a.as_slice().iter().all(|z| finite(*z)) {
            return Err(Error::NonFinite("adjacency"));
        }
        let mut g = Self { n_nodes: a.rows(), adjacency: Adjacency::Dense(a), labels: None, id: GraphId([0; 32]) };
        g.id = g.compute_id();
        Ok(g)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n_nodes {
            return Err(Error::DimensionMismatch { expected: self.n_nodes, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.adjacency, Adjacency::Dense(_))
    }

    /// `A[n, m]`, the weight of the edge from `m` to `n`.
    pub fn weight(&self, n: usize, m: usize) -> Complex64 {
        match &self.adjacency {
            Adjacency::Dense(a) => a[(n, m)],
            Adjacency::Sparse(c) => c.row(n).find(|(j, _)| *j == m).map(|(_, w)| w).unwrap_or_default(),
        }
    }

    /// `{ m : A[n, m] ≠ 0 }`, ascending.
    pub fn neighborhood(&self, n: usize) -> Vec<usize> {
        match &self.adjacency {
            Adjacency::Dense(a) => (0..self.n_nodes).filter(|&m| !a[(n, m)].is_zero()).collect(),
            Adjacency::Sparse(c) => c.row(n).map(|(m, _)| m).collect(),
        }
    }

    /// Nonzero entries as edges, sorted by `(src, dst)`.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for n in 0..self.n_nodes {
            match &self.adjacency {
                Adjacency::Dense(a) => {
                    for m in 0..self.n_nodes {
                        if !a[(n, m)].is_zero() {
                            out.push(Edge::new(m, n, a[(n, m)]));
                        }
                    }
                }
                Adjacency::Sparse(c) => out.extend(c.row(n).map(|(m, w)| Edge::new(m, n, w))),
            }
        }
        out.sort_by_key(|e| (e.src, e.dst));
        out
    }

    pub fn nnz(&self) -> usize {
        match &self.adjacency {
            Adjacency::Dense(a) => a.as_slice().iter().filter(|z| !z.is_zero()).count(),
            Adjacency::Sparse(c) => c.values.len(),
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        match &self.adjacency {
            Adjacency::Dense(a) => a.clone(),
            Adjacency::Sparse(c) => {
                let mut m = CMatrix::zeros(self.n_nodes, self.n_nodes);
                for n in 0..self.n_nodes {
                    for (j, w) in c.row(n) {
                        m[(n, j)] = w;
                    }
                }
                m
            }
        }
    }

    /// Graph with every edge reversed (adjacency `Aᵀ`).
    pub fn transpose(&self) -> Self {
        let edges: Vec<Edge> = self.edges().into_iter().map(|e| Edge::new(e.dst, e.src, e.weight)).collect();
        let threshold = if self.is_dense() { usize::MAX } else { 0 };
        Self::build_with_threshold(self.n_nodes, &edges, threshold).expect("transposed edges are valid")
    }

    /// Relabels nodes: node `i` becomes node `perm[i]` (adjacency `P A Pᵀ`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n_nodes {
            return Err(Error::DimensionMismatch { expected: self.n_nodes, found: perm.len() });
        }
        let mut seen = vec![false; self.n_nodes];
        for &p in perm {
            if p >= self.n_nodes || seen[p] {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen[p] = true;
        }
        let edges: Vec<Edge> =
            self.edges().into_iter().map(|e| Edge::new(perm[e.src], perm[e.dst], e.weight)).collect();
        let threshold = if self.is_dense() { usize::MAX } else { 0 };
        Self::build_with_threshold(self.n_nodes, &edges, threshold)
    }

    pub fn is_real(&self) -> bool {
        self.edges().iter().all(|e| e.weight.im == 0.0)
    }

    /// Exact Hermitian symmetry `A = Aᴴ`.
    pub fn is_hermitian(&self) -> bool {
        (0..self.n_nodes)
            .all(|n| self.neighborhood(n).into_iter().all(|m| self.weight(m, n) == self.weight(n, m).conj()))
    }

    /// `A x` on a raw vector.
    pub fn shift_values(&self, x: &[Complex64]) -> Vec<Complex64> {
        match &self.adjacency {
            Adjacency::Dense(a) => a.matvec(x),
            Adjacency::Sparse(c) => (0..self.n_nodes).map(|n| c.row(n).map(|(m, w)| w * x[m]).sum()).collect(),
        }
    }

    fn compute_id(&self) -> GraphId {
        let mut h = Sha256::new();
        h.update(b"graphdsp-graph-v1");
        h.update((self.n_nodes as u64).to_le_bytes());
        for e in self.edges() {
            h.update((e.src as u64).to_le_bytes());
            h.update((e.dst as u64).to_le_bytes());
            h.update(e.weight.re.to_bits().to_le_bytes());
            h.update(e.weight.im.to_bits().to_le_bytes());
        }
        GraphId(h.finalize().into())
    }
}

/// Complex values attached to the nodes of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSignal {
    values: Vec<Complex64>,
    graph: GraphId,
}

impl GraphSignal {
    pub fn new(g: &Graph, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != g.n_nodes() {
            return Err(Error::DimensionMismatch { expected: g.n_nodes(), found: values.len() });
        }
        if !values.iter().all(|z| finite(*z)) {
            return Err(Error::NonFinite("signal"));
        }
        Ok(Self { values, graph: g.id() })
    }

    pub fn from_real(g: &Graph, values: &[f64]) -> Result<Self> {
        Self::new(g, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(g: &Graph) -> Self {
        Self { values: vec![Complex64::new(0.0, 0.0); g.n_nodes()], graph: g.id() }
    }

    /// Unit impulse at node 0.
    pub fn impulse(g: &Graph) -> Self {
        Self::impulse_at(g, 0)
    }

    pub fn impulse_at(g: &Graph, node: usize) -> Self {
        let mut s = Self::zeros(g);
        s.values[node] = Complex64::new(1.0, 0.0);
        s
    }

    pub(crate) fn from_parts(values: Vec<Complex64>, graph: GraphId) -> Self {
        Self { values, graph }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn norm(&self) -> f64 {
        crate::linalg::vec_norm(&self.values)
    }
}

pub(crate) fn check_len(g: &Graph, s: &GraphSignal) -> Result<()> {
    if s.len() != g.n_nodes() {
        return Err(Error::DimensionMismatch { expected: g.n_nodes(), found: s.len() });
    }
    Ok(())
}

pub fn build_graph(n_nodes: usize, edges: &[Edge]) -> Result<Graph> {
    Graph::build(n_nodes, edges)
}

/// The graph shift `Ã s = A s`.
pub fn graph_shift(g: &Graph, s: &GraphSignal) -> Result<GraphSignal> {
    check_len(g, s)?;
    Ok(GraphSignal::from_parts(g.shift_values(&s.values), g.id()))
}

/// Symmetric K-nearest-neighbour similarity graph over Euclidean points.
pub fn knn_similarity_graph(points: &[Vec<f64>], k: usize) -> Result<Graph> {
    if let Some(first) = points.first() {
        if points.iter().any(|p| p.len() != first.len()) {
            return Err(Error::InvalidParameter("points have differing dimensions".into()));
        }
    }
    knn_similarity_graph_with(points.len(), k, |a, b| {
        points[a].iter().zip(&points[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
    })
}

/// K-nearest-neighbour graph for an arbitrary distance function.
///
/// Each node links to its `k` nearest nodes (distance ties go to the lower
/// index); the relation is symmetrised by union and the weights are
/// `e^{-d²_nm} / sqrt(Σ_{k∈N(n)} e^{-d²_nk} · Σ_{l∈N(m)} e^{-d²_ml})` with the
/// neighbourhoods taken after symmetrisation.
pub fn knn_similarity_graph_with(n: usize, k: usize, dist: impl Fn(usize, usize) -> f64) -> Result<Graph> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("need 1 <= K < N, got K={k}, N={n}")));
    }
    let mut d = vec![0.0; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let v = dist(a, b);
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!("distance between {a} and {b} is {v}")));
            }
            d[a * n + b] = v;
            d[b * n + a] = v;
        }
    }
    let mut linked = vec![false; n * n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for a in 0..n {
        order.clear();
        order.extend((0..n).filter(|&b| b != a));
        order.sort_by(|&x, &y| d[a * n + x].total_cmp(&d[a * n + y]).then(x.cmp(&y)));
        for &b in order.iter().take(k) {
            linked[a * n + b] = true;
            linked[b * n + a] = true;
        }
    }
    let kernel = |a: usize, b: usize| (-d[a * n + b] * d[a * n + b]).exp();
    let sums: Vec<f64> = (0..n).map(|a| (0..n).filter(|&b| linked[a * n + b]).map(|b| kernel(a, b)).sum()).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if linked[a * n + b] {
                let w = kernel(a, b) / (sums[a] * sums[b]).sqrt();
                edges.push(Edge::new(a, b, Complex64::new(w, 0.0)));
                edges.push(Edge::new(b, a, Complex64::new(w, 0.0)));
            }
        }
    }
    Graph::build(n, &edges)
}

/// Row-normalises a matrix of cumulative call durations:
/// `A[n, m] = T[n, m] / Σ_k T[n, k]`; all-zero rows stay zero.
pub fn normalize_call_graph(t: &Mat<f64>) -> Result<Graph> {
    if !t.is_square() {
        return Err(Error::DimensionMismatch { expected: t.rows(), found: t.cols() });
    }
    let n = t.rows();
    let mut edges = Vec::new();
    for r in 0..n {
        let row = t.row(r);
        for (c, &v) in row.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite("call durations"));
            }
            if v < 0.0 {
                return Err(Error::NegativeEntry { row: r, col: c });
            }
        }
        if row[r] != 0.0 {
            return Err(Error::InvalidParameter(format!("call matrix has nonzero diagonal at node {r}")));
        }
        let total: f64 = row.iter().sum();
        if total > 0.0 {
            for (c, &v) in row.iter().enumerate() {
                if v > 0.0 {
                    // A[r, c] is the weight of the edge c -> r
                    edges.push(Edge::new(c, r, Complex64::new(v / total, 0.0)));
                }
            }
        }
    }
    Graph::build(n, &edges)
}
