//! Test-side oracles built on nalgebra and integer arithmetic, independent of
//! the library's own linear algebra.
#![allow(dead_code)]

use graphdsp_core::graph::{Edge, Graph};
use graphdsp_core::matrix::CMatrix;
use graphdsp_core::poly::Polynomial;
use graphdsp_core::Complex64;
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type NMat = DMatrix<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn to_na(m: &CMatrix) -> NMat {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn int_to_na(m: &[Vec<i64>]) -> NMat {
    DMatrix::from_fn(m.len(), m.len(), |i, j| c(m[i][j] as f64))
}

pub fn graph_from_na(a: &NMat) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            if a[(i, j)] != c(0.0) {
                edges.push(Edge::new(j, i, a[(i, j)]));
            }
        }
    }
    Graph::build(a.nrows(), &edges).unwrap()
}

pub fn fro(m: &NMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `h(M)` by Horner's rule.
pub fn horner(h: &[Complex64], m: &NMat) -> NMat {
    let n = m.nrows();
    let mut acc = NMat::zeros(n, n);
    for coef in h.iter().rev() {
        acc = &acc * m;
        for i in 0..n {
            acc[(i, i)] += *coef;
        }
    }
    acc
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn rel_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let d: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    vec_norm(&d) / vec_norm(b).max(1.0)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_taps(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| random_complex(rng)).collect()
}

pub fn poly(coeffs: &[Complex64]) -> Polynomial {
    Polynomial::new(coeffs.to_vec())
}

/// Coefficients of `∏ (x − r)` over `roots`, ascending.
pub fn poly_from_roots(roots: &[f64]) -> Vec<f64> {
    let mut p = vec![1.0];
    for &r in roots {
        let mut next = vec![0.0; p.len() + 1];
        for (k, &a) in p.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= r * a;
        }
        p = next;
    }
    p
}

/// A seeded similarity instance `V₀ J₀ V₀⁻¹` with integer entries, where
/// `V₀` is a product of elementary integer row operations so that its
/// inverse is known exactly.
pub struct JordanInstance {
    pub a: Vec<Vec<i64>>,
    /// `(eigenvalue, block sizes)`, sizes sorted descending.
    pub blocks: Vec<(i64, Vec<usize>)>,
}

fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn int_identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Builds the instance for the prescribed structure.
pub fn jordan_instance(rng: &mut ChaCha8Rng, blocks: &[(i64, Vec<usize>)]) -> JordanInstance {
    let n: usize = blocks.iter().flat_map(|(_, s)| s).sum();
    let mut j0 = vec![vec![0i64; n]; n];
    let mut at = 0;
    for (lambda, sizes) in blocks {
        for &s in sizes {
            for k in 0..s {
                j0[at + k][at + k] = *lambda;
                if k + 1 < s {
                    j0[at + k][at + k + 1] = 1;
                }
            }
            at += s;
        }
    }
    let mut v = int_identity(n);
    let mut v_inv = int_identity(n);
    for _ in 0..2 * n {
        let (i, j) = loop {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                break (i, j);
            }
        };
        let k = [-1i64, 1, 2][rng.gen_range(0..3)];
        let mut e = int_identity(n);
        e[i][j] = k;
        let mut e_inv = int_identity(n);
        e_inv[i][j] = -k;
        v = int_matmul(&v, &e);
        v_inv = int_matmul(&e_inv, &v_inv);
    }
    debug_assert_eq!(int_matmul(&v, &v_inv), int_identity(n));
    let a = int_matmul(&int_matmul(&v, &j0), &v_inv);
    let mut blocks = blocks.to_vec();
    for (_, s) in blocks.iter_mut() {
        s.sort_unstable_by(|x, y| y.cmp(x));
    }
    JordanInstance { a, blocks }
}

/// Random structure on `n` nodes: one to three distinct eigenvalues, each
/// split into one or more blocks; `defective` forces a block of size ≥ 2.
pub fn random_structure(rng: &mut ChaCha8Rng, n: usize, defective: bool) -> Vec<(i64, Vec<usize>)> {
    loop {
        let distinct = rng.gen_range(1..=3.min(n));
        let mut pool = vec![-2i64, -1, 0, 1, 2, 3];
        let mut lambdas = Vec::new();
        for _ in 0..distinct {
            lambdas.push(pool.remove(rng.gen_range(0..pool.len())));
        }
        // random composition of n into `distinct` positive parts
        let mut alg = vec![1usize; distinct];
        for _ in distinct..n {
            alg[rng.gen_range(0..distinct)] += 1;
        }
        let mut out = Vec::new();
        for (lambda, m) in lambdas.into_iter().zip(alg) {
            let mut sizes = Vec::new();
            let mut left = m;
            while left > 0 {
                let s = rng.gen_range(1..=left);
                sizes.push(s);
                left -= s;
            }
            out.push((lambda, sizes));
        }
        let has_big = out.iter().any(|(_, s)| s.iter().any(|&x| x >= 2));
        let all_zero = out.iter().all(|(l, s)| *l == 0 && s.iter().all(|&x| x == 1));
        if (!defective || has_big) && !all_zero {
            out.sort_by_key(|(l, _)| *l);
            return out;
        }
    }
}
