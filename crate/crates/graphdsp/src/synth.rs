//! Seeded synthetic datasets standing in for sensor fields, labelled
//! networks and call logs.

use graphdsp_core::graph::{knn_similarity_graph, Edge, Graph};
use graphdsp_core::matrix::Mat;
use graphdsp_core::spectral::{jordan_decompose, DecomposeOptions};
use graphdsp_core::Complex64;
use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct SmoothFieldParams {
    pub nodes: usize,
    pub k: usize,
    /// Number of leading basis vectors mixed into the signal.
    pub order: usize,
    /// Standard deviation of the added white noise.
    pub noise: f64,
    /// Independent signals drawn on the same graph.
    pub snapshots: usize,
}

impl Default for SmoothFieldParams {
    fn default() -> Self {
        Self { nodes: 150, k: 11, order: 5, noise: 0.0, snapshots: 1 }
    }
}

#[derive(Clone, Debug)]
pub struct SmoothField {
    pub points: Vec<Vec<f64>>,
    pub graph: Graph,
    pub signals: Vec<Vec<f64>>,
}

/// Points uniform in the unit square, their kNN similarity graph, and
/// signals that each mix the eigenvectors with the largest eigenvalues
/// with fresh random weights.
pub fn smooth_field(rng: &mut ChaCha8Rng, p: &SmoothFieldParams, opts: &DecomposeOptions) -> Result<SmoothField> {
    if p.order == 0 || p.order > p.nodes {
        return Err(Error::Invalid(format!("order must lie in 1..={}", p.nodes)));
    }
    if p.snapshots == 0 {
        return Err(Error::Invalid("need at least one snapshot".into()));
    }
    if !p.noise.is_finite() || p.noise < 0.0 {
        return Err(Error::Invalid("noise must be finite and >= 0".into()));
    }
    let points: Vec<Vec<f64>> = (0..p.nodes).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    let graph = knn_similarity_graph(&points, p.k)?;
    let basis = jordan_decompose(&graph, opts)?;
    let mut blocks = basis.blocks();
    blocks.sort_by(|a, b| b.lambda.re.total_cmp(&a.lambda.re));
    let mut signals = Vec::with_capacity(p.snapshots);
    for _ in 0..p.snapshots {
        let mut signal = vec![0.0; p.nodes];
        for b in &blocks[..p.order] {
            let c: f64 = rng.sample(StandardNormal);
            for (n, s) in signal.iter_mut().enumerate() {
                *s += c * basis.v()[(n, b.start)].re;
            }
        }
        for s in signal.iter_mut() {
            *s += p.noise * rng.sample::<f64, _>(StandardNormal);
        }
        signals.push(signal);
    }
    Ok(SmoothField { points, graph, signals })
}

#[derive(Clone, Debug)]
pub struct TwoBlockParams {
    pub block_size: usize,
    pub p_in: f64,
    pub p_out: f64,
}

impl Default for TwoBlockParams {
    fn default() -> Self {
        Self { block_size: 50, p_in: 0.3, p_out: 0.02 }
    }
}

#[derive(Clone, Debug)]
pub struct TwoBlock {
    pub graph: Graph,
    /// +1 for the first block, −1 for the second.
    pub truth: Vec<f64>,
}

fn check_prob(p: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Invalid(format!("{what} must lie in [0, 1]")));
    }
    Ok(())
}

/// Planted partition: each ordered pair of distinct nodes gets a unit edge
/// with probability `p_in` inside a block and `p_out` across.
pub fn two_block(rng: &mut ChaCha8Rng, p: &TwoBlockParams) -> Result<TwoBlock> {
    check_prob(p.p_in, "p_in")?;
    check_prob(p.p_out, "p_out")?;
    let n = 2 * p.block_size;
    let truth: Vec<f64> = (0..n).map(|i| if i < p.block_size { 1.0 } else { -1.0 }).collect();
    let mut edges = Vec::new();
    for src in 0..n {
        for dst in 0..n {
            if src == dst {
                continue;
            }
            let prob = if truth[src] == truth[dst] { p.p_in } else { p.p_out };
            if rng.gen::<f64>() < prob {
                edges.push(Edge::new(src, dst, Complex64::new(1.0, 0.0)));
            }
        }
    }
    Ok(TwoBlock { graph: Graph::build(n, &edges)?, truth })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SeedStrategy {
    Random,
    /// Highest out-degree plus in-degree first, ties by index.
    MostLinks,
}

/// `count` distinct nodes in ascending order.
pub fn select_seeds(rng: &mut ChaCha8Rng, g: &Graph, count: usize, strategy: SeedStrategy) -> Result<Vec<usize>> {
    let n = g.n_nodes();
    if count == 0 || count > n {
        return Err(Error::Invalid(format!("seed count must lie in 1..={n}")));
    }
    let mut seeds = match strategy {
        SeedStrategy::Random => index::sample(rng, n, count).into_vec(),
        SeedStrategy::MostLinks => {
            let mut degree = vec![0usize; n];
            for e in g.edges() {
                degree[e.src] += 1;
                degree[e.dst] += 1;
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
            order.truncate(count);
            order
        }
    };
    seeds.sort_unstable();
    Ok(seeds)
}

/// Seed count for a fraction of `n` nodes, at least one.
pub fn seed_count(n: usize, fraction: f64) -> usize {
    ((fraction * n as f64).round() as usize).clamp(1, n)
}

/// Ground truth restricted to the seeds, zero elsewhere.
pub fn known_labels(truth: &[f64], seeds: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; truth.len()];
    for &s in seeds {
        out[s] = truth[s];
    }
    out
}

#[derive(Clone, Debug)]
pub struct CallLogParams {
    pub customers: usize,
    pub groups: usize,
    /// Probability of a call between two customers of the same group.
    pub p_in: f64,
    pub p_out: f64,
    /// Fraction of groups where churn starts.
    pub at_risk: f64,
    /// Fraction of an at-risk group already gone in the first month.
    pub initial: f64,
    /// Share of call time with churned contacts at which a customer follows.
    pub contagion: f64,
    /// Monthly probability of churning for no visible reason.
    pub noise: f64,
}

impl Default for CallLogParams {
    fn default() -> Self {
        Self {
            customers: 300,
            groups: 10,
            p_in: 0.3,
            p_out: 0.01,
            at_risk: 0.3,
            initial: 0.3,
            contagion: 0.3,
            noise: 0.01,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CallLog {
    /// Symmetric call durations with a zero diagonal.
    pub durations: Mat<f64>,
    /// Cumulative churn indicators for three consecutive months.
    pub months: [Vec<f64>; 3],
}

/// Block-structured call durations; churn starts in a few groups and
/// spreads to customers who spend at least `contagion` of their call time
/// with churned contacts.
pub fn call_log(rng: &mut ChaCha8Rng, p: &CallLogParams) -> Result<CallLog> {
    for (v, what) in
        [(p.p_in, "p_in"), (p.p_out, "p_out"), (p.at_risk, "at_risk"), (p.initial, "initial"), (p.noise, "noise")]
    {
        check_prob(v, what)?;
    }
    if p.groups == 0 || p.groups > p.customers {
        return Err(Error::Invalid(format!("groups must lie in 1..={}", p.customers)));
    }
    let n = p.customers;
    let group: Vec<usize> = (0..n).map(|i| i * p.groups / n).collect();
    let mut t = Mat::<f64>::zeros(n, n);
    for a in 0..n {
        for b in a + 1..n {
            let (prob, mean) = if group[a] == group[b] { (p.p_in, 10.0) } else { (p.p_out, 2.0) };
            if rng.gen::<f64>() < prob {
                // exponential call time
                let d = -mean * (1.0 - rng.gen::<f64>()).ln();
                t[(a, b)] = d;
                t[(b, a)] = d;
            }
        }
    }
    let risky: Vec<bool> = (0..p.groups).map(|_| rng.gen::<f64>() < p.at_risk).collect();
    let first: Vec<f64> = (0..n)
        .map(|i| {
            let start = risky[group[i]] && rng.gen::<f64>() < p.initial;
            let noise = rng.gen::<f64>() < p.noise;
            if start || noise {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    let mut step = |s: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let row = t.row(i);
                let total: f64 = row.iter().sum();
                let churned: f64 = row.iter().zip(s).map(|(d, c)| d * c).sum();
                let follows = total > 0.0 && churned >= p.contagion * total;
                let noise = rng.gen::<f64>() < p.noise;
                if s[i] == 1.0 || follows || noise {
                    1.0
                } else {
                    0.0
                }
            })
            .collect()
    };
    let second = step(&first);
    let third = step(&second);
    Ok(CallLog { durations: t, months: [first, second, third] })
}

/// Call durations as a graph: the edge `m → n` carries `T[n, m]`.
pub fn durations_graph(t: &Mat<f64>) -> Result<Graph> {
    let n = t.rows();
    let mut edges = Vec::new();
    for r in 0..n {
        for (c, &v) in t.row(r).iter().enumerate() {
            if v != 0.0 {
                edges.push(Edge::new(c, r, Complex64::new(v, 0.0)));
            }
        }
    }
    Ok(Graph::build(n, &edges)?)
}

/// Inverse of [`durations_graph`]; the weights must be real.
pub fn durations_from_graph(g: &Graph) -> Result<Mat<f64>> {
    let n = g.n_nodes();
    let mut t = Mat::<f64>::zeros(n, n);
    for e in g.edges() {
        if e.weight.im != 0.0 {
            return Err(Error::Invalid("call durations must be real".into()));
        }
        t[(e.dst, e.src)] = e.weight.re;
    }
    Ok(t)
}
