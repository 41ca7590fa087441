//! Application pipelines: linear-prediction coding, spectral compression,
//! the adaptive classification filter and churn prediction.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// std-linked builds provide these methods inherently
#[allow(unused_imports)]
use num_traits::Float;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::filtering::{apply_inverse, horner, GraphFilter};
use crate::graph::{check_len, Graph, GraphId, GraphSignal};
use crate::linalg;
use crate::matrix::CMatrix;
use crate::poly::Polynomial;
use crate::spectral::{gft, igft, SpectralBasis, Spectrum};

pub const LP_MIN_TAPS: usize = 2;
pub const LP_MAX_TAPS: usize = 10;
pub const MAX_BITS: u16 = 16;

fn require_real_graph(g: &Graph) -> Result<()> {
    if !g.is_real() {
        return Err(Error::InvalidParameter("graph must have real weights".into()));
    }
    Ok(())
}

fn real_values(s: &GraphSignal, what: &str) -> Result<Vec<f64>> {
    if s.values().iter().any(|z| z.im != 0.0) {
        return Err(Error::InvalidParameter(format!("{what} must be real-valued")));
    }
    Ok(s.real_parts())
}

/// Least-squares linear predictor with `taps` coefficients `h_0 = 0, h_1, …`:
/// minimises `‖s − Σ_{ℓ≥1} h_ℓ Aˡ s‖`, taking the minimum-norm solution when
/// the powers `Aˡ s` are linearly dependent.
pub fn lp_fit(g: &Graph, s: &GraphSignal, taps: usize, tol: &Tolerances) -> Result<GraphFilter> {
    if !(LP_MIN_TAPS..=LP_MAX_TAPS).contains(&taps) {
        return Err(Error::InvalidParameter(format!(
            "tap count must lie in {LP_MIN_TAPS}..={LP_MAX_TAPS}, got {taps}"
        )));
    }
    require_real_graph(g)?;
    check_len(g, s)?;
    real_values(s, "signal")?;
    let n = g.n_nodes();
    let mut columns = Vec::with_capacity(taps - 1);
    let mut x = s.values().to_vec();
    for _ in 1..taps {
        x = g.shift_values(&x);
        columns.push(x.clone());
    }
    let b = CMatrix::from_columns(n, &columns);
    let sv = linalg::svd(&b)?;
    let h = sv.solve_min_norm(s.values(), tol.rank);
    let mut coeffs = vec![Complex64::new(0.0, 0.0)];
    // real data gives a real solution; drop rounding noise in the imaginary part
    coeffs.extend(h.iter().map(|z| Complex64::new(z.re, 0.0)));
    Ok(GraphFilter::new(g, Polynomial::with_tolerance(coeffs, 0.0)))
}

/// Prediction residual `r = (I − h(A)) s`.
pub fn lp_residual(g: &Graph, f: &GraphFilter, s: &GraphSignal) -> Result<GraphSignal> {
    if f.graph_id() != g.id() {
        return Err(Error::GraphMismatch);
    }
    check_len(g, s)?;
    let hs = horner(g, f.taps(), s.values());
    GraphSignal::new(g, s.values().iter().zip(&hs).map(|(a, b)| a - b).collect())
}

/// Uniform mid-rise quantizer parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantHeader {
    pub min: f64,
    pub max: f64,
    pub bits: u16,
}

impl QuantHeader {
    pub fn levels(&self) -> u32 {
        1u32 << self.bits
    }

    /// Bin width `(max − min) / 2ᴮ`.
    pub fn step(&self) -> f64 {
        (self.max - self.min) / self.levels() as f64
    }
}

fn check_bits(bits: u16) -> Result<()> {
    if !(1..=MAX_BITS).contains(&bits) {
        return Err(Error::InvalidParameter(format!("bits must lie in 1..={MAX_BITS}, got {bits}")));
    }
    Ok(())
}

/// Quantizes to `2ᴮ` levels over `[min x, max x]`. A constant input gives
/// all-zero codes.
pub fn quantize(x: &[f64], bits: u16) -> Result<(QuantHeader, Vec<u16>)> {
    check_bits(bits)?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("quantizer input"));
    }
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (min, max) = if x.is_empty() { (0.0, 0.0) } else { (min, max) };
    let header = QuantHeader { min, max, bits };
    if max <= min {
        return Ok((header, vec![0; x.len()]));
    }
    let w = header.step();
    let top = header.levels() - 1;
    let codes = x
        .iter()
        .map(|&v| {
            let c = ((v - min) / w).floor();
            (c.max(0.0) as u32).min(top) as u16
        })
        .collect();
    Ok((header, codes))
}

/// Bin centres `min + (code + ½)·w`; a degenerate header maps back to `min`.
pub fn dequantize(header: &QuantHeader, codes: &[u16]) -> Vec<f64> {
    if header.max <= header.min {
        return vec![header.min; codes.len()];
    }
    let w = header.step();
    codes.iter().map(|&c| header.min + (c as f64 + 0.5) * w).collect()
}

/// Linear-prediction code: taps plus the quantized residual.
#[derive(Clone, Debug, PartialEq)]
pub struct LPCode {
    pub taps: GraphFilter,
    pub codes: Vec<u16>,
    pub header: QuantHeader,
}

impl LPCode {
    pub fn graph_id(&self) -> GraphId {
        self.taps.graph_id()
    }
}

pub fn lp_encode(g: &Graph, f: &GraphFilter, s: &GraphSignal, bits: u16) -> Result<LPCode> {
    check_bits(bits)?;
    require_real_graph(g)?;
    real_values(s, "signal")?;
    let r = lp_residual(g, f, s)?;
    let (header, codes) = quantize(&r.real_parts(), bits)?;
    Ok(LPCode { taps: f.clone(), codes, header })
}

/// Dequantizes the residual and runs the synthesis filter `(I − h(A))⁻¹`,
/// evaluated in the spectral domain of `basis`.
pub fn lp_decode(
    g: &Graph,
    f: &GraphFilter,
    code: &LPCode,
    basis: &SpectralBasis,
    tol: &Tolerances,
) -> Result<GraphSignal> {
    if f.graph_id() != g.id() || code.graph_id() != g.id() || basis.graph_id() != g.id() {
        return Err(Error::GraphMismatch);
    }
    if code.codes.len() != g.n_nodes() {
        return Err(Error::DimensionMismatch { expected: g.n_nodes(), found: code.codes.len() });
    }
    let r = GraphSignal::from_real(g, &dequantize(&code.header, &code.codes))?;
    let synthesis = &Polynomial::one() - f.taps();
    apply_inverse(&synthesis, basis, &r, tol)
}

/// Keeps the `c` largest-magnitude coefficients of `F s` (ties go to the
/// lower index) and zeros the rest.
pub fn compress(basis: &SpectralBasis, s: &GraphSignal, c: usize) -> Result<Spectrum> {
    let n = basis.n();
    if c == 0 || c > n {
        return Err(Error::InvalidParameter(format!("kept count must lie in 1..={n}, got {c}")));
    }
    let spec = gft(basis, s)?;
    let mut order: Vec<usize> = (0..n).collect();
    let mag: Vec<f64> = spec.coeffs().iter().map(|z| z.norm()).collect();
    order.sort_by(|&a, &b| mag[b].total_cmp(&mag[a]).then(a.cmp(&b)));
    let mut kept = vec![Complex64::new(0.0, 0.0); n];
    for &i in &order[..c] {
        kept[i] = spec.coeffs()[i];
    }
    Spectrum::new(basis, kept)
}

pub fn decompress(basis: &SpectralBasis, spec: &Spectrum) -> Result<GraphSignal> {
    igft(basis, spec)
}

/// `‖s − s̃‖ / ‖s‖` (zero when both vanish).
pub fn relative_error(s: &GraphSignal, approx: &GraphSignal) -> f64 {
    let diff: Vec<Complex64> = s.values().iter().zip(approx.values()).map(|(a, b)| a - b).collect();
    let num = linalg::vec_norm(&diff);
    let den = s.norm();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// For each signal, the index of its largest spectral coefficient; returns
/// the most frequent index (lowest on ties) and the histogram.
pub fn dominant_basis_vector(basis: &SpectralBasis, signals: &[GraphSignal]) -> Result<(usize, Vec<usize>)> {
    if signals.is_empty() {
        return Err(Error::InvalidParameter("need at least one signal".into()));
    }
    let mut hist = vec![0usize; basis.n()];
    for s in signals {
        let spec = gft(basis, s)?;
        let mut best = 0;
        for (i, z) in spec.coeffs().iter().enumerate() {
            if z.norm() > spec.coeffs()[best].norm() {
                best = i;
            }
        }
        hist[best] += 1;
    }
    let mut mode = 0;
    for (i, &c) in hist.iter().enumerate() {
        if c > hist[mode] {
            mode = i;
        }
    }
    Ok((mode, hist))
}

/// When a filtered label value counts as a correct prediction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecisionRule {
    /// Correct iff `s̃_n · s_n > 0`; zero is undecided and counts as wrong.
    Sign,
    /// Positive class iff `s̃_n ≥ τ`; correct iff that matches `s_n ∈ {0, 1}`.
    Threshold(f64),
}

/// Cascade `(I + h_P A) ··· (I + h_1 A)` with nonnegative stages.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifierFilter {
    stages: Vec<f64>,
}

impl ClassifierFilter {
    pub fn new(stages: Vec<f64>) -> Result<Self> {
        if stages.iter().any(|h| !h.is_finite() || *h < 0.0) {
            return Err(Error::InvalidParameter("classifier stages must be finite and nonnegative".into()));
        }
        Ok(Self { stages })
    }

    pub fn stages(&self) -> &[f64] {
        &self.stages
    }
}

/// Training outcome with the error count after each stage.
#[derive(Clone, Debug, PartialEq)]
pub struct Training {
    pub filter: ClassifierFilter,
    pub initial_errors: usize,
    pub stage_errors: Vec<usize>,
    /// `t` after the last stage.
    pub final_values: Vec<f64>,
}

// x + h·A x, the single step shared by training and classification.
fn stage_step(x: &[f64], ax: &[f64], h: f64) -> Vec<f64> {
    x.iter().zip(ax).map(|(v, a)| v + h * a).collect()
}

fn real_shift(g: &Graph, x: &[f64]) -> Vec<f64> {
    let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    g.shift_values(&xc).into_iter().map(|z| z.re).collect()
}

/// Evaluation target: node, desired sign (+1/−1) and whether a margin of
/// exactly zero counts as correct.
struct Target {
    node: usize,
    sign: f64,
    inclusive: bool,
}

fn targets_for(rule: DecisionRule, truth: &[(usize, f64)]) -> (f64, Vec<Target>) {
    match rule {
        DecisionRule::Sign => {
            (0.0, truth.iter().map(|&(node, y)| Target { node, sign: y.signum(), inclusive: false }).collect())
        }
        DecisionRule::Threshold(tau) => (
            tau,
            truth
                .iter()
                .map(|&(node, y)| {
                    let positive = y >= 0.5;
                    Target { node, sign: if positive { 1.0 } else { -1.0 }, inclusive: positive }
                })
                .collect(),
        ),
    }
}

fn is_correct(margin: f64, inclusive: bool) -> bool {
    margin > 0.0 || (inclusive && margin == 0.0)
}

fn count_errors(x: &[f64], tau: f64, targets: &[Target], open: &[usize]) -> usize {
    targets.iter().filter(|t| !is_correct(t.sign * (x[t.node] - tau), t.inclusive)).count()
        + open.iter().filter(|&&n| x[n] == 0.0).count()
}

/// Picks the stage gain: breakpoints where some target flips, midpoints
/// between them (starting from 0) and one point past the last; the smallest
/// gain with the fewest errors wins. Nodes in `open` have no known label and
/// cost one error wherever their value is exactly zero.
fn best_gain(x: &[f64], ax: &[f64], tau: f64, targets: &[Target], open: &[usize]) -> (f64, usize) {
    let mut breaks: Vec<f64> = targets
        .iter()
        .filter(|t| ax[t.node] != 0.0)
        .map(|t| (tau - x[t.node]) / ax[t.node])
        .filter(|h| *h > 0.0 && h.is_finite())
        .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut cands = vec![0.0];
    let mut prev = 0.0;
    for &b in &breaks {
        cands.push(0.5 * (prev + b));
        cands.push(b);
        prev = b;
    }
    cands.push(prev + 1.0);
    cands.sort_by(f64::total_cmp);
    cands.dedup();

    // errors per candidate via a difference array over the sorted candidates
    let k = cands.len();
    let mut diff = vec![0isize; k + 1];
    let mut add = |lo: usize, hi: usize| {
        if lo < hi {
            diff[lo] += 1;
            diff[hi] -= 1;
        }
    };
    for t in targets {
        let c0 = t.sign * (x[t.node] - tau);
        let c1 = t.sign * ax[t.node];
        if c1 == 0.0 {
            if !is_correct(c0, t.inclusive) {
                add(0, k);
            }
            continue;
        }
        let hstar = -c0 / c1;
        let below = cands.partition_point(|&h| h < hstar);
        let upto = cands.partition_point(|&h| h <= hstar);
        if c1 > 0.0 {
            // margin grows with h: wrong before the breakpoint
            add(0, if t.inclusive { below } else { upto });
        } else {
            add(if t.inclusive { upto } else { below }, k);
        }
    }
    for &n in open {
        if ax[n] == 0.0 {
            if x[n] == 0.0 {
                add(0, k);
            }
            continue;
        }
        let hstar = -x[n] / ax[n];
        let i = cands.partition_point(|&h| h < hstar);
        if i < k && cands[i] == hstar {
            add(i, i + 1);
        }
    }
    let mut best = (cands[0], usize::MAX);
    let mut running = 0isize;
    for (i, &h) in cands.iter().enumerate() {
        running += diff[i];
        let e = running as usize;
        if e < best.1 {
            best = (h, e);
        }
    }
    best
}

/// Greedy stage-by-stage training: starting from `start`, each stage picks
/// the gain `h_p ≥ 0` minimising the errors over `truth` under `rule`, then
/// updates `t ← t + h_p A t`. Under the sign rule every node outside `truth`
/// also counts as an error while it is undecided (exactly zero).
pub fn train_with_rule(
    g: &Graph,
    start: &[f64],
    truth: &[(usize, f64)],
    stages: usize,
    rule: DecisionRule,
) -> Result<Training> {
    require_real_graph(g)?;
    if start.len() != g.n_nodes() {
        return Err(Error::DimensionMismatch { expected: g.n_nodes(), found: start.len() });
    }
    if truth.is_empty() {
        return Err(Error::NoKnownLabels);
    }
    if let Some(&(node, _)) = truth.iter().find(|(n, _)| *n >= g.n_nodes()) {
        return Err(Error::IndexOutOfRange { index: node, n_nodes: g.n_nodes() });
    }
    let (tau, targets) = targets_for(rule, truth);
    let open: Vec<usize> = match rule {
        DecisionRule::Sign => {
            let mut known = vec![false; g.n_nodes()];
            for &(n, _) in truth {
                known[n] = true;
            }
            (0..g.n_nodes()).filter(|&n| !known[n]).collect()
        }
        DecisionRule::Threshold(_) => Vec::new(),
    };
    let mut x = start.to_vec();
    let initial_errors = count_errors(&x, tau, &targets, &open);
    let mut gains = Vec::with_capacity(stages);
    let mut stage_errors = Vec::with_capacity(stages);
    for _ in 0..stages {
        let ax = real_shift(g, &x);
        let (h, _) = best_gain(&x, &ax, tau, &targets, &open);
        x = stage_step(&x, &ax, h);
        gains.push(h);
        stage_errors.push(count_errors(&x, tau, &targets, &open));
    }
    Ok(Training { filter: ClassifierFilter { stages: gains }, initial_errors, stage_errors, final_values: x })
}

fn check_labels(s: &GraphSignal, what: &str) -> Result<Vec<f64>> {
    let v = real_values(s, what)?;
    if v.iter().any(|x| *x != 0.0 && *x != 1.0 && *x != -1.0) {
        return Err(Error::InvalidParameter(format!("{what} must take values in {{-1, 0, +1}}")));
    }
    Ok(v)
}

/// Trains the classifier on labels `t` against the known labels with the
/// sign rule. Every nonzero `t_n` must agree with `s_known`.
pub fn train_classifier(g: &Graph, t: &GraphSignal, s_known: &GraphSignal, stages: usize) -> Result<Training> {
    check_len(g, t)?;
    check_len(g, s_known)?;
    let tv = check_labels(t, "training labels")?;
    let kv = check_labels(s_known, "known labels")?;
    let truth: Vec<(usize, f64)> = kv.iter().enumerate().filter(|(_, y)| **y != 0.0).map(|(i, y)| (i, *y)).collect();
    if truth.is_empty() {
        return Err(Error::NoKnownLabels);
    }
    if tv.iter().all(|x| *x == 0.0) {
        return Err(Error::InvalidParameter("training labels are all zero".into()));
    }
    if let Some(n) = (0..tv.len()).find(|&n| tv[n] != 0.0 && tv[n] != kv[n]) {
        return Err(Error::InvalidParameter(format!("training label at node {n} disagrees with the known label")));
    }
    train_with_rule(g, &tv, &truth, stages, DecisionRule::Sign)
}

/// Splits known labels into training labels `t` (every other known node in
/// index order, starting with the first) so that the rest can validate the
/// stage gains.
pub fn training_split(s_known: &GraphSignal) -> GraphSignal {
    let mut take = true;
    let values = s_known
        .values()
        .iter()
        .map(|z| {
            if *z == Complex64::new(0.0, 0.0) {
                return *z;
            }
            let out = if take { *z } else { Complex64::new(0.0, 0.0) };
            take = !take;
            out
        })
        .collect();
    GraphSignal::from_parts(values, s_known.graph_id())
}

/// Filter output `s̃ = (I + h_P A) ··· (I + h_1 A) s`.
pub fn apply_classifier(g: &Graph, cf: &ClassifierFilter, s: &GraphSignal) -> Result<Vec<f64>> {
    require_real_graph(g)?;
    check_len(g, s)?;
    let mut x = real_values(s, "signal")?;
    for &h in cf.stages() {
        let ax = real_shift(g, &x);
        x = stage_step(&x, &ax, h);
    }
    Ok(x)
}

/// Predicted classes `sign(s̃)`, with 0 for undecided nodes.
pub fn classify(g: &Graph, cf: &ClassifierFilter, s: &GraphSignal) -> Result<GraphSignal> {
    let out = apply_classifier(g, cf, s)?;
    let labels: Vec<f64> = out.iter().map(|x| if *x == 0.0 { 0.0 } else { x.signum() }).collect();
    GraphSignal::from_real(g, &labels)
}

pub const CHURN_THRESHOLD: f64 = 0.5;

fn check_indicators(s: &GraphSignal, what: &str) -> Result<Vec<f64>> {
    let v = real_values(s, what)?;
    if v.iter().any(|x| *x != 0.0 && *x != 1.0) {
        return Err(Error::InvalidParameter(format!("{what} must take values in {{0, 1}}")));
    }
    Ok(v)
}

/// Trains a churn filter mapping this period's indicators `current` to the
/// next period's `next`, using the threshold rule.
pub fn train_churn(
    g: &Graph,
    current: &GraphSignal,
    next: &GraphSignal,
    stages: usize,
    threshold: f64,
) -> Result<Training> {
    check_len(g, current)?;
    check_len(g, next)?;
    let start = check_indicators(current, "churn indicators")?;
    let truth: Vec<(usize, f64)> = check_indicators(next, "churn indicators")?.into_iter().enumerate().collect();
    train_with_rule(g, &start, &truth, stages, DecisionRule::Threshold(threshold))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChurnPrediction {
    pub scores: Vec<f64>,
    pub churn: Vec<bool>,
    /// Whether every row of the adjacency sums to 1 or 0; predictions on
    /// other graphs are still produced.
    pub row_normalized: bool,
}

pub fn is_row_normalized(g: &Graph) -> bool {
    let mut sums = vec![Complex64::new(0.0, 0.0); g.n_nodes()];
    for e in g.edges() {
        sums[e.dst] += e.weight;
    }
    sums.iter().all(|s| s.im == 0.0 && (s.re == 0.0 || (s.re - 1.0).abs() <= 1e-12))
}

pub fn predict_churn(g: &Graph, cf: &ClassifierFilter, s: &GraphSignal, threshold: f64) -> Result<ChurnPrediction> {
    check_indicators(s, "churn indicators")?;
    let scores = apply_classifier(g, cf, s)?;
    let churn = scores.iter().map(|x| *x >= threshold).collect();
    Ok(ChurnPrediction { scores, churn, row_normalized: is_row_normalized(g) })
}
