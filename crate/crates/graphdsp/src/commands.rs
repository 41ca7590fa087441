//! Command handlers. Each writes its result files plus `summary.json` into
//! the output directory and returns the command name.

use std::fs;
use std::path::{Path, PathBuf};

use graphdsp_core::apps::{self, ClassifierFilter, CHURN_THRESHOLD, LP_MAX_TAPS, LP_MIN_TAPS, MAX_BITS};
use graphdsp_core::config::Tolerances;
use graphdsp_core::filtering::{self, GraphFilter};
use graphdsp_core::graph::{self, knn_similarity_graph, normalize_call_graph, Graph, GraphSignal};
use graphdsp_core::poly::min_poly;
use graphdsp_core::spectral::{self, describe_chains, jordan_decompose, DecomposeOptions, SpectralBasis, Spectrum};
use graphdsp_core::Complex64;
use serde_json::{json, Map, Value};

use crate::cli::{
    ChurnCmd, ClassifyCmd, Cli, Command, CompressArgs, FilterCmd, GraphCmd, LpCmd, SpectralCmd, SynthCmd,
};
use crate::error::{Error, Result};
use crate::io::json::{from_json, to_json, BasisJson, ClassifierJson, PolyJson};
use crate::io::text::{self, fmt_f64};
use crate::io::{self as fio, load};
use crate::synth::{self, CallLogParams, SmoothFieldParams, TwoBlockParams};

/// Settings shared by every command plus the outputs collected so far.
struct Run {
    seed: u64,
    opts: DecomposeOptions,
    overrides: Map<String, Value>,
    out: PathBuf,
    outputs: Vec<String>,
    metrics: Map<String, Value>,
}

impl Run {
    fn tol(&self) -> &Tolerances {
        &self.opts.tol
    }

    fn write(&mut self, name: &str, bytes: impl AsRef<[u8]>) -> Result<()> {
        fio::write_bytes(&self.out.join(name), bytes.as_ref())?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn metric(&mut self, key: &str, value: impl Into<Value>) {
        self.metrics.insert(key.to_string(), value.into());
    }

    fn graph(&self, path: &Path) -> Result<Graph> {
        let threshold = self.tol().dense_threshold;
        load(path, |t| text::graph_from_edges(&text::parse_edges(t)?, threshold))
    }

    fn signal(&self, g: &Graph, path: &Path) -> Result<GraphSignal> {
        load(path, |t| Ok(GraphSignal::new(g, text::parse_signal(t)?)?))
    }

    fn filter(&self, g: &Graph, path: &Path) -> Result<GraphFilter> {
        let trim = self.tol().trim;
        load(path, |t| from_json::<PolyJson>(t)?.to_filter(g, trim))
    }

    fn basis(&self, g: &Graph) -> Result<SpectralBasis> {
        Ok(jordan_decompose(g, &self.opts)?)
    }

    fn finish(mut self, name: &str) -> Result<()> {
        self.outputs.push("summary.json".into());
        let summary = json!({
            "command": name,
            "seed": self.seed,
            "backend": self.opts.backend.as_str(),
            "tolerance_overrides": self.overrides,
            "outputs": self.outputs,
            "metrics": self.metrics,
        });
        fio::write_bytes(&self.out.join("summary.json"), to_json(&summary)?.as_bytes())
    }
}

fn energy(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

pub fn execute(cli: &Cli) -> Result<&'static str> {
    let mut tol = Tolerances::default();
    let mut overrides = Map::new();
    for (name, value) in &cli.tol {
        tol.set(name, *value)?;
        overrides.insert(name.clone(), json!(value));
    }
    fs::create_dir_all(&cli.out).map_err(|e| Error::Io(e).in_file(&cli.out))?;
    let mut run = Run {
        seed: cli.seed,
        opts: DecomposeOptions { backend: cli.backend.into(), allow_defective: false, tol },
        overrides,
        out: cli.out.clone(),
        outputs: Vec::new(),
        metrics: Map::new(),
    };
    let name = match &cli.command {
        Command::Graph(GraphCmd::Build(a)) => {
            graph_build(&mut run, a.input.coords.as_deref(), a.input.edges.as_deref(), a.k)?;
            "graph build"
        }
        Command::Synth(s) => synth_cmd(&mut run, s)?,
        Command::Shift(a) => {
            let g = run.graph(&a.graph)?;
            let s = run.signal(&g, &a.signal)?;
            let out = graph::graph_shift(&g, &s)?;
            run.metric("energy_in", energy(s.values()));
            run.metric("energy_out", energy(out.values()));
            run.write("shifted.csv", text::format_signal(out.values()))?;
            "shift"
        }
        Command::Filter(f) => filter_cmd(&mut run, f)?,
        Command::Gft(a) => {
            let g = run.graph(&a.graph)?;
            let s = run.signal(&g, &a.signal)?;
            let basis = run.basis(&g)?;
            let spec = spectral::gft(&basis, &s)?;
            run.metric("cond_v", basis.cond_v());
            run.write("spectrum.csv", text::format_signal(spec.coeffs()))?;
            "gft"
        }
        Command::Igft { graph, spectrum } => {
            let g = run.graph(graph)?;
            let basis = run.basis(&g)?;
            let coeffs = load(spectrum, text::parse_signal)?;
            let spec = Spectrum::new(&basis, coeffs)?;
            let s = spectral::igft(&basis, &spec)?;
            run.metric("cond_v", basis.cond_v());
            run.write("recovered.csv", text::format_signal(s.values()))?;
            "igft"
        }
        Command::Lp(l) => lp_cmd(&mut run, l)?,
        Command::Compress(a) => {
            compress_cmd(&mut run, a)?;
            "compress"
        }
        Command::Classify(c) => classify_cmd(&mut run, c)?,
        Command::Churn(c) => churn_cmd(&mut run, c)?,
        Command::Spectral(SpectralCmd::Decompose { graph }) => {
            let g = run.graph(graph)?;
            let basis = run.basis(&g)?;
            run.metric("nodes", basis.n());
            run.metric("distinct_eigenvalues", basis.eigenvalues().len());
            run.metric("min_poly_degree", basis.min_poly_degree());
            run.metric("diagonalizable", basis.is_diagonalizable());
            run.metric("cond_v", basis.cond_v());
            run.metric("chains", describe_chains(&basis));
            run.write("basis.json", to_json(&BasisJson::from_basis(&basis))?)?;
            "spectral decompose"
        }
    };
    run.finish(name)?;
    Ok(name)
}

fn graph_build(run: &mut Run, coords: Option<&Path>, edges: Option<&Path>, k: Option<usize>) -> Result<()> {
    let g = match (coords, edges) {
        (Some(path), None) => {
            let k = k.ok_or_else(|| Error::Invalid("--coords needs --k".into()))?;
            let points = load(path, text::parse_coords)?;
            knn_similarity_graph(&points, k)?
        }
        (None, Some(path)) => run.graph(path)?,
        _ => return Err(Error::Invalid("give exactly one of --coords and --edges".into())),
    };
    run.metric("nodes", g.n_nodes());
    run.metric("edges", g.nnz());
    run.metric("fingerprint", g.id().to_hex());
    run.metric("hermitian", g.is_hermitian());
    run.write("graph.edges", text::format_edges(&g))
}

fn synth_cmd(run: &mut Run, s: &SynthCmd) -> Result<&'static str> {
    let mut rng = synth::rng(run.seed);
    match s {
        SynthCmd::SmoothField { nodes, k, order, noise, snapshots } => {
            let p = SmoothFieldParams { nodes: *nodes, k: *k, order: *order, noise: *noise, snapshots: *snapshots };
            let field = synth::smooth_field(&mut rng, &p, &run.opts)?;
            run.metric("nodes", *nodes);
            run.metric("fingerprint", field.graph.id().to_hex());
            run.write("coords.csv", text::format_coords(&field.points))?;
            run.write("graph.edges", text::format_edges(&field.graph))?;
            for (i, signal) in field.signals.iter().enumerate() {
                let values: Vec<Complex64> = signal.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                let name = if i == 0 { "signal.csv".to_string() } else { format!("signal_{}.csv", i + 1) };
                run.write(&name, text::format_signal(&values))?;
            }
            Ok("synth smooth-field")
        }
        SynthCmd::TwoBlock { block_size, p_in, p_out, known, select } => {
            let p = TwoBlockParams { block_size: *block_size, p_in: *p_in, p_out: *p_out };
            let tb = synth::two_block(&mut rng, &p)?;
            let count = synth::seed_count(tb.truth.len(), *known);
            let seeds = synth::select_seeds(&mut rng, &tb.graph, count, *select)?;
            run.metric("nodes", tb.truth.len());
            run.metric("edges", tb.graph.nnz());
            run.metric("seeds", seeds.clone());
            run.write("graph.edges", text::format_edges(&tb.graph))?;
            run.write("truth.csv", text::format_node_values(&tb.truth, "label"))?;
            run.write("known.csv", text::format_node_values(&synth::known_labels(&tb.truth, &seeds), "label"))?;
            Ok("synth two-block")
        }
        SynthCmd::CallLog { customers, groups, p_in, p_out, at_risk, initial, contagion, noise } => {
            let p = CallLogParams {
                customers: *customers,
                groups: *groups,
                p_in: *p_in,
                p_out: *p_out,
                at_risk: *at_risk,
                initial: *initial,
                contagion: *contagion,
                noise: *noise,
            };
            let log = synth::call_log(&mut rng, &p)?;
            let churned: Vec<usize> = log.months.iter().map(|m| m.iter().filter(|v| **v == 1.0).count()).collect();
            run.metric("customers", *customers);
            run.metric("churned_per_month", churned);
            run.write("calls.edges", text::format_edges(&synth::durations_graph(&log.durations)?))?;
            for (i, m) in log.months.iter().enumerate() {
                run.write(&format!("month{}.csv", i + 1), text::format_node_values(m, "indicator"))?;
            }
            Ok("synth call-log")
        }
    }
}

fn filter_cmd(run: &mut Run, f: &FilterCmd) -> Result<&'static str> {
    match f {
        FilterCmd::Apply { graph, taps, signal } => {
            let g = run.graph(graph)?;
            let h = run.filter(&g, taps)?;
            let s = run.signal(&g, signal)?;
            let out = filtering::apply_filter(&g, &h, &s)?;
            run.metric("taps", h.taps().coeffs().len());
            run.write("filtered.csv", text::format_signal(out.values()))?;
            Ok("filter apply")
        }
        FilterCmd::Invert { graph, taps } => {
            let g = run.graph(graph)?;
            let h = run.filter(&g, taps)?;
            let basis = run.basis(&g)?;
            let inv = filtering::invert_filter(&h, &basis, run.tol())?;
            run.metric("cond_v", basis.cond_v());
            run.metric("inverse_taps", inv.taps().coeffs().len());
            run.write("inverse.json", to_json(&PolyJson::from_filter(&inv))?)?;
            Ok("filter invert")
        }
        FilterCmd::Reduce { graph, taps } => {
            let g = run.graph(graph)?;
            let h = run.filter(&g, taps)?;
            let basis = run.basis(&g)?;
            let reduced = filtering::reduce_filter(&h, &min_poly(&basis))?;
            run.metric("taps_in", h.taps().coeffs().len());
            run.metric("taps_out", reduced.taps().coeffs().len());
            run.write("reduced.json", to_json(&PolyJson::from_filter(&reduced))?)?;
            Ok("filter reduce")
        }
        FilterCmd::Impulse { graph, taps, response } => {
            let g = run.graph(graph)?;
            if let Some(path) = taps {
                let h = run.filter(&g, path)?;
                let u = filtering::impulse_response(&g, &h)?;
                run.write("impulse.csv", text::format_signal(u.values()))?;
            } else if let Some(path) = response {
                let u = run.signal(&g, path)?;
                let basis = run.basis(&g)?;
                let h = filtering::taps_from_impulse(&g, &basis, &u, run.tol())?;
                run.metric("taps", h.taps().coeffs().len());
                run.write("taps.json", to_json(&PolyJson::from_filter(&h))?)?;
            }
            Ok("filter impulse")
        }
    }
}

fn lp_cmd(run: &mut Run, l: &LpCmd) -> Result<&'static str> {
    match l {
        LpCmd::Fit { graph, signal, taps } => {
            let g = run.graph(graph)?;
            let s = run.signal(&g, signal)?;
            let f = apps::lp_fit(&g, &s, *taps, run.tol())?;
            let r = apps::lp_residual(&g, &f, &s)?;
            run.metric("residual_energy_ratio", energy(r.values()) / energy(s.values()));
            run.write("lp_filter.json", to_json(&PolyJson::from_filter(&f))?)?;
            run.write("residual.csv", text::format_signal(r.values()))?;
            Ok("lp fit")
        }
        LpCmd::Encode { graph, signal, taps, bits } => {
            let g = run.graph(graph)?;
            let s = run.signal(&g, signal)?;
            let f = apps::lp_fit(&g, &s, *taps, run.tol())?;
            let code = apps::lp_encode(&g, &f, &s, *bits)?;
            let bytes = crate::io::lpcode::encode(&code);
            run.metric("bytes", bytes.len());
            run.write("code.gdsplp", bytes)?;
            Ok("lp encode")
        }
        LpCmd::Decode { graph, code, signal } => {
            let g = run.graph(graph)?;
            let bytes = fs::read(code).map_err(|e| Error::Io(e).in_file(code))?;
            let code = crate::io::lpcode::decode(&bytes).map_err(|e| e.in_file(code))?;
            let basis = run.basis(&g)?;
            let decoded = apps::lp_decode(&g, &code.taps, &code, &basis, run.tol())?;
            if let Some(path) = signal {
                let s = run.signal(&g, path)?;
                run.metric("relative_error", apps::relative_error(&s, &decoded));
            }
            run.write("decoded.csv", text::format_signal(decoded.values()))?;
            Ok("lp decode")
        }
        LpCmd::Sweep { graph, signal, max_taps, max_bits } => {
            if !(LP_MIN_TAPS..=LP_MAX_TAPS).contains(max_taps) || !(1..=MAX_BITS).contains(max_bits) {
                return Err(Error::Invalid(format!(
                    "max-taps must lie in {LP_MIN_TAPS}..={LP_MAX_TAPS} and max-bits in 1..={MAX_BITS}"
                )));
            }
            let g = run.graph(graph)?;
            let s = run.signal(&g, signal)?;
            let basis = run.basis(&g)?;
            let mut csv = String::from("L,B,relative_error\n");
            let mut residual = Map::new();
            let mut undecodable = Vec::new();
            for taps in LP_MIN_TAPS..=*max_taps {
                let f = apps::lp_fit(&g, &s, taps, run.tol())?;
                let r = apps::lp_residual(&g, &f, &s)?;
                residual.insert(taps.to_string(), json!(energy(r.values()) / energy(s.values())));
                for bits in 1..=*max_bits {
                    let code = apps::lp_encode(&g, &f, &s, bits)?;
                    // a predictor that is exact on some mode has a singular synthesis filter
                    let err = match apps::lp_decode(&g, &f, &code, &basis, run.tol()) {
                        Ok(decoded) => apps::relative_error(&s, &decoded),
                        Err(graphdsp_core::Error::NotInvertible { .. }) => {
                            if undecodable.last() != Some(&taps) {
                                undecodable.push(taps);
                            }
                            f64::NAN
                        }
                        Err(e) => return Err(e.into()),
                    };
                    csv.push_str(&format!("{taps},{bits},{}\n", fmt_f64(err)));
                }
            }
            run.metric("residual_energy_ratio", residual);
            run.metric("undecodable_taps", undecodable);
            run.write("lp_sweep.csv", csv)?;
            Ok("lp sweep")
        }
    }
}

fn compress_cmd(run: &mut Run, a: &CompressArgs) -> Result<()> {
    let g = run.graph(&a.graph)?;
    let s = run.signal(&g, &a.signal)?;
    let basis = run.basis(&g)?;
    run.metric("cond_v", basis.cond_v());
    if a.sweep {
        let mut csv = String::from("C,relative_error\n");
        for c in 1..=basis.n() {
            let approx = apps::decompress(&basis, &apps::compress(&basis, &s, c)?)?;
            csv.push_str(&format!("{c},{}\n", fmt_f64(apps::relative_error(&s, &approx))));
        }
        run.write("compress_sweep.csv", csv)?;
    } else {
        let c = a.keep.expect("clap requires --keep without --sweep");
        let spec = apps::compress(&basis, &s, c)?;
        let approx = apps::decompress(&basis, &spec)?;
        run.metric("kept", c);
        run.metric("relative_error", apps::relative_error(&s, &approx));
        run.write("compressed.csv", text::format_signal(spec.coeffs()))?;
        run.write("reconstructed.csv", text::format_signal(approx.values()))?;
    }
    Ok(())
}

fn classify_cmd(run: &mut Run, c: &ClassifyCmd) -> Result<&'static str> {
    match c {
        ClassifyCmd::Train { graph, labels, stages, training, split } => {
            let g = run.graph(graph)?;
            let n = g.n_nodes();
            let known = GraphSignal::from_real(&g, &load(labels, |t| text::parse_labels(t, n))?)?;
            let t = match training {
                Some(path) => GraphSignal::from_real(&g, &load(path, |t| text::parse_labels(t, n))?)?,
                None if *split => apps::training_split(&known),
                None => known.clone(),
            };
            let tr = apps::train_classifier(&g, &t, &known, *stages)?;
            run.metric("initial_errors", tr.initial_errors);
            run.metric("stage_errors", tr.stage_errors.clone());
            run.metric("stages", tr.filter.stages().to_vec());
            run.write("classifier.json", to_json(&ClassifierJson::sign(&g, &tr.filter))?)?;
            Ok("classify train")
        }
        ClassifyCmd::Apply { graph, classifier, labels, truth } => {
            let g = run.graph(graph)?;
            let n = g.n_nodes();
            let cj: ClassifierJson = load(classifier, from_json)?;
            if cj.rule != "sign" {
                return Err(Error::Invalid(format!("classifier rule `{}` is not a sign rule", cj.rule)));
            }
            let cf = cj.to_filter(&g)?;
            let known = load(labels, |t| text::parse_labels(t, n))?;
            let predicted = apps::classify(&g, &cf, &GraphSignal::from_real(&g, &known)?)?.real_parts();
            if let Some(path) = truth {
                let truth = load(path, |t| text::parse_labels(t, n))?;
                let held: Vec<usize> = (0..n).filter(|&i| known[i] == 0.0 && truth[i] != 0.0).collect();
                let hits = held.iter().filter(|&&i| predicted[i] == truth[i]).count();
                run.metric("held_out", held.len());
                run.metric("held_out_accuracy", if held.is_empty() { 1.0 } else { hits as f64 / held.len() as f64 });
            }
            run.metric("undecided", predicted.iter().filter(|v| **v == 0.0).count());
            run.write("predicted.csv", text::format_node_values(&predicted, "label"))?;
            Ok("classify apply")
        }
    }
}

fn call_graph(run: &Run, path: &Path) -> Result<Graph> {
    let raw = run.graph(path)?;
    Ok(normalize_call_graph(&synth::durations_from_graph(&raw)?)?)
}

/// Fraction of matching entries between predictions and truth, and the
/// accuracy of always predicting the more common true class.
pub fn churn_scores(predicted: &[bool], truth: &[f64]) -> (f64, f64) {
    let n = truth.len().max(1) as f64;
    let hits = predicted.iter().zip(truth).filter(|(p, t)| **p == (**t == 1.0)).count() as f64;
    let positives = truth.iter().filter(|t| **t == 1.0).count() as f64;
    (hits / n, positives.max(n - positives) / n)
}

fn churn_cmd(run: &mut Run, c: &ChurnCmd) -> Result<&'static str> {
    match c {
        ChurnCmd::Train { calls, current, next, stages } => {
            let g = call_graph(run, calls)?;
            let n = g.n_nodes();
            let now = GraphSignal::from_real(&g, &load(current, |t| text::parse_indicators(t, n))?)?;
            let later = GraphSignal::from_real(&g, &load(next, |t| text::parse_indicators(t, n))?)?;
            let tr = apps::train_churn(&g, &now, &later, *stages, CHURN_THRESHOLD)?;
            run.metric("initial_errors", tr.initial_errors);
            run.metric("stage_errors", tr.stage_errors.clone());
            run.metric("stages", tr.filter.stages().to_vec());
            run.write("churn_filter.json", to_json(&ClassifierJson::threshold(&g, &tr.filter, CHURN_THRESHOLD))?)?;
            Ok("churn train")
        }
        ChurnCmd::Predict { calls, filter, current, truth } => {
            let g = call_graph(run, calls)?;
            let n = g.n_nodes();
            let cj: ClassifierJson = load(filter, from_json)?;
            let tau = match (cj.rule.as_str(), cj.threshold) {
                ("threshold", Some(t)) => t,
                _ => return Err(Error::Invalid("churn filter needs a threshold rule".into())),
            };
            let cf: ClassifierFilter = cj.to_filter(&g)?;
            let s = GraphSignal::from_real(&g, &load(current, |t| text::parse_indicators(t, n))?)?;
            let p = apps::predict_churn(&g, &cf, &s, tau)?;
            if let Some(path) = truth {
                let truth = load(path, |t| text::parse_indicators(t, n))?;
                let (acc, base) = churn_scores(&p.churn, &truth);
                run.metric("accuracy", acc);
                run.metric("baseline_accuracy", base);
            }
            run.metric("predicted_churn", p.churn.iter().filter(|c| **c).count());
            run.metric("row_normalized", p.row_normalized);
            let mut csv = String::from("node_id,score,churn\n");
            for (i, (score, churn)) in p.scores.iter().zip(&p.churn).enumerate() {
                csv.push_str(&format!("{i},{},{}\n", fmt_f64(*score), u8::from(*churn)));
            }
            run.write("churn_scores.csv", csv)?;
            Ok("churn predict")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn churn_baseline() {
        let (acc, base) = churn_scores(&[true, false, false, false], &[1.0, 0.0, 1.0, 0.0]);
        assert_eq!(acc, 0.75);
        assert_eq!(base, 0.5);
    }
}
