//! JSON forms: polynomial and filter taps, classifier stages, spectral basis
//! export.

use graphdsp_core::apps::ClassifierFilter;
use graphdsp_core::filtering::GraphFilter;
use graphdsp_core::graph::Graph;
use graphdsp_core::matrix::CMatrix;
use graphdsp_core::poly::Polynomial;
use graphdsp_core::spectral::SpectralBasis;
use graphdsp_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn check_graph(recorded: &Option<String>, g: &Graph) -> Result<()> {
    match recorded {
        Some(fp) if *fp != g.id().to_hex() => Err(graphdsp_core::Error::GraphMismatch.into()),
        _ => Ok(()),
    }
}

/// `{"coeffs": [[re, im], ...]}`, plus the graph fingerprint for filters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

impl PolyJson {
    pub fn from_poly(p: &Polynomial) -> Self {
        Self { coeffs: p.coeffs().iter().map(pair).collect(), graph: None }
    }

    pub fn from_filter(f: &GraphFilter) -> Self {
        Self { graph: Some(f.graph_id().to_hex()), ..Self::from_poly(f.taps()) }
    }

    pub fn to_poly(&self, trim: f64) -> Result<Polynomial> {
        if self.coeffs.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("coefficients must be finite".into()));
        }
        Ok(Polynomial::with_tolerance(self.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect(), trim))
    }

    /// Binds the taps to `g`, refusing a filter recorded for another graph.
    pub fn to_filter(&self, g: &Graph, trim: f64) -> Result<GraphFilter> {
        check_graph(&self.graph, g)?;
        Ok(GraphFilter::new(g, self.to_poly(trim)?))
    }
}

/// Classifier cascade with its decision rule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierJson {
    pub graph: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    pub stages: Vec<f64>,
}

impl ClassifierJson {
    pub fn sign(g: &Graph, cf: &ClassifierFilter) -> Self {
        Self { graph: g.id().to_hex(), rule: "sign".into(), threshold: None, stages: cf.stages().to_vec() }
    }

    pub fn threshold(g: &Graph, cf: &ClassifierFilter, tau: f64) -> Self {
        Self { rule: "threshold".into(), threshold: Some(tau), ..Self::sign(g, cf) }
    }

    pub fn to_filter(&self, g: &Graph) -> Result<ClassifierFilter> {
        check_graph(&Some(self.graph.clone()), g)?;
        Ok(ClassifierFilter::new(self.stages.clone())?)
    }
}

fn rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(pair).collect()).collect()
}

/// Export of a spectral basis; `v` and `f` are row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisJson {
    pub graph: String,
    pub backend: String,
    pub cond_v: f64,
    pub eigenvalues: Vec<[f64; 2]>,
    pub chain_lengths: Vec<Vec<usize>>,
    pub v: Vec<Vec<[f64; 2]>>,
    pub f: Vec<Vec<[f64; 2]>>,
}

impl BasisJson {
    pub fn from_basis(b: &SpectralBasis) -> Self {
        Self {
            graph: b.graph_id().to_hex(),
            backend: b.backend().as_str().into(),
            cond_v: b.cond_v(),
            eigenvalues: b.eigenvalues().iter().map(pair).collect(),
            chain_lengths: b.chains().to_vec(),
            v: rows(b.v()),
            f: rows(b.f()),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
