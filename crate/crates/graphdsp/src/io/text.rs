//! Line-oriented text formats: edge lists and the CSV family (signals,
//! coordinates, labels, churn indicators).

use graphdsp_core::graph::{Edge, Graph};
use graphdsp_core::Complex64;

use crate::error::{Error, Result};

pub const EDGES_MAGIC: &str = "graphdsp-edges v1";

/// Shortest text that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn parse_f64(tok: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = tok.trim().parse().map_err(|_| Error::parse(line, format!("invalid {what} `{}`", tok.trim())))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("{what} must be finite")));
    }
    Ok(v)
}

fn parse_index(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.trim().parse().map_err(|_| Error::parse(line, format!("invalid {what} `{}`", tok.trim())))
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parsed edge-list file.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeList {
    pub n_nodes: usize,
    pub edges: Vec<Edge>,
    /// Hex fingerprint from a `# fingerprint=` line, if present.
    pub fingerprint: Option<String>,
}

pub fn parse_edges(text: &str) -> Result<EdgeList> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let header = loop {
        match lines.next() {
            Some((_, "")) => continue,
            Some((no, l)) => break (no, l),
            None => return Err(Error::parse(1, "empty edge file")),
        }
    };
    let n_nodes = header
        .1
        .strip_prefix(EDGES_MAGIC)
        .and_then(|rest| rest.trim().strip_prefix("N="))
        .ok_or_else(|| Error::parse(header.0, format!("expected header `{EDGES_MAGIC} N=<n>`")))
        .and_then(|n| parse_index(n, header.0, "node count"))?;
    let mut edges = Vec::new();
    let mut fingerprint = None;
    for (no, l) in lines {
        if l.is_empty() {
            continue;
        }
        if let Some(c) = l.strip_prefix('#') {
            if let Some(fp) = c.trim().strip_prefix("fingerprint=") {
                fingerprint = Some(fp.trim().to_string());
            }
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        if !(3..=4).contains(&toks.len()) {
            return Err(Error::parse(no, format!("expected `src dst re [im]`, found {} fields", toks.len())));
        }
        let src = parse_index(toks[0], no, "source node")?;
        let dst = parse_index(toks[1], no, "destination node")?;
        for idx in [src, dst] {
            if idx >= n_nodes {
                return Err(Error::parse(no, format!("node {idx} out of range for N={n_nodes}")));
            }
        }
        let re = parse_f64(toks[2], no, "weight")?;
        let im = if toks.len() == 4 { parse_f64(toks[3], no, "weight")? } else { 0.0 };
        edges.push(Edge::new(src, dst, Complex64::new(re, im)));
    }
    Ok(EdgeList { n_nodes, edges, fingerprint })
}

/// Builds the graph and checks it against the recorded fingerprint.
pub fn graph_from_edges(list: &EdgeList, dense_threshold: usize) -> Result<Graph> {
    let g = Graph::build_with_threshold(list.n_nodes, &list.edges, dense_threshold)?;
    if let Some(fp) = &list.fingerprint {
        if *fp != g.id().to_hex() {
            return Err(Error::Invalid(format!("fingerprint {fp} does not match the edges ({})", g.id())));
        }
    }
    Ok(g)
}

/// Canonical edge file: header, fingerprint, then edges sorted by
/// `(src, dst)`; the imaginary part is written only when nonzero.
pub fn format_edges(g: &Graph) -> String {
    let mut out = format!("{EDGES_MAGIC} N={}\n# fingerprint={}\n", g.n_nodes(), g.id());
    for e in g.edges() {
        out.push_str(&format!("{} {} {}", e.src, e.dst, fmt_f64(e.weight.re)));
        if e.weight.im.to_bits() != 0 {
            out.push(' ');
            out.push_str(&fmt_f64(e.weight.im));
        }
        out.push('\n');
    }
    out
}

/// One value per line, `re` or `re,im`.
pub fn parse_signal(text: &str) -> Result<Vec<Complex64>> {
    content_lines(text)
        .map(|(no, l)| {
            let toks: Vec<&str> = l.split(',').collect();
            match toks.as_slice() {
                [re] => Ok(Complex64::new(parse_f64(re, no, "value")?, 0.0)),
                [re, im] => Ok(Complex64::new(parse_f64(re, no, "value")?, parse_f64(im, no, "value")?)),
                _ => Err(Error::parse(no, format!("expected `re` or `re,im`, found {} fields", toks.len()))),
            }
        })
        .collect()
}

pub fn format_signal(values: &[Complex64]) -> String {
    let mut out = String::new();
    for z in values {
        out.push_str(&fmt_f64(z.re));
        if z.im.to_bits() != 0 {
            out.push(',');
            out.push_str(&fmt_f64(z.im));
        }
        out.push('\n');
    }
    out
}

// Splits `line` into exactly `min..=max` comma-separated fields.
fn fields(line: &str, no: usize, min: usize, max: usize, shape: &str) -> Result<Vec<String>> {
    let toks: Vec<String> = line.split(',').map(|t| t.trim().to_string()).collect();
    if toks.len() < min || toks.len() > max {
        return Err(Error::parse(no, format!("expected `{shape}`, found {} fields", toks.len())));
    }
    Ok(toks)
}

// A first line whose leading field is not a number is taken as a header.
fn is_header(line: &str) -> bool {
    let first = line.split(',').next().unwrap_or("").trim();
    first.parse::<f64>().is_err()
}

/// `id,x,y[,z]` rows in any order; ids must cover `0..N` exactly once.
pub fn parse_coords(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    let mut dim = None;
    for (k, (no, l)) in content_lines(text).enumerate() {
        if k == 0 && is_header(l) {
            continue;
        }
        let toks = fields(l, no, 3, 4, "id,x,y[,z]")?;
        let id = parse_index(&toks[0], no, "node id")?;
        let p = toks[1..].iter().map(|t| parse_f64(t, no, "coordinate")).collect::<Result<Vec<_>>>()?;
        match dim {
            None => dim = Some(p.len()),
            Some(d) if d != p.len() => {
                return Err(Error::parse(no, format!("expected {d} coordinates like the first row, found {}", p.len())))
            }
            _ => {}
        }
        rows.push((id, p));
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "no coordinates"));
    }
    let n = rows.len();
    let mut points = vec![None; n];
    for (id, p) in rows {
        if id >= n {
            return Err(Error::Invalid(format!("node id {id} out of range for {n} rows")));
        }
        if points[id].replace(p).is_some() {
            return Err(Error::Invalid(format!("node id {id} appears twice")));
        }
    }
    Ok(points.into_iter().map(|p| p.expect("every id in 0..n seen once")).collect())
}

pub fn format_coords(points: &[Vec<f64>]) -> String {
    let mut out = String::from("id,x,y\n");
    for (i, p) in points.iter().enumerate() {
        let cs: Vec<String> = p.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&format!("{i},{}\n", cs.join(",")));
    }
    out
}

/// `node_id,value` rows for an `n`-node graph; unlisted nodes get 0 and every
/// value must be one of `allowed`.
pub fn parse_node_values(text: &str, n: usize, allowed: &[f64], what: &str) -> Result<Vec<f64>> {
    let mut out = vec![0.0; n];
    let mut seen = vec![false; n];
    for (k, (no, l)) in content_lines(text).enumerate() {
        if k == 0 && is_header(l) {
            continue;
        }
        let toks = fields(l, no, 2, 2, &format!("node_id,{what}"))?;
        let id = parse_index(&toks[0], no, "node id")?;
        if id >= n {
            return Err(Error::parse(no, format!("node {id} out of range for N={n}")));
        }
        if std::mem::replace(&mut seen[id], true) {
            return Err(Error::parse(no, format!("node {id} listed twice")));
        }
        let v = parse_f64(&toks[1], no, what)?;
        if !allowed.contains(&v) {
            return Err(Error::parse(no, format!("{what} {v} not in {allowed:?}")));
        }
        out[id] = v;
    }
    Ok(out)
}

pub fn parse_labels(text: &str, n: usize) -> Result<Vec<f64>> {
    parse_node_values(text, n, &[-1.0, 0.0, 1.0], "label")
}

pub fn parse_indicators(text: &str, n: usize) -> Result<Vec<f64>> {
    parse_node_values(text, n, &[0.0, 1.0], "indicator")
}

/// Writes every node as `node_id,value` with integer values.
pub fn format_node_values(values: &[f64], what: &str) -> String {
    let mut out = format!("node_id,{what}\n");
    for (i, v) in values.iter().enumerate() {
        out.push_str(&format!("{i},{}\n", *v as i64));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_file_round_trip() {
        let text = "graphdsp-edges v1 N=3\n0 1 0.5\n2 0 1 -0.25\n";
        let list = parse_edges(text).unwrap();
        let g = graph_from_edges(&list, 2048).unwrap();
        let canon = format_edges(&g);
        assert!(canon.starts_with("graphdsp-edges v1 N=3\n# fingerprint="));
        assert!(canon.ends_with("0 1 0.5\n2 0 1.0 -0.25\n"));
        let again = graph_from_edges(&parse_edges(&canon).unwrap(), 2048).unwrap();
        assert_eq!(format_edges(&again), canon);
    }

    #[test]
    fn edge_errors_cite_lines() {
        let err = parse_edges("graphdsp-edges v1 N=2\n0 1 1\n0 5 1\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
        let err = parse_edges("graphdsp-edges v2 N=2\n").unwrap_err();
        assert!(err.to_string().starts_with("line 1:"), "{err}");
        let bad_fp = "graphdsp-edges v1 N=2\n# fingerprint=00\n0 1 1\n";
        assert!(graph_from_edges(&parse_edges(bad_fp).unwrap(), 2048).is_err());
    }

    #[test]
    fn signal_lines() {
        let v = parse_signal("1\n# note\n\n2.5,-1\n").unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(2.5, -1.0)]);
        assert_eq!(format_signal(&v), "1.0\n2.5,-1.0\n");
        assert!(parse_signal("1\n2\nx\n").unwrap_err().to_string().starts_with("line 3:"));
    }

    #[test]
    fn coords_and_labels() {
        let pts = parse_coords("id,x,y\n1,1,0\n0,0,0\n").unwrap();
        assert_eq!(pts, vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        assert!(parse_coords("id,x,y\n0,0,0\n0,1,1\n").is_err());
        let err = parse_coords("id,x,y\n0,0,0\n1,1\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
        let labels = parse_labels("node_id,label\n2,-1\n0,1\n", 4).unwrap();
        assert_eq!(labels, vec![1.0, 0.0, -1.0, 0.0]);
        assert!(parse_labels("0,2\n", 2).is_err());
        assert!(parse_indicators("0,-1\n", 2).is_err());
        assert_eq!(format_node_values(&labels, "label"), "node_id,label\n0,1\n1,0\n2,-1\n3,0\n");
    }
}
