//! Text formats and reports.
//!
//! * Edge list: `n m` on the first line, then `m` lines `u v` (0-based).
//! * Rotation system: `n` on the first line, then one line `v: w1 w2 ...`
//!   per vertex listing its neighbours counterclockwise.
//! * Coloring JSON: `{"n": .., "colors": .., "edges": [{"u": .., "v": .., "c": ..}]}`.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::diameter::DiameterConstruction;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::planar::{PlanarConstruction, PlanarEmbedding};

/// Visual palette for DOT output, indexed by color id modulo its length.
pub const DOT_PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#393b79", "#637939",
];

/// Non-empty lines with their 1-based line numbers, trailing blank lines
/// ignored.
fn lines(text: &str) -> Vec<(usize, &str)> {
    let mut out: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    while out.last().is_some_and(|(_, l)| l.trim().is_empty()) {
        out.pop();
    }
    out
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, col, format!("expected {what}, found `{tok}`")))
}

/// Column just past the end of `text`.
fn eol(text: &str) -> usize {
    text.chars().count() + 1
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let lines = lines(text);
    let Some(&(hl, header)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header `n m`"));
    };
    let ht = tokens(header);
    if ht.len() != 2 {
        let col = ht.get(2).map_or(eol(header), |t| t.0);
        return Err(Error::parse(hl, col, "header must be `n m`"));
    }
    let n = number(hl, ht[0], "vertex count")?;
    let m = number(hl, ht[1], "edge count")?;
    let body = &lines[1..];
    if body.len() != m {
        let (line, col) = match body.get(m) {
            Some(&(l, _)) => (l, 1),
            None => (body.last().map_or(hl, |b| b.0) + 1, 1),
        };
        return Err(Error::parse(line, col, format!("header declares {m} edges, found {}", body.len())));
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for &(ln, l) in body {
        let t = tokens(l);
        if t.len() != 2 {
            let col = t.get(2).map_or(eol(l), |t| t.0);
            return Err(Error::parse(ln, col, "edge line must be `u v`"));
        }
        let u = number(ln, t[0], "vertex")?;
        let v = number(ln, t[1], "vertex")?;
        for (x, tok) in [(u, t[0]), (v, t[1])] {
            if x >= n {
                return Err(Error::parse(ln, tok.0, format!("endpoint {x} out of range for {n} vertices")));
            }
        }
        if u == v {
            return Err(Error::parse(ln, t[0].0, format!("self-loop at {u}")));
        }
        if !seen.insert(graph::normalize(u, v)) {
            return Err(Error::parse(ln, t[0].0, format!("duplicate edge {{{u}, {v}}}")));
        }
        edges.push((u, v));
    }
    Graph::new(n, &edges)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn parse_rotation(text: &str) -> Result<PlanarEmbedding> {
    let lines = lines(text);
    let Some(&(hl, header)) = lines.first() else {
        return Err(Error::parse(1, 1, "missing header `n`"));
    };
    let ht = tokens(header);
    if ht.len() != 1 {
        return Err(Error::parse(hl, ht.get(1).map_or(1, |t| t.0), "header must be `n`"));
    }
    let n = number(hl, ht[0], "vertex count")?;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    for &(ln, l) in &lines[1..] {
        let Some((head, rest)) = l.split_once(':') else {
            return Err(Error::parse(ln, 1, "expected `v: w1 w2 ...`"));
        };
        let ht = tokens(head);
        if ht.len() != 1 {
            return Err(Error::parse(ln, 1, "expected a single vertex before `:`"));
        }
        let v = number(ln, ht[0], "vertex")?;
        if v >= n {
            return Err(Error::parse(ln, ht[0].0, format!("vertex {v} out of range for {n} vertices")));
        }
        if rotation[v].is_some() {
            return Err(Error::parse(ln, ht[0].0, format!("vertex {v} listed twice")));
        }
        let offset = head.chars().count() + 1;
        let mut nbrs = Vec::new();
        for (col, tok) in tokens(rest) {
            let w = number(ln, (col + offset, tok), "neighbour")?;
            if w >= n {
                return Err(Error::parse(ln, col + offset, format!("neighbour {w} out of range for {n} vertices")));
            }
            nbrs.push(w);
        }
        rotation[v] = Some(nbrs);
    }
    if let Some(v) = rotation.iter().position(Option::is_none) {
        let line = lines.last().map_or(1, |l| l.0) + 1;
        return Err(Error::parse(line, 1, format!("no rotation line for vertex {v}")));
    }
    PlanarEmbedding::from_rotation(rotation.into_iter().map(Option::unwrap_or_default).collect())
}

pub fn emit_rotation(emb: &PlanarEmbedding) -> String {
    let mut s = format!("{}\n", emb.graph().n());
    for (v, rot) in emb.rotations().iter().enumerate() {
        let list: Vec<String> = rot.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{v}: {}", list.join(" "));
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub c: Color,
}

/// Serialized form of a total edge coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n: usize,
    /// Number of distinct colors.
    pub colors: usize,
    pub edges: Vec<EdgeRecord>,
}

impl ColoringFile {
    pub fn new(g: &Graph, col: &EdgeColoring) -> Result<Self> {
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| col.get(e).map(|c| EdgeRecord { u, v, c }).ok_or(Error::PartialColoring(u, v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ColoringFile { n: g.n(), colors: col.palette_size(), edges })
    }

    /// The coloring on `g`; every edge of `g` must appear exactly once.
    pub fn to_coloring(&self, g: &Graph) -> Result<EdgeColoring> {
        if self.n != g.n() {
            return Err(Error::InvalidParameters(format!("coloring is for {} vertices, graph has {}", self.n, g.n())));
        }
        let mut col = EdgeColoring::empty(g);
        for r in &self.edges {
            let e = g
                .edge_id(r.u, r.v)
                .ok_or_else(|| Error::InvalidParameters(format!("{{{}, {}}} is not an edge of the graph", r.u, r.v)))?;
            if col.get(e).is_some() {
                return Err(Error::InvalidParameters(format!("edge {{{}, {}}} colored twice", r.u, r.v)));
            }
            col.set(e, r.c);
        }
        if let Some(e) = (0..g.m()).find(|&e| col.get(e).is_none()) {
            let (u, v) = g.edges()[e];
            return Err(Error::PartialColoring(u, v));
        }
        if col.palette_size() != self.colors {
            return Err(Error::InvalidParameters(format!(
                "declared {} colors, edges use {}",
                self.colors,
                col.palette_size()
            )));
        }
        Ok(col)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

pub fn emit_coloring_json(g: &Graph, col: &EdgeColoring) -> Result<String> {
    let file = ColoringFile::new(g, col)?;
    Ok(serde_json::to_string(&file).expect("plain data serializes"))
}

pub fn parse_coloring_json(g: &Graph, text: &str) -> Result<EdgeColoring> {
    let file: ColoringFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_coloring(g)
}

/// Undirected DOT graph; each edge is labelled with its color id and drawn in
/// `DOT_PALETTE[id % 12]`.
pub fn emit_dot(g: &Graph, col: &EdgeColoring) -> Result<String> {
    let mut s = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(s, "  {v};");
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let c = col.get(e).ok_or(Error::PartialColoring(u, v))?;
        let _ = writeln!(s, "  {u} -- {v} [label=\"{c}\", color=\"{}\"];", DOT_PALETTE[c as usize % DOT_PALETTE.len()]);
    }
    s.push_str("}\n");
    Ok(s)
}

/// A rational printed as `p/q` (or `p` when integral) and as a decimal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rational {
    pub exact: String,
    pub decimal: f64,
}

impl From<Ratio<i64>> for Rational {
    fn from(r: Ratio<i64>) -> Self {
        Rational { exact: r.to_string(), decimal: *r.numer() as f64 / *r.denom() as f64 }
    }
}

/// Sidecar report of a diameter construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiameterReport {
    pub kappa: usize,
    pub n: usize,
    pub diam: usize,
    /// `n/κ − diam` as an exact fraction.
    pub c: String,
    pub c_decimal: f64,
    pub bound: usize,
    pub palette: usize,
    pub verified: bool,
    pub bound_met: bool,
    pub checks: Vec<crate::diameter::BoundCheck>,
    pub failing_pair: Option<(usize, usize)>,
}

impl From<&DiameterConstruction> for DiameterReport {
    fn from(d: &DiameterConstruction) -> Self {
        let c = Rational::from(d.c);
        DiameterReport {
            kappa: d.kappa,
            n: d.n,
            diam: d.diam,
            c: c.exact,
            c_decimal: c.decimal,
            bound: d.claimed_bound,
            palette: d.palette_size(),
            verified: d.verified(),
            bound_met: d.bound_met(),
            checks: d.checks.clone(),
            failing_pair: d.verification.failing_pair,
        }
    }
}

/// Sidecar report of a planar construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarReport {
    pub kappa: usize,
    pub n: usize,
    pub diam: usize,
    /// `n/κ − diam` as an exact fraction.
    pub c: String,
    pub c_decimal: f64,
    /// `⌈n/κ + 1 + κ² + 2κ⌉`.
    pub bound: usize,
    /// `⌈n/κ + 36⌉`.
    pub uniform_bound: usize,
    pub palette: usize,
    pub verified: bool,
    pub t: usize,
    pub layer_sizes: Vec<usize>,
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    pub bound_met: bool,
    pub dominating_size: usize,
    pub dominating_palette: usize,
    pub dominating_bound: usize,
    pub radius: usize,
    pub extension: crate::planar::ExtensionSummary,
    pub fallback_layers: Vec<usize>,
    pub connector_edges: usize,
    pub tree_fallback: bool,
    pub failing_pair: Option<(usize, usize)>,
}

impl From<&PlanarConstruction> for PlanarReport {
    fn from(p: &PlanarConstruction) -> Self {
        let c = Rational::from(Ratio::new(p.n as i64, p.kappa as i64) - Ratio::from_integer(p.diam as i64));
        PlanarReport {
            kappa: p.kappa,
            n: p.n,
            diam: p.diam,
            c: c.exact,
            c_decimal: c.decimal,
            bound: p.bounds.layered,
            uniform_bound: p.bounds.uniform,
            palette: p.palette_size(),
            verified: p.verified(),
            t: p.layers.t,
            layer_sizes: p.layers.sizes(),
            a: p.plan.selected.clone(),
            bound_met: p.bound_met(),
            dominating_size: p.plan.d.len(),
            dominating_palette: p.dominating_palette,
            dominating_bound: p.bounds.dominating,
            radius: p.plan.radius,
            extension: p.extension.clone(),
            fallback_layers: p.dominating_fallback_layers.clone(),
            connector_edges: p.plan.connectors.len(),
            tree_fallback: p.dominating_tree_fallback,
            failing_pair: p.verification.failing_pair,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    pub kappa: usize,
    pub diam: Option<usize>,
    pub girth: Option<usize>,
}

impl InputSummary {
    pub fn of(g: &Graph) -> Self {
        let m = graph::metrics(g);
        InputSummary {
            n: g.n(),
            m: g.m(),
            kappa: crate::connectivity::vertex_connectivity(g),
            diam: m.diameter,
            girth: m.girth,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub palette: usize,
    pub bound: Option<usize>,
    pub bound_met: bool,
    pub verified: bool,
}

/// One CLI invocation: what ran, on what, with what result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input: InputSummary,
    pub outcome: Option<Outcome>,
    pub elapsed_ms: f64,
    /// Command-specific details.
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub details: serde_json::Value,
}
