//! Vertex connectivity and internally vertex-disjoint paths, via unit
//! capacity max-flow on the split-vertex digraph.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

const INF: u32 = u32::MAX / 2;

/// Residual network where every vertex `v` becomes `v_in = 2v` and
/// `v_out = 2v + 1` joined by a unit arc.
struct SplitNetwork {
    // (head, capacity, reverse arc index)
    arcs: Vec<(usize, u32, usize)>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph, s: usize, t: usize) -> Self {
        let mut net = SplitNetwork { arcs: Vec::new(), out: vec![Vec::new(); 2 * g.n()] };
        for v in g.vertices() {
            let cap = if v == s || v == t { INF } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, cap);
        }
        for &(u, w) in g.edges() {
            net.add_arc(2 * u + 1, 2 * w, 1);
            net.add_arc(2 * w + 1, 2 * u, 1);
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let a = self.arcs.len();
        self.arcs.push((to, cap, a + 1));
        self.arcs.push((from, 0, a));
        self.out[from].push(a);
        self.out[to].push(a + 1);
    }

    /// Shortest augmenting path by BFS; arcs are scanned in insertion
    /// order, which follows the sorted adjacency of the graph.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &self.out[x] {
                let (y, cap, _) = self.arcs[a];
                if cap > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut y = sink;
        while y != source {
            let a = via[y];
            let rev = self.arcs[a].2;
            self.arcs[a].1 -= 1;
            self.arcs[rev].1 += 1;
            y = self.arcs[rev].0;
        }
        true
    }

    fn flow_on(&self, a: usize) -> u32 {
        // Flow equals the capacity accumulated on the paired reverse arc.
        self.arcs[self.arcs[a].2].1
    }
}

/// Maximum number of internally disjoint `s`–`t` paths, stopping early at `cap`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let mut net = SplitNetwork::new(g, s, t);
    let mut value = 0;
    while value < cap && net.augment(2 * s + 1, 2 * t) {
        value += 1;
    }
    value
}

/// Vertex connectivity κ(G). Complete graphs give `n − 1`; disconnected
/// graphs give 0.
///
/// Uses the Esfahanian–Hakimi reduction: with `v` of minimum degree, every
/// minimum separator either misses `v` (and splits it from some
/// non-neighbour) or contains it (and splits two of its neighbours).
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 || !g.is_connected() {
        return 0;
    }
    if g.m() == n * (n - 1) / 2 {
        return n - 1;
    }
    let v = g.vertices().min_by_key(|&v| (g.degree(v), v)).expect("n > 1");
    let mut best = g.degree(v);
    for w in g.vertices() {
        if w != v && !g.has_edge(v, w) {
            best = best.min(local_connectivity(g, v, w, best));
        }
    }
    let nbrs = g.neighbors(v);
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !g.has_edge(a, b) {
                best = best.min(local_connectivity(g, a, b, best));
            }
        }
    }
    best
}

/// `k` internally disjoint `u1 → u2` paths, as vertex sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub u1: usize,
    pub u2: usize,
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    /// Interior vertex set `V(P_i) − {u1, u2}`.
    pub fn interior(&self, i: usize) -> VertexSet {
        let p = &self.paths[i];
        p[1..p.len() - 1].iter().copied().collect()
    }

    /// Edge count of path `i`.
    pub fn len_of(&self, i: usize) -> usize {
        self.paths[i].len() - 1
    }

    pub fn k(&self) -> usize {
        self.paths.len()
    }

    /// Every vertex on some path, endpoints included.
    pub fn covered(&self) -> VertexSet {
        self.paths.iter().flatten().copied().collect()
    }

    /// Independent structural check: endpoints, adjacency, simplicity and
    /// internal disjointness.
    pub fn validate(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.u1 == self.u2 {
            return Err("endpoints coincide".into());
        }
        let mut used = VertexSet::new();
        let mut direct = 0;
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() < 2 || p[0] != self.u1 || *p.last().unwrap() != self.u2 {
                return Err(format!("path {i} has wrong endpoints"));
            }
            if p.len() == 2 {
                direct += 1;
            }
            for w in p.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("path {i} uses non-edge {}-{}", w[0], w[1]));
                }
            }
            for &v in &p[1..p.len() - 1] {
                if v == self.u1 || v == self.u2 || !used.insert(v) {
                    return Err(format!("path {i} repeats or shares vertex {v}"));
                }
            }
        }
        if direct > 1 {
            return Err("direct edge used twice".into());
        }
        Ok(())
    }

    fn sort(&mut self) {
        self.paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    }
}

/// Extracts `k` internally disjoint `u1 → u2` paths from a maximum flow,
/// sorted by length, ties broken by vertex sequence.
pub fn disjoint_paths(g: &Graph, u1: usize, u2: usize, k: usize) -> Result<PathSystem> {
    for v in [u1, u2] {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    if u1 == u2 {
        return Err(Error::SameEndpoints);
    }
    let mut net = SplitNetwork::new(g, u1, u2);
    let (source, sink) = (2 * u1 + 1, 2 * u2);
    let mut value = 0;
    while value < k && net.augment(source, sink) {
        value += 1;
    }
    if value < k {
        return Err(Error::InsufficientPaths { u1, u2, wanted: k, found: value });
    }

    // Flow decomposition. Edge arcs run out-node -> in-node, so every hop
    // enters a vertex and then crosses its internal arc.
    let mut remaining: Vec<u32> =
        (0..net.arcs.len()).map(|a| if a % 2 == 0 { net.flow_on(a) } else { 0 }).collect();
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let mut path = vec![u1];
        let mut x = source;
        loop {
            let a = *net.out[x]
                .iter()
                .find(|&&a| a % 2 == 0 && remaining[a] > 0)
                .expect("flow conservation");
            remaining[a] -= 1;
            let y = net.arcs[a].0;
            path.push(y / 2);
            if y == sink {
                break;
            }
            x = y + 1;
        }
        paths.push(strip_loops(path));
    }
    let mut ps = PathSystem { u1, u2, paths };
    ps.sort();
    Ok(ps)
}

// Flow paths are simple for unit vertex capacities, but cancelled flow can
// leave a walk revisiting a vertex; cut such loops out.
pub(crate) fn strip_loops(walk: Vec<usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(walk.len());
    for v in walk {
        if let Some(pos) = out.iter().position(|&w| w == v) {
            out.truncate(pos + 1);
        } else {
            out.push(v);
        }
    }
    out
}

/// Shortcuts each path to a shortest path inside its own vertex set, so no
/// edge joins two non-consecutive vertices of the same path. Only one path
/// may collapse onto the direct edge `u1u2`.
pub fn make_induced(g: &Graph, ps: &PathSystem) -> PathSystem {
    let mut direct_taken = ps.paths.iter().any(|p| p.len() == 2);
    let mut paths = Vec::with_capacity(ps.paths.len());
    for p in &ps.paths {
        if p.len() == 2 {
            paths.push(p.clone());
            continue;
        }
        let members: VertexSet = p.iter().copied().collect();
        let skip = direct_taken.then_some((ps.u1, ps.u2));
        let short = g
            .shortest_path_within(ps.u1, ps.u2, |v| members.contains(v), skip)
            .expect("the original path stays available");
        if short.len() == 2 {
            direct_taken = true;
        }
        paths.push(short);
    }
    let mut out = PathSystem { u1: ps.u1, u2: ps.u2, paths };
    out.sort();
    out
}

/// True when no edge joins two non-consecutive vertices of the path, the
/// chord `u1u2` excepted when another path already is that edge.
pub fn is_chordless(g: &Graph, path: &[usize], allow_endpoint_chord: bool) -> bool {
    for i in 0..path.len() {
        for j in i + 2..path.len() {
            if g.has_edge(path[i], path[j]) {
                let endpoint_chord = i == 0 && j == path.len() - 1;
                if !(endpoint_chord && allow_endpoint_chord) {
                    return false;
                }
            }
        }
    }
    true
}
