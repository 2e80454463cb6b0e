use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::coloring::{is_rainbow_connected, Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexSet, UNREACHABLE};

#[derive(Clone, Debug)]
pub struct Extension {
    pub coloring: EdgeColoring,
    /// Colors added on top of the base palette.
    pub fresh: usize,
    /// Fresh colors spent per level (primary scheme only).
    pub levels: Vec<usize>,
    /// The primary scheme failed verification and the forest fallback was used.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSummary {
    pub fresh: usize,
    pub levels: Vec<usize>,
    pub fallback: bool,
}

impl Extension {
    pub fn summary(&self) -> ExtensionSummary {
        ExtensionSummary { fresh: self.fresh, levels: self.levels.clone(), fallback: self.fallback }
    }
}

/// Extends a rainbow coloring of `G[D]` to all of `G`, one distance level
/// at a time.
///
/// At each level `U = N(S)` with `S` the vertices already reached. Vertices
/// of `U` with two neighbours in `S` are anchors. Every other vertex gets a
/// position `1 + dist(u, anchors)` inside `G[U]` and colors its edge toward
/// the anchors with that position. Anchors color one edge into `S` with 1
/// and another with `q = max position + 1`; non-anchors color their edge
/// into `S` with `q`. Any two vertices of `U` then leave through disjoint
/// palettes: one descends to an anchor (colors `1..=pos`), the other steps
/// straight into `S` (color `q`). Each level uses a fresh palette.
///
/// The result is verified; on failure every non-`D` vertex instead gets a
/// fresh color on its BFS parent edge and `fallback` is set.
pub fn extend_coloring(g: &Graph, d: &VertexSet, base: &EdgeColoring, l: usize) -> Result<Extension> {
    if d.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    d.check_range(g.n())?;
    if !graph::induced_subgraph(g, d)?.graph.is_connected() {
        return Err(Error::DominatingSetDisconnected);
    }
    let dist = g.bfs_from_set(d.iter());
    if let Some(v) = g.vertices().find(|&v| dist[v] > l) {
        return Err(Error::NotDominating { vertex: v, distance: dist[v], radius: l });
    }
    let mut next: Color = base.palette().last().map_or(0, |&c| c + 1);
    let filler = base.palette().first().copied().unwrap_or(0);

    let (primary, levels) = level_scheme(g, d, base, next);
    let fresh: usize = levels.iter().sum();
    if is_rainbow_connected(g, &primary)?.rainbow_connected {
        return Ok(Extension { coloring: primary, fresh, levels, fallback: false });
    }

    let mut col = base.clone();
    let mut fresh_count = 0;
    let mut seen: Vec<bool> = g.vertices().map(|v| d.contains(v)).collect();
    let mut queue: VecDeque<usize> = d.iter().collect();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                col.set_pair(g, u, w, next);
                next += 1;
                fresh_count += 1;
                queue.push_back(w);
            }
        }
    }
    col.fill_uncolored(filler);
    Ok(Extension { coloring: col, fresh: fresh_count, levels: Vec::new(), fallback: true })
}

fn level_scheme(g: &Graph, d: &VertexSet, base: &EdgeColoring, mut next: Color) -> (EdgeColoring, Vec<usize>) {
    let mut col = base.clone();
    let filler = base.palette().first().copied().unwrap_or(0);
    let mut in_s: Vec<bool> = g.vertices().map(|v| d.contains(v)).collect();
    let mut levels = Vec::new();
    loop {
        let u: Vec<usize> =
            g.vertices().filter(|&v| !in_s[v] && g.neighbors(v).iter().any(|&w| in_s[w])).collect();
        if u.is_empty() {
            break;
        }
        let mut in_u = vec![false; g.n()];
        for &v in &u {
            in_u[v] = true;
        }
        let s_nbrs = |v: usize| g.neighbors(v).iter().copied().filter(|&w| in_s[w]).collect::<Vec<_>>();

        // Positions: multi-source BFS inside G[U] from the anchors; a
        // component without anchors is rooted at its lowest vertex.
        let mut pos = vec![UNREACHABLE; g.n()];
        let mut parent = vec![UNREACHABLE; g.n()];
        let mut anchor = vec![false; g.n()];
        let mut queue = VecDeque::new();
        for &v in &u {
            if s_nbrs(v).len() >= 2 {
                anchor[v] = true;
                pos[v] = 1;
                queue.push_back(v);
            }
        }
        let mut pending = u.iter().copied().filter(|&v| !anchor[v]);
        loop {
            while let Some(x) = queue.pop_front() {
                for &w in g.neighbors(x) {
                    if in_u[w] && pos[w] == UNREACHABLE {
                        pos[w] = pos[x] + 1;
                        parent[w] = x;
                        queue.push_back(w);
                    }
                }
            }
            match pending.find(|&v| pos[v] == UNREACHABLE) {
                Some(r) => {
                    pos[r] = 1;
                    queue.push_back(r);
                }
                None => break,
            }
        }
        let q = u.iter().map(|&v| pos[v]).max().expect("non-empty") + 1;
        let palette: Vec<Color> = (0..q as Color).map(|i| next + i).collect();
        next += q as Color;
        levels.push(q);
        let color = |p: usize| palette[p - 1];

        for &v in &u {
            let sn = s_nbrs(v);
            if pos[v] == 1 {
                col.set_pair(g, v, sn[0], color(1));
                for &w in &sn[1..] {
                    col.set_pair(g, v, w, color(q));
                }
            } else {
                col.set_pair(g, v, parent[v], color(pos[v]));
                for &w in &sn {
                    col.set_pair(g, v, w, color(q));
                }
            }
        }
        for &v in &u {
            for &w in g.neighbors(v) {
                if in_u[w] && col.color_of(g, v, w).is_none() {
                    col.set_pair(g, v, w, color(q));
                }
            }
        }
        for &v in &u {
            in_s[v] = true;
        }
    }
    col.fill_uncolored(filler);
    (col, levels)
}
