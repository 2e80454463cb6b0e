use serde::{Deserialize, Serialize};

use super::PlanarEmbedding;
use crate::coloring::cycle_edges;
use crate::error::{Error, Result};
use crate::graph::{self, VertexSet};

/// One side of the neighbourhood of a cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    /// Cyclic order when `cycle` holds, otherwise the distinct vertices in
    /// order of first appearance.
    pub order: Vec<usize>,
    /// Whether `order` is a Hamiltonian cycle of the side.
    pub cycle: bool,
}

impl Side {
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.order.iter().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborCycles {
    /// Left of the cycle as traversed.
    pub inside: Side,
    pub outside: Side,
}

/// Splits the neighbours of `cyc` into the two sides of the cycle, each
/// listed by walking around the cycle. For a face listed in traversal order
/// the face itself is on the left, so `inside` is empty.
pub fn neighbor_cycle(emb: &PlanarEmbedding, cyc: &[usize]) -> Result<NeighborCycles> {
    let g = emb.graph();
    cycle_edges(g, cyc)?;
    let len = cyc.len();
    let on_cycle: VertexSet = cyc.iter().copied().collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..len {
        let (a, v, b) = (cyc[(i + len - 1) % len], cyc[i], cyc[(i + 1) % len]);
        let mut l = emb.ccw_between(v, b, a);
        l.reverse();
        left.extend(l);
        right.extend(emb.ccw_between(v, a, b));
    }
    Ok(NeighborCycles { inside: side(g, left, &on_cycle), outside: side(g, right, &on_cycle) })
}

fn side(g: &graph::Graph, walk: Vec<usize>, on_cycle: &VertexSet) -> Side {
    let mut seq: Vec<usize> = Vec::new();
    for v in walk.into_iter().filter(|&v| !on_cycle.contains(v)) {
        if seq.last() != Some(&v) {
            seq.push(v);
        }
    }
    while seq.len() > 1 && seq.first() == seq.last() {
        seq.pop();
    }
    let mut seen = VertexSet::new();
    let simple = seq.iter().all(|&v| seen.insert(v));
    let closed = seq.len() >= 3 && (0..seq.len()).all(|i| g.has_edge(seq[i], seq[(i + 1) % seq.len()]));
    if simple && closed {
        return Side { order: seq, cycle: true };
    }
    let mut seen = VertexSet::new();
    seq.retain(|&v| seen.insert(v));
    Side { order: seq, cycle: false }
}

/// BFS layers `N_k` around a face `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerDecomposition {
    /// The face in traversal order.
    pub face: Vec<usize>,
    /// `layers[k]` is `N_k`, sorted; `layers[0]` is the face.
    pub layers: Vec<Vec<usize>>,
    pub t: usize,
    /// Hamiltonian cycle of each layer, found by walking the outer side of
    /// the previous layer's cycle; `None` where that walk does not give
    /// exactly the next layer as a cycle.
    pub cycles: Vec<Option<Vec<usize>>>,
}

impl LayerDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Layer index of every vertex.
    pub fn depth(&self, n: usize) -> Vec<usize> {
        let mut depth = vec![graph::UNREACHABLE; n];
        for (k, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                depth[v] = k;
            }
        }
        depth
    }
}

/// The lexicographically smallest face, by sorted vertex set.
pub fn smallest_face(emb: &PlanarEmbedding) -> VertexSet {
    emb.face_sets().into_iter().next().map(|(set, _)| set).unwrap_or_default()
}

pub fn layer_decomposition(emb: &PlanarEmbedding, face: &VertexSet) -> Result<LayerDecomposition> {
    let g = emb.graph();
    let order = emb
        .face_sets()
        .into_iter()
        .find(|(set, _)| set == face)
        .map(|(_, order)| order)
        .ok_or_else(|| Error::FaceNotFound(face.to_vec()))?;
    let dist = g.bfs_from_set(face.iter());
    let t = dist.iter().copied().filter(|&d| d != graph::UNREACHABLE).max().unwrap_or(0);
    let mut layers = vec![Vec::new(); t + 1];
    for v in g.vertices() {
        if dist[v] == graph::UNREACHABLE {
            return Err(Error::Disconnected);
        }
        layers[dist[v]].push(v);
    }
    let mut cycles: Vec<Option<Vec<usize>>> = vec![Some(order.clone())];
    for k in 0..t {
        let next = match &cycles[k] {
            Some(c) if c.len() >= 3 => {
                let sides = neighbor_cycle(emb, c)?;
                let want: VertexSet = layers[k + 1].iter().copied().collect();
                [sides.outside, sides.inside]
                    .into_iter()
                    .find(|s| s.cycle && s.vertex_set() == want)
                    .map(|s| s.order)
            }
            _ => None,
        };
        cycles.push(next);
    }
    Ok(LayerDecomposition { face: order, layers, t, cycles })
}
