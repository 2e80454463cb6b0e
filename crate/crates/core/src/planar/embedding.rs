use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// A combinatorial embedding: for every vertex, its neighbours in
/// counterclockwise order.
///
/// Faces are traced with the rule `next(u → v) = (v → w)` where `w` is the
/// neighbour immediately before `u` in the rotation at `v`, so each face
/// lies to the left of its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSummary {
    pub faces: usize,
    pub maximal: bool,
}

impl PlanarEmbedding {
    /// Builds an embedding from rotation lists; the graph is read off the
    /// lists, which must be symmetric and free of loops and repeats.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self> {
        let n = rotation.len();
        let mut edges = Vec::new();
        for (v, list) in rotation.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for &w in list {
                if w >= n {
                    return Err(Error::InvalidRotation(format!("vertex {v} lists out-of-range {w}")));
                }
                if w == v || !seen.insert(w) {
                    return Err(Error::InvalidRotation(format!("vertex {v} lists {w} twice or as a loop")));
                }
                if !rotation[w].contains(&v) {
                    return Err(Error::InvalidRotation(format!("{v} lists {w} but not conversely")));
                }
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        let graph = Graph::new(n, &edges)?;
        Ok(Self::assemble(graph, rotation))
    }

    /// Pairs a graph with rotation lists, checking each list is a
    /// permutation of the adjacency list.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != graph.n() {
            return Err(Error::InvalidRotation(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                graph.n()
            )));
        }
        for (v, list) in rotation.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return Err(Error::InvalidRotation(format!("rotation at {v} is not a permutation of its neighbours")));
            }
        }
        Ok(Self::assemble(graph, rotation))
    }

    fn assemble(graph: Graph, rotation: Vec<Vec<usize>>) -> Self {
        let position = rotation
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &w)| (w, i)).collect())
            .collect();
        PlanarEmbedding { graph, rotation, position }
    }

    /// Builds the embedding of a triangulated sphere from its triangles.
    /// Orientation is propagated across shared edges, so the input
    /// triangles may be listed with arbitrary orientation.
    pub fn from_triangles(n: usize, triangles: &[[usize; 3]]) -> Result<Self> {
        let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, t) in triangles.iter().enumerate() {
            for j in 0..3 {
                let e = crate::graph::normalize(t[j], t[(j + 1) % 3]);
                by_edge.entry(e).or_default().push(i);
            }
        }
        let mut oriented: Vec<Option<[usize; 3]>> = vec![None; triangles.len()];
        for start in 0..triangles.len() {
            if oriented[start].is_some() {
                continue;
            }
            oriented[start] = Some(triangles[start]);
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                let t = oriented[f].expect("oriented");
                for j in 0..3 {
                    let (a, b) = (t[j], t[(j + 1) % 3]);
                    for &g in &by_edge[&crate::graph::normalize(a, b)] {
                        if g == f {
                            continue;
                        }
                        let s = triangles[g];
                        // The neighbour must traverse the shared edge as b -> a.
                        let has_ba = (0..3).any(|k| s[k] == b && s[(k + 1) % 3] == a);
                        let want = if has_ba { s } else { [s[0], s[2], s[1]] };
                        match oriented[g] {
                            None => {
                                oriented[g] = Some(want);
                                queue.push_back(g);
                            }
                            Some(o) if o != want && !same_cycle(o, want) => {
                                return Err(Error::InvalidRotation("triangles are not orientable".into()));
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        // In face (v, p, q), p comes immediately before q around v.
        let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for t in oriented.into_iter().flatten() {
            for j in 0..3 {
                let (v, p, q) = (t[j], t[(j + 1) % 3], t[(j + 2) % 3]);
                if succ[v].insert(p, q).is_some() {
                    return Err(Error::InvalidRotation(format!("vertex {v} has inconsistent wedges")));
                }
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, s) in succ.iter().enumerate() {
            let Some((&first, _)) = s.iter().next() else {
                rotation.push(Vec::new());
                continue;
            };
            let mut list = vec![first];
            let mut cur = s[&first];
            while cur != first {
                list.push(cur);
                cur = *s.get(&cur).ok_or_else(|| Error::InvalidRotation(format!("wedges around {v} do not close")))?;
                if list.len() > s.len() {
                    return Err(Error::InvalidRotation(format!("wedges around {v} do not close")));
                }
            }
            if list.len() != s.len() {
                return Err(Error::InvalidRotation(format!("vertex {v} is not a disc neighbourhood")));
            }
            rotation.push(list);
        }
        Self::from_rotation(rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    /// Neighbour of `v` immediately after `w` counterclockwise.
    pub fn next_ccw(&self, v: usize, w: usize) -> usize {
        let list = &self.rotation[v];
        list[(self.position[v][&w] + 1) % list.len()]
    }

    /// Neighbour of `v` immediately before `w` counterclockwise.
    pub fn prev_ccw(&self, v: usize, w: usize) -> usize {
        let list = &self.rotation[v];
        list[(self.position[v][&w] + list.len() - 1) % list.len()]
    }

    /// Neighbours of `v` strictly after `from` and strictly before `to`,
    /// walking counterclockwise.
    pub fn ccw_between(&self, v: usize, from: usize, to: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.next_ccw(v, from);
        while cur != to && cur != from {
            out.push(cur);
            cur = self.next_ccw(v, cur);
        }
        out
    }

    /// All faces as vertex cycles, each listed from its smallest dart. Every
    /// dart belongs to exactly one face.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut used: HashMap<(usize, usize), bool> = HashMap::new();
        let mut faces = Vec::new();
        for v in self.graph.vertices() {
            for &w in &self.rotation[v] {
                if used.contains_key(&(v, w)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (v, w);
                while used.insert((a, b), true).is_none() {
                    face.push(a);
                    let c = self.prev_ccw(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Vertex sets of the faces, sorted, with the face cycles they came from.
    pub fn face_sets(&self) -> Vec<(VertexSet, Vec<usize>)> {
        let mut out: Vec<_> = self.faces().into_iter().map(|f| (f.iter().copied().collect(), f)).collect();
        out.sort();
        out
    }

    /// Face traversal plus Euler's formula; maximal iff every face is a
    /// triangle.
    pub fn validate_maximal_planar(&self) -> Result<FaceSummary> {
        let (n, m) = (self.graph.n(), self.graph.m());
        if n < 3 || !self.graph.is_connected() {
            return Err(Error::InvalidRotation("need a connected graph on at least 3 vertices".into()));
        }
        let faces = self.faces();
        let f = faces.len();
        if n + f != m + 2 {
            return Err(Error::EulerViolation { n, m, f });
        }
        let maximal = faces.iter().all(|face| face.len() == 3);
        debug_assert_eq!(maximal, m == 3 * n - 6);
        Ok(FaceSummary { faces: f, maximal })
    }
}

fn same_cycle(a: [usize; 3], b: [usize; 3]) -> bool {
    (0..3).any(|r| (0..3).all(|j| a[j] == b[(j + r) % 3]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn solids_are_maximal() {
        let oct = named::octahedron();
        assert_eq!(oct.validate_maximal_planar().unwrap(), FaceSummary { faces: 8, maximal: true });
        let ico = named::icosahedron();
        assert_eq!(ico.validate_maximal_planar().unwrap(), FaceSummary { faces: 20, maximal: true });
        let k4 = crate::generators::stacked_triangulation(4, 0).unwrap();
        assert_eq!(k4.validate_maximal_planar().unwrap(), FaceSummary { faces: 4, maximal: true });
    }

    #[test]
    fn square_is_not_maximal() {
        let c4 = PlanarEmbedding::from_rotation(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(c4.validate_maximal_planar().unwrap(), FaceSummary { faces: 2, maximal: false });
    }

    #[test]
    fn bad_rotations() {
        let g = named::complete(4);
        assert!(matches!(
            PlanarEmbedding::new(g.clone(), vec![vec![1, 2], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]),
            Err(Error::InvalidRotation(_))
        ));
        // K4 with a rotation that is not planar: the Euler check catches it.
        let twisted = PlanarEmbedding::new(
            g,
            vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(twisted.validate_maximal_planar(), Err(Error::EulerViolation { .. })));
    }

    #[test]
    fn darts_partition_into_faces() {
        let ico = named::icosahedron();
        let total: usize = ico.faces().iter().map(Vec::len).sum();
        assert_eq!(total, 2 * ico.graph().m());
    }
}
