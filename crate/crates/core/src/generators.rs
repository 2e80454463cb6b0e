//! Deterministic instance families.
//!
//! All randomness comes from SplitMix64 (Steele, Lea and Flood), seeded with
//! the caller's `u64`. Each draw is
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! and a choice among `k` options is `draw % k`. The same seed always gives
//! the same instance.

use std::collections::BTreeSet;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::connectivity::vertex_connectivity;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::planar::PlanarEmbedding;

/// A family name, its integer parameters and a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: String,
    pub params: Vec<usize>,
    pub seed: u64,
}

/// Either a bare graph or a graph with its planar embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Graph(Graph),
    Embedded(PlanarEmbedding),
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        match self {
            Instance::Graph(g) => g,
            Instance::Embedded(e) => e.graph(),
        }
    }

    pub fn embedding(&self) -> Option<&PlanarEmbedding> {
        match self {
            Instance::Graph(_) => None,
            Instance::Embedded(e) => Some(e),
        }
    }
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Instance> {
        let p = |i: usize| {
            self.params.get(i).copied().ok_or_else(|| {
                Error::InvalidParameters(format!("{} needs parameter #{}", self.family, i + 1))
            })
        };
        match self.family.as_str() {
            "clique_tower" => clique_tower(p(0)?, p(1)?).map(Instance::Graph),
            "perturbed_tower" => perturbed_tower(p(0)?, p(1)?, p(2)?, self.seed).map(Instance::Graph),
            "stacked_triangulation" => stacked_triangulation(p(0)?, self.seed).map(Instance::Embedded),
            "random_connected" => random_connected(p(0)?, p(1)?, self.seed).map(Instance::Graph),
            other => named::by_name(other),
        }
    }
}

fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

fn pick(rng: &mut SplitMix64, k: usize) -> usize {
    (rng.next_u64() % k as u64) as usize
}

/// `layers + 1` copies of `K_kappa`, consecutive copies joined by the
/// identity matching. Vertex `layer * kappa + column`.
pub fn clique_tower(kappa: usize, layers: usize) -> Result<Graph> {
    if kappa < 2 || layers < 1 {
        return Err(Error::InvalidParameters(format!(
            "clique_tower needs kappa >= 2 and layers >= 1, got ({kappa}, {layers})"
        )));
    }
    let id = |layer: usize, col: usize| layer * kappa + col;
    let mut edges = Vec::new();
    for layer in 0..=layers {
        for a in 0..kappa {
            for b in a + 1..kappa {
                edges.push((id(layer, a), id(layer, b)));
            }
            if layer < layers {
                edges.push((id(layer, a), id(layer + 1, a)));
            }
        }
    }
    let g = Graph::new(kappa * (layers + 1), &edges)?;
    let found = vertex_connectivity(&g);
    if found != kappa {
        return Err(Error::ConnectivityTooLow { required: kappa, found });
    }
    Ok(g)
}

/// A clique tower plus `chords` seeded extra edges, redrawn until the
/// connectivity is still exactly `kappa`.
pub fn perturbed_tower(kappa: usize, layers: usize, chords: usize, seed: u64) -> Result<Graph> {
    let base = clique_tower(kappa, layers)?;
    let n = base.n();
    let missing = n * (n - 1) / 2 - base.m();
    if chords > missing {
        return Err(Error::InvalidParameters(format!("only {missing} non-edges available")));
    }
    let mut rng = rng(seed);
    for _attempt in 0..64 {
        let mut extra = BTreeSet::new();
        while extra.len() < chords {
            let (u, v) = (pick(&mut rng, n), pick(&mut rng, n));
            if u != v && !base.has_edge(u, v) {
                extra.insert(graph::normalize(u, v));
            }
        }
        let mut edges = base.edges().to_vec();
        edges.extend(extra);
        let g = Graph::new(n, &edges)?;
        if vertex_connectivity(&g) == kappa {
            return Ok(g);
        }
    }
    Err(Error::InvalidParameters("could not keep the connectivity fixed".into()))
}

/// A uniformly seeded random spanning tree (each vertex `v > 0` attaches to
/// an earlier vertex) plus `extra` additional distinct edges, capped at the
/// complete graph. Vertex labels are then shuffled.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let mut rng = rng(seed);
    let mut label: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        label.swap(i, pick(&mut rng, i + 1));
    }
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = pick(&mut rng, v);
        edges.insert(graph::normalize(label[u], label[v]));
    }
    let target = (edges.len() + extra).min(n * (n - 1) / 2);
    while edges.len() < target {
        let (u, v) = (pick(&mut rng, n), pick(&mut rng, n));
        if u != v {
            edges.insert(graph::normalize(u, v));
        }
    }
    Graph::new(n, &edges.into_iter().collect::<Vec<_>>())
}

/// Each of the `n(n-1)/2` pairs becomes an edge with probability
/// `num / den`; the result may be disconnected.
pub fn random_graph(n: usize, num: u64, den: u64, seed: u64) -> Result<Graph> {
    if den == 0 || num > den {
        return Err(Error::InvalidParameters(format!("bad edge probability {num}/{den}")));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_u64() % den < num {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges)
}

/// A stacked triangulation. Starts from `K4` (both sides of a triangle, one
/// split by vertex 3), then repeatedly splits a seeded face `(a, b, c)` with
/// a new vertex `x` into `(a, b, x)`, `(b, c, x)` and `(c, a, x)`.
pub fn stacked_triangulation(n: usize, seed: u64) -> Result<PlanarEmbedding> {
    if n < 4 {
        return Err(Error::InvalidParameters(format!("stacked triangulation needs n >= 4, got {n}")));
    }
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let mut rng = rng(seed);
    split(&mut faces, 0, 3);
    for x in 4..n {
        let i = pick(&mut rng, faces.len());
        split(&mut faces, i, x);
    }
    let emb = PlanarEmbedding::from_triangles(n, &faces)?;
    debug_assert!(vertex_connectivity(emb.graph()) >= 3);
    Ok(emb)
}

fn split(faces: &mut Vec<[usize; 3]>, i: usize, x: usize) {
    let [a, b, c] = faces[i];
    faces[i] = [a, b, x];
    faces.push([b, c, x]);
    faces.push([c, a, x]);
}

pub mod named {
    //! Canonical labelled reference graphs.

    use super::*;

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::new(n, &edges).expect("valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("valid")
    }

    /// Needs `n ≥ 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Graph::new(n, &edges).expect("valid")
    }

    /// `n` vertices: centre 0 and leaves `1..n`.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        Graph::new(n, &edges).expect("valid")
    }

    /// Outer 5-cycle `0..5`, spokes `i – i+5`, inner pentagram on `5..10`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::new(10, &edges).expect("valid")
    }

    /// Poles 0 and 5, equator `1, 2, 3, 4`.
    pub fn octahedron() -> PlanarEmbedding {
        let mut faces = Vec::new();
        for i in 0..4 {
            let (a, b) = (1 + i, 1 + (i + 1) % 4);
            faces.push([0, a, b]);
            faces.push([5, b, a]);
        }
        PlanarEmbedding::from_triangles(6, &faces).expect("valid")
    }

    /// Top 0, upper ring `1..=5`, lower ring `6..=10`, bottom 11. Lower
    /// vertex `6 + i` sits under upper vertices `1 + i` and `1 + (i+1) % 5`.
    pub fn icosahedron() -> PlanarEmbedding {
        let up = |i: usize| 1 + i % 5;
        let low = |i: usize| 6 + i % 5;
        let mut faces = Vec::new();
        for i in 0..5 {
            faces.push([0, up(i), up(i + 1)]);
            faces.push([up(i), low(i), up(i + 1)]);
            faces.push([up(i + 1), low(i), low(i + 1)]);
            faces.push([11, low(i + 1), low(i)]);
        }
        PlanarEmbedding::from_triangles(12, &faces).expect("valid")
    }

    /// Parses `K_n`, `P_n`, `C_n`, `star_n` (underscore optional) and the
    /// solids by name.
    pub fn by_name(name: &str) -> Result<Instance> {
        let unknown = || Error::UnknownInstance(name.to_string());
        match name.to_ascii_lowercase().as_str() {
            "petersen" => return Ok(Instance::Graph(petersen())),
            "octahedron" => return Ok(Instance::Embedded(octahedron())),
            "icosahedron" => return Ok(Instance::Embedded(icosahedron())),
            _ => {}
        }
        let (prefix, digits) = match name.find(|c: char| c.is_ascii_digit()) {
            Some(i) => name.split_at(i),
            None => return Err(unknown()),
        };
        let n: usize = digits.parse().map_err(|_| unknown())?;
        let g = match prefix.trim_end_matches('_') {
            "K" if n >= 1 => complete(n),
            "P" if n >= 1 => path(n),
            "C" if n >= 3 => cycle(n),
            "star" if n >= 1 => star(n),
            _ => return Err(unknown()),
        };
        Ok(Instance::Graph(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_shapes() {
        let prism = clique_tower(3, 1).unwrap();
        assert_eq!((prism.n(), prism.m()), (6, 9));
        assert_eq!(graph::diameter(&prism), Some(2));
        let g = clique_tower(4, 1).unwrap();
        assert_eq!(g.n(), 8);
        let tall = clique_tower(3, 10).unwrap();
        assert_eq!((tall.n(), graph::diameter(&tall)), (33, Some(11)));
        assert!(clique_tower(1, 3).is_err());
    }

    #[test]
    fn stacked_counts() {
        let e = stacked_triangulation(5, 99).unwrap();
        assert_eq!((e.graph().n(), e.graph().m(), e.faces().len()), (5, 9, 6));
        let big = stacked_triangulation(50, 7).unwrap();
        assert_eq!(big.graph().m(), 144);
        assert!(big.validate_maximal_planar().unwrap().maximal);
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(stacked_triangulation(30, 3).unwrap(), stacked_triangulation(30, 3).unwrap());
        assert_eq!(random_connected(9, 5, 11).unwrap(), random_connected(9, 5, 11).unwrap());
        assert_eq!(perturbed_tower(3, 4, 3, 1).unwrap(), perturbed_tower(3, 4, 3, 1).unwrap());
    }

    #[test]
    fn perturbation_keeps_connectivity() {
        for seed in 0..5 {
            let g = perturbed_tower(3, 5, 3, seed).unwrap();
            assert_eq!(g.m(), clique_tower(3, 5).unwrap().m() + 3);
            assert_eq!(vertex_connectivity(&g), 3);
        }
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named::by_name("K_5").unwrap().graph().m(), 10);
        assert_eq!(named::by_name("C7").unwrap().graph().m(), 7);
        assert_eq!(named::by_name("star_4").unwrap().graph().m(), 3);
        assert!(named::by_name("octahedron").unwrap().embedding().is_some());
        assert_eq!(named::by_name("dodecahedron"), Err(Error::UnknownInstance("dodecahedron".into())));
        assert!(named::by_name("C_2").is_err());
        let pet = named::petersen();
        assert_eq!((pet.n(), pet.m(), graph::girth(&pet)), (10, 15, Some(5)));
    }

    #[test]
    fn solid_connectivity() {
        assert_eq!(vertex_connectivity(named::octahedron().graph()), 4);
        assert_eq!(vertex_connectivity(named::icosahedron().graph()), 5);
    }
}
