use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::layers::LayerDecomposition;
use crate::coloring::{cycle_pattern, is_rainbow_connected, Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexSet};

/// The connected dominating set `D = F ∪ {N_k : k ∈ A} ∪ V(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingPlan {
    pub kappa: usize,
    /// Layers with `|N_k| ≤ 2κ − 1`, `= 2κ` and `≥ 2κ + 1`.
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    pub a3: Vec<usize>,
    /// Chosen residue class of the labels of `A2 ∪ A3`.
    pub a: usize,
    /// Selected layers.
    pub selected: Vec<usize>,
    /// `path[k] ∈ N_k`, from the face out to `N_t`.
    pub path: Vec<usize>,
    pub d: VertexSet,
    /// Edges of the shortest paths added to reconnect `D` when a selected
    /// layer is not connected; empty on the primary path.
    pub connectors: Vec<(usize, usize)>,
    /// Largest distance from any vertex to `D`.
    pub radius: usize,
}

impl DominatingPlan {
    /// `Σ_{k ∈ A} ⌈|N_k|/2⌉` for residue class `a`.
    fn class_cost(big: &[usize], sizes: &[usize], kappa: usize, a: usize) -> usize {
        big.iter()
            .enumerate()
            .filter(|(i, _)| (i + 1) % kappa == a)
            .map(|(_, &k)| sizes[k].div_ceil(2))
            .sum()
    }
}

/// Partitions the layers by size, picks the cheapest residue class, runs a
/// BFS parent chain from `N_t` back to the face and assembles `D`. The
/// actual domination radius is measured, not assumed; connectivity of `D`
/// is checked.
pub fn build_dominating_plan(g: &Graph, ld: &LayerDecomposition, kappa: usize) -> Result<DominatingPlan> {
    if !(3..=5).contains(&kappa) {
        return Err(Error::UnsupportedKappa(kappa));
    }
    let sizes = ld.sizes();
    let (mut a1, mut a2, mut a3) = (Vec::new(), Vec::new(), Vec::new());
    for (k, &s) in sizes.iter().enumerate() {
        match s.cmp(&(2 * kappa)) {
            std::cmp::Ordering::Less => a1.push(k),
            std::cmp::Ordering::Equal => a2.push(k),
            std::cmp::Ordering::Greater => a3.push(k),
        }
    }
    let mut big: Vec<usize> = a2.iter().chain(&a3).copied().collect();
    big.sort_unstable();
    let a = (0..kappa)
        .min_by_key(|&a| (DominatingPlan::class_cost(&big, &sizes, kappa, a), a))
        .expect("kappa > 0");
    let selected: Vec<usize> =
        big.iter().enumerate().filter(|(i, _)| (i + 1) % kappa == a).map(|(_, &k)| k).collect();

    let depth = ld.depth(g.n());
    let mut path = vec![ld.layers[ld.t][0]];
    for k in (0..ld.t).rev() {
        let cur = *path.last().expect("non-empty");
        let parent = g.neighbors(cur).iter().copied().find(|&w| depth[w] == k).expect("BFS layer has a parent");
        path.push(parent);
    }
    path.reverse();

    let mut d: VertexSet = ld.layers[0].iter().copied().collect();
    for &k in &selected {
        d.extend(ld.layers[k].iter().copied());
    }
    d.extend(path.iter().copied());
    let connectors = reconnect(g, &mut d, path[0])?;

    let radius = g.bfs_from_set(d.iter()).into_iter().max().unwrap_or(0);
    Ok(DominatingPlan { kappa, a1, a2, a3, a, selected, path, d, connectors, radius })
}

/// Joins every component of `G[D]` to the one holding `root` by shortest
/// paths through `G`, adding the interior vertices to `D`.
fn reconnect(g: &Graph, d: &mut VertexSet, root: usize) -> Result<Vec<(usize, usize)>> {
    let mut added = Vec::new();
    loop {
        // Component of root inside G[D].
        let mut main = vec![false; g.n()];
        main[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if d.contains(w) && !main[w] {
                    main[w] = true;
                    stack.push(w);
                }
            }
        }
        if d.iter().all(|v| main[v]) {
            return Ok(added);
        }
        let sources: Vec<usize> = g.vertices().filter(|&v| main[v]).collect();
        let mut parent = vec![graph::UNREACHABLE; g.n()];
        let mut seen = main.clone();
        let mut queue: VecDeque<usize> = sources.into_iter().collect();
        let mut hit = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    if d.contains(w) {
                        hit = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        let mut v = hit.ok_or(Error::DominatingSetDisconnected)?;
        loop {
            let p = parent[v];
            added.push(graph::normalize(v, p));
            if main[p] {
                break;
            }
            d.insert(p);
            v = p;
        }
    }
}

impl DominatingPlan {
    /// Fails with the farthest vertex when `D` does not dominate within `l`.
    pub fn check_radius(&self, g: &Graph, l: usize) -> Result<()> {
        let dist = g.bfs_from_set(self.d.iter());
        match g.vertices().filter(|&v| dist[v] > l).max_by_key(|&v| (dist[v], std::cmp::Reverse(v))) {
            Some(v) => Err(Error::NotDominating { vertex: v, distance: dist[v], radius: l }),
            None => Ok(()),
        }
    }
}

/// Coloring of the edges inside `D`.
#[derive(Clone, Debug)]
pub struct DominatingColoring {
    /// Colors only the edges with both ends in `D`.
    pub coloring: EdgeColoring,
    pub palette: usize,
    /// Selected layers without a Hamiltonian cycle witness, colored by a
    /// spanning forest instead.
    pub fallback_layers: Vec<usize>,
    /// The layered coloring did not verify on `G[D]`; a spanning tree of
    /// `G[D]` was colored with distinct colors instead.
    pub tree_fallback: bool,
}

impl DominatingColoring {
    /// Whether any fallback was engaged.
    pub fn degraded(&self) -> bool {
        self.tree_fallback || !self.fallback_layers.is_empty()
    }
}

/// Colors `G[D]`: the path `P` with `t` distinct colors, each selected layer
/// around its Hamiltonian cycle with a fresh palette of `⌈|N_k|/2⌉` colors,
/// and the two face vertices off `P` with one more fresh color on their
/// edges to `P`'s face vertex. Other edges inside `D` reuse a color.
pub fn color_dominating_set(g: &Graph, ld: &LayerDecomposition, plan: &DominatingPlan) -> Result<DominatingColoring> {
    let mut col = EdgeColoring::empty(g);
    let mut next: Color = 0;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    for w in plan.path.windows(2) {
        col.set_pair(g, w[0], w[1], fresh());
    }
    let mut fallback_layers = Vec::new();
    for &k in &plan.selected {
        match &ld.cycles[k] {
            Some(cycle) => {
                let pattern = cycle_pattern(cycle.len());
                let base = (0..cycle.len().div_ceil(2)).map(|_| fresh()).collect::<Vec<_>>();
                for i in 0..cycle.len() {
                    col.set_pair(g, cycle[i], cycle[(i + 1) % cycle.len()], base[pattern[i] as usize]);
                }
            }
            None => {
                fallback_layers.push(k);
                let members: VertexSet = ld.layers[k].iter().copied().collect();
                let sub = graph::induced_subgraph(g, &members)?;
                let mut seen = vec![false; sub.graph.n()];
                for root in sub.graph.vertices() {
                    if seen[root] {
                        continue;
                    }
                    seen[root] = true;
                    let mut queue = std::collections::VecDeque::from([root]);
                    while let Some(u) = queue.pop_front() {
                        for &w in sub.graph.neighbors(u) {
                            if !seen[w] {
                                seen[w] = true;
                                queue.push_back(w);
                                col.set_pair(g, sub.to_original[u], sub.to_original[w], fresh());
                            }
                        }
                    }
                }
            }
        }
    }
    for &(a, b) in &plan.connectors {
        if col.color_of(g, a, b).is_none() {
            col.set_pair(g, a, b, fresh());
        }
    }
    let p0 = plan.path[0];
    let phi = fresh();
    for &f in &ld.layers[0] {
        if f != p0 {
            col.set_pair(g, f, p0, phi);
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if col.get(e).is_none() && plan.d.contains(a) && plan.d.contains(b) {
            col.set(e, phi);
        }
    }
    let mut tree_fallback = false;
    if !fallback_layers.is_empty() || !plan.connectors.is_empty() {
        let (sub, induced) = super::induced_coloring(g, &col, &plan.d)?;
        if !is_rainbow_connected(&sub, &induced)?.rainbow_connected {
            tree_fallback = true;
            col = spanning_tree_coloring(g, &plan.d, plan.path[0]);
        }
    }
    Ok(DominatingColoring { palette: col.palette_size(), coloring: col, fallback_layers, tree_fallback })
}

/// Distinct colors on a BFS tree of `G[D]`, one shared color elsewhere in `D`.
fn spanning_tree_coloring(g: &Graph, d: &VertexSet, root: usize) -> EdgeColoring {
    let mut col = EdgeColoring::empty(g);
    let mut next: Color = 1;
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if d.contains(w) && !seen[w] {
                seen[w] = true;
                col.set_pair(g, u, w, next);
                next += 1;
                queue.push_back(w);
            }
        }
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if col.get(e).is_none() && d.contains(a) && d.contains(b) {
            col.set(e, 0);
        }
    }
    col
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use crate::planar::layers::{layer_decomposition, smallest_face};

    #[test]
    fn solids_select_no_layers() {
        let oct = named::octahedron();
        let ld = layer_decomposition(&oct, &smallest_face(&oct)).unwrap();
        let plan = build_dominating_plan(oct.graph(), &ld, 4).unwrap();
        assert!(plan.a2.is_empty() && plan.a3.is_empty() && plan.selected.is_empty());
        assert!(plan.d.len() <= 5);
        assert_eq!(plan.path.len(), ld.t + 1);

        let ico = named::icosahedron();
        let ld = layer_decomposition(&ico, &smallest_face(&ico)).unwrap();
        let plan = build_dominating_plan(ico.graph(), &ld, 5).unwrap();
        assert!(plan.selected.is_empty());
        assert_eq!(plan.d.len(), 3 + ld.t);
        plan.check_radius(ico.graph(), 5).unwrap();
    }

    #[test]
    fn six_vertex_layer_lands_in_a2() {
        let ico = named::icosahedron();
        let ld = layer_decomposition(&ico, &smallest_face(&ico)).unwrap();
        let plan = build_dominating_plan(ico.graph(), &ld, 3).unwrap();
        assert_eq!(plan.a2, vec![1]);
        // Fewer big layers than residue classes: the empty class is cheapest.
        assert!(plan.selected.is_empty());
    }

    #[test]
    fn induced_coloring_verifies() {
        let emb = crate::generators::stacked_triangulation(60, 5).unwrap();
        let g = emb.graph();
        let ld = layer_decomposition(&emb, &smallest_face(&emb)).unwrap();
        let plan = build_dominating_plan(g, &ld, 3).unwrap();
        let dc = color_dominating_set(g, &ld, &plan).unwrap();
        let sub = graph::induced_subgraph(g, &plan.d).unwrap();
        let colors = sub.graph.edges().iter().map(|&(a, b)| {
            dc.coloring.color_of(g, sub.to_original[a], sub.to_original[b]).unwrap()
        });
        let induced = EdgeColoring::from_colors(&sub.graph, colors.collect()).unwrap();
        assert!(is_rainbow_connected(&sub.graph, &induced).unwrap().rainbow_connected);
        let layers: usize = plan.selected.iter().map(|&k| ld.layers[k].len().div_ceil(2)).sum();
        assert!(dc.fallback_layers.is_empty());
        assert_eq!(dc.palette, ld.t + layers + 1);
    }

    fn check_split_layer(n: usize, seed: u64, tree: bool) {
        let emb = crate::generators::stacked_triangulation(n, seed).unwrap();
        let g = emb.graph();
        let ld = layer_decomposition(&emb, &smallest_face(&emb)).unwrap();
        let plan = build_dominating_plan(g, &ld, 3).unwrap();
        assert!(!plan.connectors.is_empty());
        assert!(graph::induced_subgraph(g, &plan.d).unwrap().graph.is_connected());
        let dc = color_dominating_set(g, &ld, &plan).unwrap();
        assert_eq!(dc.tree_fallback, tree);
        assert!(dc.degraded());
        let (sub, induced) = crate::planar::induced_coloring(g, &dc.coloring, &plan.d).unwrap();
        assert!(is_rainbow_connected(&sub, &induced).unwrap().rainbow_connected);
    }

    #[test]
    fn split_layer_is_reconnected() {
        check_split_layer(55, 0, false);
    }

    #[test]
    fn split_layer_tree_fallback() {
        check_split_layer(45, 2, true);
    }

    #[test]
    fn radius_violation_names_the_vertex() {
        let oct = named::octahedron();
        let ld = layer_decomposition(&oct, &smallest_face(&oct)).unwrap();
        let plan = build_dominating_plan(oct.graph(), &ld, 4).unwrap();
        assert_eq!(plan.radius, 1);
        let err = plan.check_radius(oct.graph(), 0).unwrap_err();
        assert!(matches!(err, Error::NotDominating { distance: 1, radius: 0, .. }));
    }
}
