//! Simple undirected graphs with dense vertex ids and the metric queries
//! the constructions rely on.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker for "no path" in distance tables.
pub const UNREACHABLE: usize = usize::MAX;

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u < v` and sorted; each
/// edge's position in [`Graph::edges`] is its edge id. Adjacency lists are
/// sorted, which makes every traversal below deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

#[inline]
pub fn normalize(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints, self-loops and
    /// duplicate edges.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = normalize(u, v);
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_sorted(n, seen.into_iter().collect()))
    }

    /// Builds a graph, silently collapsing duplicates. Self-loops are still
    /// dropped. Used where multi-edges arise naturally (contraction).
    pub(crate) fn from_edges_lossy(n: usize, edge_list: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<_> = edge_list
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| normalize(u, v))
            .collect();
        Self::from_sorted(n, set.into_iter().collect())
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            index.insert((u, v), i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&normalize(u, v))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&normalize(u, v)).copied()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// BFS distances from a set of sources.
    pub fn bfs_from_set<I: IntoIterator<Item = usize>>(&self, sources: I) -> Vec<usize> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn bfs(&self, source: usize) -> Vec<usize> {
        self.bfs_from_set([source])
    }

    /// All-pairs distances by repeated BFS.
    pub fn all_pairs_distances(&self) -> Vec<Vec<usize>> {
        self.vertices().map(|v| self.bfs(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![UNREACHABLE; self.n];
        let mut out = Vec::new();
        for s in self.vertices() {
            if comp[s] != UNREACHABLE {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if comp[w] == UNREACHABLE {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Shortest path from `s` to `t` restricted to vertices accepted by
    /// `allowed`; ties go to the lowest-id predecessor chain.
    pub fn shortest_path_within(
        &self,
        s: usize,
        t: usize,
        allowed: impl Fn(usize) -> bool,
        skip_edge: Option<(usize, usize)>,
    ) -> Option<Vec<usize>> {
        let skip = skip_edge.map(|(a, b)| normalize(a, b));
        let mut prev = vec![UNREACHABLE; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &w in &self.adj[u] {
                if seen[w] || !allowed(w) || skip == Some(normalize(u, w)) {
                    continue;
                }
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
        if !seen[t] {
            return None;
        }
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

/// A set of vertex ids of some graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// Summary metrics. `diameter`/`radius` are `None` for disconnected graphs,
/// `girth` is `None` for forests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metrics {
    pub connected: bool,
    pub diameter: Option<usize>,
    pub radius: Option<usize>,
    pub girth: Option<usize>,
    pub min_degree: usize,
}

/// Diameter and radius come from all-pairs BFS; girth from one BFS per
/// root, so the whole call costs O(nm).
pub fn metrics(g: &Graph) -> Metrics {
    let connected = g.is_connected();
    let (diameter, radius) = if connected && g.n() > 0 {
        let ecc: Vec<usize> = g
            .vertices()
            .map(|v| g.bfs(v).into_iter().max().unwrap_or(0))
            .collect();
        (ecc.iter().copied().max(), ecc.iter().copied().min())
    } else {
        (None, None)
    };
    Metrics { connected, diameter, radius, girth: girth(g), min_degree: g.min_degree() }
}

pub fn girth(g: &Graph) -> Option<usize> {
    let mut best = UNREACHABLE;
    for root in g.vertices() {
        let mut dist = vec![UNREACHABLE; g.n()];
        let mut parent = vec![UNREACHABLE; g.n()];
        let mut queue = VecDeque::from([root]);
        dist[root] = 0;
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != UNREACHABLE).then_some(best)
}

pub fn diameter(g: &Graph) -> Option<usize> {
    metrics(g).diameter
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Neighborhood {
    /// Vertices at distance exactly `l`.
    Open,
    /// Vertices at distance at most `l`.
    Closed,
}

/// `N^l(X)` (open) or `N^l[X]` (closed).
pub fn l_step_neighborhood(g: &Graph, x: &VertexSet, l: usize, mode: Neighborhood) -> Result<VertexSet> {
    if x.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    x.check_range(g.n())?;
    let dist = g.bfs_from_set(x.iter());
    Ok(g.vertices()
        .filter(|&v| match mode {
            Neighborhood::Open => dist[v] == l,
            Neighborhood::Closed => dist[v] <= l,
        })
        .collect())
}

/// Induced subgraph with the id remap in both directions.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// Subgraph id -> original id.
    pub to_original: Vec<usize>,
    /// Original id -> subgraph id.
    pub to_sub: HashMap<usize, usize>,
}

pub fn induced_subgraph(g: &Graph, x: &VertexSet) -> Result<Induced> {
    if x.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    x.check_range(g.n())?;
    let to_original = x.to_vec();
    let to_sub: HashMap<usize, usize> = to_original.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = g
        .edges()
        .iter()
        .filter_map(|&(u, v)| Some((*to_sub.get(&u)?, *to_sub.get(&v)?)))
        .collect::<Vec<_>>();
    let graph = Graph::from_edges_lossy(to_original.len(), edges);
    Ok(Induced { graph, to_original, to_sub })
}

/// A quotient graph obtained by contracting disjoint connected vertex sets.
#[derive(Clone, Debug)]
pub struct ContractionMap {
    pub quotient: Graph,
    /// Quotient vertex -> original vertices it stands for.
    pub origin: Vec<VertexSet>,
    /// Original vertex -> quotient vertex.
    pub image: Vec<usize>,
}

impl ContractionMap {
    pub fn is_contracted(&self, q: usize) -> bool {
        self.origin[q].len() > 1
    }
}

/// Contracts each part to a single vertex. Quotient vertices are numbered
/// by the smallest original vertex they contain; untouched vertices become
/// singletons. Parallel edges created by contraction collapse.
pub fn contract_components(g: &Graph, parts: &[VertexSet]) -> Result<ContractionMap> {
    let mut owner = vec![UNREACHABLE; g.n()];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        part.check_range(g.n())?;
        for v in part.iter() {
            if owner[v] != UNREACHABLE {
                return Err(Error::OverlappingParts(v));
            }
            owner[v] = i;
        }
        let start = part.first().expect("non-empty");
        let seen = {
            let mut seen = VertexSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if part.contains(w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen
        };
        if seen.len() != part.len() {
            return Err(Error::DisconnectedPart(start));
        }
    }

    // Representatives: the minimum vertex of every class.
    let mut reps: Vec<(usize, VertexSet)> = Vec::new();
    for v in g.vertices() {
        match owner[v] {
            UNREACHABLE => reps.push((v, VertexSet::from([v]))),
            i if parts[i].first() == Some(v) => reps.push((v, parts[i].clone())),
            _ => {}
        }
    }
    reps.sort_by_key(|(r, _)| *r);
    let mut image = vec![UNREACHABLE; g.n()];
    for (q, (_, set)) in reps.iter().enumerate() {
        for v in set.iter() {
            image[v] = q;
        }
    }
    let quotient = Graph::from_edges_lossy(
        reps.len(),
        g.edges().iter().map(|&(u, v)| (image[u], image[v])),
    );
    Ok(ContractionMap { quotient, origin: reps.into_iter().map(|(_, s)| s).collect(), image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.m(), 3);
        assert_eq!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::new(4, &[(0, 1), (0, 1)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(4, &[(1, 0), (0, 1)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, &[(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn metrics_of_small_graphs() {
        let m = metrics(&cycle(7));
        assert_eq!((m.diameter, m.radius, m.girth, m.min_degree), (Some(3), Some(3), Some(7), 2));
        let m = metrics(&complete(4));
        assert_eq!((m.diameter, m.radius, m.girth, m.min_degree), (Some(1), Some(1), Some(3), 3));
        let path = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(metrics(&path).girth, None);
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let m = metrics(&split);
        assert!(!m.connected);
        assert_eq!(m.diameter, None);
    }

    #[test]
    fn petersen_metrics_match_bfs_oracle() {
        let g = named::petersen();
        // Oracle: brute-force eccentricities and shortest cycle by DFS over
        // simple cycles is too slow; use per-pair BFS instead.
        let d = g.all_pairs_distances();
        let diam = d.iter().flatten().copied().max().unwrap();
        let m = metrics(&g);
        assert_eq!(m.diameter, Some(diam));
        assert_eq!(m.diameter, Some(2));
        assert_eq!(m.girth, Some(5));
        assert_eq!(m.min_degree, 3);
    }

    #[test]
    fn neighborhoods() {
        let path = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let x = VertexSet::from([0]);
        assert_eq!(l_step_neighborhood(&path, &x, 2, Neighborhood::Open).unwrap(), VertexSet::from([2]));
        let x = VertexSet::from([1, 3]);
        assert_eq!(l_step_neighborhood(&path, &x, 0, Neighborhood::Closed).unwrap(), x);
        assert_eq!(
            l_step_neighborhood(&path, &VertexSet::new(), 1, Neighborhood::Open),
            Err(Error::EmptyVertexSet)
        );
        let oct = named::octahedron();
        let face = oct.faces()[0].clone();
        let face_set: VertexSet = face.iter().copied().collect();
        let ring = l_step_neighborhood(oct.graph(), &face_set, 1, Neighborhood::Open).unwrap();
        assert_eq!(ring.len(), 3);
        assert!(ring.is_disjoint(&face_set));
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = complete(4);
        let sub = induced_subgraph(&k4, &VertexSet::from([0, 2, 3])).unwrap();
        assert_eq!((sub.graph.n(), sub.graph.m()), (3, 3));
        assert_eq!(sub.to_original, vec![0, 2, 3]);
        assert_eq!(sub.to_sub[&3], 2);
        let c6 = cycle(6);
        let sub = induced_subgraph(&c6, &VertexSet::from([0, 2, 4])).unwrap();
        assert_eq!(sub.graph.m(), 0);
        let pet = named::petersen();
        let outer = induced_subgraph(&pet, &VertexSet::from([0, 1, 2, 3, 4])).unwrap();
        assert_eq!(outer.graph, cycle(5));
    }

    #[test]
    fn contractions() {
        let c6 = cycle(6);
        let same = contract_components(&c6, &[]).unwrap();
        assert_eq!(same.quotient, c6);
        let tri = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let single = contract_components(&tri, &[VertexSet::from([3])]).unwrap();
        assert_eq!(single.quotient, tri);
        let c = contract_components(&c6, &[VertexSet::from([0, 1])]).unwrap();
        assert_eq!(c.quotient, cycle(5));
        assert_eq!(c.image[1], 0);
        assert_eq!(c.origin[0], VertexSet::from([0, 1]));
        assert_eq!(
            contract_components(&c6, &[VertexSet::from([0, 1]), VertexSet::from([1, 2])]).unwrap_err(),
            Error::OverlappingParts(1)
        );
        assert_eq!(
            contract_components(&c6, &[VertexSet::from([0, 3])]).unwrap_err(),
            Error::DisconnectedPart(0)
        );
    }
}
