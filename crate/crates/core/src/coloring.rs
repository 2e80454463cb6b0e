//! Edge colorings and rainbow-connectivity verification.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, UNREACHABLE};

/// Color id. Colors are small non-negative integers.
pub type Color = u32;

/// Largest palette the verifier accepts; color sets are tracked as `u128`
/// bit masks.
pub const MAX_PALETTE: usize = 128;

/// Total or partial edge coloring, indexed by the edge ids of the graph it
/// was created for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<Option<Color>>,
}

impl EdgeColoring {
    /// All edges uncolored.
    pub fn empty(g: &Graph) -> Self {
        EdgeColoring { colors: vec![None; g.m()] }
    }

    /// Every edge gets `color`.
    pub fn uniform(g: &Graph, color: Color) -> Self {
        EdgeColoring { colors: vec![Some(color); g.m()] }
    }

    /// Total coloring from a per-edge-id color list.
    pub fn from_colors(g: &Graph, colors: Vec<Color>) -> Result<Self> {
        if colors.len() != g.m() {
            return Err(Error::ColoringShape { expected: g.m(), got: colors.len() });
        }
        Ok(EdgeColoring { colors: colors.into_iter().map(Some).collect() })
    }

    pub fn get(&self, edge: usize) -> Option<Color> {
        self.colors[edge]
    }

    pub fn color_of(&self, g: &Graph, u: usize, v: usize) -> Option<Color> {
        g.edge_id(u, v).and_then(|e| self.colors[e])
    }

    pub fn set(&mut self, edge: usize, color: Color) {
        self.colors[edge] = Some(color);
    }

    /// Colors edge `{u, v}`; panics if it is not an edge of `g`.
    pub fn set_pair(&mut self, g: &Graph, u: usize, v: usize, color: Color) {
        let e = g.edge_id(u, v).unwrap_or_else(|| panic!("{{{u}, {v}}} is not an edge"));
        self.colors[e] = Some(color);
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len()
    }

    /// Number of distinct colors in use.
    pub fn palette_size(&self) -> usize {
        self.colors.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.colors.iter().flatten().copied().collect()
    }

    pub fn raw(&self) -> &[Option<Color>] {
        &self.colors
    }

    /// Gives every uncolored edge `color`.
    pub fn fill_uncolored(&mut self, color: Color) {
        for c in &mut self.colors {
            c.get_or_insert(color);
        }
    }

    fn ensure_total(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.m() {
            return Err(Error::ColoringShape { expected: g.m(), got: self.colors.len() });
        }
        match self.colors.iter().position(Option::is_none) {
            Some(e) => {
                let (u, v) = g.edges()[e];
                Err(Error::PartialColoring(u, v))
            }
            None => Ok(()),
        }
    }
}

/// Injective map from symbolic color names (`c_3`, `d`, `e_{1,2}`, ...) to
/// integer ids, so palette audits can be done by family.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ColorRegistry {
    ids: BTreeMap<String, Color>,
    names: Vec<String>,
}

impl ColorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Id for `name`, allocating the next integer on first use.
    pub fn id(&mut self, name: impl Into<String>) -> Color {
        let name = name.into();
        if let Some(&c) = self.ids.get(&name) {
            return c;
        }
        let c = self.names.len() as Color;
        self.ids.insert(name.clone(), c);
        self.names.push(name);
        c
    }

    pub fn lookup(&self, name: &str) -> Option<Color> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, c: Color) -> &str {
        &self.names[c as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Outcome of checking every vertex pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub rainbow_connected: bool,
    /// Witness path for each pair `(u, v)` with `u < v`, when requested.
    pub witness_paths: Option<BTreeMap<(usize, usize), Vec<usize>>>,
    /// Lexicographically first pair with no rainbow path.
    pub failing_pair: Option<(usize, usize)>,
}

/// Colors remapped to dense bit positions plus per-edge bits.
struct BitColoring<'a> {
    g: &'a Graph,
    bit: Vec<u128>,
    palette: usize,
}

impl<'a> BitColoring<'a> {
    fn new(g: &'a Graph, col: &EdgeColoring) -> Result<Self> {
        col.ensure_total(g)?;
        let palette: Vec<Color> = col.palette().into_iter().collect();
        if palette.len() > MAX_PALETTE {
            return Err(Error::PaletteTooLarge(palette.len()));
        }
        let bit = col
            .raw()
            .iter()
            .map(|c| 1u128 << palette.binary_search(&c.expect("total")).expect("in palette"))
            .collect();
        Ok(BitColoring { g, bit, palette: palette.len() })
    }

    fn edge_bit(&self, u: usize, v: usize) -> u128 {
        self.bit[self.g.edge_id(u, v).expect("adjacent")]
    }

    /// Depth-first search over rainbow walks as (vertex, used colors)
    /// states, steered toward the target by BFS distance. The future of a
    /// walk depends only on its state, so a state that failed once is never
    /// retried. Loops are cut from the walk that succeeds.
    fn find(&self, s: usize, t: usize, dist_to_t: &[usize], order: &[Vec<usize>]) -> Option<Vec<usize>> {
        if s == t {
            return Some(vec![s]);
        }
        if dist_to_t[s] == UNREACHABLE || dist_to_t[s] > self.palette {
            return None;
        }
        let mut failed: HashSet<(usize, u128)> = HashSet::new();
        let mut walk = vec![s];
        if self.dfs(s, 0, t, dist_to_t, order, &mut failed, &mut walk) {
            Some(crate::connectivity::strip_loops(walk))
        } else {
            None
        }
    }

    /// Neighbour lists sorted by distance to the target.
    fn order_toward(&self, dist_to_t: &[usize]) -> Vec<Vec<usize>> {
        self.g
            .vertices()
            .map(|v| {
                let mut nb = self.g.neighbors(v).to_vec();
                nb.sort_by_key(|&w| (dist_to_t[w], w));
                nb
            })
            .collect()
    }

    fn dfs(
        &self,
        v: usize,
        used: u128,
        t: usize,
        dist_to_t: &[usize],
        order: &[Vec<usize>],
        failed: &mut HashSet<(usize, u128)>,
        path: &mut Vec<usize>,
    ) -> bool {
        let spent = used.count_ones() as usize;
        for &w in &order[v] {
            if dist_to_t[w] == UNREACHABLE || spent + 1 + dist_to_t[w] > self.palette {
                continue;
            }
            let b = self.edge_bit(v, w);
            if used & b != 0 {
                continue;
            }
            if w == t {
                path.push(w);
                return true;
            }
            let next = used | b;
            if failed.contains(&(w, next)) {
                continue;
            }
            path.push(w);
            if self.dfs(w, next, t, dist_to_t, order, failed, path) {
                return true;
            }
            path.pop();
            failed.insert((w, next));
        }
        false
    }
}

/// A rainbow `u`–`v` path, if one exists. The coloring must be total.
pub fn exists_rainbow_path(g: &Graph, col: &EdgeColoring, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
    let bits = BitColoring::new(g, col)?;
    let dist = g.bfs(v);
    let order = bits.order_toward(&dist);
    Ok(bits.find(u, v, &dist, &order))
}

/// True when `path` is a path of `g` whose edge colors are pairwise distinct.
pub fn is_rainbow_path(g: &Graph, col: &EdgeColoring, path: &[usize]) -> bool {
    let mut seen_v = HashSet::new();
    let mut seen_c = HashSet::new();
    if !path.iter().all(|&v| v < g.n() && seen_v.insert(v)) {
        return false;
    }
    path.windows(2).all(|w| match col.color_of(g, w[0], w[1]) {
        Some(c) => seen_c.insert(c),
        None => false,
    })
}

/// Checks all unordered pairs. Pairs are checked in parallel; the reported
/// failing pair is the lexicographic minimum regardless of scheduling.
pub fn is_rainbow_connected(g: &Graph, col: &EdgeColoring) -> Result<VerificationReport> {
    verify(g, col, false)
}

/// As [`is_rainbow_connected`], also returning a witness path per pair.
pub fn verify_with_witnesses(g: &Graph, col: &EdgeColoring) -> Result<VerificationReport> {
    verify(g, col, true)
}

fn verify(g: &Graph, col: &EdgeColoring, witnesses: bool) -> Result<VerificationReport> {
    let bits = BitColoring::new(g, col)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let per_target: Vec<(Option<(usize, usize)>, Vec<((usize, usize), Vec<usize>)>)> = (0..n)
        .into_par_iter()
        .map(|v| {
            let dist = g.bfs(v);
            let order = bits.order_toward(&dist);
            let mut found = Vec::new();
            for u in 0..v {
                match bits.find(u, v, &dist, &order) {
                    Some(p) if witnesses => found.push(((u, v), p)),
                    Some(_) => {}
                    None => return (Some((u, v)), found),
                }
            }
            (None, found)
        })
        .collect();
    let failing_pair = per_target.iter().filter_map(|(f, _)| *f).min();
    let witness_paths = (witnesses && failing_pair.is_none())
        .then(|| per_target.into_iter().flat_map(|(_, w)| w).collect());
    Ok(VerificationReport { rainbow_connected: failing_pair.is_none(), witness_paths, failing_pair })
}

/// The cyclic pattern `0, 1, ..., m−1, 0, 1, ...` with `m = ⌈len/2⌉`.
pub fn cycle_pattern(len: usize) -> Vec<Color> {
    let m = len.div_ceil(2).max(1);
    (0..len).map(|i| (i % m) as Color).collect()
}

/// Colors the edges `cycle[i] – cycle[i+1]` (cyclically) with the pattern
/// of [`cycle_pattern`], shifted by `offset`. Other edges stay uncolored.
pub fn color_cycle(g: &Graph, cycle: &[usize], offset: Color) -> Result<EdgeColoring> {
    let mut col = EdgeColoring::empty(g);
    for (i, c) in cycle_edges(g, cycle)?.into_iter().zip(cycle_pattern(cycle.len())) {
        col.set(i, c + offset);
    }
    Ok(col)
}

/// Edge ids of a closed vertex sequence, validated as a simple cycle.
pub fn cycle_edges(g: &Graph, cycle: &[usize]) -> Result<Vec<usize>> {
    let len = cycle.len();
    if len < 3 {
        return Err(Error::CycleTooShort(len));
    }
    let distinct: HashSet<_> = cycle.iter().collect();
    if distinct.len() != len {
        return Err(Error::NotACycle(format!("{cycle:?} repeats a vertex")));
    }
    (0..len)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % len]);
            g.edge_id(a, b).ok_or_else(|| Error::NotACycle(format!("{a}-{b} is not an edge")))
        })
        .collect()
}
