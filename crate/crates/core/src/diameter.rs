//! Rainbow colorings for 3- and 4-connected graphs of large diameter.
//!
//! Both constructions pick a diametral pair `u1, u2`, route `κ` internally
//! disjoint induced paths between them, contract every component of the
//! rest to a single vertex, color the contracted graph from the paths
//! outward, and finally lift the coloring back by giving each contracted
//! component a spanning tree of fresh colors.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::coloring::{cycle_pattern, is_rainbow_connected, ColorRegistry, EdgeColoring, VerificationReport};
use crate::connectivity::{disjoint_paths, make_induced, vertex_connectivity, PathSystem};
use crate::error::{Error, Result};
use crate::graph::{self, contract_components, ContractionMap, Graph, VertexSet};

/// Parent pointers toward a base set, with `l(v)` the number of steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationTable {
    pub l_of: BTreeMap<usize, usize>,
    pub p_of: BTreeMap<usize, usize>,
    /// Parent edges `{v, p(v)}`, normalized.
    pub e_p: BTreeSet<(usize, usize)>,
}

impl DominationTable {
    pub fn max_l(&self) -> usize {
        self.l_of.values().copied().max().unwrap_or(0)
    }

    /// Follows parents from `v` to the base.
    pub fn chain(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(&p) = self.p_of.get(&cur) {
            out.push(p);
            cur = p;
        }
        out
    }
}

/// A bound the construction tracks internally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: usize,
    pub limit: usize,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: impl Into<String>, value: usize, limit: usize) -> Self {
        BoundCheck { name: name.into(), value, limit, holds: value <= limit }
    }
}

#[derive(Clone, Debug)]
pub struct DiameterConstruction {
    pub kappa: usize,
    pub paths: PathSystem,
    pub contraction: ContractionMap,
    /// One table for κ = 3; one per path for κ = 4.
    pub domination: Vec<DominationTable>,
    pub quotient_coloring: EdgeColoring,
    pub coloring: EdgeColoring,
    pub registry: ColorRegistry,
    /// Number of colors on the paths before any recoloring.
    pub m: usize,
    pub n: usize,
    pub diam: usize,
    /// `n/κ − diam`.
    pub c: Ratio<i64>,
    pub claimed_bound: usize,
    pub checks: Vec<BoundCheck>,
    pub verification: VerificationReport,
}

impl DiameterConstruction {
    pub fn palette_size(&self) -> usize {
        self.coloring.palette_size()
    }

    pub fn verified(&self) -> bool {
        self.verification.rainbow_connected
    }

    pub fn bound_met(&self) -> bool {
        self.palette_size() <= self.claimed_bound
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Vertices of the contracted graph that stand for components.
    pub fn y_vertices(&self) -> Vec<usize> {
        let covered = self.paths.covered();
        (0..self.contraction.quotient.n())
            .filter(|&q| !self.contraction.origin[q].iter().any(|v| covered.contains(v)))
            .collect()
    }
}

/// `⌈n/κ + a·c + b⌉` with `c = n/κ − diam`, in exact arithmetic.
pub fn claimed_bound(n: usize, kappa: usize, diam: usize) -> (Ratio<i64>, usize) {
    let (slope, constant) = match kappa {
        3 => (11, 6),
        _ => (15, 18),
    };
    let nk = Ratio::new(n as i64, kappa as i64);
    let c = nk - Ratio::from_integer(diam as i64);
    let bound = (nk + c * slope + Ratio::from_integer(constant)).ceil().to_integer();
    (c, bound.max(0) as usize)
}

/// The lexicographically smallest pair at distance `diam(G)`.
pub fn diametral_pair(g: &Graph) -> Result<(usize, usize)> {
    if g.n() < 2 {
        return Err(Error::InvalidParameters("need at least two vertices".into()));
    }
    let mut best = (0, (0, 1));
    for u in g.vertices() {
        let dist = g.bfs(u);
        for v in u + 1..g.n() {
            if dist[v] == graph::UNREACHABLE {
                return Err(Error::Disconnected);
            }
            if dist[v] > best.0 {
                best = (dist[v], (u, v));
            }
        }
    }
    Ok(best.1)
}

/// Shortest parent chains from every vertex to `base`. Among shortest
/// chains, the number of `spine` edges is minimized; with `spine_mode`, no
/// chain may use two consecutive spine edges. Remaining ties go to the
/// lowest parent id.
pub fn constrained_domination(gq: &Graph, base: &VertexSet, spine: &[usize], spine_mode: bool) -> Result<DominationTable> {
    dominate(gq, base, spine, spine_mode, |_| true)
}

fn spine_edges(spine: &[usize]) -> HashSet<(usize, usize)> {
    spine.windows(2).map(|w| graph::normalize(w[0], w[1])).collect()
}

/// As [`constrained_domination`], but only vertices accepted by `region`
/// (plus the base) may appear on chains. Vertices of the region must all be
/// reached.
fn dominate(
    g: &Graph,
    base: &VertexSet,
    spine: &[usize],
    spine_mode: bool,
    region: impl Fn(usize) -> bool,
) -> Result<DominationTable> {
    base.check_range(g.n())?;
    if base.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let on_spine = spine_edges(spine);
    let mut table = DominationTable::default();
    // Per labeled vertex: spine edges used so far, whether its own parent edge is a spine edge.
    let mut state: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for v in base.iter() {
        table.l_of.insert(v, 0);
        state.insert(v, (0, false));
    }
    let mut frontier = base.to_vec();
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut best: BTreeMap<usize, (usize, bool, usize)> = BTreeMap::new();
        for &p in &frontier {
            let (used, last) = state[&p];
            for &w in g.neighbors(p) {
                if table.l_of.contains_key(&w) || !region(w) {
                    continue;
                }
                let spine_edge = on_spine.contains(&graph::normalize(p, w));
                if spine_mode && spine_edge && last {
                    continue;
                }
                let key = (used + spine_edge as usize, spine_edge, p);
                best.entry(w).and_modify(|k| *k = (*k).min(key)).or_insert(key);
            }
        }
        frontier.clear();
        for (w, (used, spine_edge, p)) in best {
            table.l_of.insert(w, level);
            table.p_of.insert(w, p);
            table.e_p.insert(graph::normalize(w, p));
            state.insert(w, (used, spine_edge));
            frontier.push(w);
        }
    }
    if let Some(v) = g.vertices().find(|&v| region(v) && !table.l_of.contains_key(&v)) {
        return Err(Error::UnreachableVertex { vertex: v });
    }
    Ok(table)
}

/// Everything the two constructions share up to the contracted graph.
struct Skeleton {
    paths: PathSystem,
    contraction: ContractionMap,
    /// Paths in contracted-graph ids.
    qpaths: Vec<Vec<usize>>,
    diam: usize,
}

fn skeleton(g: &Graph, k: usize) -> Result<Skeleton> {
    let found = vertex_connectivity(g);
    if found < k {
        return Err(Error::ConnectivityTooLow { required: k, found });
    }
    let (u1, u2) = diametral_pair(g)?;
    let diam = g.bfs(u1)[u2];
    let paths = make_induced(g, &disjoint_paths(g, u1, u2, k)?);
    let covered = paths.covered();
    let rest: VertexSet = g.vertices().filter(|&v| !covered.contains(v)).collect();
    let parts: Vec<VertexSet> = if rest.is_empty() {
        Vec::new()
    } else {
        let sub = graph::induced_subgraph(g, &rest)?;
        sub.graph
            .components()
            .into_iter()
            .map(|comp| comp.into_iter().map(|v| sub.to_original[v]).collect())
            .collect()
    };
    let contraction = contract_components(g, &parts)?;
    let qpaths = paths.paths.iter().map(|p| p.iter().map(|&v| contraction.image[v]).collect()).collect();
    Ok(Skeleton { paths, contraction, qpaths, diam })
}

/// Lifts a coloring of the contracted graph: edges between classes keep
/// their quotient color, each contracted component gets a spanning tree of
/// fresh colors, and remaining edges inside a component reuse `filler`.
fn expand(g: &Graph, cm: &ContractionMap, qcol: &EdgeColoring, reg: &mut ColorRegistry, filler: u32) -> EdgeColoring {
    let mut col = EdgeColoring::empty(g);
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let (qa, qb) = (cm.image[a], cm.image[b]);
        if qa != qb {
            col.set(e, qcol.color_of(&cm.quotient, qa, qb).expect("quotient edge colored"));
        }
    }
    for q in 0..cm.quotient.n() {
        let members = &cm.origin[q];
        if members.len() < 2 {
            continue;
        }
        let root = members.first().expect("non-empty");
        let mut seen = VertexSet::from([root]);
        let mut queue = std::collections::VecDeque::from([root]);
        let mut k = 0;
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if members.contains(w) && seen.insert(w) {
                    k += 1;
                    col.set_pair(g, u, w, reg.id(format!("t{q}_{k}")));
                    queue.push_back(w);
                }
            }
        }
    }
    col.fill_uncolored(filler);
    col
}

fn finish(
    g: &Graph,
    kappa: usize,
    sk: Skeleton,
    domination: Vec<DominationTable>,
    qcol: EdgeColoring,
    mut reg: ColorRegistry,
    m: usize,
    checks: Vec<BoundCheck>,
) -> Result<DiameterConstruction> {
    let filler = reg.id("c1");
    let coloring = expand(g, &sk.contraction, &qcol, &mut reg, filler);
    let verification = is_rainbow_connected(g, &coloring)?;
    let (c, bound) = claimed_bound(g.n(), kappa, sk.diam);
    Ok(DiameterConstruction {
        kappa,
        paths: sk.paths,
        contraction: sk.contraction,
        domination,
        quotient_coloring: qcol,
        coloring,
        registry: reg,
        m,
        n: g.n(),
        diam: sk.diam,
        c,
        claimed_bound: bound,
        checks,
        verification,
    })
}

fn verified(con: DiameterConstruction) -> Result<DiameterConstruction> {
    match con.verification.failing_pair {
        Some((u, v)) => Err(Error::VerificationFailed(u, v)),
        None => Ok(con),
    }
}

/// The κ = 3 coloring. Fails if the result does not verify.
pub fn construct_k3(g: &Graph) -> Result<DiameterConstruction> {
    verified(construct_k3_unchecked(g)?)
}

/// The κ = 3 coloring with the verification outcome attached rather than
/// enforced, for diagnostics.
pub fn construct_k3_unchecked(g: &Graph) -> Result<DiameterConstruction> {
    let sk = skeleton(g, 3)?;
    let gq = &sk.contraction.quotient;
    let (p1, p2, p3) = (&sk.qpaths[0], &sk.qpaths[1], &sk.qpaths[2]);
    let (u1, u2) = (p1[0], *p1.last().expect("non-empty"));
    let mut reg = ColorRegistry::new();
    let mut qcol = EdgeColoring::empty(gq);

    // The cycle P1 ∪ P3, cyclically colored.
    let mut cycle = p1.clone();
    cycle.extend(p3[1..p3.len() - 1].iter().rev());
    let pattern = cycle_pattern(cycle.len());
    for i in 0..cycle.len() {
        let c = reg.id(format!("c{}", pattern[i] + 1));
        qcol.set_pair(gq, cycle[i], cycle[(i + 1) % cycle.len()], c);
    }
    let m_cycle = cycle.len().div_ceil(2);
    // P2 gets one color per edge, starting from the cycle's colors.
    for (j, w) in p2.windows(2).enumerate() {
        qcol.set_pair(gq, w[0], w[1], reg.id(format!("c{}", j + 1)));
    }
    let m = m_cycle.max(p2.len() - 1);

    let x: VertexSet = p1.iter().chain(p3.iter()).copied().collect();
    let x2: VertexSet = p2[1..p2.len() - 1].iter().copied().collect();
    let y: VertexSet = gq.vertices().filter(|&v| !x.contains(v) && !x2.contains(v)).collect();
    debug_assert!(x.contains(u1) && x.contains(u2));

    let table = constrained_domination(gq, &x, p2, true)?;
    for (&v, &p) in &table.p_of {
        let name = if x2.contains(v) { format!("c{}", m + table.l_of[&v]) } else { format!("cv{v}") };
        qcol.set_pair(gq, v, p, reg.id(name));
    }
    for (e, &(a, b)) in gq.edges().iter().enumerate() {
        if qcol.get(e).is_some() {
            continue;
        }
        let class = |v: usize| if x.contains(v) { 0 } else if x2.contains(v) { 2 } else { 1 };
        let name = match (class(a).min(class(b)), class(a).max(class(b))) {
            (0, 0) => "c1",
            (0, 1) => "d",
            (_, 2) if class(a) != class(b) => "e",
            other => panic!("edge {a}-{b} joins classes {other:?}, impossible after contraction"),
        };
        qcol.set(e, reg.id(name));
    }

    let checks = vec![
        BoundCheck::new("max_l", table.max_l(), 3 * y.len()),
        BoundCheck::new("contracted_palette", qcol.palette_size(), m + 4 * y.len() + 2),
    ];
    finish(g, 3, sk, vec![table], qcol, reg, m, checks)
}

/// The κ = 4 coloring. Fails if the result does not verify.
pub fn construct_k4(g: &Graph) -> Result<DiameterConstruction> {
    verified(construct_k4_unchecked(g)?)
}

/// The κ = 4 coloring with the verification outcome attached rather than
/// enforced.
pub fn construct_k4_unchecked(g: &Graph) -> Result<DiameterConstruction> {
    let sk = skeleton(g, 4)?;
    let gq = &sk.contraction.quotient;
    let paths = &sk.qpaths;
    let (u1, u2) = (paths[0][0], *paths[0].last().expect("non-empty"));
    let mut reg = ColorRegistry::new();
    let mut qcol = EdgeColoring::empty(gq);

    // P1, P4 numbered from u1; P2, P3 from u2.
    for (i, p) in paths.iter().enumerate() {
        let len = p.len() - 1;
        for (j, w) in p.windows(2).enumerate() {
            let idx = if i == 0 || i == 3 { j + 1 } else { len - j };
            qcol.set_pair(gq, w[0], w[1], reg.id(format!("c{idx}")));
        }
    }
    let m = paths.iter().map(|p| p.len() - 1).max().expect("four paths");

    let interiors: Vec<VertexSet> = paths.iter().map(|p| p[1..p.len() - 1].iter().copied().collect()).collect();
    let path_of = |v: usize| interiors.iter().position(|x| x.contains(v));
    let on_path: VertexSet = paths.iter().flatten().copied().collect();
    let y: VertexSet = gq.vertices().filter(|&v| !on_path.contains(v)).collect();
    let z: Vec<VertexSet> = interiors
        .iter()
        .map(|xi| y.iter().filter(|&v| gq.neighbors(v).iter().all(|&w| xi.contains(w))).collect())
        .collect();

    let mut tables = Vec::with_capacity(4);
    let mut assigned = HashSet::new();
    for i in 0..4 {
        let base: VertexSet = [u1, u2]
            .into_iter()
            .chain((0..4).filter(|&j| j != i).flat_map(|j| interiors[j].iter()))
            .collect();
        let region = interiors[i].union(&z[i]);
        let table = dominate(gq, &base, &paths[i], false, |v| region.contains(v))?;
        for (&v, &p) in &table.p_of {
            let e = graph::normalize(v, p);
            if !assigned.insert(e) {
                continue;
            }
            let name = if interiors[i].contains(v) {
                format!("c{}_{}", i + 1, table.l_of[&v])
            } else {
                format!("c{}_v{v}", i + 1)
            };
            qcol.set_pair(gq, v, p, reg.id(name));
        }
        tables.push(table);
    }
    for (e, &(a, b)) in gq.edges().iter().enumerate() {
        if qcol.get(e).is_some() {
            continue;
        }
        let name = match (y.contains(a), y.contains(b)) {
            (true, true) => panic!("edge {a}-{b} inside a contracted component"),
            (true, false) | (false, true) => {
                let other = if y.contains(a) { b } else { a };
                match path_of(other) {
                    Some(i) => format!("d{}", i + 1),
                    None => "d0".to_string(),
                }
            }
            (false, false) => match (path_of(a), path_of(b)) {
                (Some(i), Some(j)) if i != j => format!("e{}{}", i.min(j) + 1, i.max(j) + 1),
                _ => panic!("edge {a}-{b} is a chord of an induced path"),
            },
        };
        qcol.set(e, reg.id(name));
    }

    let mut checks: Vec<BoundCheck> =
        (0..4).map(|i| BoundCheck::new(format!("max_l{}", i + 1), tables[i].max_l(), 3 * z[i].len())).collect();
    let z_total: usize = z.iter().map(VertexSet::len).sum();
    checks.push(BoundCheck::new("contracted_palette", qcol.palette_size(), m + 4 * z_total + 10));
    finish(g, 4, sk, tables, qcol, reg, m, checks)
}
