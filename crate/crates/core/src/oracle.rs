//! Exact rainbow connection number by exhaustive search, for toy sizes.
//!
//! The search enumerates, for each vertex pair, every simple path with at
//! most `k` edges, then assigns edge colors in restricted-growth order (the
//! `i`-th edge may use at most one color beyond those already seen). A path
//! dies as soon as two of its edges share a color; a branch is cut when some
//! pair has no living path left. A full assignment where every pair keeps a
//! living path is a rainbow coloring with `k` colors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// Environment variable overriding the default work cap.
pub const WORK_CAP_ENV: &str = "RAINBOW_WORK_CAP";
pub const DEFAULT_WORK_CAP: u64 = 100_000_000;

/// The work cap from [`WORK_CAP_ENV`], falling back to [`DEFAULT_WORK_CAP`].
pub fn default_work_cap() -> u64 {
    std::env::var(WORK_CAP_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_WORK_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RcOutcome {
    /// `rc(G)` equals this value.
    Exact { rc: usize },
    /// No rainbow coloring with at most `budget` colors.
    AboveBudget { budget: usize },
    /// The work cap tripped before the search finished.
    Exceeded { work: u64 },
}

impl RcOutcome {
    pub fn value(self) -> Option<usize> {
        match self {
            RcOutcome::Exact { rc } => Some(rc),
            _ => None,
        }
    }
}

/// `rc(G)`, searching `k = max(1, diam)` upward to `budget`.
pub fn rc_exact(g: &Graph, budget: usize, work_cap: u64) -> Result<RcOutcome> {
    let diam = graph::diameter(g).ok_or(Error::Disconnected)?;
    rc_exact_from(g, diam.max(1), budget, work_cap)
}

/// As [`rc_exact`] but starting at `start` colors. Starting below the
/// diameter makes the search itself certify `rc(G) ≥ diam(G)`.
pub fn rc_exact_from(g: &Graph, start: usize, budget: usize, work_cap: u64) -> Result<RcOutcome> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.m() == 0 {
        // Single vertex: nothing to connect.
        return Ok(RcOutcome::Exact { rc: 0 });
    }
    let mut work = 0u64;
    for k in start.max(1)..=budget {
        match Search::new(g, k, work_cap, &mut work).and_then(|mut s| s.run()) {
            Some(true) => return Ok(RcOutcome::Exact { rc: k }),
            Some(false) => {}
            None => return Ok(RcOutcome::Exceeded { work }),
        }
    }
    Ok(RcOutcome::AboveBudget { budget })
}

struct Search<'w> {
    k: usize,
    order: Vec<usize>,
    paths: Vec<Vec<usize>>,
    pair_of: Vec<usize>,
    by_edge: Vec<Vec<usize>>,
    alive: Vec<bool>,
    alive_count: Vec<usize>,
    color: Vec<Option<u8>>,
    work: &'w mut u64,
    cap: u64,
}

impl<'w> Search<'w> {
    /// `None` when path enumeration alone exhausts the work cap.
    fn new(g: &Graph, k: usize, cap: u64, work: &'w mut u64) -> Option<Self> {
        let n = g.n();
        let mut paths = Vec::new();
        let mut pair_of = Vec::new();
        let mut pair = 0;
        for u in 0..n {
            for v in u + 1..n {
                let mut stack = Vec::new();
                let mut on = vec![false; n];
                on[u] = true;
                enumerate(g, u, v, k, &mut on, &mut stack, &mut |p| {
                    paths.push(p.to_vec());
                    pair_of.push(pair);
                }, work, cap)?;
                pair += 1;
            }
        }
        let mut by_edge = vec![Vec::new(); g.m()];
        let mut alive_count = vec![0; pair];
        for (i, p) in paths.iter().enumerate() {
            alive_count[pair_of[i]] += 1;
            for &e in p {
                by_edge[e].push(i);
            }
        }
        Some(Search {
            k,
            order: edge_order(g),
            alive: vec![true; paths.len()],
            paths,
            pair_of,
            by_edge,
            alive_count,
            color: vec![None; g.m()],
            work,
            cap,
        })
    }

    /// `Some(found)`, or `None` if the work cap tripped.
    fn run(&mut self) -> Option<bool> {
        if self.alive_count.contains(&0) {
            return Some(false);
        }
        self.assign(0, 0)
    }

    fn assign(&mut self, depth: usize, used: usize) -> Option<bool> {
        *self.work += 1;
        if *self.work > self.cap {
            return None;
        }
        if depth == self.order.len() {
            return Some(true);
        }
        let e = self.order[depth];
        let top = (used + 1).min(self.k);
        for c in 0..top {
            let c8 = c as u8;
            self.color[e] = Some(c8);
            let mut killed = Vec::new();
            let mut dead_pair = false;
            for &p in &self.by_edge[e] {
                if !self.alive[p] {
                    continue;
                }
                let clash = self.paths[p].iter().any(|&f| f != e && self.color[f] == Some(c8));
                if clash {
                    self.alive[p] = false;
                    killed.push(p);
                    let pair = self.pair_of[p];
                    self.alive_count[pair] -= 1;
                    if self.alive_count[pair] == 0 {
                        dead_pair = true;
                    }
                }
            }
            let outcome = if dead_pair { Some(false) } else { self.assign(depth + 1, used.max(c + 1)) };
            for p in killed {
                self.alive[p] = true;
                self.alive_count[self.pair_of[p]] += 1;
            }
            self.color[e] = None;
            match outcome {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    g: &Graph,
    at: usize,
    target: usize,
    max_len: usize,
    on: &mut [bool],
    stack: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
    work: &mut u64,
    cap: u64,
) -> Option<()> {
    *work += 1;
    if *work > cap {
        return None;
    }
    if stack.len() == max_len {
        return Some(());
    }
    for &w in g.neighbors(at) {
        if on[w] {
            continue;
        }
        let e = g.edge_id(at, w).expect("adjacent");
        stack.push(e);
        if w == target {
            emit(stack);
        } else {
            on[w] = true;
            enumerate(g, w, target, max_len, on, stack, emit, work, cap)?;
            on[w] = false;
        }
        stack.pop();
    }
    Some(())
}

/// Bridges first (they force distinct colors), then the rest of a BFS
/// spanning tree, then the remaining edges. Only affects pruning.
fn edge_order(g: &Graph) -> Vec<usize> {
    let bridges = bridges(g);
    let mut order: Vec<usize> = bridges.clone();
    let mut placed = vec![false; g.m()];
    for &e in &bridges {
        placed[e] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
                let e = g.edge_id(u, w).expect("adjacent");
                if !placed[e] {
                    placed[e] = true;
                    order.push(e);
                }
            }
        }
    }
    order.extend((0..g.m()).filter(|&e| !placed[e]));
    order
}

/// Edge ids whose removal disconnects the graph (brute force; toy sizes).
fn bridges(g: &Graph) -> Vec<usize> {
    (0..g.m())
        .filter(|&e| {
            let (a, b) = g.edges()[e];
            g.shortest_path_within(a, b, |_| true, Some((a, b))).is_none()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    const CAP: u64 = 50_000_000;

    #[test]
    fn baseline_values() {
        assert_eq!(rc_exact(&named::complete(4), 10, CAP).unwrap(), RcOutcome::Exact { rc: 1 });
        assert_eq!(rc_exact(&named::path(4), 10, CAP).unwrap(), RcOutcome::Exact { rc: 3 });
        assert_eq!(rc_exact(&named::cycle(6), 10, CAP).unwrap(), RcOutcome::Exact { rc: 3 });
        assert_eq!(rc_exact(&named::star(5), 10, CAP).unwrap(), RcOutcome::Exact { rc: 4 });
    }

    #[test]
    fn budget_and_cap_are_distinguished() {
        assert_eq!(rc_exact(&named::path(6), 3, CAP).unwrap(), RcOutcome::AboveBudget { budget: 3 });
        assert!(matches!(rc_exact(&named::petersen(), 10, 50).unwrap(), RcOutcome::Exceeded { .. }));
    }

    #[test]
    fn starting_below_diameter_still_finds_rc() {
        assert_eq!(rc_exact_from(&named::cycle(7), 1, 10, CAP).unwrap(), RcOutcome::Exact { rc: 4 });
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(rc_exact(&g, 5, CAP), Err(Error::Disconnected));
    }
}
