//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use rainbow::coloring::{color_cycle, is_rainbow_connected};
use rainbow::connectivity::{disjoint_paths, local_connectivity, vertex_connectivity};
use rainbow::diameter::{claimed_bound, construct_k3_unchecked, construct_k4_unchecked, DiameterConstruction};
use rainbow::generators::{clique_tower, named, perturbed_tower, random_connected, stacked_triangulation};
use rainbow::graph::{self, Graph, VertexSet};
use rainbow::oracle::{rc_exact, rc_exact_from, RcOutcome};
use rainbow::planar::{construct_planar, PlanarEmbedding};
use rainbow::Error;

const WORK_CAP: u64 = 100_000_000;

struct Line {
    id: usize,
    pass: bool,
    summary: String,
    elapsed: Duration,
}

fn timed(id: usize, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (pass, summary) = f();
    Line { id, pass, summary, elapsed: start.elapsed() }
}

fn rc(g: &Graph, budget: usize) -> Option<usize> {
    rc_exact(g, budget, WORK_CAP).ok().and_then(RcOutcome::value)
}

/// Criterion 1: oracle baselines, under 10 s.
fn oracle_sanity() -> (bool, String) {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in [4, 5] {
        if rc(&named::complete(n), 3) != Some(1) {
            bad.push(format!("K_{n}"));
        }
    }
    for n in 3..=6 {
        if rc(&named::path(n), n) != Some(n - 1) {
            bad.push(format!("P_{n}"));
        }
    }
    for n in 4..=8 {
        if rc(&named::cycle(n), n) != Some(n.div_ceil(2)) {
            bad.push(format!("C_{n}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (bad.is_empty() && secs < 10.0, format!("11 baselines, mismatches {bad:?}, {secs:.2} s (limit 10 s)"))
}

/// Criterion 2: rc ≥ diam on 200 seeded connected graphs with n ≤ 9. The
/// search starts at one color so the lower bound is certified, not assumed.
fn lower_bound_law() -> (bool, String) {
    let mut violations = Vec::new();
    let mut unresolved = Vec::new();
    for seed in 0..200u64 {
        let n = 3 + (seed % 7) as usize;
        let extra = (seed / 7 % 5) as usize;
        let g = random_connected(n, extra, seed).expect("generator");
        let diam = graph::diameter(&g).expect("connected");
        match rc_exact_from(&g, 1, g.m(), WORK_CAP) {
            Ok(RcOutcome::Exact { rc }) if rc >= diam => {}
            Ok(RcOutcome::Exact { rc }) => violations.push((seed, rc, diam)),
            other => unresolved.push((seed, format!("{other:?}"))),
        }
    }
    (
        violations.is_empty() && unresolved.is_empty(),
        format!("200 graphs, violations {violations:?}, unresolved {unresolved:?}"),
    )
}

/// Towers for `L` in `layers` plus 20 perturbations with up to 3 chords.
fn diameter_instances(kappa: usize, layers: std::ops::RangeInclusive<usize>) -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> =
        layers.map(|l| (format!("tower({kappa},{l})"), clique_tower(kappa, l).expect("tower"))).collect();
    for s in 0..20u64 {
        let (l, chords) = (3 + (s % 8) as usize, 1 + (s % 3) as usize);
        let g = perturbed_tower(kappa, l, chords, s).expect("perturbation keeps connectivity");
        assert_eq!(vertex_connectivity(&g), kappa);
        out.push((format!("perturbed({kappa},{l},{chords},seed {s})"), g));
    }
    out
}

fn run_diameter(kappa: usize, instances: &[(String, Graph)]) -> Vec<(String, DiameterConstruction)> {
    instances
        .iter()
        .map(|(name, g)| {
            let con = match kappa {
                3 => construct_k3_unchecked(g),
                _ => construct_k4_unchecked(g),
            };
            (name.clone(), con.unwrap_or_else(|e| panic!("{name}: {e}")))
        })
        .collect()
}

fn diameter_bound(kappa: usize, runs: &[(String, DiameterConstruction)], secs: f64, limit: f64) -> (bool, String) {
    let mut bad = Vec::new();
    let mut worst = (0usize, 0usize);
    for (name, con) in runs {
        let (_, bound) = claimed_bound(con.n, kappa, con.diam);
        if !con.verified() || con.palette_size() > bound {
            bad.push(format!("{name}: palette {} bound {bound} verified {}", con.palette_size(), con.verified()));
        }
        if con.palette_size() * worst.1 >= worst.0 * bound {
            worst = (con.palette_size(), bound);
        }
    }
    (
        bad.is_empty() && secs < limit,
        format!(
            "{} instances, failures {bad:?}, tightest palette/bound {}/{}, {secs:.1} s (limit {limit} s)",
            runs.len(),
            worst.0,
            worst.1
        ),
    )
}

/// Criterion 5: the internal checks on every κ = 3 instance.
fn internal_checks(runs: &[(String, DiameterConstruction)]) -> (bool, String) {
    let mut fired = Vec::new();
    for (name, con) in runs {
        for check in ["max_l", "contracted_palette"] {
            let c = con.check(check).expect("check recorded");
            if !c.holds {
                fired.push(format!("{name} {check} {}>{}", c.value, c.limit));
            }
        }
    }
    let summary = if fired.is_empty() {
        format!("{} instances, all checks hold", runs.len())
    } else {
        format!("{} of {} instance checks fire: {}", fired.len(), 2 * runs.len(), fired.join("; "))
    };
    (fired.is_empty(), summary)
}

fn planar_instances() -> Vec<(String, PlanarEmbedding)> {
    let mut out = vec![("octahedron".to_string(), named::octahedron()), ("icosahedron".to_string(), named::icosahedron())];
    for n in [10, 20, 50, 100, 200] {
        out.push((format!("stacked({n}, seed 7)"), stacked_triangulation(n, 7).expect("generator")));
    }
    out
}

/// Criteria 6 and 7 share the constructions.
fn planar(instances: &[(String, PlanarEmbedding)]) -> ((bool, String), (bool, String)) {
    let start = Instant::now();
    let mut bad6 = Vec::new();
    let mut bad7 = Vec::new();
    let mut rows = Vec::new();
    for (name, emb) in instances {
        let con = construct_planar(emb).unwrap_or_else(|e| panic!("{name}: {e}"));
        let p = con.palette_size();
        let b = &con.bounds;
        rows.push(format!("{name} {p}/{}/{}", b.layered, b.uniform));
        if !(con.verified() && p <= b.layered && p <= b.uniform && con.bound_met()) {
            bad6.push(format!(
                "{name}: verified {} palette {p} bounds {}/{} bound_met {} (layer fallback {:?}, connector edges {}, tree fallback {}, extension fallback {})",
                con.verified(),
                b.layered,
                b.uniform,
                con.bound_met(),
                con.dominating_fallback_layers,
                con.plan.connectors.len(),
                con.dominating_tree_fallback,
                con.extension.fallback
            ));
        }
        if con.dominating_palette > b.dominating || con.extension.fresh > b.extension {
            bad7.push(format!(
                "{name}: D palette {}/{} extension {}/{}",
                con.dominating_palette, b.dominating, con.extension.fresh, b.extension
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        (
            bad6.is_empty() && secs < 120.0,
            format!("palette/bounds [{}], failures {bad6:?}, {secs:.1} s (limit 120 s)", rows.join(", ")),
        ),
        (bad7.is_empty(), format!("{} instances, failures {bad7:?}", instances.len())),
    )
}

/// Smallest vertex set whose removal disconnects `g` (or leaves one vertex).
fn brute_force_cut(g: &Graph) -> usize {
    let n = g.n();
    for size in 0..n.saturating_sub(1) {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != size {
                continue;
            }
            let keep: VertexSet = (0..n).filter(|&v| mask & (1 << v) == 0).collect();
            if !graph::induced_subgraph(g, &keep).expect("non-empty").graph.is_connected() {
                return size;
            }
        }
    }
    n - 1
}

/// Smallest `u`–`v` separator avoiding both ends, for non-adjacent pairs.
fn brute_force_separator(g: &Graph, u: usize, v: usize) -> usize {
    let n = g.n();
    let mut best = usize::MAX;
    for mask in 0u32..1 << n {
        if mask & (1 << u | 1 << v) != 0 || mask.count_ones() as usize >= best {
            continue;
        }
        let keep: VertexSet = (0..n).filter(|&w| mask & (1 << w) == 0).collect();
        let sub = graph::induced_subgraph(g, &keep).expect("non-empty");
        if sub.graph.bfs(sub.to_sub[&u])[sub.to_sub[&v]] == graph::UNREACHABLE {
            best = mask.count_ones() as usize;
        }
    }
    best
}

/// Criterion 8: connectivity and path extraction against brute force.
fn menger() -> (bool, String) {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for seed in 0..500u64 {
        let n = 2 + (seed % 6) as usize;
        let extra = (seed / 6 % (n * n / 2 + 1) as u64) as usize;
        let g = random_connected(n, extra, seed).expect("generator");
        let k = vertex_connectivity(&g);
        let brute = brute_force_cut(&g);
        if k != brute {
            bad.push(format!("seed {seed}: kappa {k} brute {brute}"));
        }
        for u in 0..n {
            for v in u + 1..n {
                pairs += 1;
                let flow = local_connectivity(&g, u, v, usize::MAX);
                if !g.has_edge(u, v) && flow != brute_force_separator(&g, u, v) {
                    bad.push(format!("seed {seed}: flow {u}-{v}"));
                }
                match disjoint_paths(&g, u, v, flow) {
                    Ok(ps) if ps.k() == flow && ps.validate(&g).is_ok() => {}
                    other => bad.push(format!("seed {seed}: paths {u}-{v} {other:?}")),
                }
                if !matches!(disjoint_paths(&g, u, v, flow + 1), Err(Error::InsufficientPaths { .. })) {
                    bad.push(format!("seed {seed}: {u}-{v} exceeds flow"));
                }
            }
        }
    }
    (bad.is_empty(), format!("500 graphs, {pairs} vertex pairs, failures {bad:?}"))
}

/// Criterion 9: the cycle primitive.
fn cycle_primitive() -> (bool, String) {
    let mut bad = Vec::new();
    for len in 3..=30 {
        let c = named::cycle(len);
        let order: Vec<usize> = (0..len).collect();
        let col = color_cycle(&c, &order, 0).expect("cycle");
        let ok = is_rainbow_connected(&c, &col).expect("verifier").rainbow_connected;
        if col.palette_size() != len.div_ceil(2) || !ok {
            bad.push(format!("L={len}: palette {} verified {ok}", col.palette_size()));
        }
        if len <= 8 {
            let exact = rc(&c, len);
            if exact != Some(col.palette_size()) {
                bad.push(format!("L={len}: exact rc {exact:?}, cycle coloring {}", col.palette_size()));
            }
        }
    }
    (bad.is_empty(), format!("L in 3..=30, exact match for L <= 8, failures {bad:?}"))
}

fn main() {
    let mut lines = vec![timed(1, oracle_sanity), timed(2, lower_bound_law)];

    let start = Instant::now();
    let k3 = run_diameter(3, &diameter_instances(3, 1..=15));
    let secs3 = start.elapsed().as_secs_f64();
    lines.push(timed(3, || diameter_bound(3, &k3, secs3, 60.0)));
    let start = Instant::now();
    let k4 = run_diameter(4, &diameter_instances(4, 1..=12));
    let secs4 = start.elapsed().as_secs_f64();
    lines.push(timed(4, || diameter_bound(4, &k4, secs4, 60.0)));
    lines.push(timed(5, || internal_checks(&k3)));

    let start = Instant::now();
    let (six, seven) = planar(&planar_instances());
    let elapsed = start.elapsed();
    lines.push(Line { id: 6, pass: six.0, summary: six.1, elapsed });
    lines.push(Line { id: 7, pass: seven.0, summary: seven.1, elapsed: Duration::ZERO });

    lines.push(timed(8, menger));
    lines.push(timed(9, cycle_primitive));

    let mut err = std::io::stderr().lock();
    for l in &lines {
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(err, "criterion {}: {verdict} ({:.1} s) {}", l.id, l.elapsed.as_secs_f64(), l.summary);
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let _ = writeln!(err, "acceptance: {} of {} criteria pass", lines.len() - failed.len(), lines.len());
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
