use proptest::prelude::*;

use rainbow::coloring::{color_cycle, is_rainbow_connected, EdgeColoring};
use rainbow::connectivity::{disjoint_paths, local_connectivity, make_induced, vertex_connectivity};
use rainbow::diameter::{claimed_bound, construct_k3_unchecked};
use rainbow::generators::{named, perturbed_tower, random_connected, random_graph, stacked_triangulation};
use rainbow::graph::{self, Graph, VertexSet};
use rainbow::io;
use rainbow::oracle::{rc_exact_from, RcOutcome};
use rainbow::planar::construct_planar;

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..10, 0u64..4, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p + 1, 5, seed).unwrap())
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n, 0usize..8, any::<u64>()).prop_map(|(n, extra, seed)| random_connected(n, extra, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjacency_is_symmetric(g in small_graph()) {
        let degrees: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(degrees, 2 * g.m());
        for &(u, v) in g.edges() {
            prop_assert!(u < v);
            prop_assert!(g.neighbors(u).contains(&v) && g.neighbors(v).contains(&u));
            prop_assert_eq!(g.edge_id(v, u), g.edge_id(u, v));
        }
    }

    #[test]
    fn edge_list_round_trips(g in small_graph()) {
        prop_assert_eq!(io::parse_edge_list(&io::emit_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn distances_are_a_metric(g in connected_graph(9)) {
        let d = g.all_pairs_distances();
        for u in g.vertices() {
            prop_assert_eq!(d[u][u], 0);
            for v in g.vertices() {
                prop_assert_eq!(d[u][v], d[v][u]);
                for w in g.vertices() {
                    prop_assert!(d[u][w] <= d[u][v] + d[v][w]);
                }
            }
        }
        prop_assert_eq!(graph::diameter(&g), d.iter().flatten().copied().max());
    }

    #[test]
    fn connectivity_below_min_degree(g in connected_graph(9)) {
        let k = vertex_connectivity(&g);
        prop_assert!(k <= g.min_degree());
        for u in g.vertices() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    prop_assert!(local_connectivity(&g, u, v, usize::MAX) >= k);
                }
            }
        }
    }

    #[test]
    fn disjoint_paths_are_valid(g in connected_graph(9), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (u, v) = (a.index(g.n()), b.index(g.n()));
        prop_assume!(u != v);
        let k = vertex_connectivity(&g);
        prop_assume!(k >= 1);
        let ps = disjoint_paths(&g, u, v, k).unwrap();
        prop_assert_eq!(ps.k(), k);
        prop_assert!(ps.validate(&g).is_ok());
        let induced = make_induced(&g, &ps);
        prop_assert_eq!(induced.k(), k);
        prop_assert!(induced.validate(&g).is_ok());
        for i in 0..k {
            prop_assert!(induced.len_of(i) <= ps.paths.iter().map(|p| p.len()).max().unwrap());
        }
    }

    #[test]
    fn distinct_colors_always_verify(g in connected_graph(12)) {
        let col = EdgeColoring::from_colors(&g, (0..g.m() as u32).collect()).unwrap();
        prop_assert!(is_rainbow_connected(&g, &col).unwrap().rainbow_connected);
    }

    #[test]
    fn one_color_verifies_only_cliques(g in connected_graph(8)) {
        let col = EdgeColoring::uniform(&g, 0);
        let complete = g.m() == g.n() * (g.n() - 1) / 2;
        prop_assert_eq!(is_rainbow_connected(&g, &col).unwrap().rainbow_connected, complete);
    }

    #[test]
    fn coloring_json_preserves_verdict(g in connected_graph(9), colors in prop::collection::vec(0u32..4, 36)) {
        let col = EdgeColoring::from_colors(&g, colors[..g.m()].to_vec()).unwrap();
        let before = is_rainbow_connected(&g, &col).unwrap();
        let back = io::parse_coloring_json(&g, &io::emit_coloring_json(&g, &col).unwrap()).unwrap();
        prop_assert_eq!(&back, &col);
        prop_assert_eq!(is_rainbow_connected(&g, &back).unwrap(), before);
    }

    #[test]
    fn cycle_coloring_is_optimal_width(len in 3usize..40) {
        let c = named::cycle(len);
        let order: Vec<usize> = (0..len).collect();
        let col = color_cycle(&c, &order, 0).unwrap();
        prop_assert_eq!(col.palette_size(), len.div_ceil(2));
        prop_assert!(is_rainbow_connected(&c, &col).unwrap().rainbow_connected);
    }

    #[test]
    fn stacked_triangulations_are_maximal(n in 4usize..60, seed in any::<u64>()) {
        let emb = stacked_triangulation(n, seed).unwrap();
        let g = emb.graph();
        prop_assert_eq!(g.m(), 3 * n - 6);
        let summary = emb.validate_maximal_planar().unwrap();
        prop_assert!(summary.maximal);
        prop_assert_eq!(summary.faces, 2 * n - 4);
        prop_assert!(vertex_connectivity(g) >= 3);
    }

    #[test]
    fn neighborhood_balls_grow(g in connected_graph(9), l in 0usize..4) {
        let x = VertexSet::from([0]);
        let closed = graph::l_step_neighborhood(&g, &x, l, graph::Neighborhood::Closed).unwrap();
        let wider = graph::l_step_neighborhood(&g, &x, l + 1, graph::Neighborhood::Closed).unwrap();
        prop_assert!(closed.iter().all(|v| wider.contains(v)));
        let d = g.bfs(0);
        prop_assert_eq!(closed.len(), d.iter().filter(|&&x| x <= l).count());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rc_at_least_diameter(n in 2usize..7, extra in 0usize..6, seed in any::<u64>()) {
        let g = random_connected(n, extra, seed).unwrap();
        let diam = graph::diameter(&g).unwrap();
        match rc_exact_from(&g, 1, g.m(), 10_000_000).unwrap() {
            RcOutcome::Exact { rc } => prop_assert!(rc >= diam && rc <= g.m()),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn perturbed_towers_color_within_bound(layers in 1usize..7, chords in 0usize..3, seed in any::<u64>()) {
        let g = perturbed_tower(3, layers, chords, seed).unwrap();
        let con = construct_k3_unchecked(&g).unwrap();
        prop_assert!(con.verified());
        let (_, bound) = claimed_bound(g.n(), 3, con.diam);
        prop_assert!(con.palette_size() <= bound);
    }

    #[test]
    fn small_planar_constructions_verify(n in 4usize..40, seed in any::<u64>()) {
        let emb = stacked_triangulation(n, seed).unwrap();
        let con = construct_planar(&emb).unwrap();
        prop_assert!(con.verified());
        prop_assert!(con.palette_size() <= con.bounds.uniform);
    }
}
