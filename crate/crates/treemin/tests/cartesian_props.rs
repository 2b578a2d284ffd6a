mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use treemin::cartesian::{
    cartesian_on_graph, cartesian_on_graph_traced, cartesian_on_tree, count_elimination_trees, ept_on_graph, HeapKind,
};
use treemin::entropy::log2_big;
use treemin::path_minima::{bottleneck_build, bottleneck_build_edges, pm_build_edges, pm_build_tree, reconstruct_et_via_queries};
use treemin::reference::{
    brute_bottleneck, brute_bottleneck_edge, brute_cartesian, brute_ept, brute_path_min, brute_path_min_edge, kruskal_max,
};
use treemin::{Graph, NodeId, Prio};

fn vertex_prios(n: usize) -> Vec<Prio> {
    (0..n).map(|v| Prio::of(NodeId::new(v))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph_pipeline_matches_definition(seed in any::<u64>(), size in 1usize..40, extra in 0usize..60) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, extra);
        let o = random_oracle(&mut r, size);
        let heap = if r.gen_bool(0.5) { HeapKind::Pairing } else { HeapKind::Binary };
        let (et, _) = cartesian_on_graph_traced(&g, &o, heap).unwrap();
        let prio = vertex_prios(size);
        prop_assert_eq!(et.parents().to_vec(), brute_cartesian(&g, &prio, &o));
        prop_assert!(et.is_valid_for(&g, &prio, &o));
        // the Cartesian tree only depends on the max spanning tree under w^min
        let w: Vec<Prio> = g.edges().map(|(_, u, v)| o.fork().min(prio[u], prio[v])).collect();
        let mst: Vec<(usize, usize)> = kruskal_max(&g, &w, &o).into_iter().map(|e| g.endpoints(e)).collect();
        let h = Graph::new(size, &mst).unwrap();
        prop_assert_eq!(brute_cartesian(&h, &prio, &o), brute_cartesian(&g, &prio, &o));
        let direct = cartesian_on_tree(&h, &o).unwrap();
        prop_assert_eq!(et.parents(), direct.parents());
    }

    #[test]
    fn budget_against_exact_count(seed in any::<u64>(), size in 1usize..=10, extra in 0usize..20) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, extra);
        let o = random_oracle(&mut r, size);
        let _ = cartesian_on_graph(&g, &o).unwrap();
        let et = log2_big(&count_elimination_trees(&g).unwrap());
        prop_assert!(o.comparisons() as f64 <= 16.0 * (g.m() as f64 + et) + 16.0);
    }

    #[test]
    fn ept_matches_definition(seed in any::<u64>(), size in 1usize..30, extra in 0usize..30) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, extra);
        let o = random_oracle(&mut r, g.m());
        let et = ept_on_graph(&g, &o).unwrap();
        prop_assert_eq!(et.parents().to_vec(), brute_ept(&g, &o));
    }

    #[test]
    fn path_queries_are_free_and_right(seed in any::<u64>(), size in 1usize..200) {
        let mut r = rng(seed);
        let t = random_tree(&mut r, size);
        let g = tree_graph(&t);
        let o = random_oracle(&mut r, size);
        let ix = pm_build_tree(&g, &o).unwrap();
        let eo = random_oracle(&mut r, g.m());
        let ex = pm_build_edges(&g, &eo).unwrap();
        let (c0, e0) = (o.comparisons(), eo.comparisons());
        for _ in 0..200 {
            let (u, v) = (r.gen_range(0..size), r.gen_range(0..size));
            prop_assert_eq!(ix.path_min(u, v).unwrap(), brute_path_min(&g, &o, u, v).unwrap());
            prop_assert_eq!(ex.path_min_edge(u, v).unwrap(), brute_path_min_edge(&g, &eo, u, v).unwrap());
        }
        prop_assert_eq!(o.comparisons(), c0);
        prop_assert_eq!(eo.comparisons(), e0);
        if size <= 60 {
            let et = reconstruct_et_via_queries(&ix, &g).unwrap();
            prop_assert_eq!(et.parents(), ix.tree().parents());
            prop_assert_eq!(o.comparisons(), c0);
        }
    }

    #[test]
    fn bottlenecks_match_exhaustive(seed in any::<u64>(), size in 1usize..=25, extra in 0usize..40) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, size, extra);
        let o = random_oracle(&mut r, size);
        let eo = random_oracle(&mut r, g.m());
        let ix = bottleneck_build(&g, &o).unwrap();
        let ex = bottleneck_build_edges(&g, &eo).unwrap();
        let (c0, e0) = (o.comparisons(), eo.comparisons());
        for u in 0..size {
            for v in 0..size {
                prop_assert_eq!(ix.bottleneck(u, v).unwrap(), brute_bottleneck(&g, &o, u, v).unwrap());
                prop_assert_eq!(ex.bottleneck_edge(u, v).unwrap(), brute_bottleneck_edge(&g, &eo, u, v).unwrap());
            }
        }
        prop_assert_eq!(o.comparisons(), c0);
        prop_assert_eq!(eo.comparisons(), e0);
    }
}

#[test]
fn disconnected_inputs_rejected() {
    let g = Graph::new(3, &[(0, 1)]).unwrap();
    let o = treemin::PriorityOracle::identity(3);
    assert_eq!(cartesian_on_graph(&g, &o).unwrap_err(), treemin::Error::Disconnected);
    assert_eq!(bottleneck_build(&g, &o).unwrap_err(), treemin::Error::Disconnected);
    assert!(pm_build_tree(&g, &o).is_err());
}
