use proptest::prelude::*;
use rand::SeedableRng;

use ergm_core::counts::{delta_count, fast_delta, hom_count, GraphKind, SmallGraph};
use ergm_core::glauber::{CoupledPair, CouplingMode, LocalField};
use ergm_core::graph::{all_edges, pair_count, EdgeId, GraphState};
use ergm_core::landscape::{landscape_eval, psi_phi, ErgmSpec};
use ergm_core::observables::{edge_counts, triangle_counts};
use ergm_core::ChainRng;

fn graph(max_n: usize) -> impl Strategy<Value = GraphState> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), pair_count(n)).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = all_edges(n).zip(bits).filter(|(_, b)| *b).map(|(e, _)| e.endpoints()).collect();
            GraphState::from_edges(n, &edges).unwrap()
        })
    })
}

fn ferromagnetic_spec() -> impl Strategy<Value = ErgmSpec> {
    (-2.0..2.0f64, 0.0..1.5f64, 0.0..1.5f64, prop_oneof![Just(GraphKind::Triangle), Just(GraphKind::Tetrahedron), Just(GraphKind::Hexagon)])
        .prop_map(|(b0, b1, b2, kind)| ErgmSpec::edge_two_star_and(SmallGraph::of_kind(kind).unwrap(), [b0, b1, b2]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_counts_agree_with_enumeration(x in graph(7), k in 0usize..1000) {
        let e = EdgeId::from_index(k % pair_count(x.n()), x.n()).unwrap();
        for kind in GraphKind::SPECIFICATION_KINDS {
            let g = SmallGraph::of_kind(kind).unwrap();
            let slow = delta_count(&g, &x, e).unwrap();
            prop_assert_eq!(fast_delta(kind, &x, e).unwrap(), slow);
            let full = hom_count(&g, &x.with_edge(e, true)).unwrap() - hom_count(&g, &x.with_edge(e, false)).unwrap();
            prop_assert_eq!(slow, full);
        }
    }

    #[test]
    fn toggles_keep_caches(x in graph(70), flips in proptest::collection::vec(any::<(u16, bool)>(), 0..200)) {
        let mut x = x;
        let m = pair_count(x.n());
        for (k, v) in flips {
            let e = EdgeId::from_index(k as usize % m, x.n()).unwrap();
            let before = x.contains(e);
            let changed = x.set(e, v);
            prop_assert_eq!(changed, before != v);
            prop_assert_eq!(x.contains(e), v);
        }
        prop_assert!(x.caches_consistent());
        prop_assert_eq!(x.edges().count(), x.edge_count());
    }

    #[test]
    fn field_is_monotone(spec in ferromagnetic_spec(), x in graph(12), extra in proptest::collection::vec(any::<bool>(), 66)) {
        let mut y = x.clone();
        for (e, add) in all_edges(x.n()).zip(extra) {
            if add {
                y.set(e, true);
            }
        }
        let field = LocalField::new(&spec, x.n()).unwrap();
        for e in all_edges(x.n()) {
            prop_assert!(field.delta_hamiltonian(&x, e) <= field.delta_hamiltonian(&y, e) + 1e-12);
        }
    }

    #[test]
    fn monotone_pairs_stay_ordered(spec in ferromagnetic_spec(), seed in any::<u64>()) {
        let n = 9;
        let mut pair = CoupledPair::new(
            &spec,
            GraphState::empty(n).unwrap(),
            GraphState::complete(n).unwrap(),
            CouplingMode::Monotone,
            ChainRng::seed_from_u64(seed),
        ).unwrap();
        for _ in 0..3000 {
            pair.step();
            prop_assert!(pair.first().is_subgraph_of(pair.second()).unwrap());
            prop_assert_eq!(pair.hamming(), pair.first().hamming_distance(pair.second()).unwrap());
        }
    }

    #[test]
    fn fixed_point_map_tracks_the_landscape_slope(spec in ferromagnetic_spec(), p in 0.001..0.999f64) {
        let logit = |q: f64| (q / (1.0 - q)).ln();
        let (_, phi) = psi_phi(&spec, p).unwrap();
        let d1 = landscape_eval(&spec, p).unwrap().d1;
        prop_assert!((logit(phi) - logit(p) - 2.0 * d1).abs() < 1e-8 * (1.0 + d1.abs()));
    }

    #[test]
    fn observables_are_lipschitz(x in graph(14), k in 0usize..1000) {
        let n = x.n();
        let e = EdgeId::from_index(k % pair_count(n), n).unwrap();
        let (a, b) = (x.with_edge(e, true), x.with_edge(e, false));
        let diff = |f: &dyn Fn(&GraphState) -> f64| (f(&a) - f(&b)).abs();
        prop_assert_eq!(diff(&|g| edge_counts(g, None).unwrap() as f64), 1.0);
        prop_assert!(diff(&|g| edge_counts(g, Some(0)).unwrap() as f64) <= 1.0);
        prop_assert!(diff(&|g| triangle_counts(g, None).unwrap() as f64) <= (n - 2) as f64);
        let local_bound = if e.u() == 0 { (n - 2) as f64 } else { 1.0 };
        prop_assert!(diff(&|g| triangle_counts(g, Some(0)).unwrap() as f64) <= local_bound);
    }
}
