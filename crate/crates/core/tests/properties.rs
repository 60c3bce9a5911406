use proptest::prelude::*;

use kotzig::amplitudes::{event_probabilities, StateVector};
use kotzig::boolean::{beta_equivalence_check, cubic_form, weight};
use kotzig::game::{classical_value, evaluate_classical, GraphGame};
use kotzig::lc::{verify_event_transport, verify_group_transport};
use kotzig::parameters::{
    independent_set_to_strategy, satisfied_count, strategy_to_independent_set, Strategy as Answers,
};
use kotzig::{EventGraph, ExactScalar, Graph, StabilizerGroup};

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| *e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..1 << pairs).prop_map(|(n, m)| graph_from_mask(n, m))
    })
}

fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    any_graph(max_n).prop_filter("connected", Graph::is_connected)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lc_is_an_involution(g in any_graph(7), v in 0usize..7) {
        let v = v % g.n();
        prop_assert_eq!(g.local_complement(v).unwrap().local_complement(v).unwrap(), g);
    }

    #[test]
    fn lc_transports_groups(g in any_graph(6), v in 0usize..6) {
        prop_assert!(verify_group_transport(&g, v % g.n()).unwrap());
    }

    #[test]
    fn lc_transports_events(g in connected_graph(4), v in 0usize..4) {
        prop_assert!(verify_event_transport(&g, v % g.n()).unwrap());
    }

    #[test]
    fn beta_is_form_weight(g in any_graph(8)) {
        let beta = StabilizerGroup::from_graph(&g).unwrap().beta() as u64;
        prop_assert_eq!(weight(&cubic_form(&g)).unwrap(), beta);
        prop_assert!(beta_equivalence_check(&g).unwrap());
    }

    #[test]
    fn relabeling_preserves_h(g in connected_graph(5), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = g.permuted(&order);
        prop_assert_eq!(p.canonical_form().unwrap(), g.canonical_form().unwrap());
        let (h, hp) = (EventGraph::build(&g).unwrap(), EventGraph::build(&p).unwrap());
        prop_assert_eq!(h.vertex_count(), hp.vertex_count());
        prop_assert_eq!(h.degree_counts(), hp.degree_counts());
        prop_assert_eq!(h.components().sizes(), hp.components().sizes());
    }

    #[test]
    fn graph6_round_trip(g in any_graph(9)) {
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn cliques_carry_unit_probability(g in connected_graph(5)) {
        let h = EventGraph::build(&g).unwrap();
        let p = event_probabilities(&h, &StateVector::graph_state(&g).unwrap()).unwrap();
        for c in 0..h.clique_count() {
            prop_assert!(p[h.clique(c)].iter().copied().sum::<ExactScalar>().is_one());
        }
    }

    #[test]
    fn strategies_are_independent_sets(g in connected_graph(4), t in any::<u64>()) {
        let h = EventGraph::build(&g).unwrap();
        let n = g.n();
        let strategy = Answers::from_index(n, t & ((1 << (3 * n)) - 1));
        let set = strategy_to_independent_set(&h, &strategy);
        prop_assert_eq!(set.len(), satisfied_count(h.group(), &strategy));
        for (i, &u) in set.iter().enumerate() {
            for &w in &set[i + 1..] {
                prop_assert!(!h.adjacent(u, w));
            }
        }
        let back = independent_set_to_strategy(&h, &set).unwrap();
        prop_assert!(satisfied_count(h.group(), &back) >= set.len());
    }

    #[test]
    fn no_strategy_beats_the_value(g in connected_graph(5), t in any::<u64>()) {
        let game = GraphGame::new(&g).unwrap();
        let n = g.n();
        let strategy = Answers::from_index(n, t & ((1 << (3 * n)) - 1));
        prop_assert!(evaluate_classical(&game, &strategy) <= classical_value(&game).unwrap().0);
    }
}
