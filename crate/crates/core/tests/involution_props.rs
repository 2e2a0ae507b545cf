use dla_core::catalog::{place_on_graph, AlgebraLabel};
use dla_core::closure::{lie_closure, ClosureOptions};
use dla_core::graph::InteractionGraph;
use dla_core::involution::{make_theta, upper_bound_dim};
use dla_core::pauli::PauliString;
use proptest::prelude::*;

fn theta_and_pair() -> impl Strategy<Value = (usize, usize, PauliString, PauliString)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(l, m)| {
        let n = l + m;
        let mask = (1u64 << n) - 1;
        let p = (any::<u64>(), any::<u64>()).prop_map(move |(x, z)| PauliString::from_bits(n, x & mask, z & mask, 0).unwrap());
        (Just(l), Just(m), p.clone(), p)
    })
}

proptest! {
    #[test]
    fn involution_respects_brackets((l, m, a, b) in theta_and_pair()) {
        // θ is a Lie algebra automorphism: the sign of [a,b] is the product of the signs.
        let t = make_theta(l, m).unwrap();
        if let Some(c) = a.commutator(&b).unwrap() {
            let sign = |p: &PauliString| if t.is_fixed(p).unwrap() { 1 } else { -1 };
            prop_assert_eq!(sign(&c.canonical()), sign(&a) * sign(&b));
        }
    }
}

#[test]
fn fixed_sets_contain_the_bipartite_algebra() {
    for label in [AlgebraLabel::A4, AlgebraLabel::A14] {
        for (l, m) in [(1, 3), (2, 3), (3, 3), (2, 4)] {
            let n = l + m;
            let full = lie_closure(&place_on_graph(label, &InteractionGraph::complete(n)).unwrap(), &ClosureOptions::default()).unwrap();
            let fixed = make_theta(l, m).unwrap().fixed_subset(&full).unwrap();
            let kb = lie_closure(
                &place_on_graph(label, &InteractionGraph::complete_bipartite(l, m)).unwrap(),
                &ClosureOptions::default(),
            )
            .unwrap();
            assert!(kb.is_subset_of(&fixed), "{label} ({l},{m})");
            assert_eq!(fixed.dimension() as u64, upper_bound_dim(label, l, m).unwrap(), "{label} ({l},{m})");
        }
    }
}
