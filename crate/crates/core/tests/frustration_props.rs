use dla_core::closure::{lie_closure_of, ClosureOptions};
use dla_core::frustration::{Coloring, FrustrationGraph, DEFAULT_SEARCH_CAP};
use dla_core::pauli::PauliString;
use proptest::prelude::*;

fn generators(max: usize) -> impl Strategy<Value = Vec<PauliString>> {
    (2usize..=4).prop_flat_map(move |n| {
        let mask = (1u64 << n) - 1;
        proptest::collection::vec(
            (any::<u64>(), any::<u64>())
                .prop_map(move |(x, z)| PauliString::from_bits(n, x & mask, z & mask, 0).unwrap())
                .prop_filter("non-identity", |p| !p.is_identity()),
            1..=max,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn toggle_is_an_involution(gens in generators(10), bits in any::<u64>(), i in 0usize..10) {
        let fg = FrustrationGraph::build(&gens).unwrap();
        let i = i % fg.len();
        let c = Coloring(bits & ((1u64 << fg.len()) - 1));
        if let Ok(d) = fg.toggle(c, i) {
            prop_assert_eq!(fg.toggle(d, i).unwrap(), c);
            prop_assert!(fg.product_of(d).canonical_eq(&fg.product_of(c).multiply(&gens[i]).unwrap()));
        }
    }

    #[test]
    fn frustration_agrees_with_closure(gens in generators(8)) {
        let fg = FrustrationGraph::build(&gens).unwrap();
        let closure = lie_closure_of(&gens, &ClosureOptions::default()).unwrap();
        for p in closure.basis() {
            let m = fg.membership(p, DEFAULT_SEARCH_CAP).unwrap();
            prop_assert!(m.member, "{} missed", p);
            let (c, t) = (m.coloring.unwrap(), m.trace.unwrap());
            prop_assert!(t.validates(&fg, c));
            prop_assert!(fg.product_of(c).canonical_eq(p));
        }
        // Every product of generators that the search reaches is in the closure.
        for bits in 1u64..1 << fg.len() {
            let target = fg.product_of(Coloring(bits));
            if target.is_identity() {
                continue;
            }
            let m = fg.membership(&target, DEFAULT_SEARCH_CAP).unwrap();
            prop_assert_eq!(m.member, closure.contains(&target.canonical()), "{}", target);
        }
    }
}

#[test]
fn oversized_search_is_refused() {
    let gens: Vec<PauliString> = (0..5).map(|i| PauliString::from_bits(5, 1 << i, 0, 0).unwrap()).collect();
    let fg = FrustrationGraph::build(&gens).unwrap();
    assert!(fg.membership(&gens[0], 3).is_err());
}
