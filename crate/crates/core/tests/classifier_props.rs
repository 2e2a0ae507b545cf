use dla_core::catalog::AlgebraLabel;
use dla_core::classifier::{classify, classify_with, ClassifyOptions, Scope};
use dla_core::graph::InteractionGraph;
use proptest::prelude::*;

fn label() -> impl Strategy<Value = AlgebraLabel> {
    proptest::sample::select(AlgebraLabel::ALL.to_vec())
}

proptest! {
    #[test]
    fn bipartite_sides_are_symmetric(l in 1usize..12, m in 1usize..12, label in label()) {
        let a = classify(&InteractionGraph::complete_bipartite(l, m), label).unwrap();
        let b = classify(&InteractionGraph::complete_bipartite(m, l), label).unwrap();
        prop_assert_eq!(a.summands, b.summands);
        prop_assert_eq!(a.total_dim, b.total_dim);
    }

    #[test]
    fn total_is_sum_of_summands(n in 2usize..14, label in label()) {
        for g in [InteractionGraph::complete(n), InteractionGraph::complete_bipartite(1, n - 1), InteractionGraph::line(n)] {
            let c = classify(&g, label).unwrap();
            if c.is_in_scope() {
                prop_assert_eq!(c.summands.iter().map(|s| s.dim()).sum::<u64>(), c.total_dim);
            }
        }
    }

    #[test]
    fn disjoint_union_adds_dimensions(n in 3usize..6, label in label()) {
        let edges: Vec<(usize, usize)> = InteractionGraph::complete(n)
            .edges()
            .chain(InteractionGraph::complete(n).edges().map(|(u, v)| (u + n, v + n)))
            .collect();
        let g = InteractionGraph::new(2 * n, edges).unwrap();
        let one = classify(&InteractionGraph::complete(n), label).unwrap();
        let two = classify(&g, label).unwrap();
        prop_assert_eq!(two.total_dim, 2 * one.total_dim);
    }
}

#[test]
fn path_classification_uses_oracle_only_on_request() {
    let g = InteractionGraph::line(5);
    let plain = classify(&g, AlgebraLabel::A2).unwrap();
    assert_eq!(plain.scope, Scope::OutOfScope);
    let oracle = classify_with(&g, AlgebraLabel::A2, &ClassifyOptions::with_oracle()).unwrap();
    assert_eq!(oracle.scope, Scope::OracleFallback);
    assert!(oracle.total_dim > 0);
}
