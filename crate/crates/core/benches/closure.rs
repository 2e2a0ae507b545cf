use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dla_core::catalog::{place_on_graph, AlgebraLabel};
use dla_core::closure::{lie_closure, ClosureOptions, Execution};
use dla_core::graph::InteractionGraph;

fn closure_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    let cases = [
        ("a4_K6", AlgebraLabel::A4, InteractionGraph::complete(6)),
        ("a14_K7", AlgebraLabel::A14, InteractionGraph::complete(7)),
        ("a2_K3,4", AlgebraLabel::A2, InteractionGraph::complete_bipartite(3, 4)),
    ];
    for (name, label, graph) in cases {
        let gens = place_on_graph(label, &graph).unwrap();
        for (mode, execution) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            let opts = ClosureOptions::default().with_execution(execution);
            group.bench_with_input(BenchmarkId::new(mode, name), &gens, |b, gens| {
                b.iter(|| lie_closure(gens, &opts).unwrap().dimension())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, closure_modes);
criterion_main!(benches);
