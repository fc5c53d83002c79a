use betti_core::corpus::mixed_monomial_corpus;
use betti_core::{
    betti_table, AnalysisOptions, BettiOptions, ExecMode, GradedIdeal, Polynomial, PowerLadder,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn reference_ideal() -> GradedIdeal {
    GradedIdeal::new(
        4,
        vec![
            Polynomial::from_int_terms(4, [(vec![1, 3, 0, 0], 1), (vec![0, 0, 4, 0], 1)]),
            Polynomial::from_int_terms(
                4,
                [
                    (vec![1, 0, 0, 0], 1),
                    (vec![0, 1, 0, 0], 1),
                    (vec![0, 0, 0, 1], 1),
                ],
            ),
            Polynomial::from_int_terms(4, [(vec![0, 3, 0, 0], 1)]),
        ],
    )
    .unwrap()
}

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn koszul_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti_table");
    group.sample_size(10);
    for k in [1u32, 3] {
        let ideal = reference_ideal().power(k);
        for (name, mode) in MODES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("m^{k}I")),
                &ideal,
                |b, ideal| {
                    b.iter(|| {
                        betti_table(black_box(ideal), &BettiOptions::default().exec(mode)).unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn stabilization(c: &mut Criterion) {
    let corpus: Vec<GradedIdeal> = mixed_monomial_corpus(7, 12, 4, 4)
        .iter()
        .map(GradedIdeal::from_monomial_ideal)
        .collect();
    let mut group = c.benchmark_group("stabilization_index");
    group.sample_size(10);
    for (name, mode) in MODES {
        let opts = AnalysisOptions {
            exec: mode,
            ..Default::default()
        };
        group.bench_function(BenchmarkId::new(name, "corpus-12"), |b| {
            b.iter(|| {
                for ideal in &corpus {
                    black_box(
                        PowerLadder::new(ideal.clone(), opts)
                            .stabilization_index()
                            .unwrap(),
                    );
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, koszul_tables, stabilization);
criterion_main!(benches);
