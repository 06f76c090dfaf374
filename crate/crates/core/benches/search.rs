use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srcw::automata::brute_srcw_with;
use srcw::deciders::decide_abb_sc_with;
use srcw::generate::{random_graph, random_strongly_connected};
use srcw::{Exec, Word};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn brute_force(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // "abab" rarely resets a random graph, so most of the space is searched
    let w: Word = "abab".parse().unwrap();
    let mut group = c.benchmark_group("brute_srcw");
    for n in [12, 16, 18] {
        let g = random_graph(&mut rng, n);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| brute_srcw_with(g, &w, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn abb_decider(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut group = c.benchmark_group("decide_abb_sc");
    for n in [100, 300, 1000] {
        let g = random_strongly_connected(&mut rng, n);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| decide_abb_sc_with(g, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = brute_force, abb_decider
}
criterion_main!(benches);
