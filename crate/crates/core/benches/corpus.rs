use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use repalg::batch::{classify_all, stable_hom_table, string_corpus, tangent_vs_ext, Exec};
use repalg::quiver::QuiverWindow;
use repalg::rep::Representation;
use repalg::scalar::Field;

fn corpus(max_len: usize, field: Field) -> Vec<Representation> {
    string_corpus(&QuiverWindow::new(-2, 2).unwrap(), max_len, field)
        .into_iter()
        .map(|(_, m)| m)
        .collect()
}

const EXECS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tangent(c: &mut Criterion) {
    let mut g = c.benchmark_group("tangent_vs_ext");
    for (field_name, field) in [("Q", Field::Rationals), ("F101", Field::prime(101).unwrap())] {
        let modules = corpus(4, field);
        for (name, exec) in EXECS {
            g.bench_with_input(BenchmarkId::new(name, field_name), &modules, |b, ms| {
                b.iter(|| tangent_vs_ext(exec, ms))
            });
        }
    }
    g.finish();
}

fn classify(c: &mut Criterion) {
    let modules = corpus(3, Field::Rationals);
    let mut g = c.benchmark_group("classify_order_6");
    g.sample_size(20);
    for (name, exec) in EXECS {
        g.bench_function(name, |b| b.iter(|| classify_all(exec, &modules, 6)));
    }
    g.finish();
}

fn stable_hom(c: &mut Criterion) {
    let modules: Vec<Representation> = corpus(2, Field::Rationals).into_iter().take(12).collect();
    let mut g = c.benchmark_group("stable_hom_table");
    g.sample_size(20);
    for (name, exec) in EXECS {
        g.bench_function(name, |b| b.iter(|| stable_hom_table(exec, &modules)));
    }
    g.finish();
}

criterion_group!(benches, tangent, classify, stable_hom);
criterion_main!(benches);
