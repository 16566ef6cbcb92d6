use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gelp_core::catalog::{build, DataSource};
use gelp_core::decode::exhaustive_equivalence;
use gelp_core::synth::SyndromeTable;
use gelp_core::{CodeSpec, Execution};
use std::hint::black_box;

const CODES: [&str; 3] = ["31:1,15", "31:1,3,5", "45:1,3,5"];
const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("syndrome_table");
    g.sample_size(10);
    for code in CODES {
        let spec = CodeSpec::parse(code).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, code), &spec, |b, spec| {
                b.iter(|| SyndromeTable::build(black_box(spec), exec).unwrap())
            });
        }
    }
    g.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut g = c.benchmark_group("exhaustive_equivalence");
    g.sample_size(10);
    for code in CODES {
        let spec = CodeSpec::parse(code).unwrap();
        let table = SyndromeTable::build(&spec, Execution::Parallel).unwrap();
        let locator = build(&spec, &table, Execution::Parallel, &DataSource::default())
            .unwrap()
            .locator;
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, code), &locator, |b, loc| {
                b.iter(|| exhaustive_equivalence(&spec, black_box(loc), &table, exec).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, tables, equivalence);
criterion_main!(benches);
