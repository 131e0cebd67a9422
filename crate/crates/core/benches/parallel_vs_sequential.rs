use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spreadability::coefficients::OracleTable;
use spreadability::freelie::cbh_cumulant;
use spreadability::partitions::OrderedSetPartition;
use spreadability::systems::{default_vars, exchangeability_check, CumulantTable, Engine};
use spreadability::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn cumulant_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("cumulant_table_monotone_n5");
    group.sample_size(10);
    let vars = default_vars(5);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| CumulantTable::build(&Engine::Monotone, &vars, exec).unwrap())
        });
    }
    group.finish();
}

fn oracle_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_rows_n5");
    group.sample_size(10);
    let eta = OrderedSetPartition::one(5).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| OracleTable::new(&eta, 6, exec).unwrap().rows())
        });
    }
    group.finish();
}

fn cbh(c: &mut Criterion) {
    let mut group = c.benchmark_group("cbh_cumulant_route_ab_d6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| cbh_cumulant(&[0, 1], 6, exec).unwrap()));
    }
    group.finish();
}

fn exchangeability(c: &mut Criterion) {
    let mut group = c.benchmark_group("exchangeability_free_n4");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exchangeability_check(Engine::Free, 4, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, cumulant_table, oracle_table, cbh, exchangeability);
criterion_main!(benches);
