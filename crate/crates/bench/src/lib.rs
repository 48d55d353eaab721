//! Criterion benchmarks for the main solver stages.

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion};
use groupcover::cover::build_instance;
use groupcover::lattice::SubgroupLattice;
use groupcover::{solve_group, CatalogGroup, ElementTable, PermGroup, SolveOptions, DEFAULT_CAP};

const GROUPS: &[&str] = &["Alt(5)", "Sym(5)", "PSL3(2)", "Alt(6)", "PGammaL2(8)"];

fn group(name: &str) -> PermGroup {
    CatalogGroup::parse(name).and_then(|g| g.construct()).expect("catalog group")
}

pub fn element_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("element_table");
    for name in GROUPS {
        let grp = group(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &grp, |b, grp| {
            b.iter(|| ElementTable::new(black_box(grp), DEFAULT_CAP).unwrap())
        });
    }
    g.finish();
}

pub fn lattices(c: &mut Criterion) {
    let mut g = c.benchmark_group("maximal_subgroups");
    g.sample_size(10);
    for name in GROUPS {
        let table = ElementTable::new(&group(name), DEFAULT_CAP).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &table, |b, t| {
            b.iter(|| SubgroupLattice::enumerate(black_box(t), u64::MAX).unwrap().maximal_subgroups(t))
        });
    }
    g.finish();
}

pub fn instances(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_instance");
    for name in GROUPS {
        let table = ElementTable::new(&group(name), DEFAULT_CAP).unwrap();
        let maximals = SubgroupLattice::enumerate(&table, u64::MAX).unwrap().maximal_subgroups(&table);
        g.bench_with_input(BenchmarkId::from_parameter(name), &maximals, |b, m| {
            b.iter(|| build_instance(&table, black_box(m)).unwrap())
        });
    }
    g.finish();
}

pub fn end_to_end(c: &mut Criterion) {
    let mut g = c.benchmark_group("sigma");
    g.sample_size(10);
    let opts = SolveOptions::default();
    for name in GROUPS {
        let grp = group(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &grp, |b, grp| {
            b.iter(|| solve_group(black_box(grp), &opts).unwrap())
        });
    }
    g.finish();
}

pub fn benchmarks(c: &mut Criterion) {
    element_tables(c);
    lattices(c);
    instances(c);
    end_to_end(c);
}
