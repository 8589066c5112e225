//! Desk-scale benchmarks: soft rough graph construction, the four products,
//! and full census runs on five- and six-vertex hosts.

use std::collections::BTreeSet;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use softrough::census::{run_census, CensusConfig};
use softrough::graph::{EdgeId, SimpleGraph, VertexId};
use softrough::product::{product, ProductKind};
use softrough::rough::SoftRoughGraph;
use softrough::soft::{ParameterId, RelationSpec};

fn cycle(n: usize) -> SimpleGraph {
    let vertices: Vec<VertexId> = (1..=n)
        .map(|i| VertexId::new(format!("v{i}")).unwrap())
        .collect();
    let edges = (0..n).map(|i| {
        (
            EdgeId::new(format!("e{}", i + 1)).unwrap(),
            vertices[i].clone(),
            vertices[(i + 1) % n].clone(),
        )
    });
    SimpleGraph::build(vertices.clone(), edges).unwrap()
}

fn relabel(g: &SimpleGraph, prefix: &str) -> SimpleGraph {
    let vertices: Vec<VertexId> = g
        .vertices()
        .map(|v| VertexId::new(format!("{prefix}{v}")).unwrap())
        .collect();
    let edges = g.edges().map(|(e, a, b)| {
        (
            EdgeId::new(format!("{prefix}{e}")).unwrap(),
            VertexId::new(format!("{prefix}{a}")).unwrap(),
            VertexId::new(format!("{prefix}{b}")).unwrap(),
        )
    });
    SimpleGraph::build(vertices, edges.collect::<Vec<_>>()).unwrap()
}

fn params(g: &SimpleGraph) -> BTreeSet<ParameterId> {
    g.vertices()
        .map(|v| ParameterId::new(v.as_str()).unwrap())
        .collect()
}

fn bench_build(c: &mut Criterion) {
    let host = cycle(6);
    let a = params(&host);
    let x = host.vertex_set().clone();
    c.bench_function("soft_rough_graph_build_c6", |b| {
        b.iter(|| {
            SoftRoughGraph::build(&host, &a, &RelationSpec::OpenNeighborhood, &x).unwrap()
        })
    });
}

fn bench_products(c: &mut Criterion) {
    let g1 = cycle(6);
    let g2 = relabel(&cycle(6), "w");
    let mut group = c.benchmark_group("product_c6_c6");
    for kind in ProductKind::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(kind.name()), &kind, |b, kind| {
            b.iter(|| product(&g1, &g2, *kind).unwrap())
        });
    }
    group.finish();
}

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census_full_enumeration");
    group.sample_size(10);
    for n in [5usize, 6] {
        let cfg = CensusConfig::new(cycle(n), RelationSpec::OpenNeighborhood);
        group.bench_with_input(BenchmarkId::from_parameter(format!("c{n}")), &cfg, |b, cfg| {
            b.iter(|| run_census(cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_build, bench_products, bench_census);
criterion_main!(benches);
