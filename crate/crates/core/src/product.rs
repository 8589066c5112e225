//! The four binary graph products: Cartesian, lexicographic, join, corona.
//!
//! Product vertices and synthesized edges get deterministic generated labels
//! so that repeated runs are bit-identical:
//!
//! * a pair vertex over `u` and `v` is labeled `(u,v)`;
//! * the i-th corona copy of a vertex `w` is labeled `(i,w)` with 1-based `i`;
//! * a synthesized edge between rendered endpoints `p`, `q` is labeled
//!   `<kind>:<min(p,q)>|<max(p,q)>`.
//!
//! The corona's "i-th vertex" of the base graph is taken in lexicographic
//! label order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, SimpleGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProductKind {
    Cartesian,
    Lexicographic,
    Join,
    Corona,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Cartesian,
        ProductKind::Lexicographic,
        ProductKind::Join,
        ProductKind::Corona,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Lexicographic => "lexicographic",
            ProductKind::Join => "join",
            ProductKind::Corona => "corona",
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartesian" => Ok(ProductKind::Cartesian),
            "lexicographic" => Ok(ProductKind::Lexicographic),
            "join" => Ok(ProductKind::Join),
            "corona" => Ok(ProductKind::Corona),
            other => Err(Error::UnknownProductKind(other.to_string())),
        }
    }
}

fn pair_vertex(a: &str, b: &str) -> VertexId {
    VertexId::new(format!("({a},{b})")).expect("non-empty")
}

fn synth_edge(kind: ProductKind, a: &VertexId, b: &VertexId) -> EdgeId {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    EdgeId::new(format!("{}:{lo}|{hi}", kind.name())).expect("non-empty")
}

fn check_disjoint(kind: ProductKind, g1: &SimpleGraph, g2: &SimpleGraph) -> Result<()> {
    if let Some(shared) = g1.vertex_set().intersection(g2.vertex_set()).next() {
        return Err(Error::LabelCollision {
            operation: kind.name().to_string(),
            label: shared.to_string(),
        });
    }
    if let Some(shared) = g1
        .edge_labels()
        .intersection(&g2.edge_labels())
        .next()
    {
        return Err(Error::LabelCollision {
            operation: kind.name().to_string(),
            label: shared.to_string(),
        });
    }
    Ok(())
}

/// Builds the product of `g1` and `g2`.
///
/// Join and corona require disjoint vertex and edge label sets; corona
/// additionally requires a non-empty base graph.
pub fn product(g1: &SimpleGraph, g2: &SimpleGraph, kind: ProductKind) -> Result<SimpleGraph> {
    match kind {
        ProductKind::Cartesian => cartesian(g1, g2),
        ProductKind::Lexicographic => lexicographic(g1, g2),
        ProductKind::Join => join(g1, g2),
        ProductKind::Corona => corona(g1, g2),
    }
}

fn cartesian(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    let vertices = pair_vertices(g1, g2);
    let mut edges = Vec::new();
    for u in g1.vertices() {
        for (_, v, w) in g2.edges() {
            let a = pair_vertex(u.as_str(), v.as_str());
            let b = pair_vertex(u.as_str(), w.as_str());
            edges.push((synth_edge(ProductKind::Cartesian, &a, &b), a, b));
        }
    }
    for x in g2.vertices() {
        for (_, y, z) in g1.edges() {
            let a = pair_vertex(y.as_str(), x.as_str());
            let b = pair_vertex(z.as_str(), x.as_str());
            edges.push((synth_edge(ProductKind::Cartesian, &a, &b), a, b));
        }
    }
    SimpleGraph::build(vertices, edges)
}

fn lexicographic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    let vertices = pair_vertices(g1, g2);
    let mut edges = Vec::new();
    for (_, a, b) in g1.edges() {
        for v in g2.vertices() {
            for w in g2.vertices() {
                let p = pair_vertex(a.as_str(), v.as_str());
                let q = pair_vertex(b.as_str(), w.as_str());
                edges.push((synth_edge(ProductKind::Lexicographic, &p, &q), p, q));
            }
        }
    }
    for a in g1.vertices() {
        for (_, v, w) in g2.edges() {
            let p = pair_vertex(a.as_str(), v.as_str());
            let q = pair_vertex(a.as_str(), w.as_str());
            edges.push((synth_edge(ProductKind::Lexicographic, &p, &q), p, q));
        }
    }
    SimpleGraph::build(vertices, edges)
}

fn join(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    check_disjoint(ProductKind::Join, g1, g2)?;
    let vertices = g1.vertices().chain(g2.vertices()).cloned();
    let mut edges: Vec<_> = g1
        .edges()
        .chain(g2.edges())
        .map(|(e, a, b)| (e.clone(), a.clone(), b.clone()))
        .collect();
    for u in g1.vertices() {
        for w in g2.vertices() {
            edges.push((synth_edge(ProductKind::Join, u, w), u.clone(), w.clone()));
        }
    }
    SimpleGraph::build(vertices, edges)
}

fn corona(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<SimpleGraph> {
    if g1.is_empty() {
        return Err(Error::CoronaEmptyBase);
    }
    check_disjoint(ProductKind::Corona, g1, g2)?;
    let mut vertices: Vec<VertexId> = g1.vertex_set().iter().cloned().collect();
    let mut edges: Vec<_> = g1
        .edges()
        .map(|(e, a, b)| (e.clone(), a.clone(), b.clone()))
        .collect();
    // Base vertices in lexicographic order define the copy indexing.
    for (i, base) in g1.vertex_set().iter().enumerate() {
        let index = (i + 1).to_string();
        let copy = |w: &VertexId| pair_vertex(&index, w.as_str());
        for w in g2.vertices() {
            let cw = copy(w);
            edges.push((synth_edge(ProductKind::Corona, base, &cw), base.clone(), cw.clone()));
            vertices.push(cw);
        }
        for (_, v, w) in g2.edges() {
            let cv = copy(v);
            let cw = copy(w);
            edges.push((synth_edge(ProductKind::Corona, &cv, &cw), cv, cw));
        }
    }
    SimpleGraph::build(vertices, edges)
}

fn pair_vertices(g1: &SimpleGraph, g2: &SimpleGraph) -> Vec<VertexId> {
    g1.vertices()
        .flat_map(|u| g2.vertices().map(move |v| pair_vertex(u.as_str(), v.as_str())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_support::graph;

    fn p2(a: &str, b: &str, e: &str) -> SimpleGraph {
        graph(&[a, b], &[(e, a, b)])
    }

    #[test]
    fn cartesian_of_two_paths_is_a_four_cycle() {
        let g = product(&p2("a", "b", "e1"), &p2("x", "y", "t1"), ProductKind::Cartesian).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_connected());
        assert!(!g.is_acyclic());
    }

    #[test]
    fn lexicographic_of_two_paths_is_complete() {
        let g = product(
            &p2("a", "b", "e1"),
            &p2("x", "y", "t1"),
            ProductKind::Lexicographic,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn join_of_two_singletons_is_an_edge() {
        let g = product(&graph(&["a"], &[]), &graph(&["b"], &[]), ProductKind::Join).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn corona_of_path_with_singleton_is_a_path() {
        let g = product(&p2("a", "b", "e1"), &graph(&["x"], &[]), ProductKind::Corona).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_tree());
    }

    #[test]
    fn join_and_corona_reject_label_collisions() {
        let shared = graph(&["a"], &[]);
        assert!(matches!(
            product(&shared, &shared, ProductKind::Join),
            Err(Error::LabelCollision { .. })
        ));
        assert!(matches!(
            product(&shared, &shared, ProductKind::Corona),
            Err(Error::LabelCollision { .. })
        ));
    }

    #[test]
    fn corona_rejects_empty_base() {
        assert!(matches!(
            product(&SimpleGraph::empty(), &graph(&["b"], &[]), ProductKind::Corona),
            Err(Error::CoronaEmptyBase)
        ));
    }

    #[test]
    fn product_count_identities_on_a_sample_pair() {
        let g1 = graph(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]);
        let g2 = graph(&["x", "y", "z"], &[("t1", "x", "y"), ("t2", "y", "z"), ("t3", "x", "z")]);
        let (n1, m1) = (g1.vertex_count(), g1.edge_count());
        let (n2, m2) = (g2.vertex_count(), g2.edge_count());

        let cart = product(&g1, &g2, ProductKind::Cartesian).unwrap();
        assert_eq!(cart.vertex_count(), n1 * n2);
        assert_eq!(cart.edge_count(), n1 * m2 + n2 * m1);

        let lex = product(&g1, &g2, ProductKind::Lexicographic).unwrap();
        assert_eq!(lex.edge_count(), n2 * n2 * m1 + n1 * m2);

        let joined = product(&g1, &g2, ProductKind::Join).unwrap();
        assert_eq!(joined.edge_count(), m1 + m2 + n1 * n2);

        let cor = product(&g1, &g2, ProductKind::Corona).unwrap();
        assert_eq!(cor.vertex_count(), n1 * (1 + n2));
        assert_eq!(cor.edge_count(), m1 + n1 * (m2 + n2));
    }

    #[test]
    fn products_of_subgraphs_stay_inside_products_of_hosts() {
        let g1 = graph(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]);
        let g2 = graph(&["x", "y", "z"], &[("t1", "x", "y"), ("t2", "y", "z")]);
        let h1 = graph(&["b", "c"], &[("e2", "b", "c")]);
        let h2 = graph(&["x", "y"], &[("t1", "x", "y")]);
        for kind in [ProductKind::Cartesian, ProductKind::Lexicographic, ProductKind::Join] {
            let small = product(&h1, &h2, kind).unwrap();
            let big = product(&g1, &g2, kind).unwrap();
            assert!(small.is_subgraph_of(&big), "{kind} product escaped the host product");
        }
    }
}
