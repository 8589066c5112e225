//! Simple undirected graphs with labeled vertices and labeled edges.
//!
//! Edges are first-class named objects: two graphs agree on an edge only if
//! the label *and* the endpoints match. All query operations are pure and the
//! graph is immutable once built, so values can be shared freely across
//! threads.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

fn validated_label(label: impl Into<String>) -> Result<String> {
    let label = label.into();
    if label.is_empty() {
        return Err(Error::EmptyLabel);
    }
    Ok(label)
}

/// Label of a vertex, unique within a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        Ok(VertexId(validated_label(label)?))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Label of an edge, unique within a graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EdgeId(String);

impl EdgeId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        Ok(EdgeId(validated_label(label)?))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Open neighborhood N(v) or closed neighborhood N[v] = N(v) ∪ {v}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborhoodKind {
    Open,
    Closed,
}

/// Diameter of a graph; disconnected graphs carry an explicit flag instead
/// of a sentinel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn as_finite(&self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(*d),
            Diameter::Infinite => None,
        }
    }
}

/// All-pairs shortest path lengths plus the diameter.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    dist: BTreeMap<VertexId, BTreeMap<VertexId, usize>>,
    diameter: Diameter,
}

impl DistanceTable {
    /// Shortest path length between `u` and `v`; `None` when no path exists
    /// (or either endpoint is unknown).
    pub fn distance(&self, u: &VertexId, v: &VertexId) -> Option<usize> {
        self.dist.get(u).and_then(|row| row.get(v)).copied()
    }

    pub fn diameter(&self) -> Diameter {
        self.diameter
    }
}

/// A finite simple graph: no loops, no multi-edges, every endpoint present
/// in the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl SimpleGraph {
    /// The graph with no vertices and no edges.
    pub fn empty() -> Self {
        SimpleGraph::default()
    }

    /// Builds a graph, validating simplicity: endpoints must exist, loops and
    /// multi-edges are rejected, and labels must be unique.
    pub fn build(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vertex_set = BTreeSet::new();
        for v in vertices {
            if !vertex_set.insert(v.clone()) {
                return Err(Error::DuplicateVertex(v.to_string()));
            }
        }
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> = vertex_set
            .iter()
            .map(|v| (v.clone(), BTreeSet::new()))
            .collect();
        let mut edge_map = BTreeMap::new();
        let mut seen_pairs: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
        for (label, a, b) in edges {
            for end in [&a, &b] {
                if !vertex_set.contains(end) {
                    return Err(Error::DanglingEndpoint {
                        edge: label.to_string(),
                        vertex: end.to_string(),
                    });
                }
            }
            if a == b {
                return Err(Error::LoopEdge {
                    edge: label.to_string(),
                    vertex: a.to_string(),
                });
            }
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            if let Some(first) = seen_pairs.get(&(lo.clone(), hi.clone())) {
                return Err(Error::MultiEdge {
                    first: first.to_string(),
                    second: label.to_string(),
                });
            }
            if edge_map.contains_key(&label) {
                return Err(Error::DuplicateEdge(label.to_string()));
            }
            seen_pairs.insert((lo.clone(), hi.clone()), label.clone());
            adjacency.get_mut(&lo).expect("endpoint present").insert(hi.clone());
            adjacency.get_mut(&hi).expect("endpoint present").insert(lo.clone());
            edge_map.insert(label, (lo, hi));
        }
        Ok(SimpleGraph {
            vertices: vertex_set,
            edges: edge_map,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True when the graph has no vertices (and hence no edges).
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    /// Iterates `(label, endpoint, endpoint)` in label order; endpoints come
    /// out in their canonical (sorted) orientation.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &VertexId, &VertexId)> {
        self.edges.iter().map(|(e, (a, b))| (e, a, b))
    }

    pub fn edge_labels(&self) -> BTreeSet<EdgeId> {
        self.edges.keys().cloned().collect()
    }

    pub fn endpoints(&self, e: &EdgeId) -> Result<(&VertexId, &VertexId)> {
        self.edges
            .get(e)
            .map(|(a, b)| (a, b))
            .ok_or_else(|| Error::UnknownEdge(e.to_string()))
    }

    /// N(v) or N[v] depending on `kind`.
    pub fn neighborhood(&self, v: &VertexId, kind: NeighborhoodKind) -> Result<BTreeSet<VertexId>> {
        let mut out = self
            .adjacency
            .get(v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))?
            .clone();
        if matches!(kind, NeighborhoodKind::Closed) {
            out.insert(v.clone());
        }
        Ok(out)
    }

    /// All-pairs shortest path lengths by BFS from every vertex, plus the
    /// diameter. A disconnected (or empty) graph reports `Diameter::Infinite`.
    pub fn distances(&self) -> DistanceTable {
        let mut dist = BTreeMap::new();
        let mut diameter = 0usize;
        let mut all_reachable = !self.vertices.is_empty();
        for source in &self.vertices {
            let row = self.bfs_distances(source);
            if row.len() < self.vertices.len() {
                all_reachable = false;
            }
            if let Some(ecc) = row.values().max() {
                diameter = diameter.max(*ecc);
            }
            dist.insert(source.clone(), row);
        }
        DistanceTable {
            dist,
            diameter: if all_reachable {
                Diameter::Finite(diameter)
            } else {
                Diameter::Infinite
            },
        }
    }

    fn bfs_distances(&self, source: &VertexId) -> BTreeMap<VertexId, usize> {
        let mut seen = BTreeMap::from([(source.clone(), 0usize)]);
        let mut queue = VecDeque::from([source.clone()]);
        while let Some(u) = queue.pop_front() {
            let d = seen[&u];
            for w in &self.adjacency[&u] {
                if !seen.contains_key(w) {
                    seen.insert(w.clone(), d + 1);
                    queue.push_back(w.clone());
                }
            }
        }
        seen
    }

    /// Subgraph relation: vertex containment, edge-label containment, and
    /// agreement of the endpoints of every shared edge label.
    pub fn is_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.vertices.is_subset(&other.vertices)
            && self.edges.iter().all(|(label, ends)| {
                other.edges.get(label).is_some_and(|o| o == ends)
            })
    }

    /// The subgraph induced by a vertex subset: keeps every edge whose two
    /// endpoints both lie in `s`, retaining edge labels.
    pub fn induced_subgraph(&self, s: &BTreeSet<VertexId>) -> Result<SimpleGraph> {
        for v in s {
            if !self.contains_vertex(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|(_, (a, b))| s.contains(a) && s.contains(b))
            .map(|(e, (a, b))| (e.clone(), a.clone(), b.clone()));
        SimpleGraph::build(s.iter().cloned(), edges)
    }

    /// The subgraph spanned by an edge subset: its vertices are exactly the
    /// endpoints of the chosen edges.
    pub fn edge_induced_subgraph(&self, t: &BTreeSet<EdgeId>) -> Result<SimpleGraph> {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        for e in t {
            let (a, b) = self.endpoints(e)?;
            vertices.insert(a.clone());
            vertices.insert(b.clone());
            edges.push((e.clone(), a.clone(), b.clone()));
        }
        SimpleGraph::build(vertices, edges)
    }

    fn component_count(&self) -> usize {
        let mut unvisited: BTreeSet<&VertexId> = self.vertices.iter().collect();
        let mut components = 0;
        while let Some(start) = unvisited.iter().next().copied() {
            components += 1;
            let mut queue = VecDeque::from([start]);
            unvisited.remove(start);
            while let Some(u) = queue.pop_front() {
                for w in &self.adjacency[u] {
                    if unvisited.remove(w) {
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }

    /// Connectivity; the empty graph counts as disconnected.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// A graph is acyclic (a forest) iff |E| = |V| − #components.
    pub fn is_acyclic(&self) -> bool {
        self.edge_count() + self.component_count() == self.vertex_count()
    }

    /// Connected and acyclic. The empty graph is not a tree; a single vertex
    /// is.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.is_acyclic()
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn vid(s: &str) -> VertexId {
        VertexId::new(s).unwrap()
    }

    pub fn eid(s: &str) -> EdgeId {
        EdgeId::new(s).unwrap()
    }

    pub fn vset(labels: &[&str]) -> BTreeSet<VertexId> {
        labels.iter().map(|s| vid(s)).collect()
    }

    pub fn eset(labels: &[&str]) -> BTreeSet<EdgeId> {
        labels.iter().map(|s| eid(s)).collect()
    }

    pub fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> SimpleGraph {
        SimpleGraph::build(
            vertices.iter().map(|s| vid(s)),
            edges.iter().map(|(e, a, b)| (eid(e), vid(a), vid(b))),
        )
        .unwrap()
    }

    /// Five-cycle v1v2, v2v3, v3v4, v4v5, v5v1 labeled e1..e5.
    pub fn pentagon() -> SimpleGraph {
        graph(
            &["v1", "v2", "v3", "v4", "v5"],
            &[
                ("e1", "v1", "v2"),
                ("e2", "v2", "v3"),
                ("e3", "v3", "v4"),
                ("e4", "v4", "v5"),
                ("e5", "v5", "v1"),
            ],
        )
    }

    /// Pentagon plus the three chords v2v5, v3v5, v2v4; v1 stays adjacent to
    /// v2 and v5 only. The densest graph with N(v1)={v2,v5} and
    /// N(v3)={v2,v4,v5} has exactly these eight edges.
    pub fn chorded_pentagon() -> SimpleGraph {
        graph(
            &["v1", "v2", "v3", "v4", "v5"],
            &[
                ("e1", "v1", "v2"),
                ("e2", "v2", "v3"),
                ("e3", "v3", "v4"),
                ("e4", "v4", "v5"),
                ("e5", "v1", "v5"),
                ("e6", "v2", "v5"),
                ("e7", "v3", "v5"),
                ("e8", "v2", "v4"),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;

    #[test]
    fn build_rejects_loops_multi_edges_and_dangling_endpoints() {
        let loop_err = SimpleGraph::build([vid("a")], [(eid("e"), vid("a"), vid("a"))]);
        assert!(matches!(loop_err, Err(Error::LoopEdge { .. })));

        let multi = SimpleGraph::build(
            [vid("a"), vid("b")],
            [
                (eid("e1"), vid("a"), vid("b")),
                (eid("e2"), vid("b"), vid("a")),
            ],
        );
        assert!(matches!(multi, Err(Error::MultiEdge { .. })));

        let dangling = SimpleGraph::build([vid("a")], [(eid("e"), vid("a"), vid("b"))]);
        assert!(matches!(dangling, Err(Error::DanglingEndpoint { .. })));

        let dup_edge = SimpleGraph::build(
            [vid("a"), vid("b"), vid("c")],
            [
                (eid("e"), vid("a"), vid("b")),
                (eid("e"), vid("b"), vid("c")),
            ],
        );
        assert!(matches!(dup_edge, Err(Error::DuplicateEdge(_))));

        let dup_vertex = SimpleGraph::build([vid("a"), vid("a")], []);
        assert!(matches!(dup_vertex, Err(Error::DuplicateVertex(_))));
    }

    #[test]
    fn neighborhoods_on_the_pentagon() {
        let g = pentagon();
        assert_eq!(
            g.neighborhood(&vid("v1"), NeighborhoodKind::Open).unwrap(),
            vset(&["v2", "v5"])
        );
        assert_eq!(
            g.neighborhood(&vid("v1"), NeighborhoodKind::Closed).unwrap(),
            vset(&["v1", "v2", "v5"])
        );
        assert!(matches!(
            g.neighborhood(&vid("nope"), NeighborhoodKind::Open),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn chorded_pentagon_keeps_v1_degree_two() {
        let g = chorded_pentagon();
        assert_eq!(
            g.neighborhood(&vid("v1"), NeighborhoodKind::Open).unwrap(),
            vset(&["v2", "v5"])
        );
        assert_eq!(
            g.neighborhood(&vid("v3"), NeighborhoodKind::Open).unwrap(),
            vset(&["v2", "v4", "v5"])
        );
    }

    #[test]
    fn distances_and_diameter_on_the_pentagon() {
        let g = pentagon();
        let table = g.distances();
        assert_eq!(table.diameter(), Diameter::Finite(2));
        assert_eq!(table.distance(&vid("v1"), &vid("v3")), Some(2));
        for v in g.vertices() {
            assert_eq!(table.distance(v, v), Some(0));
        }
    }

    #[test]
    fn disconnected_graph_has_infinite_diameter() {
        let g = graph(&["a", "b"], &[]);
        let table = g.distances();
        assert_eq!(table.diameter(), Diameter::Infinite);
        assert_eq!(table.distance(&vid("a"), &vid("b")), None);
    }

    #[test]
    fn subgraph_relation_checks_labels_and_endpoints() {
        let g = pentagon();
        assert!(g.is_subgraph_of(&g));
        let h = graph(&["v3", "v4", "v5"], &[("e3", "v3", "v4"), ("e4", "v4", "v5")]);
        assert!(h.is_subgraph_of(&g));
        // e3 reused with different endpoints must not count as contained.
        let bad = graph(&["v1", "v2"], &[("e3", "v1", "v2")]);
        assert!(!bad.is_subgraph_of(&g));
    }

    #[test]
    fn induced_subgraph_filters_edges_by_membership() {
        let g = pentagon();
        let h = g.induced_subgraph(&vset(&["v3", "v4"])).unwrap();
        assert_eq!(h.vertex_set(), &vset(&["v3", "v4"]));
        assert_eq!(h.edge_labels(), eset(&["e3"]));

        assert_eq!(g.induced_subgraph(&BTreeSet::new()).unwrap(), SimpleGraph::empty());
        assert_eq!(g.induced_subgraph(g.vertex_set()).unwrap(), g);
        assert!(matches!(
            g.induced_subgraph(&vset(&["v1", "zz"])),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn edge_induced_subgraph_collects_endpoints() {
        let g = pentagon();
        let single = g.edge_induced_subgraph(&eset(&["e3"])).unwrap();
        assert_eq!(single.vertex_set(), &vset(&["v3", "v4"]));
        let double = g.edge_induced_subgraph(&eset(&["e3", "e4"])).unwrap();
        assert_eq!(double.vertex_set(), &vset(&["v3", "v4", "v5"]));
        assert_eq!(double.edge_labels(), eset(&["e3", "e4"]));
        assert_eq!(g.edge_induced_subgraph(&BTreeSet::new()).unwrap(), SimpleGraph::empty());
        assert!(matches!(
            g.edge_induced_subgraph(&eset(&["e9"])),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn tree_predicate() {
        assert!(graph(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).is_tree());
        assert!(!pentagon().is_tree());
        assert!(graph(&["v3", "v4", "v5"], &[("e3", "v3", "v4"), ("e4", "v4", "v5")]).is_tree());
        assert!(!SimpleGraph::empty().is_tree());
        assert!(graph(&["a"], &[]).is_tree());
        // Forest with two components: acyclic but not a tree.
        let forest = graph(&["a", "b", "c", "d"], &[("e1", "a", "b"), ("e2", "c", "d")]);
        assert!(forest.is_acyclic());
        assert!(!forest.is_connected());
        assert!(!forest.is_tree());
    }
}
