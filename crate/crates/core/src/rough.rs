//! Soft rough graphs: the pair of approximation subgraphs H_* and H^* of a
//! host graph, plus the predicates and binary operations defined on them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::approx::{edge_approx, vertex_approx, EdgeApproximation, VertexApproximation};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SimpleGraph, VertexId};
use crate::product::{product, ProductKind};
use crate::soft::{build_soft_set, edge_soft_set, EdgeSoftSet, ParameterId, RelationSpec, SoftSet};

/// A soft rough graph: host, parameter set, target, the two approximation
/// pairs, and the subgraphs they span.
///
/// `lower_graph` is (vertex lower, edge lower) and `upper_graph` is
/// (vertex upper, edge upper); both are verified subgraphs of the host with
/// the lower one contained in the upper one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftRoughGraph {
    host: SimpleGraph,
    relation: RelationSpec,
    params: BTreeSet<ParameterId>,
    target: BTreeSet<VertexId>,
    soft: SoftSet,
    edge_soft: EdgeSoftSet,
    vertex_approx: VertexApproximation,
    edge_approx: EdgeApproximation,
    lower_graph: SimpleGraph,
    upper_graph: SimpleGraph,
}

impl SoftRoughGraph {
    /// Computes F and K over `g`, approximates `target`, and assembles both
    /// subgraphs. Parameter set and target must be non-empty, and the target
    /// must lie inside the host vertex set.
    pub fn build(
        g: &SimpleGraph,
        params: &BTreeSet<ParameterId>,
        relation: &RelationSpec,
        target: &BTreeSet<VertexId>,
    ) -> Result<SoftRoughGraph> {
        if params.is_empty() {
            return Err(Error::EmptyParameterSet);
        }
        if target.is_empty() {
            return Err(Error::EmptyTarget);
        }
        for v in target {
            if !g.contains_vertex(v) {
                return Err(Error::UnknownVertex(v.to_string()));
            }
        }
        let soft = build_soft_set(g, params, relation)?;
        let edge_soft = edge_soft_set(g, &soft)?;
        let va = vertex_approx(&soft, target)?;
        let ea = edge_approx(&edge_soft, &soft, target)?;
        SoftRoughGraph::from_parts(g, relation, params, target, soft, edge_soft, va, ea)
    }

    /// Assembles a soft rough graph from approximations computed elsewhere.
    /// The census engine uses this to avoid rebuilding the soft set for every
    /// enumerated target.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        g: &SimpleGraph,
        relation: &RelationSpec,
        params: &BTreeSet<ParameterId>,
        target: &BTreeSet<VertexId>,
        soft: SoftSet,
        edge_soft: EdgeSoftSet,
        va: VertexApproximation,
        ea: EdgeApproximation,
    ) -> Result<SoftRoughGraph> {
        let lower_graph = approximation_graph(g, va.lower(), ea.lower())?;
        let upper_graph = approximation_graph(g, va.upper(), ea.upper())?;
        let srg = SoftRoughGraph {
            host: g.clone(),
            relation: relation.clone(),
            params: params.clone(),
            target: target.clone(),
            soft,
            edge_soft,
            vertex_approx: va,
            edge_approx: ea,
            lower_graph,
            upper_graph,
        };
        srg.verify()?;
        Ok(srg)
    }

    /// Re-checks the construction invariants; a failure here is a bug.
    fn verify(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !self.vertex_approx.lower().is_subset(self.vertex_approx.upper()) {
            problems.push("vertex lower escapes vertex upper");
        }
        if !self.edge_approx.lower().is_subset(self.edge_approx.upper()) {
            problems.push("edge lower escapes edge upper");
        }
        if !self.lower_graph.is_subgraph_of(&self.upper_graph) {
            problems.push("lower subgraph is not contained in the upper subgraph");
        }
        if !self.upper_graph.is_subgraph_of(&self.host) {
            problems.push("upper subgraph is not contained in the host");
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant(problems.join("; ")))
        }
    }

    pub fn host(&self) -> &SimpleGraph {
        &self.host
    }

    pub fn relation(&self) -> &RelationSpec {
        &self.relation
    }

    pub fn params(&self) -> &BTreeSet<ParameterId> {
        &self.params
    }

    pub fn target(&self) -> &BTreeSet<VertexId> {
        &self.target
    }

    pub fn soft_set(&self) -> &SoftSet {
        &self.soft
    }

    pub fn edge_soft_set(&self) -> &EdgeSoftSet {
        &self.edge_soft
    }

    pub fn vertex_approx(&self) -> &VertexApproximation {
        &self.vertex_approx
    }

    pub fn edge_approx(&self) -> &EdgeApproximation {
        &self.edge_approx
    }

    /// H_*, the lower approximation subgraph.
    pub fn lower_graph(&self) -> &SimpleGraph {
        &self.lower_graph
    }

    /// H^*, the upper approximation subgraph.
    pub fn upper_graph(&self) -> &SimpleGraph {
        &self.upper_graph
    }

    /// Which of the four induced forms this soft rough graph takes.
    pub fn classify_induced(&self) -> InducedClassification {
        let lower_vertex = self
            .host
            .induced_subgraph(self.vertex_approx.lower())
            .map(|g| g == self.lower_graph)
            .unwrap_or(false);
        let upper_vertex = self
            .host
            .induced_subgraph(self.vertex_approx.upper())
            .map(|g| g == self.upper_graph)
            .unwrap_or(false);
        let lower_edge = self
            .host
            .edge_induced_subgraph(self.edge_approx.lower())
            .map(|g| g == self.lower_graph)
            .unwrap_or(false);
        let upper_edge = self
            .host
            .edge_induced_subgraph(self.edge_approx.upper())
            .map(|g| g == self.upper_graph)
            .unwrap_or(false);
        InducedClassification {
            lower_vertex_induced: lower_vertex,
            upper_vertex_induced: upper_vertex,
            lower_edge_induced: lower_edge,
            upper_edge_induced: upper_edge,
        }
    }

    /// A soft rough tree has both approximation subgraphs trees.
    pub fn is_soft_rough_tree(&self) -> bool {
        self.lower_graph.is_tree() && self.upper_graph.is_tree()
    }
}

/// Builds a graph from an approximation pair (vertex set, edge set),
/// resolving edge endpoints against the host.
fn approximation_graph(
    host: &SimpleGraph,
    vertices: &BTreeSet<VertexId>,
    edges: &BTreeSet<EdgeId>,
) -> Result<SimpleGraph> {
    let resolved = edges
        .iter()
        .map(|e| {
            let (a, b) = host.endpoints(e)?;
            Ok((e.clone(), a.clone(), b.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    SimpleGraph::build(vertices.iter().cloned(), resolved)
}

/// The per-parameter family of subgraphs H(a) = (F(a), K(a)).
///
/// Each H(a) is a subgraph of the host by derivation of K; this is asserted
/// anyway.
pub fn build_soft_graph(
    g: &SimpleGraph,
    f: &SoftSet,
) -> Result<Vec<(ParameterId, SimpleGraph)>> {
    if f.host() != g {
        return Err(Error::HostMismatch);
    }
    let k = edge_soft_set(g, f)?;
    f.images()
        .map(|(a, image)| {
            let h = approximation_graph(g, image, k.image(a)?)?;
            if !h.is_subgraph_of(g) {
                return Err(Error::Invariant(format!(
                    "per-parameter subgraph for `{a}` escapes the host"
                )));
            }
            Ok((a.clone(), h))
        })
        .collect()
}

/// The four induced-form flags of a soft rough graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InducedClassification {
    pub lower_vertex_induced: bool,
    pub upper_vertex_induced: bool,
    pub lower_edge_induced: bool,
    pub upper_edge_induced: bool,
}

/// Witness report for the soft-rough-subgraph predicate.
///
/// `verdict` is the componentwise definition (parameter containment plus the
/// two graph containments); `containment_verdict` is the equivalent
/// four-set-containment characterization. Construction fails with an internal
/// error if the two routes ever disagree under parameter containment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubgraphReport {
    pub params_subset: bool,
    pub lower_graph_contained: bool,
    pub upper_graph_contained: bool,
    pub lower_vertices_contained: bool,
    pub upper_vertices_contained: bool,
    pub lower_edges_contained: bool,
    pub upper_edges_contained: bool,
    pub verdict: bool,
    pub containment_verdict: bool,
}

/// Decides whether `candidate` is a soft rough subgraph of `parent`.
///
/// Both must be built over the same host graph.
pub fn is_soft_rough_subgraph(
    candidate: &SoftRoughGraph,
    parent: &SoftRoughGraph,
) -> Result<SubgraphReport> {
    if candidate.host() != parent.host() {
        return Err(Error::HostMismatch);
    }
    let params_subset = candidate.params().is_subset(parent.params());
    let lower_graph_contained = candidate.lower_graph().is_subgraph_of(parent.lower_graph());
    let upper_graph_contained = candidate.upper_graph().is_subgraph_of(parent.upper_graph());
    let lower_vertices_contained = candidate
        .vertex_approx()
        .lower()
        .is_subset(parent.vertex_approx().lower());
    let upper_vertices_contained = candidate
        .vertex_approx()
        .upper()
        .is_subset(parent.vertex_approx().upper());
    let lower_edges_contained = candidate
        .edge_approx()
        .lower()
        .is_subset(parent.edge_approx().lower());
    let upper_edges_contained = candidate
        .edge_approx()
        .upper()
        .is_subset(parent.edge_approx().upper());

    let verdict = params_subset && lower_graph_contained && upper_graph_contained;
    let containment_verdict = lower_vertices_contained
        && upper_vertices_contained
        && lower_edges_contained
        && upper_edges_contained;
    if verdict != (params_subset && containment_verdict) {
        return Err(Error::Invariant(
            "graph containment disagrees with set containment over a shared host".to_string(),
        ));
    }
    Ok(SubgraphReport {
        params_subset,
        lower_graph_contained,
        upper_graph_contained,
        lower_vertices_contained,
        upper_vertices_contained,
        lower_edges_contained,
        upper_edges_contained,
        verdict,
        containment_verdict,
    })
}

/// Componentwise intersection (and) or union (or) of the four approximation
/// sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    And,
    Or,
}

impl CombineMode {
    pub fn name(&self) -> &'static str {
        match self {
            CombineMode::And => "and",
            CombineMode::Or => "or",
        }
    }
}

impl fmt::Display for CombineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CombineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "and" => Ok(CombineMode::And),
            "or" => Ok(CombineMode::Or),
            other => Err(Error::Document(format!(
                "unknown combine mode `{other}` (expected `and` or `or`)"
            ))),
        }
    }
}

/// Result of an AND/OR combination: the four combined sets with
/// well-formedness flags, plus provenance labels for the parameter and target
/// products.
///
/// The combined sets live over the shared host universes; a quadruple is not
/// forced into a graph because an intersection can orphan edges. The flags
/// record whether each (vertex set, edge set) pair would form a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombineResult {
    pub lower_vertices: BTreeSet<VertexId>,
    pub upper_vertices: BTreeSet<VertexId>,
    pub lower_edges: BTreeSet<EdgeId>,
    pub upper_edges: BTreeSet<EdgeId>,
    pub lower_well_formed: bool,
    pub upper_well_formed: bool,
    pub param_pairs: BTreeSet<String>,
    pub target_pairs: BTreeSet<String>,
}

impl CombineResult {
    /// Evaluates well-formedness flags for an arbitrary set quadruple against
    /// a host graph. A pair is well formed when every edge has both endpoints
    /// inside the paired vertex set.
    pub fn evaluate(
        host: &SimpleGraph,
        lower_vertices: BTreeSet<VertexId>,
        lower_edges: BTreeSet<EdgeId>,
        upper_vertices: BTreeSet<VertexId>,
        upper_edges: BTreeSet<EdgeId>,
        param_pairs: BTreeSet<String>,
        target_pairs: BTreeSet<String>,
    ) -> Result<CombineResult> {
        let lower_well_formed = edges_within(host, &lower_vertices, &lower_edges)?;
        let upper_well_formed = edges_within(host, &upper_vertices, &upper_edges)?;
        Ok(CombineResult {
            lower_vertices,
            upper_vertices,
            lower_edges,
            upper_edges,
            lower_well_formed,
            upper_well_formed,
            param_pairs,
            target_pairs,
        })
    }
}

fn edges_within(
    host: &SimpleGraph,
    vertices: &BTreeSet<VertexId>,
    edges: &BTreeSet<EdgeId>,
) -> Result<bool> {
    for e in edges {
        let (a, b) = host.endpoints(e)?;
        if !vertices.contains(a) || !vertices.contains(b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn rendered_pairs<T: fmt::Display, U: fmt::Display>(
    left: impl IntoIterator<Item = T>,
    right: impl IntoIterator<Item = U> + Clone,
) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for a in left {
        for b in right.clone() {
            out.insert(format!("({a},{b})"));
        }
    }
    out
}

/// AND/OR combination of two soft rough graphs over the same host.
pub fn combine(s1: &SoftRoughGraph, s2: &SoftRoughGraph, mode: CombineMode) -> Result<CombineResult> {
    if s1.host() != s2.host() {
        return Err(Error::HostMismatch);
    }
    let set_op = |a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>| match mode {
        CombineMode::And => a.intersection(b).cloned().collect::<BTreeSet<_>>(),
        CombineMode::Or => a.union(b).cloned().collect(),
    };
    let edge_op = |a: &BTreeSet<EdgeId>, b: &BTreeSet<EdgeId>| match mode {
        CombineMode::And => a.intersection(b).cloned().collect::<BTreeSet<_>>(),
        CombineMode::Or => a.union(b).cloned().collect(),
    };
    CombineResult::evaluate(
        s1.host(),
        set_op(s1.vertex_approx().lower(), s2.vertex_approx().lower()),
        edge_op(s1.edge_approx().lower(), s2.edge_approx().lower()),
        set_op(s1.vertex_approx().upper(), s2.vertex_approx().upper()),
        edge_op(s1.edge_approx().upper(), s2.edge_approx().upper()),
        rendered_pairs(s1.params(), s2.params()),
        rendered_pairs(s1.target(), s2.target()),
    )
}

/// The product of two soft rough graphs: the chosen product applied to the
/// lower pair and to the upper pair, each checked for containment in the
/// product of the hosts.
///
/// Containment can fail for the corona product (copy indexing shifts when the
/// base subgraph misses host vertices); the flags report it instead of
/// silently ignoring it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrgProduct {
    pub kind: ProductKind,
    pub lower: SimpleGraph,
    pub upper: SimpleGraph,
    pub host_product: SimpleGraph,
    pub lower_within_host: bool,
    pub upper_within_host: bool,
}

/// Applies `kind` to the approximation subgraphs of `s1` and `s2`.
///
/// Join and corona need disjoint host labels; corona is undefined when the
/// lower subgraph of `s1` is empty.
pub fn srg_product(
    s1: &SoftRoughGraph,
    s2: &SoftRoughGraph,
    kind: ProductKind,
) -> Result<SrgProduct> {
    if kind == ProductKind::Corona && s1.lower_graph().is_empty() {
        return Err(Error::CoronaEmptyBase);
    }
    let host_product = product(s1.host(), s2.host(), kind)?;
    let lower = product(s1.lower_graph(), s2.lower_graph(), kind)?;
    let upper = product(s1.upper_graph(), s2.upper_graph(), kind)?;
    let lower_within_host = lower.is_subgraph_of(&host_product);
    let upper_within_host = upper.is_subgraph_of(&host_product);
    Ok(SrgProduct {
        kind,
        lower,
        upper,
        host_product,
        lower_within_host,
        upper_within_host,
    })
}
