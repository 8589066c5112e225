//! Document formats and exports.
//!
//! Graphs, run specs, census configs, and soft rough graph results all travel
//! as JSON documents. Serialized sets are always emitted in lexicographic
//! label order so identical inputs produce byte-identical outputs. Every
//! document accepts an optional `notes` list for free-form commentary (for
//! example, fixture reconstruction notes); notes are carried along but have
//! no semantic effect.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::census::{CensusConfig, CheckKind, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SimpleGraph, VertexId};
use crate::rough::SoftRoughGraph;
use crate::soft::{ParameterId, RelationSpec};

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

/// Graph interchange document: vertex labels plus labeled edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub label: String,
    pub endpoints: [String; 2],
}

impl GraphDoc {
    pub fn parse(text: &str) -> Result<GraphDoc> {
        parse_json(text)
    }

    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| VertexId::new(v.clone()))
            .collect::<Result<Vec<_>>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok((
                    EdgeId::new(e.label.clone())?,
                    VertexId::new(e.endpoints[0].clone())?,
                    VertexId::new(e.endpoints[1].clone())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        SimpleGraph::build(vertices, edges)
    }

    pub fn from_graph(g: &SimpleGraph) -> GraphDoc {
        GraphDoc {
            name: None,
            notes: Vec::new(),
            vertices: g.vertices().map(|v| v.to_string()).collect(),
            edges: g
                .edges()
                .map(|(e, a, b)| EdgeDoc {
                    label: e.to_string(),
                    endpoints: [a.to_string(), b.to_string()],
                })
                .collect(),
        }
    }
}

/// Relation document: `{kind, parameters, table?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub kind: String,
    pub parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, Vec<String>>>,
}

impl RelationDoc {
    pub fn to_parts(&self) -> Result<(BTreeSet<ParameterId>, RelationSpec)> {
        let params = self
            .parameters
            .iter()
            .map(|p| ParameterId::new(p.clone()))
            .collect::<Result<BTreeSet<_>>>()?;
        let spec = if self.kind == "explicit" {
            let table = self
                .table
                .clone()
                .unwrap_or_default()
                .into_iter()
                .map(|(p, vs)| {
                    Ok((
                        ParameterId::new(p)?,
                        vs.into_iter()
                            .map(VertexId::new)
                            .collect::<Result<BTreeSet<_>>>()?,
                    ))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            RelationSpec::Explicit(table)
        } else {
            if self.table.is_some() {
                return Err(Error::UnexpectedTable {
                    kind: self.kind.clone(),
                });
            }
            RelationSpec::from_kind_name(&self.kind)?
        };
        Ok((params, spec))
    }

    pub fn from_parts(params: &BTreeSet<ParameterId>, spec: &RelationSpec) -> RelationDoc {
        let table = match spec {
            RelationSpec::Explicit(table) => Some(
                table
                    .iter()
                    .map(|(p, vs)| {
                        (p.to_string(), vs.iter().map(|v| v.to_string()).collect())
                    })
                    .collect(),
            ),
            _ => None,
        };
        RelationDoc {
            kind: spec.kind_name().to_string(),
            parameters: params.iter().map(|p| p.to_string()).collect(),
            table,
        }
    }
}

/// A run spec: host graph, relation with parameters, target, and an optional
/// second operand for the binary commands. The second operand reuses the
/// first graph when it does not embed its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpecDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub graph: GraphDoc,
    pub relation: RelationDoc,
    pub target: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<SecondOperandDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SecondOperandDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
    pub relation: RelationDoc,
    pub target: Vec<String>,
}

/// One fully resolved operand, ready to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecOperand {
    pub graph: SimpleGraph,
    pub params: BTreeSet<ParameterId>,
    pub relation: RelationSpec,
    pub target: BTreeSet<VertexId>,
}

impl SpecOperand {
    pub fn build(&self) -> Result<SoftRoughGraph> {
        SoftRoughGraph::build(&self.graph, &self.params, &self.relation, &self.target)
    }
}

/// A parsed and resolved run spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedSpec {
    pub primary: SpecOperand,
    pub second: Option<SpecOperand>,
}

fn target_set(labels: &[String]) -> Result<BTreeSet<VertexId>> {
    labels
        .iter()
        .map(|v| VertexId::new(v.clone()))
        .collect()
}

impl RunSpecDoc {
    pub fn parse(text: &str) -> Result<RunSpecDoc> {
        parse_json(text)
    }

    pub fn resolve(&self) -> Result<ResolvedSpec> {
        let graph = self.graph.to_graph()?;
        let (params, relation) = self.relation.to_parts()?;
        let primary = SpecOperand {
            graph: graph.clone(),
            params,
            relation,
            target: target_set(&self.target)?,
        };
        let second = self
            .second
            .as_ref()
            .map(|op| {
                let graph = match &op.graph {
                    Some(doc) => doc.to_graph()?,
                    None => graph.clone(),
                };
                let (params, relation) = op.relation.to_parts()?;
                Ok(SpecOperand {
                    graph,
                    params,
                    relation,
                    target: target_set(&op.target)?,
                })
            })
            .transpose()?;
        Ok(ResolvedSpec { primary, second })
    }
}

/// Serialized form of a soft rough graph: provenance, the four approximation
/// sets, and both subgraphs in the interchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SoftRoughGraphDoc {
    pub host: GraphDoc,
    pub relation: RelationDoc,
    pub target: Vec<String>,
    pub vertex_lower: Vec<String>,
    pub vertex_upper: Vec<String>,
    pub edge_lower: Vec<String>,
    pub edge_upper: Vec<String>,
    pub lower_graph: GraphDoc,
    pub upper_graph: GraphDoc,
}

impl SoftRoughGraphDoc {
    pub fn parse(text: &str) -> Result<SoftRoughGraphDoc> {
        parse_json(text)
    }

    pub fn from_srg(srg: &SoftRoughGraph) -> SoftRoughGraphDoc {
        let strings = |it: &BTreeSet<VertexId>| it.iter().map(|v| v.to_string()).collect();
        let estrings = |it: &BTreeSet<EdgeId>| it.iter().map(|e| e.to_string()).collect();
        SoftRoughGraphDoc {
            host: GraphDoc::from_graph(srg.host()),
            relation: RelationDoc::from_parts(srg.params(), srg.relation()),
            target: srg.target().iter().map(|v| v.to_string()).collect(),
            vertex_lower: strings(srg.vertex_approx().lower()),
            vertex_upper: strings(srg.vertex_approx().upper()),
            edge_lower: estrings(srg.edge_approx().lower()),
            edge_upper: estrings(srg.edge_approx().upper()),
            lower_graph: GraphDoc::from_graph(srg.lower_graph()),
            upper_graph: GraphDoc::from_graph(srg.upper_graph()),
        }
    }

    /// Rebuilds the soft rough graph from the stored provenance and checks
    /// that every stored set and subgraph matches the rebuilt one,
    /// set-for-set.
    pub fn reconstruct(&self) -> Result<SoftRoughGraph> {
        let host = self.host.to_graph()?;
        let (params, relation) = self.relation.to_parts()?;
        let target = target_set(&self.target)?;
        let srg = SoftRoughGraph::build(&host, &params, &relation, &target)?;
        let sorted = |v: &[String]| v.iter().cloned().collect::<BTreeSet<_>>();
        let vertex_strings =
            |s: &BTreeSet<VertexId>| s.iter().map(|v| v.to_string()).collect::<BTreeSet<_>>();
        let edge_strings =
            |s: &BTreeSet<EdgeId>| s.iter().map(|e| e.to_string()).collect::<BTreeSet<_>>();
        let consistent = sorted(&self.vertex_lower) == vertex_strings(srg.vertex_approx().lower())
            && sorted(&self.vertex_upper) == vertex_strings(srg.vertex_approx().upper())
            && sorted(&self.edge_lower) == edge_strings(srg.edge_approx().lower())
            && sorted(&self.edge_upper) == edge_strings(srg.edge_approx().upper())
            && self.lower_graph.to_graph()? == *srg.lower_graph()
            && self.upper_graph.to_graph()? == *srg.upper_graph();
        if !consistent {
            return Err(Error::Document(
                "stored approximation sets disagree with the rebuilt soft rough graph".to_string(),
            ));
        }
        Ok(srg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("doc serialization cannot fail")
    }
}

/// Census configuration document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusConfigDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub graph: GraphDoc,
    /// Relation kind name; explicit tables cannot be enumerated.
    pub relation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_params: Option<usize>,
    #[serde(default)]
    pub include_empty: bool,
    /// Check names; omitted means the default battery.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_cap: Option<usize>,
}

impl CensusConfigDoc {
    pub fn parse(text: &str) -> Result<CensusConfigDoc> {
        parse_json(text)
    }

    pub fn to_config(&self) -> Result<CensusConfig> {
        if self.relation == "explicit" {
            return Err(Error::ExplicitRelationInCensus);
        }
        let relation = RelationSpec::from_kind_name(&self.relation)?;
        let checks = match &self.checks {
            None => CheckKind::defaults(),
            Some(names) => names
                .iter()
                .map(|n| n.parse::<CheckKind>())
                .collect::<Result<BTreeSet<_>>>()?,
        };
        Ok(CensusConfig {
            host: self.graph.to_graph()?,
            relation,
            max_params: self.max_params,
            include_empty: self.include_empty,
            checks,
            vertex_cap: self.vertex_cap.unwrap_or(DEFAULT_VERTEX_CAP),
        })
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders one undirected graph as a DOT document; the edge label becomes an
/// edge attribute.
pub fn graph_to_dot(g: &SimpleGraph, name: &str) -> String {
    let mut out = format!("graph \"{}\" {{\n", dot_escape(name));
    for v in g.vertices() {
        out.push_str(&format!("  \"{}\";\n", dot_escape(v.as_str())));
    }
    for (e, a, b) in g.edges() {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
            dot_escape(a.as_str()),
            dot_escape(b.as_str()),
            dot_escape(e.as_str())
        ));
    }
    out.push_str("}\n");
    out
}

/// Renders the lower and upper approximation subgraphs as two named clusters
/// of a single DOT document. Node ids are prefixed per cluster so a vertex
/// can appear in both.
pub fn soft_rough_to_dot(srg: &SoftRoughGraph) -> String {
    let mut out = String::from("graph soft_rough_graph {\n");
    for (cluster, graph) in [("lower", srg.lower_graph()), ("upper", srg.upper_graph())] {
        out.push_str(&format!(
            "  subgraph cluster_{cluster} {{\n    label=\"{cluster}\";\n"
        ));
        for v in graph.vertices() {
            out.push_str(&format!(
                "    \"{cluster}/{0}\" [label=\"{0}\"];\n",
                dot_escape(v.as_str())
            ));
        }
        for (e, a, b) in graph.edges() {
            out.push_str(&format!(
                "    \"{cluster}/{}\" -- \"{cluster}/{}\" [label=\"{}\"];\n",
                dot_escape(a.as_str()),
                dot_escape(b.as_str()),
                dot_escape(e.as_str())
            ));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_support::{pentagon, vset};
    use crate::soft::test_support::pset;

    const PENTAGON_SPEC: &str = r#"{
        "graph": {
            "vertices": ["v1", "v2", "v3", "v4", "v5"],
            "edges": [
                {"label": "e1", "endpoints": ["v1", "v2"]},
                {"label": "e2", "endpoints": ["v2", "v3"]},
                {"label": "e3", "endpoints": ["v3", "v4"]},
                {"label": "e4", "endpoints": ["v4", "v5"]},
                {"label": "e5", "endpoints": ["v5", "v1"]}
            ]
        },
        "relation": {"kind": "diameter-distance", "parameters": ["v1", "v2"]},
        "target": ["v2", "v3", "v4"]
    }"#;

    #[test]
    fn run_spec_parses_and_builds() {
        let spec = RunSpecDoc::parse(PENTAGON_SPEC).unwrap();
        let resolved = spec.resolve().unwrap();
        assert_eq!(resolved.primary.graph, pentagon());
        assert_eq!(resolved.primary.params, pset(&["v1", "v2"]));
        let srg = resolved.primary.build().unwrap();
        assert_eq!(srg.vertex_approx().lower(), &vset(&["v3", "v4"]));
    }

    #[test]
    fn parse_errors_carry_position_diagnostics() {
        let err = RunSpecDoc::parse("{\"graph\": 3}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "missing diagnostics: {msg}");
        let unknown = RunSpecDoc::parse(
            "{\"graph\": {\"vertices\": [], \"edges\": []}, \"relation\": {\"kind\": \"open-neighborhood\", \"parameters\": []}, \"target\": [], \"extra\": 1}",
        )
        .unwrap_err();
        assert!(unknown.to_string().contains("extra"));
    }

    #[test]
    fn non_explicit_relations_reject_tables() {
        let doc = RelationDoc {
            kind: "open-neighborhood".to_string(),
            parameters: vec!["v1".to_string()],
            table: Some(BTreeMap::new()),
        };
        assert!(matches!(doc.to_parts(), Err(Error::UnexpectedTable { .. })));
    }

    #[test]
    fn soft_rough_doc_round_trips() {
        let spec = RunSpecDoc::parse(PENTAGON_SPEC).unwrap();
        let srg = spec.resolve().unwrap().primary.build().unwrap();
        let doc = SoftRoughGraphDoc::from_srg(&srg);
        let json = doc.to_json();
        let parsed = SoftRoughGraphDoc::parse(&json).unwrap();
        let rebuilt = parsed.reconstruct().unwrap();
        assert_eq!(rebuilt, srg);
        // Serialization is deterministic.
        assert_eq!(json, SoftRoughGraphDoc::from_srg(&rebuilt).to_json());
    }

    #[test]
    fn reconstruct_rejects_tampered_sets() {
        let spec = RunSpecDoc::parse(PENTAGON_SPEC).unwrap();
        let srg = spec.resolve().unwrap().primary.build().unwrap();
        let mut doc = SoftRoughGraphDoc::from_srg(&srg);
        doc.vertex_lower.push("v5".to_string());
        assert!(matches!(doc.reconstruct(), Err(Error::Document(_))));
    }

    #[test]
    fn census_config_doc_parses_checks() {
        let text = r#"{
            "graph": {"vertices": ["a", "b"], "edges": [{"label": "e1", "endpoints": ["a", "b"]}]},
            "relation": "open-neighborhood",
            "checks": ["lower-within-upper", "oracle-agreement"]
        }"#;
        let cfg = CensusConfigDoc::parse(text).unwrap().to_config().unwrap();
        assert_eq!(cfg.checks.len(), 2);

        let bad = r#"{
            "graph": {"vertices": [], "edges": []},
            "relation": "open-neighborhood",
            "checks": ["no-such-check"]
        }"#;
        assert!(matches!(
            CensusConfigDoc::parse(bad).unwrap().to_config(),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn dot_export_shapes() {
        let g = pentagon();
        let dot = graph_to_dot(&g, "pentagon");
        assert!(dot.starts_with("graph \"pentagon\" {"));
        assert!(dot.contains("\"v1\" -- \"v2\" [label=\"e1\"];"));

        let spec = RunSpecDoc::parse(PENTAGON_SPEC).unwrap();
        let srg = spec.resolve().unwrap().primary.build().unwrap();
        let dot = soft_rough_to_dot(&srg);
        assert!(dot.contains("subgraph cluster_lower"));
        assert!(dot.contains("subgraph cluster_upper"));
        assert!(dot.contains("\"upper/v3\" -- \"upper/v4\" [label=\"e3\"];"));
    }
}
