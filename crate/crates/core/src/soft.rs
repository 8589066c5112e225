//! Parameterized soft sets over a host graph.
//!
//! A soft set assigns to each parameter a subset of the host's vertices,
//! F: A → P(V). The assignment comes from a declarative [`RelationSpec`]:
//! a vertex-valued relation (open neighborhood, closed neighborhood, or "at
//! diameter distance") or an explicit table. The derived edge soft set K
//! maps each parameter to the host edges lying entirely inside F(a).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Diameter, EdgeId, NeighborhoodKind, SimpleGraph, VertexId};

/// Label of a parameter, unique within a parameter set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ParameterId(String);

impl ParameterId {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(ParameterId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ParameterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// How parameter images are produced.
///
/// The three relation kinds require every parameter to name a vertex of the
/// host graph; an explicit table may use foreign parameter labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationSpec {
    /// F(x) = N(x).
    OpenNeighborhood,
    /// F(x) = N[x].
    ClosedNeighborhood,
    /// F(x) = { y : d(x, y) = diam(G) }; requires a connected host.
    DiameterDistance,
    /// F(x) read off a table; parameters without an entry get the empty set.
    Explicit(BTreeMap<ParameterId, BTreeSet<VertexId>>),
}

impl RelationSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            RelationSpec::OpenNeighborhood => "open-neighborhood",
            RelationSpec::ClosedNeighborhood => "closed-neighborhood",
            RelationSpec::DiameterDistance => "diameter-distance",
            RelationSpec::Explicit(_) => "explicit",
        }
    }

    /// The three table-free kinds, parsed by name.
    pub fn from_kind_name(name: &str) -> Result<RelationSpec> {
        match name {
            "open-neighborhood" => Ok(RelationSpec::OpenNeighborhood),
            "closed-neighborhood" => Ok(RelationSpec::ClosedNeighborhood),
            "diameter-distance" => Ok(RelationSpec::DiameterDistance),
            other => Err(Error::UnknownRelationKind(other.to_string())),
        }
    }
}

impl FromStr for RelationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RelationSpec::from_kind_name(s)
    }
}

/// A soft set F: A → P(V) over a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftSet {
    host: SimpleGraph,
    assignment: BTreeMap<ParameterId, BTreeSet<VertexId>>,
}

impl SoftSet {
    pub fn host(&self) -> &SimpleGraph {
        &self.host
    }

    pub fn parameters(&self) -> impl Iterator<Item = &ParameterId> {
        self.assignment.keys()
    }

    pub fn parameter_set(&self) -> BTreeSet<ParameterId> {
        self.assignment.keys().cloned().collect()
    }

    pub fn image(&self, a: &ParameterId) -> Result<&BTreeSet<VertexId>> {
        self.assignment
            .get(a)
            .ok_or_else(|| Error::UnknownParameter(a.to_string()))
    }

    pub fn images(&self) -> impl Iterator<Item = (&ParameterId, &BTreeSet<VertexId>)> {
        self.assignment.iter()
    }
}

/// A derived edge soft set K: A → P(E).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSoftSet {
    assignment: BTreeMap<ParameterId, BTreeSet<EdgeId>>,
}

impl EdgeSoftSet {
    pub fn parameters(&self) -> impl Iterator<Item = &ParameterId> {
        self.assignment.keys()
    }

    pub fn image(&self, a: &ParameterId) -> Result<&BTreeSet<EdgeId>> {
        self.assignment
            .get(a)
            .ok_or_else(|| Error::UnknownParameter(a.to_string()))
    }

    pub fn images(&self) -> impl Iterator<Item = (&ParameterId, &BTreeSet<EdgeId>)> {
        self.assignment.iter()
    }
}

/// Builds F over `g` for the parameter set `params` according to `rel`.
///
/// An empty parameter set is allowed and yields an empty assignment; the
/// soft rough graph builder enforces its own non-emptiness precondition.
pub fn build_soft_set(
    g: &SimpleGraph,
    params: &BTreeSet<ParameterId>,
    rel: &RelationSpec,
) -> Result<SoftSet> {
    let mut assignment = BTreeMap::new();
    match rel {
        RelationSpec::OpenNeighborhood | RelationSpec::ClosedNeighborhood => {
            let kind = if matches!(rel, RelationSpec::OpenNeighborhood) {
                NeighborhoodKind::Open
            } else {
                NeighborhoodKind::Closed
            };
            for a in params {
                let v = parameter_vertex(g, a)?;
                assignment.insert(a.clone(), g.neighborhood(&v, kind)?);
            }
        }
        RelationSpec::DiameterDistance => {
            if !params.is_empty() && !g.is_connected() {
                return Err(Error::DisconnectedHost);
            }
            let table = g.distances();
            let diameter = match table.diameter() {
                Diameter::Finite(d) => d,
                Diameter::Infinite => return Err(Error::DisconnectedHost),
            };
            for a in params {
                let v = parameter_vertex(g, a)?;
                let image = g
                    .vertices()
                    .filter(|y| table.distance(&v, y) == Some(diameter))
                    .cloned()
                    .collect();
                assignment.insert(a.clone(), image);
            }
        }
        RelationSpec::Explicit(table) => {
            for key in table.keys() {
                if !params.contains(key) {
                    return Err(Error::TableParameterUnknown(key.to_string()));
                }
            }
            for a in params {
                let image = table.get(a).cloned().unwrap_or_default();
                for v in &image {
                    if !g.contains_vertex(v) {
                        return Err(Error::UnknownVertex(v.to_string()));
                    }
                }
                assignment.insert(a.clone(), image);
            }
        }
    }
    Ok(SoftSet {
        host: g.clone(),
        assignment,
    })
}

fn parameter_vertex(g: &SimpleGraph, a: &ParameterId) -> Result<VertexId> {
    let v = VertexId::new(a.as_str())?;
    if !g.contains_vertex(&v) {
        return Err(Error::ParameterNotAVertex(a.to_string()));
    }
    Ok(v)
}

/// Derives K from F: K(a) is the set of host edges with both endpoints in
/// F(a).
pub fn edge_soft_set(g: &SimpleGraph, f: &SoftSet) -> Result<EdgeSoftSet> {
    if f.host() != g {
        return Err(Error::HostMismatch);
    }
    let assignment = f
        .images()
        .map(|(a, image)| {
            let edges = g
                .edges()
                .filter(|(_, u, v)| image.contains(u) && image.contains(v))
                .map(|(e, _, _)| e.clone())
                .collect();
            (a.clone(), edges)
        })
        .collect();
    Ok(EdgeSoftSet { assignment })
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn pid(s: &str) -> ParameterId {
        ParameterId::new(s).unwrap()
    }

    pub fn pset(labels: &[&str]) -> BTreeSet<ParameterId> {
        labels.iter().map(|s| pid(s)).collect()
    }
}
