//! Soft rough graphs, end to end.
//!
//! A soft set F: A → P(V) over a simple graph induces, for any target set
//! X ⊆ V, a pair of approximations: the lower one collects parameter images
//! contained in X, the upper one collects images meeting X. Lifting the same
//! construction to edges yields two subgraphs of the host — the lower and
//! upper approximation subgraphs — which together form a soft rough graph.
//!
//! The crate provides:
//!
//! * [`graph`] — simple graphs, structural predicates, induced subgraphs,
//!   distances, and the four graph products;
//! * [`soft`] — relation-driven soft sets and the derived edge soft set;
//! * [`approx`] — partition-based and soft rough approximation operators;
//! * [`rough`] — soft rough graphs: construction, induced-form
//!   classification, subgraph and tree predicates, AND/OR combinations, and
//!   products;
//! * [`census`] — an exhaustive desk-scale verification engine with an
//!   independent brute-force oracle;
//! * [`io`] — JSON document formats and DOT export.

pub mod approx;
pub mod census;
pub mod error;
pub mod graph;
pub mod io;
pub mod product;
pub mod rough;
pub mod soft;

pub use approx::{
    pawlak_approx, EdgeApproximation, Partition, PawlakApproximation, SoftRoughSet,
    VertexApproximation,
};
pub use census::{
    canonical_trees, run_census, verify_product_theorems, CensusConfig, CensusReport, CheckKind,
    CheckStats, Counterexample, DefinabilityStats, DEFAULT_VERTEX_CAP,
};
pub use error::{Error, Result};
pub use graph::{
    Diameter, DistanceTable, EdgeId, NeighborhoodKind, SimpleGraph, VertexId,
};
pub use product::{product, ProductKind};
pub use rough::{
    build_soft_graph, combine, is_soft_rough_subgraph, srg_product, CombineMode, CombineResult,
    InducedClassification, SoftRoughGraph, SrgProduct, SubgraphReport,
};
pub use soft::{build_soft_set, edge_soft_set, EdgeSoftSet, ParameterId, RelationSpec, SoftSet};

pub use approx::{edge_approx, vertex_approx};
