//! Lower and upper approximations.
//!
//! Two flavors live here: the classical partition-based (Pawlak)
//! approximation, and the soft rough approximation computed from a soft set.
//! In the soft rough case an element enters the lower approximation of X when
//! it lies in some parameter image contained in X, and the upper
//! approximation when it lies in some image meeting X. Edge approximations
//! qualify each parameter by its *vertex* image: an edge of K(a) enters the
//! lower side when F(a) ⊆ X and the upper side when F(a) ∩ X ≠ ∅.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::soft::{edge_soft_set, EdgeSoftSet, ParameterId, SoftSet};

/// A partition of a vertex universe into disjoint non-empty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    universe: BTreeSet<VertexId>,
    blocks: Vec<BTreeSet<VertexId>>,
}

impl Partition {
    pub fn new(blocks: Vec<BTreeSet<VertexId>>) -> Result<Self> {
        let mut universe = BTreeSet::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for member in block {
                if !universe.insert(member.clone()) {
                    return Err(Error::OverlappingBlocks(member.to_string()));
                }
            }
        }
        Ok(Partition { universe, blocks })
    }

    pub fn universe(&self) -> &BTreeSet<VertexId> {
        &self.universe
    }

    pub fn blocks(&self) -> &[BTreeSet<VertexId>] {
        &self.blocks
    }
}

/// Result of a partition-based approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PawlakApproximation {
    pub lower: BTreeSet<VertexId>,
    pub upper: BTreeSet<VertexId>,
    pub definable: bool,
}

/// Lower = union of blocks contained in `x`; upper = union of blocks meeting
/// `x`; `definable` iff the two coincide.
pub fn pawlak_approx(p: &Partition, x: &BTreeSet<VertexId>) -> Result<PawlakApproximation> {
    for member in x {
        if !p.universe().contains(member) {
            return Err(Error::OutsideUniverse {
                member: member.to_string(),
            });
        }
    }
    let mut lower = BTreeSet::new();
    let mut upper = BTreeSet::new();
    for block in p.blocks() {
        if block.is_subset(x) {
            lower.extend(block.iter().cloned());
        }
        if !block.is_disjoint(x) {
            upper.extend(block.iter().cloned());
        }
    }
    let definable = lower == upper;
    Ok(PawlakApproximation {
        lower,
        upper,
        definable,
    })
}

/// A soft rough approximation pair over some id universe, together with the
/// parameter set and target it was taken against.
///
/// The id type selects the flavor: [`VertexApproximation`] approximates over
/// V, [`EdgeApproximation`] over E.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftRoughSet<T: Ord> {
    lower: BTreeSet<T>,
    upper: BTreeSet<T>,
    params: BTreeSet<ParameterId>,
    target: BTreeSet<VertexId>,
}

pub type VertexApproximation = SoftRoughSet<VertexId>;
pub type EdgeApproximation = SoftRoughSet<EdgeId>;

impl<T: Ord> SoftRoughSet<T> {
    pub fn lower(&self) -> &BTreeSet<T> {
        &self.lower
    }

    pub fn upper(&self) -> &BTreeSet<T> {
        &self.upper
    }

    pub fn params(&self) -> &BTreeSet<ParameterId> {
        &self.params
    }

    pub fn target(&self) -> &BTreeSet<VertexId> {
        &self.target
    }

    /// Soft definable iff lower and upper coincide; soft rough otherwise.
    pub fn is_definable(&self) -> bool {
        self.lower == self.upper
    }
}

fn check_target(f: &SoftSet, x: &BTreeSet<VertexId>) -> Result<()> {
    for v in x {
        if !f.host().contains_vertex(v) {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    Ok(())
}

/// Vertex-flavor soft rough approximation of `x` under `f`.
pub fn vertex_approx(f: &SoftSet, x: &BTreeSet<VertexId>) -> Result<VertexApproximation> {
    check_target(f, x)?;
    let mut lower = BTreeSet::new();
    let mut upper = BTreeSet::new();
    for (_, image) in f.images() {
        if image.is_subset(x) {
            lower.extend(image.iter().cloned());
        }
        if !image.is_disjoint(x) {
            upper.extend(image.iter().cloned());
        }
    }
    Ok(SoftRoughSet {
        lower,
        upper,
        params: f.parameter_set(),
        target: x.clone(),
    })
}

/// Edge-flavor soft rough approximation of `x` under `k`, qualified by the
/// vertex images of `f`.
///
/// `k` must be derivable from `f`; the derivation is re-checked so an
/// inconsistent pair cannot slip through.
pub fn edge_approx(
    k: &EdgeSoftSet,
    f: &SoftSet,
    x: &BTreeSet<VertexId>,
) -> Result<EdgeApproximation> {
    check_target(f, x)?;
    if edge_soft_set(f.host(), f)? != *k {
        return Err(Error::ProvenanceMismatch);
    }
    let mut lower = BTreeSet::new();
    let mut upper = BTreeSet::new();
    for (a, image) in f.images() {
        let edges = k.image(a)?;
        if image.is_subset(x) {
            lower.extend(edges.iter().cloned());
        }
        if !image.is_disjoint(x) {
            upper.extend(edges.iter().cloned());
        }
    }
    Ok(SoftRoughSet {
        lower,
        upper,
        params: f.parameter_set(),
        target: x.clone(),
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::graph::test_support::{chorded_pentagon, eset, pentagon, vset};
    use crate::soft::test_support::{pid, pset};
    use crate::soft::{build_soft_set, RelationSpec};

    #[test]
    fn pawlak_lower_and_upper_on_small_partitions() {
        let p = Partition::new(vec![vset(&["1", "2"]), vset(&["3"])]).unwrap();

        let exact = pawlak_approx(&p, &vset(&["1", "2"])).unwrap();
        assert_eq!(exact.lower, vset(&["1", "2"]));
        assert_eq!(exact.upper, vset(&["1", "2"]));
        assert!(exact.definable);

        let rough = pawlak_approx(&p, &vset(&["1", "3"])).unwrap();
        assert_eq!(rough.lower, vset(&["3"]));
        assert_eq!(rough.upper, vset(&["1", "2", "3"]));
        assert!(!rough.definable);

        let empty = pawlak_approx(&p, &BTreeSet::new()).unwrap();
        assert!(empty.lower.is_empty() && empty.upper.is_empty() && empty.definable);

        assert!(matches!(
            pawlak_approx(&p, &vset(&["9"])),
            Err(Error::OutsideUniverse { .. })
        ));
    }

    #[test]
    fn partition_construction_rejects_overlap_and_empty_blocks() {
        assert!(matches!(
            Partition::new(vec![vset(&["1"]), vset(&["1", "2"])]),
            Err(Error::OverlappingBlocks(_))
        ));
        assert!(matches!(
            Partition::new(vec![BTreeSet::new()]),
            Err(Error::EmptyBlock)
        ));
    }

    #[test]
    fn vertex_approximation_on_the_chorded_pentagon() {
        let g = chorded_pentagon();
        let f = build_soft_set(&g, &pset(&["v1", "v3"]), &RelationSpec::OpenNeighborhood).unwrap();
        let approx = vertex_approx(&f, &vset(&["v1", "v2", "v5"])).unwrap();
        assert_eq!(approx.lower(), &vset(&["v2", "v5"]));
        assert_eq!(approx.upper(), &vset(&["v2", "v4", "v5"]));
        assert!(!approx.is_definable());
    }

    #[test]
    fn vertex_approximation_on_the_pentagon_diameter_relation() {
        let g = pentagon();
        let f = build_soft_set(&g, &pset(&["v1", "v2"]), &RelationSpec::DiameterDistance).unwrap();
        let approx = vertex_approx(&f, &vset(&["v2", "v3", "v4"])).unwrap();
        assert_eq!(approx.lower(), &vset(&["v3", "v4"]));
        assert_eq!(approx.upper(), &vset(&["v3", "v4", "v5"]));
    }

    #[test]
    fn empty_target_approximates_to_empty() {
        let g = pentagon();
        let f = build_soft_set(&g, &pset(&["v1", "v2"]), &RelationSpec::OpenNeighborhood).unwrap();
        let approx = vertex_approx(&f, &BTreeSet::new()).unwrap();
        assert!(approx.lower().is_empty());
        assert!(approx.upper().is_empty());
        assert!(approx.is_definable());
    }

    #[test]
    fn edge_approximation_on_the_pentagon_diameter_relation() {
        let g = pentagon();
        let f = build_soft_set(&g, &pset(&["v1", "v2"]), &RelationSpec::DiameterDistance).unwrap();
        let k = edge_soft_set(&g, &f).unwrap();
        let approx = edge_approx(&k, &f, &vset(&["v2", "v3", "v4"])).unwrap();
        assert_eq!(approx.lower(), &eset(&["e3"]));
        assert_eq!(approx.upper(), &eset(&["e3", "e4"]));
    }

    #[test]
    fn edge_approximation_on_the_chorded_pentagon() {
        let g = chorded_pentagon();
        let f = build_soft_set(&g, &pset(&["v1", "v3"]), &RelationSpec::OpenNeighborhood).unwrap();
        let k = edge_soft_set(&g, &f).unwrap();
        let approx = edge_approx(&k, &f, &vset(&["v1", "v2", "v5"])).unwrap();
        assert_eq!(approx.lower(), &eset(&["e6"]));
        assert_eq!(approx.upper(), &eset(&["e4", "e6", "e8"]));
    }

    #[test]
    fn empty_parameter_set_gives_empty_edge_approximation() {
        let g = pentagon();
        let f = build_soft_set(&g, &BTreeSet::new(), &RelationSpec::OpenNeighborhood).unwrap();
        let k = edge_soft_set(&g, &f).unwrap();
        let approx = edge_approx(&k, &f, &vset(&["v1"])).unwrap();
        assert!(approx.lower().is_empty());
        assert!(approx.upper().is_empty());
    }

    #[test]
    fn definability_of_a_rough_target_on_the_gem_host() {
        // Host with N(v2) = {v1,v3,v6} and N(v4) = {v3,v5,v6}; the target
        // {v1,v3,v6} contains F(v2) but only meets F(v4).
        let g = crate::graph::test_support::graph(
            &["v1", "v2", "v3", "v4", "v5", "v6", "v7"],
            &[
                ("e1", "v1", "v2"),
                ("e2", "v2", "v3"),
                ("e3", "v3", "v4"),
                ("e4", "v4", "v5"),
                ("e5", "v1", "v5"),
                ("e6", "v5", "v6"),
                ("e7", "v2", "v6"),
                ("e8", "v3", "v6"),
                ("e9", "v4", "v6"),
                ("e10", "v6", "v7"),
                ("e11", "v1", "v7"),
            ],
        );
        let f = build_soft_set(&g, &pset(&["v2", "v4"]), &RelationSpec::OpenNeighborhood).unwrap();
        let approx = vertex_approx(&f, &vset(&["v1", "v3", "v6"])).unwrap();
        assert_eq!(approx.lower(), &vset(&["v1", "v3", "v6"]));
        assert_eq!(approx.upper(), &vset(&["v1", "v3", "v5", "v6"]));
        assert!(!approx.is_definable());
    }

    #[test]
    fn single_contained_image_is_definable() {
        let g = pentagon();
        let table = BTreeMap::from([(pid("p"), vset(&["v1", "v2"]))]);
        let f = build_soft_set(&g, &pset(&["p"]), &RelationSpec::Explicit(table)).unwrap();
        let approx = vertex_approx(&f, &vset(&["v1", "v2", "v3"])).unwrap();
        assert_eq!(approx.lower(), approx.upper());
        assert_eq!(approx.lower(), &vset(&["v1", "v2"]));
        assert!(approx.is_definable());
    }

    #[test]
    fn pawlak_agrees_with_soft_rough_when_images_partition_the_universe() {
        let g = pentagon();
        let blocks = vec![vset(&["v1", "v2"]), vset(&["v3"]), vset(&["v4", "v5"])];
        let p = Partition::new(blocks.clone()).unwrap();
        let table: BTreeMap<_, _> = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| (pid(&format!("b{i}")), b.clone()))
            .collect();
        let params = table.keys().cloned().collect();
        let f = build_soft_set(&g, &params, &RelationSpec::Explicit(table)).unwrap();
        for x in [vset(&["v1", "v2"]), vset(&["v2", "v3", "v4"]), vset(&["v5"])] {
            let pw = pawlak_approx(&p, &x).unwrap();
            let sr = vertex_approx(&f, &x).unwrap();
            assert_eq!(&pw.lower, sr.lower());
            assert_eq!(&pw.upper, sr.upper());
            assert_eq!(pw.definable, sr.is_definable());
        }
    }

    #[test]
    fn edge_approx_rejects_foreign_edge_soft_sets() {
        let g = pentagon();
        let f1 = build_soft_set(&g, &pset(&["v1"]), &RelationSpec::OpenNeighborhood).unwrap();
        let f2 = build_soft_set(&g, &pset(&["v1", "v2"]), &RelationSpec::OpenNeighborhood).unwrap();
        let k2 = edge_soft_set(&g, &f2).unwrap();
        assert!(matches!(
            edge_approx(&k2, &f1, &vset(&["v1"])),
            Err(Error::ProvenanceMismatch)
        ));
    }
}
