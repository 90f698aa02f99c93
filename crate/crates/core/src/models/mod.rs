//! Dominating K_t-models: representation, verification, normalisation, and
//! the compatibility notion used to thread models through contractions.

mod lift;
mod search;

pub use lift::{lift_model, LiftError, LiftTransform};
pub use search::{find_dominating_model, find_standard_model, SearchError, SearchMode};

use crate::bitset::VertexSet;
use crate::graph::Graph;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An ordered sequence of branch sets (T_1, ..., T_t). Valid against a host
/// graph when the sets are non-empty, pairwise disjoint, each induces a
/// connected subgraph, and for i < j every vertex of T_j has a neighbour in
/// T_i. `verify_standard_model` weakens the last clause to "some vertex".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingModel {
    pub branch_sets: Vec<VertexSet>,
}

impl DominatingModel {
    pub fn new(branch_sets: Vec<VertexSet>) -> Self {
        DominatingModel { branch_sets }
    }

    pub fn t(&self) -> usize {
        self.branch_sets.len()
    }

    /// 1-based index of the branch set containing v, or 0 if v is in none.
    pub fn index_of(&self, v: usize) -> usize {
        self.branch_sets
            .iter()
            .position(|s| s.contains(v))
            .map_or(0, |i| i + 1)
    }

    /// Union of all branch sets.
    pub fn support(&self) -> VertexSet {
        let mut out = VertexSet::new();
        for s in &self.branch_sets {
            out.union_with(s);
        }
        out
    }
}

impl Serialize for DominatingModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DominatingModel", 2)?;
        st.serialize_field("t", &self.t())?;
        let sets: Vec<Vec<usize>> = self.branch_sets.iter().map(|s| s.to_vec()).collect();
        st.serialize_field("branch_sets", &sets)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DominatingModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            t: usize,
            branch_sets: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.t != raw.branch_sets.len() {
            return Err(D::Error::custom(format!(
                "t = {} does not match {} branch sets",
                raw.t,
                raw.branch_sets.len()
            )));
        }
        Ok(DominatingModel {
            branch_sets: raw
                .branch_sets
                .iter()
                .map(|s| VertexSet::from_slice(s))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelViolation {
    /// Branch set indices are 1-based throughout.
    OutOfRange {
        set: usize,
        vertex: usize,
    },
    EmptyBranchSet {
        set: usize,
    },
    Overlap {
        vertex: usize,
        first_set: usize,
        second_set: usize,
    },
    Disconnected {
        set: usize,
    },
    /// Vertex in T_j with no neighbour in T_i (dominating condition, i < j).
    Undominated {
        set: usize,
        vertex: usize,
        needs_neighbour_in: usize,
    },
    /// No edge at all between T_i and T_j (standard condition, i < j).
    NoAdjacency {
        lower: usize,
        upper: usize,
    },
}

fn structural_violations(g: &Graph, model: &DominatingModel) -> Vec<ModelViolation> {
    let mut out = Vec::new();
    let t = model.t();
    for (i, s) in model.branch_sets.iter().enumerate() {
        if let Some(v) = s.iter().find(|&v| v >= g.n()) {
            out.push(ModelViolation::OutOfRange {
                set: i + 1,
                vertex: v,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, s) in model.branch_sets.iter().enumerate() {
        if s.is_empty() {
            out.push(ModelViolation::EmptyBranchSet { set: i + 1 });
        }
    }
    for i in 0..t {
        for j in (i + 1)..t {
            if model.branch_sets[i].intersects(&model.branch_sets[j]) {
                let v = model.branch_sets[i]
                    .intersection(&model.branch_sets[j])
                    .min()
                    .unwrap();
                out.push(ModelViolation::Overlap {
                    vertex: v,
                    first_set: i + 1,
                    second_set: j + 1,
                });
            }
        }
    }
    for (i, s) in model.branch_sets.iter().enumerate() {
        if !s.is_empty() && !g.is_connected_subset(s) {
            out.push(ModelViolation::Disconnected { set: i + 1 });
        }
    }
    out
}

/// Check the dominating-model conditions. Empty vector means valid.
pub fn verify_dominating_model(g: &Graph, model: &DominatingModel) -> Vec<ModelViolation> {
    let mut out = structural_violations(g, model);
    if out
        .iter()
        .any(|v| matches!(v, ModelViolation::OutOfRange { .. }))
    {
        return out;
    }
    let t = model.t();
    for j in 1..t {
        for v in model.branch_sets[j].iter() {
            for i in 0..j {
                if !g.neighbours(v).intersects(&model.branch_sets[i]) {
                    out.push(ModelViolation::Undominated {
                        set: j + 1,
                        vertex: v,
                        needs_neighbour_in: i + 1,
                    });
                }
            }
        }
    }
    out
}

/// Check the standard-model (minor) conditions. Empty vector means valid.
pub fn verify_standard_model(g: &Graph, model: &DominatingModel) -> Vec<ModelViolation> {
    let mut out = structural_violations(g, model);
    if out
        .iter()
        .any(|v| matches!(v, ModelViolation::OutOfRange { .. }))
    {
        return out;
    }
    let t = model.t();
    for i in 0..t {
        for j in (i + 1)..t {
            let touches = model.branch_sets[j]
                .iter()
                .any(|v| g.neighbours(v).intersects(&model.branch_sets[i]));
            if !touches {
                out.push(ModelViolation::NoAdjacency {
                    lower: i + 1,
                    upper: j + 1,
                });
            }
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("an ordered clique holds at most two vertices, got {0}")]
    TooLarge(usize),
    #[error("clique vertices must be distinct")]
    Duplicate,
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
}

/// An ordered clique (v_1, ..., v_k) with k <= 2, the anchor for model
/// compatibility. Adjacency is checked against a host via `validate`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OrderedClique {
    vertices: Vec<usize>,
}

impl OrderedClique {
    pub fn empty() -> Self {
        OrderedClique {
            vertices: Vec::new(),
        }
    }

    pub fn single(v: usize) -> Self {
        OrderedClique { vertices: vec![v] }
    }

    pub fn pair(v1: usize, v2: usize) -> Result<Self, CliqueError> {
        if v1 == v2 {
            return Err(CliqueError::Duplicate);
        }
        Ok(OrderedClique {
            vertices: vec![v1, v2],
        })
    }

    pub fn from_slice(vs: &[usize]) -> Result<Self, CliqueError> {
        match vs {
            [] => Ok(Self::empty()),
            [v] => Ok(Self::single(*v)),
            [v1, v2] => Self::pair(*v1, *v2),
            _ => Err(CliqueError::TooLarge(vs.len())),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.vertices.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.vertices
    }

    pub fn validate(&self, g: &Graph) -> Result<(), CliqueError> {
        for v in self.iter() {
            if v >= g.n() {
                return Err(CliqueError::OutOfRange(v));
            }
        }
        if self.len() == 2 && !g.has_edge(self.vertices[0], self.vertices[1]) {
            return Err(CliqueError::NotAClique(self.vertices[0], self.vertices[1]));
        }
        Ok(())
    }

    pub fn is_initial_segment_of(&self, other: &OrderedClique) -> bool {
        self.len() <= other.len() && self.vertices == other.vertices[..self.len()]
    }
}

/// Compatibility of a model with an ordered clique L = (v_1, ..., v_k):
/// the branch index of v_i is at most i, and when k = 2 with v_2 in T_2,
/// v_1 must lie in T_1.
pub fn is_l_compatible(model: &DominatingModel, l: &OrderedClique) -> bool {
    let inds: Vec<usize> = l.iter().map(|v| model.index_of(v)).collect();
    for (i, &ind) in inds.iter().enumerate() {
        if ind > i + 1 {
            return false;
        }
    }
    if inds.len() == 2 && inds[1] == 2 && inds[0] != 1 {
        return false;
    }
    true
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("expected a model of order 5, got {0}")]
    WrongOrder(usize),
    #[error("model fails verification: {0:?}")]
    InvalidModel(Vec<ModelViolation>),
    #[error("expected singleton branch sets T_4 and T_5")]
    NotSingletonNormalized,
    #[error("normalisation produced an invalid model")]
    Internal,
}

/// Rebuild a dominating K_5-model so its last two branch sets are single
/// vertices: v is the least vertex of T_5 and w its least neighbour in T_4,
/// giving (T_1, T_2, T_3, {v}, {w}). Models that already end in two
/// singletons are returned unchanged.
pub fn singleton_normalize(
    g: &Graph,
    model: &DominatingModel,
) -> Result<DominatingModel, NormalizeError> {
    if model.t() != 5 {
        return Err(NormalizeError::WrongOrder(model.t()));
    }
    let violations = verify_dominating_model(g, model);
    if !violations.is_empty() {
        return Err(NormalizeError::InvalidModel(violations));
    }
    if model.branch_sets[3].count() == 1 && model.branch_sets[4].count() == 1 {
        return Ok(model.clone());
    }
    let v = model.branch_sets[4].min().unwrap();
    let w = g
        .neighbours(v)
        .intersection(&model.branch_sets[3])
        .min()
        .expect("T_5 is dominated by T_4");
    let out = DominatingModel::new(vec![
        model.branch_sets[0].clone(),
        model.branch_sets[1].clone(),
        model.branch_sets[2].clone(),
        VertexSet::singleton(v),
        VertexSet::singleton(w),
    ]);
    if verify_dominating_model(g, &out).is_empty() {
        Ok(out)
    } else {
        Err(NormalizeError::Internal)
    }
}

/// With T_4 = {v} and T_5 = {w}, shrink T_3 to a shortest path of G[T_3]
/// from a neighbour of v to a neighbour of w. The result is a dominating
/// model in which T_3 is a path and G[T_3 ∪ T_4 ∪ T_5] is an induced cycle.
pub fn induced_cycle_normalize(
    g: &Graph,
    model: &DominatingModel,
) -> Result<DominatingModel, NormalizeError> {
    if model.t() != 5 {
        return Err(NormalizeError::WrongOrder(model.t()));
    }
    let violations = verify_dominating_model(g, model);
    if !violations.is_empty() {
        return Err(NormalizeError::InvalidModel(violations));
    }
    if model.branch_sets[3].count() != 1 || model.branch_sets[4].count() != 1 {
        return Err(NormalizeError::NotSingletonNormalized);
    }
    let v = model.branch_sets[3].min().unwrap();
    let w = model.branch_sets[4].min().unwrap();
    let t3 = &model.branch_sets[2];
    let sources = g.neighbours(v).intersection(t3);
    let targets = g.neighbours(w).intersection(t3);
    let path =
        shortest_set_to_set_path(g, t3, &sources, &targets).ok_or(NormalizeError::Internal)?;
    let out = DominatingModel::new(vec![
        model.branch_sets[0].clone(),
        model.branch_sets[1].clone(),
        VertexSet::from_slice(&path),
        model.branch_sets[3].clone(),
        model.branch_sets[4].clone(),
    ]);
    let mut cycle = out.branch_sets[2].clone();
    cycle.insert(v);
    cycle.insert(w);
    if verify_dominating_model(g, &out).is_empty() && is_induced_cycle(g, &cycle) {
        Ok(out)
    } else {
        Err(NormalizeError::Internal)
    }
}

/// Shortest path inside G[within] from any source to any target, by
/// multi-source BFS with ascending tie-breaks.
fn shortest_set_to_set_path(
    g: &Graph,
    within: &VertexSet,
    sources: &VertexSet,
    targets: &VertexSet,
) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; g.n()];
    let mut seen = VertexSet::new();
    let mut layer: Vec<usize> = sources.iter().collect();
    for &s in &layer {
        seen.insert(s);
    }
    loop {
        if let Some(&hit) = layer.iter().find(|&&v| targets.contains(v)) {
            let mut path = vec![hit];
            let mut cur = hit;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        let mut next = Vec::new();
        for &u in &layer {
            for x in g.neighbours(u).intersection(within).iter() {
                if !seen.contains(x) {
                    seen.insert(x);
                    parent[x] = Some(u);
                    next.push(x);
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        next.sort_unstable();
        layer = next;
    }
}

/// True iff G[set] is a cycle: connected, every vertex of degree exactly 2.
pub(crate) fn is_induced_cycle(g: &Graph, set: &VertexSet) -> bool {
    if set.count() < 3 || !g.is_connected_subset(set) {
        return false;
    }
    set.iter()
        .all(|v| g.neighbours(v).intersection_count(set) == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;
    use crate::graph::Graph;

    fn singleton_model(vs: &[usize]) -> DominatingModel {
        DominatingModel::new(vs.iter().map(|&v| VertexSet::singleton(v)).collect())
    }

    #[test]
    fn index_of_cases() {
        let model = singleton_model(&[0, 1, 2, 3, 4]);
        assert_eq!(model.index_of(2), 3);
        assert_eq!(model.index_of(7), 0);
        // A spanning model never reports 0 for its own vertices.
        assert!((0..5).all(|v| model.index_of(v) >= 1));
    }

    #[test]
    fn k5_singletons_verify() {
        let k5 = constructions::complete(5);
        assert!(verify_dominating_model(&k5, &singleton_model(&[0, 1, 2, 3, 4])).is_empty());
    }

    #[test]
    fn path_singletons_fail_domination() {
        let p4 = constructions::path(4).unwrap();
        let violations = verify_dominating_model(&p4, &singleton_model(&[0, 1, 2, 3]));
        assert!(violations.contains(&ModelViolation::Undominated {
            set: 3,
            vertex: 2,
            needs_neighbour_in: 1
        }));
    }

    #[test]
    fn k5_hat_model_verifies() {
        // Split pair {0, 1}; K_4 on {2, 3, 4, 5}.
        let g = constructions::k5_hat();
        let model = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 1]),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
            VertexSet::singleton(4),
            VertexSet::singleton(5),
        ]);
        assert!(verify_dominating_model(&g, &model).is_empty());
    }

    #[test]
    fn structural_violations_reported() {
        let k5 = constructions::complete(5);
        let overlap = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 1]),
            VertexSet::from_slice(&[1, 2]),
        ]);
        assert!(
            verify_dominating_model(&k5, &overlap).contains(&ModelViolation::Overlap {
                vertex: 1,
                first_set: 1,
                second_set: 2
            })
        );

        let empty = DominatingModel::new(vec![VertexSet::new(), VertexSet::singleton(0)]);
        assert!(verify_dominating_model(&k5, &empty)
            .contains(&ModelViolation::EmptyBranchSet { set: 1 }));

        let p3 = constructions::path(3).unwrap();
        let disconnected = DominatingModel::new(vec![VertexSet::from_slice(&[0, 2])]);
        assert!(verify_dominating_model(&p3, &disconnected)
            .contains(&ModelViolation::Disconnected { set: 1 }));

        let out_of_range = DominatingModel::new(vec![VertexSet::singleton(9)]);
        assert_eq!(
            verify_dominating_model(&k5, &out_of_range),
            vec![ModelViolation::OutOfRange { set: 1, vertex: 9 }]
        );
    }

    #[test]
    fn standard_model_of_k55_minus_matching() {
        let g = constructions::k55_minus_matching();
        let pairs: Vec<VertexSet> = (0..5)
            .map(|i| VertexSet::from_slice(&[i, 5 + (i + 1) % 5]))
            .collect();
        let model = DominatingModel::new(pairs);
        assert!(verify_standard_model(&g, &model).is_empty());
        // It is not a dominating model, though.
        assert!(!verify_dominating_model(&g, &model).is_empty());
    }

    #[test]
    fn dominating_implies_standard() {
        let k5 = constructions::complete(5);
        let model = singleton_model(&[0, 1, 2, 3, 4]);
        assert!(verify_dominating_model(&k5, &model).is_empty());
        assert!(verify_standard_model(&k5, &model).is_empty());
    }

    #[test]
    fn standard_model_needs_adjacency() {
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let model = singleton_model(&[0, 2]);
        assert_eq!(
            verify_standard_model(&two_k2, &model),
            vec![ModelViolation::NoAdjacency { lower: 1, upper: 2 }]
        );
    }

    #[test]
    fn compatibility_clauses() {
        let k5 = constructions::complete(5);
        let model = DominatingModel::new(vec![
            VertexSet::singleton(0),
            VertexSet::singleton(1),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
            VertexSet::singleton(4),
        ]);
        let l = OrderedClique::pair(0, 1).unwrap();
        l.validate(&k5).unwrap();
        // ind(v1) = 1, ind(v2) = 2.
        assert!(is_l_compatible(&model, &l));
        // ind(v1) = 0, ind(v2) = 2 violates the coupling clause.
        let l2 = OrderedClique::pair(5, 1).unwrap();
        assert!(!is_l_compatible(&model, &l2));
        // An untouched clique is always compatible.
        let g7 = constructions::complete(7);
        let l3 = OrderedClique::pair(5, 6).unwrap();
        l3.validate(&g7).unwrap();
        assert!(is_l_compatible(&model, &l3));
        // ind(v1) = 2 alone is already incompatible.
        let l4 = OrderedClique::pair(1, 5).unwrap();
        assert!(!is_l_compatible(&model, &l4));
    }

    #[test]
    fn clique_validation() {
        let p3 = constructions::path(3).unwrap();
        assert_eq!(OrderedClique::pair(0, 0), Err(CliqueError::Duplicate));
        assert_eq!(
            OrderedClique::from_slice(&[0, 1, 2]),
            Err(CliqueError::TooLarge(3))
        );
        let l = OrderedClique::pair(0, 2).unwrap();
        assert_eq!(l.validate(&p3), Err(CliqueError::NotAClique(0, 2)));
        let l = OrderedClique::single(5);
        assert_eq!(l.validate(&p3), Err(CliqueError::OutOfRange(5)));
        assert!(OrderedClique::single(0).is_initial_segment_of(&OrderedClique::pair(0, 1).unwrap()));
        assert!(OrderedClique::empty().is_initial_segment_of(&OrderedClique::single(3)));
        assert!(
            !OrderedClique::single(1).is_initial_segment_of(&OrderedClique::pair(0, 1).unwrap())
        );
    }

    #[test]
    fn singleton_normalize_idempotent_and_correct() {
        let g = constructions::k5_hat();
        let model = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 1]),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
            VertexSet::singleton(4),
            VertexSet::singleton(5),
        ]);
        // T_4, T_5 already singletons: unchanged.
        assert_eq!(singleton_normalize(&g, &model).unwrap(), model);

        let k7 = constructions::complete(7);
        let big = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 1]),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
            VertexSet::from_slice(&[4, 5]),
            VertexSet::singleton(6),
        ]);
        assert!(verify_dominating_model(&k7, &big).is_empty());
        let norm = singleton_normalize(&k7, &big).unwrap();
        assert!(verify_dominating_model(&k7, &norm).is_empty());
        // v = min T_5 = 6, w = min neighbour of 6 in T_4 = 4.
        assert_eq!(norm.branch_sets[3].to_vec(), vec![6]);
        assert_eq!(norm.branch_sets[4].to_vec(), vec![4]);
    }

    #[test]
    fn induced_cycle_normalize_shrinks_t3() {
        // C5 join K4: the four apex vertices fill T_1, T_2, T_4, T_5 and the
        // whole cycle sits in T_3.
        let g = constructions::join(
            &constructions::cycle(5).unwrap(),
            &constructions::complete(4),
        );
        let model = DominatingModel::new(vec![
            VertexSet::singleton(5),
            VertexSet::singleton(6),
            VertexSet::from_slice(&[0, 1, 2, 3, 4]),
            VertexSet::singleton(7),
            VertexSet::singleton(8),
        ]);
        assert!(verify_dominating_model(&g, &model).is_empty());
        let norm = induced_cycle_normalize(&g, &model).unwrap();
        assert!(verify_dominating_model(&g, &norm).is_empty());
        // Both 7 and 8 see every cycle vertex, so T_3 shrinks to one vertex
        // and the cycle closes into a triangle.
        assert_eq!(norm.branch_sets[2].to_vec(), vec![0]);
        let mut cyc = norm.branch_sets[2].clone();
        cyc.insert(7);
        cyc.insert(8);
        assert!(is_induced_cycle(&g, &cyc));
    }

    #[test]
    fn induced_cycle_normalize_keeps_a_needed_path() {
        // T_4 and T_5 are cycle vertices: the shortest route between their
        // cycle neighbourhoods is the remaining three-vertex path, and the
        // induced cycle is the original C5.
        let join = constructions::join(
            &constructions::cycle(5).unwrap(),
            &constructions::complete(2),
        );
        let model = DominatingModel::new(vec![
            VertexSet::singleton(5),
            VertexSet::singleton(6),
            VertexSet::from_slice(&[0, 1, 2]),
            VertexSet::singleton(3),
            VertexSet::singleton(4),
        ]);
        assert!(verify_dominating_model(&join, &model).is_empty());
        let norm = induced_cycle_normalize(&join, &model).unwrap();
        assert_eq!(norm.branch_sets[2].to_vec(), vec![0, 1, 2]);
        let cyc: VertexSet = (0..5).collect();
        assert!(is_induced_cycle(&join, &cyc));
    }

    #[test]
    fn induced_cycle_normalize_requires_singletons() {
        let k7 = constructions::complete(7);
        let model = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 1]),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
            VertexSet::from_slice(&[4, 5]),
            VertexSet::singleton(6),
        ]);
        assert_eq!(
            induced_cycle_normalize(&k7, &model),
            Err(NormalizeError::NotSingletonNormalized)
        );
    }

    #[test]
    fn model_json_round_trip() {
        let model = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 2]),
            VertexSet::singleton(1),
        ]);
        let json = serde_json::to_string(&model).unwrap();
        assert_eq!(json, r#"{"t":2,"branch_sets":[[0,2],[1]]}"#);
        let back: DominatingModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, model);
        assert!(serde_json::from_str::<DominatingModel>(r#"{"t":3,"branch_sets":[[0]]}"#).is_err());
    }
}
