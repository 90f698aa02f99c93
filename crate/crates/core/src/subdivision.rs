//! Subdivision (topological minor) search and the constructive extraction of
//! a K_5 or K_5-hat subdivision from a dominating K_5-model.

use crate::bitset::VertexSet;
use crate::canon::is_isomorphic;
use crate::constructions::{complete, k5_hat};
use crate::graph::Graph;
use crate::models::{verify_dominating_model, DominatingModel, ModelViolation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// An embedding of a subdivision of `pattern` in a host graph: an injective
/// map of pattern vertices onto branch vertices, and for each pattern edge a
/// host path between the mapped endpoints. Paths include both endpoints,
/// follow the sorted pattern edge order, and are internally disjoint from
/// each other and from all branch vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionEmbedding {
    pub pattern: Graph,
    pub branch_map: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

/// Pattern edges in sorted order; paths[k] realises pattern_edges(...)[k].
pub fn pattern_edges(pattern: &Graph) -> Vec<(usize, usize)> {
    pattern.edges()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubdivisionSearchError {
    #[error("host graph has {n} vertices, exceeding the exhaustive-search cap {cap}")]
    HostTooLarge { n: usize, cap: usize },
    #[error("pattern has {n} vertices, exceeding the cap {cap}")]
    PatternTooLarge { n: usize, cap: usize },
}

pub const HOST_CAP: usize = 20;
pub const PATTERN_CAP: usize = 10;

/// Exhaustive subdivision search: an embedding of a subdivision of `h` in
/// `g`, or None. Branch vertices are assigned in decreasing pattern-degree
/// order with degree feasibility filtering; paths are tried shortest-first,
/// direct edges before longer routes, so unsubdivided edges are preferred
/// when they exist.
pub fn find_subdivision(
    g: &Graph,
    h: &Graph,
) -> Result<Option<SubdivisionEmbedding>, SubdivisionSearchError> {
    if g.n() > HOST_CAP {
        return Err(SubdivisionSearchError::HostTooLarge {
            n: g.n(),
            cap: HOST_CAP,
        });
    }
    if h.n() > PATTERN_CAP {
        return Err(SubdivisionSearchError::PatternTooLarge {
            n: h.n(),
            cap: PATTERN_CAP,
        });
    }
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(None);
    }
    let mut order: Vec<usize> = h.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    let mut searcher = Searcher {
        g,
        h,
        order,
        assigned: vec![usize::MAX; h.n()],
        used: VertexSet::new(),
        edges: h.edges(),
        paths: Vec::new(),
    };
    Ok(searcher.assign(0))
}

struct Searcher<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    /// pattern vertex -> host vertex.
    assigned: Vec<usize>,
    used: VertexSet,
    edges: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
}

impl Searcher<'_> {
    fn assign(&mut self, idx: usize) -> Option<SubdivisionEmbedding> {
        if idx == self.order.len() {
            let mut internal_used = VertexSet::new();
            return self.route(0, &mut internal_used);
        }
        let pv = self.order[idx];
        for gv in self.g.vertices() {
            if self.used.contains(gv) || self.g.degree(gv) < self.h.degree(pv) {
                continue;
            }
            self.assigned[pv] = gv;
            self.used.insert(gv);
            if let Some(found) = self.assign(idx + 1) {
                return Some(found);
            }
            self.used.remove(gv);
            self.assigned[pv] = usize::MAX;
        }
        None
    }

    fn route(
        &mut self,
        edge_idx: usize,
        internal_used: &mut VertexSet,
    ) -> Option<SubdivisionEmbedding> {
        if edge_idx == self.edges.len() {
            return Some(SubdivisionEmbedding {
                pattern: self.h.clone(),
                branch_map: self.assigned.clone(),
                paths: self.paths.clone(),
            });
        }
        let (pu, pv) = self.edges[edge_idx];
        let (s, t) = (self.assigned[pu], self.assigned[pv]);
        let mut blocked = self.used.union(internal_used);
        blocked.remove(s);
        blocked.remove(t);

        // Direct edge first.
        if self.g.has_edge(s, t) {
            self.paths.push(vec![s, t]);
            if let Some(found) = self.route(edge_idx + 1, internal_used) {
                return Some(found);
            }
            self.paths.pop();
        }
        // Longer paths by depth-first enumeration, ascending at each step.
        let mut path = vec![s];
        let mut visited = blocked.clone();
        visited.insert(s);
        visited.insert(t);
        self.extend_path(edge_idx, t, &mut path, &mut visited, internal_used)
    }

    fn extend_path(
        &mut self,
        edge_idx: usize,
        target: usize,
        path: &mut Vec<usize>,
        visited: &mut VertexSet,
        internal_used: &mut VertexSet,
    ) -> Option<SubdivisionEmbedding> {
        let cur = *path.last().unwrap();
        for next in self.g.neighbours(cur).iter() {
            if next == target {
                if path.len() >= 2 {
                    let mut full = path.clone();
                    full.push(target);
                    for &x in &full[1..full.len() - 1] {
                        internal_used.insert(x);
                    }
                    self.paths.push(full.clone());
                    if let Some(found) = self.route(edge_idx + 1, internal_used) {
                        return Some(found);
                    }
                    self.paths.pop();
                    for &x in &full[1..full.len() - 1] {
                        internal_used.remove(x);
                    }
                }
                continue;
            }
            if visited.contains(next) {
                continue;
            }
            path.push(next);
            visited.insert(next);
            if let Some(found) = self.extend_path(edge_idx, target, path, visited, internal_used) {
                return Some(found);
            }
            visited.remove(next);
            path.pop();
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubdivisionViolation {
    BranchOutOfRange {
        pattern_vertex: usize,
        host_vertex: usize,
    },
    BranchNotInjective {
        host_vertex: usize,
    },
    BranchMapWrongSize {
        expected: usize,
        got: usize,
    },
    PathCountMismatch {
        expected: usize,
        got: usize,
    },
    BadEndpoints {
        edge: usize,
    },
    NotAPath {
        edge: usize,
    },
    PathVertexOutOfRange {
        edge: usize,
        vertex: usize,
    },
    MissingEdge {
        edge: usize,
        u: usize,
        v: usize,
    },
    InternalHitsBranch {
        edge: usize,
        vertex: usize,
    },
    SharedInternal {
        first_edge: usize,
        second_edge: usize,
        vertex: usize,
    },
}

/// Check an embedding against its host. Empty vector means valid.
pub fn verify_subdivision(g: &Graph, emb: &SubdivisionEmbedding) -> Vec<SubdivisionViolation> {
    let mut out = Vec::new();
    let hn = emb.pattern.n();
    if emb.branch_map.len() != hn {
        out.push(SubdivisionViolation::BranchMapWrongSize {
            expected: hn,
            got: emb.branch_map.len(),
        });
        return out;
    }
    for (pv, &gv) in emb.branch_map.iter().enumerate() {
        if gv >= g.n() {
            out.push(SubdivisionViolation::BranchOutOfRange {
                pattern_vertex: pv,
                host_vertex: gv,
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut seen = VertexSet::new();
    for &gv in &emb.branch_map {
        if seen.contains(gv) {
            out.push(SubdivisionViolation::BranchNotInjective { host_vertex: gv });
        }
        seen.insert(gv);
    }
    let edges = pattern_edges(&emb.pattern);
    if emb.paths.len() != edges.len() {
        out.push(SubdivisionViolation::PathCountMismatch {
            expected: edges.len(),
            got: emb.paths.len(),
        });
        return out;
    }
    let branch_set: VertexSet = emb.branch_map.iter().copied().collect();
    let mut internal_owner: Vec<(usize, usize)> = Vec::new(); // (vertex, edge)
    for (k, ((pu, pv), path)) in edges.iter().zip(emb.paths.iter()).enumerate() {
        let (bu, bv) = (emb.branch_map[*pu], emb.branch_map[*pv]);
        if path.len() < 2 {
            out.push(SubdivisionViolation::NotAPath { edge: k });
            continue;
        }
        let (first, last) = (path[0], *path.last().unwrap());
        if !(first == bu && last == bv || first == bv && last == bu) {
            out.push(SubdivisionViolation::BadEndpoints { edge: k });
        }
        let mut in_path = VertexSet::new();
        for &x in path {
            if x >= g.n() {
                out.push(SubdivisionViolation::PathVertexOutOfRange { edge: k, vertex: x });
                continue;
            }
            if in_path.contains(x) {
                out.push(SubdivisionViolation::NotAPath { edge: k });
            }
            in_path.insert(x);
        }
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                out.push(SubdivisionViolation::MissingEdge {
                    edge: k,
                    u: w[0],
                    v: w[1],
                });
            }
        }
        for &x in &path[1..path.len() - 1] {
            if branch_set.contains(x) {
                out.push(SubdivisionViolation::InternalHitsBranch { edge: k, vertex: x });
            }
            if let Some(&(_, other)) = internal_owner.iter().find(|&&(v, _)| v == x) {
                out.push(SubdivisionViolation::SharedInternal {
                    first_edge: other,
                    second_edge: k,
                    vertex: x,
                });
            } else {
                internal_owner.push((x, k));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    K5,
    K5Hat,
}

impl PatternKind {
    pub fn name(&self) -> &'static str {
        match self {
            PatternKind::K5 => "K5",
            PatternKind::K5Hat => "K5hat",
        }
    }

    pub fn from_name(name: &str) -> Option<PatternKind> {
        match name {
            "K5" => Some(PatternKind::K5),
            "K5hat" => Some(PatternKind::K5Hat),
            _ => None,
        }
    }

    pub fn graph(&self) -> Graph {
        match self {
            PatternKind::K5 => complete(5),
            PatternKind::K5Hat => k5_hat(),
        }
    }
}

/// Classify an embedding's pattern graph, if it is one of the two shapes the
/// extractor produces.
pub fn pattern_kind(pattern: &Graph) -> Option<PatternKind> {
    [PatternKind::K5, PatternKind::K5Hat]
        .into_iter()
        .find(|&kind| is_isomorphic(pattern, &kind.graph()).unwrap_or(false))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtractError {
    #[error("expected a model of order 5, got {0}")]
    WrongOrder(usize),
    #[error("model fails verification: {0:?}")]
    InvalidModel(Vec<ModelViolation>),
    #[error("extraction failed internally: {0}")]
    Internal(&'static str),
    #[error("host too large for the inner subdivision search: {0}")]
    Search(#[from] SubdivisionSearchError),
}

/// The extractor's result: the embedding plus the edge length of the path P
/// joining the two tree attachment points. Zero means the K_5 shape; any
/// positive length means K_5-hat, with P realising the split-pair edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub embedding: SubdivisionEmbedding,
    pub connector_path_len: usize,
}

/// Turn a dominating K_5-model into an explicit subdivision of K_5 or
/// K_5-hat.
///
/// A K_4-subdivision S is found inside G[T_2 ∪ ... ∪ T_5] (one exists: those
/// sets form a dominating K_4-model there). Each branch vertex b_i of S has
/// a neighbour v_i in T_1; inside a spanning tree of G[T_1] the smallest
/// subtree T containing the v_i has all leaves among them. T decomposes into
/// a connector path P and four limb paths; single attachment point (P of
/// length zero) yields a K_5 subdivision with that point as the fifth branch
/// vertex, and a longer P yields a K_5-hat subdivision whose split pair is
/// P's endpoints. Degenerate attachment patterns are handled by trying every
/// decomposition shape, coincident endpoints first.
pub fn extract_k5_or_k5hat(g: &Graph, model: &DominatingModel) -> Result<Extraction, ExtractError> {
    if model.t() != 5 {
        return Err(ExtractError::WrongOrder(model.t()));
    }
    let violations = verify_dominating_model(g, model);
    if !violations.is_empty() {
        return Err(ExtractError::InvalidModel(violations));
    }

    // Step 1: K4-subdivision inside T_2 ∪ ... ∪ T_5.
    let mut rest = VertexSet::new();
    for s in &model.branch_sets[1..] {
        rest.union_with(s);
    }
    let sub = g.induced_subgraph(&rest).expect("branch sets are in range");
    let inner = find_subdivision(&sub.graph, &complete(4))?.ok_or(ExtractError::Internal(
        "a dominating K4-model guarantees a K4-subdivision",
    ))?;
    let b: Vec<usize> = inner
        .branch_map
        .iter()
        .map(|&x| sub.new_to_old[x])
        .collect();
    let inner_paths: Vec<Vec<usize>> = inner
        .paths
        .iter()
        .map(|p| p.iter().map(|&x| sub.new_to_old[x]).collect())
        .collect();

    // Step 2: attachment vertices in T_1.
    let t1 = &model.branch_sets[0];
    let v: Vec<usize> = b
        .iter()
        .map(|&bi| {
            g.neighbours(bi)
                .intersection(t1)
                .min()
                .expect("domination provides a T_1 neighbour")
        })
        .collect();

    // Step 3: smallest subtree of a spanning tree of G[T_1] containing v.
    let tree = SpanningTree::new(g, t1);
    let subtree = tree.smallest_subtree_containing(&v);
    let targets: VertexSet = v.iter().copied().collect();
    if subtree.leaves().iter().any(|leaf| !targets.contains(*leaf)) {
        return Err(ExtractError::Internal(
            "subtree leaf outside the attachment set",
        ));
    }

    // Step 4: decompose and assemble, coincident connector endpoints first.
    let nodes: Vec<usize> = subtree.vertices.to_vec();
    for &c in &nodes {
        if let Some(emb) = try_assemble(g, &subtree, &b, &v, &inner_paths, c, c, &[0, 1], &[2, 3]) {
            return Ok(Extraction {
                embedding: emb,
                connector_path_len: 0,
            });
        }
    }
    for &c1 in &nodes {
        for &c2 in &nodes {
            if c1 == c2 {
                continue;
            }
            for (left, right) in [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])] {
                for (a, bb) in [(left, right), (right, left)] {
                    if let Some(emb) =
                        try_assemble(g, &subtree, &b, &v, &inner_paths, c1, c2, &a, &bb)
                    {
                        let len = subtree.path(c1, c2).len() - 1;
                        return Ok(Extraction {
                            embedding: emb,
                            connector_path_len: len,
                        });
                    }
                }
            }
        }
    }
    Err(ExtractError::Internal(
        "no valid subtree decomposition found",
    ))
}

/// Build the candidate embedding with connector endpoints c1, c2 and the
/// given split of the four attachments, and keep it only if it verifies.
#[allow(clippy::too_many_arguments)]
fn try_assemble(
    g: &Graph,
    subtree: &Subtree,
    b: &[usize],
    v: &[usize],
    inner_paths: &[Vec<usize>],
    c1: usize,
    c2: usize,
    left: &[usize; 2],
    right: &[usize; 2],
) -> Option<SubdivisionEmbedding> {
    let limb = |c: usize, i: usize| -> Vec<usize> {
        // Pattern path from the connector endpoint down to the branch vertex.
        let mut p = subtree.path(c, v[i]);
        p.push(b[i]);
        p
    };
    let emb = if c1 == c2 {
        // K5: pattern vertices 0..4 are b[0..4], vertex 4 is the hub c1.
        // K4 edges between 0..4 come from the inner subdivision; edges
        // (i, 4) run from b[i] up the limb to the hub.
        let pattern = complete(5);
        let mut paths = Vec::with_capacity(10);
        for &(pu, pv) in pattern_edges(&pattern).iter() {
            if pv < 4 {
                paths.push(oriented(
                    &inner_paths[inner_edge_index(pu, pv)],
                    b[pu],
                    b[pv],
                ));
            } else {
                let mut p = limb(c1, pu);
                p.reverse();
                paths.push(p);
            }
        }
        SubdivisionEmbedding {
            pattern,
            branch_map: vec![b[0], b[1], b[2], b[3], c1],
            paths,
        }
    } else {
        // K5-hat: pattern 0 and 1 are the split pair (c1, c2); 0 is adjacent
        // to pattern 2, 3 and 1 to pattern 4, 5; the K4 lives on 2..6.
        let pattern = k5_hat();
        let branch_map = vec![c1, c2, b[left[0]], b[left[1]], b[right[0]], b[right[1]]];
        let attach = |pv: usize| -> usize {
            match pv {
                2 => left[0],
                3 => left[1],
                4 => right[0],
                _ => right[1],
            }
        };
        let mut paths = Vec::with_capacity(11);
        for &(pu, pv) in pattern_edges(&pattern).iter() {
            let path = match (pu, pv) {
                (0, 1) => subtree.path(c1, c2),
                (0, x) => limb(c1, attach(x)),
                (1, x) => limb(c2, attach(x)),
                (a, bb) => oriented(
                    &inner_paths[inner_edge_index(attach(a), attach(bb))],
                    b[attach(a)],
                    b[attach(bb)],
                ),
            };
            paths.push(path);
        }
        SubdivisionEmbedding {
            pattern,
            branch_map,
            paths,
        }
    };
    if verify_subdivision(g, &emb).is_empty() {
        Some(emb)
    } else {
        None
    }
}

/// Index of the inner K4 path for branch indices i < j (K4 edges sorted).
fn inner_edge_index(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => unreachable!("K4 has vertices 0..4"),
    }
}

fn oriented(path: &[usize], from: usize, to: usize) -> Vec<usize> {
    if path[0] == from {
        path.to_vec()
    } else {
        debug_assert_eq!(path[0], to);
        debug_assert_eq!(*path.last().unwrap(), from);
        let mut p = path.to_vec();
        p.reverse();
        p
    }
}

/// BFS spanning tree of G[within], rooted at the smallest member.
struct SpanningTree {
    parent: Vec<Option<usize>>,
}

impl SpanningTree {
    fn new(g: &Graph, within: &VertexSet) -> SpanningTree {
        let root = within.min().expect("T_1 is non-empty");
        let mut parent = vec![None; g.n()];
        let mut seen = VertexSet::singleton(root);
        let mut layer = vec![root];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &a in &layer {
                for x in g.neighbours(a).intersection(within).iter() {
                    if !seen.contains(x) {
                        seen.insert(x);
                        parent[x] = Some(a);
                        next.push(x);
                    }
                }
            }
            next.sort_unstable();
            layer = next;
        }
        SpanningTree { parent }
    }

    fn smallest_subtree_containing(&self, targets: &[usize]) -> Subtree {
        // Union of root paths, then prune leaves outside the target set.
        let mut keep = VertexSet::new();
        for &t in targets {
            let mut cur = t;
            keep.insert(cur);
            while let Some(p) = self.parent[cur] {
                if keep.contains(p) {
                    break;
                }
                keep.insert(p);
                cur = p;
            }
        }
        let mut adj: BTreeMap<usize, VertexSet> = BTreeMap::new();
        for x in keep.iter() {
            adj.entry(x).or_default();
            if let Some(p) = self.parent[x] {
                if keep.contains(p) {
                    adj.entry(x).or_default().insert(p);
                    adj.entry(p).or_default().insert(x);
                }
            }
        }
        let target_set: VertexSet = targets.iter().copied().collect();
        loop {
            let prune: Vec<usize> = adj
                .iter()
                .filter(|(v, nb)| nb.count() <= 1 && !target_set.contains(**v))
                .map(|(&v, _)| v)
                .collect();
            if prune.is_empty() {
                break;
            }
            for v in prune {
                let nbs = adj.remove(&v).unwrap();
                for u in nbs.iter() {
                    if let Some(s) = adj.get_mut(&u) {
                        s.remove(v);
                    }
                }
            }
        }
        let vertices: VertexSet = adj.keys().copied().collect();
        Subtree { adj, vertices }
    }
}

struct Subtree {
    adj: BTreeMap<usize, VertexSet>,
    vertices: VertexSet,
}

impl Subtree {
    fn leaves(&self) -> Vec<usize> {
        self.adj
            .iter()
            .filter(|(_, nb)| nb.count() <= 1)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Unique tree path between two members, inclusive.
    fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut seen = VertexSet::singleton(from);
        let mut layer = vec![from];
        while !layer.is_empty() && !seen.contains(to) {
            let mut next = Vec::new();
            for &a in &layer {
                for x in self.adj[&a].iter() {
                    if !seen.contains(x) {
                        seen.insert(x);
                        parent.insert(x, a);
                        next.push(x);
                    }
                }
            }
            layer = next;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern is neither K5 nor K5-hat")]
    WrongPattern,
}

/// Whether two incident pattern edges are realised by single host edges.
/// For K_5-hat only edges inside its unique K_4 (the four degree-4 pattern
/// vertices) count.
pub fn check_unsubdivided_incident_edges(emb: &SubdivisionEmbedding) -> Result<bool, PatternError> {
    let kind = pattern_kind(&emb.pattern).ok_or(PatternError::WrongPattern)?;
    let allowed: VertexSet = match kind {
        PatternKind::K5 => emb.pattern.vertices().collect(),
        PatternKind::K5Hat => emb
            .pattern
            .vertices()
            .filter(|&v| emb.pattern.degree(v) == 4)
            .collect(),
    };
    let edges = pattern_edges(&emb.pattern);
    for v in allowed.iter() {
        let unsubdivided = edges
            .iter()
            .zip(emb.paths.iter())
            .filter(|((a, b), path)| {
                (*a == v || *b == v)
                    && allowed.contains(*a)
                    && allowed.contains(*b)
                    && path.len() == 2
            })
            .count();
        if unsubdivided >= 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// JSON document for subdivision embeddings: the pattern by name, the branch
/// map keyed by pattern vertex, and the per-edge paths in sorted edge order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub pattern: String,
    pub branch_map: BTreeMap<String, usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbeddingDocError {
    #[error("unknown pattern name {0:?}")]
    UnknownPattern(String),
    #[error("pattern graph is neither K5 nor K5-hat")]
    UnsupportedPattern,
    #[error("branch map key {0:?} is not a vertex index")]
    BadKey(String),
    #[error("branch map must cover pattern vertices 0..{expected}")]
    IncompleteMap { expected: usize },
}

impl EmbeddingDoc {
    pub fn from_embedding(emb: &SubdivisionEmbedding) -> Result<EmbeddingDoc, EmbeddingDocError> {
        let kind = pattern_kind(&emb.pattern).ok_or(EmbeddingDocError::UnsupportedPattern)?;
        let branch_map = emb
            .branch_map
            .iter()
            .enumerate()
            .map(|(pv, &gv)| (pv.to_string(), gv))
            .collect();
        Ok(EmbeddingDoc {
            pattern: kind.name().to_string(),
            branch_map,
            paths: emb.paths.clone(),
        })
    }

    pub fn to_embedding(&self) -> Result<SubdivisionEmbedding, EmbeddingDocError> {
        let kind = PatternKind::from_name(&self.pattern)
            .ok_or_else(|| EmbeddingDocError::UnknownPattern(self.pattern.clone()))?;
        let pattern = kind.graph();
        let mut branch_map = vec![usize::MAX; pattern.n()];
        for (key, &gv) in &self.branch_map {
            let pv: usize = key
                .parse()
                .map_err(|_| EmbeddingDocError::BadKey(key.clone()))?;
            if pv >= pattern.n() {
                return Err(EmbeddingDocError::BadKey(key.clone()));
            }
            branch_map[pv] = gv;
        }
        if branch_map.contains(&usize::MAX) {
            return Err(EmbeddingDocError::IncompleteMap {
                expected: pattern.n(),
            });
        }
        Ok(SubdivisionEmbedding {
            pattern,
            branch_map,
            paths: self.paths.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::VertexSet;
    use crate::constructions;
    use crate::models::{find_dominating_model, OrderedClique, SearchMode};

    #[test]
    fn k5_in_k6_uses_single_edges() {
        let k6 = constructions::complete(6);
        let emb = find_subdivision(&k6, &complete(5))
            .unwrap()
            .expect("K5 sits inside K6");
        assert!(verify_subdivision(&k6, &emb).is_empty());
        assert!(emb.paths.iter().all(|p| p.len() == 2));
        assert_eq!(check_unsubdivided_incident_edges(&emb), Ok(true));
    }

    #[test]
    fn petersen_has_no_k5hat_subdivision() {
        // Four branch vertices would need degree 4; the Petersen graph is cubic.
        let p = constructions::petersen();
        assert!(find_subdivision(&p, &k5_hat()).unwrap().is_none());
        assert!(find_subdivision(&p, &complete(5)).unwrap().is_none());
    }

    #[test]
    fn c5_join_k2_contains_a_k5_subdivision() {
        let g = constructions::join(
            &constructions::cycle(5).unwrap(),
            &constructions::complete(2),
        );
        let emb = find_subdivision(&g, &complete(5))
            .unwrap()
            .expect("subdivision exists");
        assert!(verify_subdivision(&g, &emb).is_empty());
    }

    #[test]
    fn verify_catches_tampering() {
        let k6 = constructions::complete(6);
        let mut emb = find_subdivision(&k6, &complete(5)).unwrap().unwrap();
        // Two paths sharing an internal vertex.
        emb.paths[0] = vec![emb.paths[0][0], 5, emb.paths[0][1]];
        emb.paths[1] = vec![emb.paths[1][0], 5, emb.paths[1][1]];
        let violations = verify_subdivision(&k6, &emb);
        assert!(violations
            .iter()
            .any(|v| matches!(v, SubdivisionViolation::SharedInternal { vertex: 5, .. })));
    }

    #[test]
    fn extract_from_k6_gives_k5() {
        let k6 = constructions::complete(6);
        let model = DominatingModel::new((0..5).map(VertexSet::singleton).collect());
        let ext = extract_k5_or_k5hat(&k6, &model).unwrap();
        assert_eq!(ext.connector_path_len, 0);
        assert_eq!(pattern_kind(&ext.embedding.pattern), Some(PatternKind::K5));
        assert!(verify_subdivision(&k6, &ext.embedding).is_empty());
    }

    #[test]
    fn extract_from_k5hat_must_use_both_split_vertices() {
        let g = k5_hat();
        let model = DominatingModel::new(vec![
            VertexSet::from_slice(&[0, 1]),
            VertexSet::singleton(2),
            VertexSet::singleton(3),
            VertexSet::singleton(4),
            VertexSet::singleton(5),
        ]);
        let ext = extract_k5_or_k5hat(&g, &model).unwrap();
        assert_eq!(
            pattern_kind(&ext.embedding.pattern),
            Some(PatternKind::K5Hat)
        );
        assert_eq!(ext.connector_path_len, 1);
        assert!(verify_subdivision(&g, &ext.embedding).is_empty());
    }

    #[test]
    fn extract_respects_model_order() {
        let k6 = constructions::complete(6);
        let model = DominatingModel::new((0..4).map(VertexSet::singleton).collect());
        assert_eq!(
            extract_k5_or_k5hat(&k6, &model),
            Err(ExtractError::WrongOrder(4))
        );
    }

    #[test]
    fn extraction_from_found_model() {
        let g = constructions::join(
            &constructions::cycle(5).unwrap(),
            &constructions::complete(2),
        );
        let model = find_dominating_model(&g, 5, &OrderedClique::empty(), SearchMode::General)
            .unwrap()
            .unwrap();
        let ext = extract_k5_or_k5hat(&g, &model).unwrap();
        assert!(verify_subdivision(&g, &ext.embedding).is_empty());
        let kind = pattern_kind(&ext.embedding.pattern).unwrap();
        assert_eq!(kind == PatternKind::K5, ext.connector_path_len == 0);
    }

    #[test]
    fn unsubdivided_check_negative_case() {
        // The 1-subdivision of K5 contains a K5 subdivision with every edge
        // subdivided exactly once.
        let host = constructions::one_subdivision(&complete(5));
        let base = complete(5);
        let mut paths = Vec::new();
        for (k, (u, v)) in base.edges().iter().enumerate() {
            paths.push(vec![*u, 5 + k, *v]);
        }
        let emb = SubdivisionEmbedding {
            pattern: base,
            branch_map: vec![0, 1, 2, 3, 4],
            paths,
        };
        assert!(verify_subdivision(&host, &emb).is_empty());
        assert_eq!(check_unsubdivided_incident_edges(&emb), Ok(false));
    }

    #[test]
    fn embedding_doc_round_trip() {
        let k6 = constructions::complete(6);
        let emb = find_subdivision(&k6, &complete(5)).unwrap().unwrap();
        let doc = EmbeddingDoc::from_embedding(&emb).unwrap();
        assert_eq!(doc.pattern, "K5");
        let back = doc.to_embedding().unwrap();
        assert_eq!(back, emb);
        let json = serde_json::to_string(&doc).unwrap();
        let parsed: EmbeddingDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_embedding().unwrap(), emb);
    }
}
