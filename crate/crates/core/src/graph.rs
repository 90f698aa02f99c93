//! Immutable simple undirected graphs with dense 0-based vertex indices.
//!
//! Every transformation returns a fresh graph plus a witness describing how
//! old vertices map to new ones, so callers can carry structures (models,
//! colourings) back across the transformation.

use crate::bitset::VertexSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeNotInGraph(usize, usize),
    #[error("graph on {n} vertices exceeds the cap of {cap} for this operation")]
    SizeCapExceeded { n: usize, cap: usize },
}

/// Simple undirected graph. Vertices are 0..n; adjacency is symmetric and
/// loop-free by construction. Optional labels are decoration only and do not
/// take part in equality or hashing.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![VertexSet::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            n,
            adj,
            labels: None,
        })
    }

    /// Adjacency rows must already be symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Graph {
        let n = adj.len();
        debug_assert!((0..n).all(|v| !adj[v].contains(v)));
        debug_assert!((0..n).all(|v| adj[v].iter().all(|u| u < n && adj[u].contains(v))));
        Graph {
            n,
            adj,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count()).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    fn check_subset(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.iter().find(|&v| v >= self.n) {
            Some(v) => Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            }),
            None => Ok(()),
        }
    }

    /// Connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in 0..self.n {
            if seen.contains(v) {
                continue;
            }
            let comp = self.reach(v, &self.vertex_set());
            seen.union_with(&comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within` (start must be a member).
    fn reach(&self, start: usize, within: &VertexSet) -> VertexSet {
        debug_assert!(within.contains(start));
        let mut comp = VertexSet::singleton(start);
        let mut frontier = VertexSet::singleton(start);
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                next.union_with(&self.adj[v].intersection(within));
            }
            frontier = next.difference(&comp);
            comp.union_with(&frontier);
        }
        comp
    }

    /// True iff S is non-empty and G[S] is connected.
    pub fn is_connected_subset(&self, s: &VertexSet) -> bool {
        match s.min() {
            None => false,
            Some(start) => {
                if s.iter().any(|v| v >= self.n) {
                    return false;
                }
                self.reach(start, s) == *s
            }
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// The subgraph induced by S, with a map between old and new indices.
    /// New indices follow the ascending order of S.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph, GraphError> {
        self.check_subset(s)?;
        let new_to_old: Vec<usize> = s.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let mut adj = vec![VertexSet::new(); new_to_old.len()];
        for (new, &old) in new_to_old.iter().enumerate() {
            for w in self.adj[old].intersection(s).iter() {
                adj[new].insert(old_to_new[w].unwrap());
            }
        }
        Ok(InducedSubgraph {
            graph: Graph::from_adjacency(adj),
            old_to_new,
            new_to_old,
        })
    }

    /// Contract every edge in F. Each connected component of (V, F) becomes a
    /// single vertex of the result; loops vanish and parallel edges merge.
    /// New vertices are numbered by ascending smallest member of their class.
    pub fn contract_edges(&self, f: &[(usize, usize)]) -> Result<ContractionWitness, GraphError> {
        for &(u, v) in f {
            if u >= self.n || v >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n: self.n,
                });
            }
            if !self.has_edge(u, v) {
                return Err(GraphError::EdgeNotInGraph(u, v));
            }
        }
        // Union-find over the contracted edges.
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for &(u, v) in f {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                // Root at the smaller representative for determinism.
                let (lo, hi) = (ru.min(rv), ru.max(rv));
                parent[hi] = lo;
            }
        }
        // Dense renumbering by ascending class representative. Roots are
        // class minima because unions always keep the smaller vertex on top.
        let roots: Vec<usize> = (0..self.n).map(|v| find(&mut parent, v)).collect();
        let mut vertex_map = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, &root) in roots.iter().enumerate() {
            if root == v {
                vertex_map[v] = next;
                next += 1;
            }
        }
        for (v, &root) in roots.iter().enumerate() {
            vertex_map[v] = vertex_map[root];
        }
        let mut adj = vec![VertexSet::new(); next];
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                let (nu, nv) = (vertex_map[u], vertex_map[v]);
                if nu != nv {
                    adj[nu].insert(nv);
                    adj[nv].insert(nu);
                }
            }
        }
        Ok(ContractionWitness {
            host: self.clone(),
            result: Graph::from_adjacency(adj),
            vertex_map,
        })
    }

    /// Standard k-connectivity: |V| > k and no separator of fewer than k
    /// vertices, decided via internally disjoint path counts.
    pub fn vertex_connectivity_at_least(&self, k: usize) -> bool {
        if self.n <= k {
            return false;
        }
        if k == 0 {
            return true;
        }
        if !self.is_connected() {
            return false;
        }
        let mut complete = true;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    complete = false;
                    if self.disjoint_paths_at_least(u, v, k) < k {
                        return false;
                    }
                }
            }
        }
        // A complete graph on n vertices is (n-1)-connected; n > k holds.
        let _ = complete;
        true
    }

    /// Number of internally vertex-disjoint u-v paths, counted up to `cap`,
    /// for non-adjacent u, v. Unit-capacity max flow on the split digraph.
    fn disjoint_paths_at_least(&self, s: usize, t: usize, cap: usize) -> usize {
        // Node 2v = "in", 2v+1 = "out"; arc in->out carries the vertex capacity.
        let nn = 2 * self.n;
        let mut capacity = vec![0u8; nn * nn];
        for v in 0..self.n {
            capacity[(2 * v) * nn + (2 * v + 1)] = 1;
        }
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                capacity[(2 * u + 1) * nn + 2 * v] = 1;
            }
        }
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        while flow < cap {
            // BFS augmenting path in the residual graph.
            let mut pred = vec![usize::MAX; nn];
            let mut queue = std::collections::VecDeque::new();
            pred[source] = source;
            queue.push_back(source);
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for y in 0..nn {
                    if pred[y] == usize::MAX && capacity[x * nn + y] > 0 {
                        pred[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            if pred[sink] == usize::MAX {
                break;
            }
            let mut y = sink;
            while y != source {
                let x = pred[y];
                capacity[x * nn + y] -= 1;
                capacity[y * nn + x] += 1;
                y = x;
            }
            flow += 1;
        }
        flow
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// An induced subgraph together with the index maps in both directions.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// old vertex -> new vertex, None for vertices outside S.
    pub old_to_new: Vec<Option<usize>>,
    /// new vertex -> old vertex.
    pub new_to_old: Vec<usize>,
}

/// Record of an edge contraction: the graph before, the graph after, and the
/// surjection from old vertices onto new ones. The preimage of every result
/// vertex induces a connected subgraph of the host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionWitness {
    pub host: Graph,
    pub result: Graph,
    pub vertex_map: Vec<usize>,
}

impl ContractionWitness {
    /// Host vertices mapped onto `new`.
    pub fn preimage(&self, new: usize) -> VertexSet {
        self.vertex_map
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m == new)
            .map(|(old, _)| old)
            .collect()
    }

    /// Preimage classes indexed by result vertex.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::new(); self.result.n()];
        for (old, &new) in self.vertex_map.iter().enumerate() {
            out[new].insert(old);
        }
        out
    }
}

/// A separation (A, B) of a graph: A and B cover V(G), both private sides
/// A\B and B\A are non-empty, and no edge joins the private sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    /// Check the proper-separation conditions against a host graph.
    pub fn validate(&self, g: &Graph) -> Result<(), SeparationError> {
        if self.a.iter().chain(self.b.iter()).any(|v| v >= g.n()) {
            return Err(SeparationError::OutOfRange);
        }
        if self.a.union(&self.b) != g.vertex_set() {
            return Err(SeparationError::NotACover);
        }
        let only_a = self.a.difference(&self.b);
        let only_b = self.b.difference(&self.a);
        if only_a.is_empty() || only_b.is_empty() {
            return Err(SeparationError::EmptyPrivateSide);
        }
        for v in only_a.iter() {
            if g.neighbours(v).intersects(&only_b) {
                let w = g.neighbours(v).intersection(&only_b).min().unwrap();
                return Err(SeparationError::CrossingEdge(v, w));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparationError {
    #[error("separation references a vertex outside the graph")]
    OutOfRange,
    #[error("A and B do not cover the vertex set")]
    NotACover,
    #[error("a private side of the separation is empty")]
    EmptyPrivateSide,
    #[error("edge ({0}, {1}) crosses between the private sides")]
    CrossingEdge(usize, usize),
}
