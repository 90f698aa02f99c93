//! Generators for the named graph families, the enumeration of the 22
//! pairwise non-isomorphic graphs obtained by splitting K_5, and the
//! recursive constructor that builds a dominating K_4-model around a
//! prescribed clique.

use crate::bitset::VertexSet;
use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::models::{verify_dominating_model, CliqueError, DominatingModel, OrderedClique};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("a cycle needs at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("a path needs at least 1 vertex")]
    EmptyPath,
    #[error("split pairing must be 1, 2 or 3, got {0}")]
    BadPairing(u8),
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("valid")
}

pub fn cycle(n: usize) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::CycleTooShort(n));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::from_edges(n, &edges).expect("valid"))
}

pub fn path(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::EmptyPath);
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(Graph::from_edges(n, &edges).expect("valid"))
}

/// Sides are 0..a and a..a+b.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in a..(a + b) {
            edges.push((u, v));
        }
    }
    Graph::from_edges(a + b, &edges).expect("valid")
}

/// Outer 5-cycle 0..5, inner pentagram 5..10 (5+i adjacent to 5+(i+2) mod 5),
/// spokes i -- 5+i.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("valid")
}

/// K_{5,5} with the perfect matching i -- 5+i removed. Sides 0..5 and 5..10;
/// 4-regular, bipartite, 20 edges.
pub fn k55_minus_matching() -> Graph {
    let mut edges = Vec::with_capacity(20);
    for u in 0..5 {
        for v in 0..5 {
            if u != v {
                edges.push((u, 5 + v));
            }
        }
    }
    Graph::from_edges(10, &edges).expect("valid")
}

/// K_5 with one vertex split into the adjacent degree-3 pair {0, 1}:
/// 0 keeps neighbours {2, 3}, 1 keeps {4, 5}, and {2, 3, 4, 5} is a K_4.
pub fn k5_hat() -> Graph {
    let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)];
    for u in 2..6 {
        for v in (u + 1)..6 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(6, &edges).expect("valid")
}

/// Disjoint union of g and h plus every edge in between. Vertices of h are
/// shifted by g.n().
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let gn = g.n();
    let n = gn + h.n();
    let mut edges = g.edges();
    for (u, v) in h.edges() {
        edges.push((gn + u, gn + v));
    }
    for u in 0..gn {
        for v in gn..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).expect("valid")
}

/// Replace every edge by a path of length two. Original vertices keep their
/// indices; the new vertex for the k-th edge (in sorted order) is n + k.
pub fn one_subdivision(g: &Graph) -> Graph {
    let n = g.n();
    let old_edges = g.edges();
    let mut edges = Vec::with_capacity(2 * old_edges.len());
    for (k, &(u, v)) in old_edges.iter().enumerate() {
        edges.push((u, n + k));
        edges.push((v, n + k));
    }
    Graph::from_edges(n + old_edges.len(), &edges).expect("valid")
}

/// How to treat one vertex of K_5 when splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitChoice {
    Unsplit,
    /// Partition the vertex's four neighbours (listed ascending as a, b, c,
    /// d) into the two halves: 1 = ab|cd, 2 = ac|bd, 3 = ad|bc. The half
    /// keeping the smallest neighbour comes first.
    Pairing(u8),
}

/// Split the chosen vertices of K_5 into adjacent degree-3 pairs. Unsplit
/// vertices keep all their connections; each half of a split vertex inherits
/// its assigned neighbour pair. Vertices are numbered in K_5 order, with the
/// two halves of a split vertex consecutive.
pub fn split_k5(spec: &[SplitChoice; 5]) -> Result<Graph, GenError> {
    for choice in spec {
        if let SplitChoice::Pairing(p) = choice {
            if !(1..=3).contains(p) {
                return Err(GenError::BadPairing(*p));
            }
        }
    }
    // Assign indices.
    let mut first_index = [0usize; 5];
    let mut n = 0usize;
    for i in 0..5 {
        first_index[i] = n;
        n += match spec[i] {
            SplitChoice::Unsplit => 1,
            SplitChoice::Pairing(_) => 2,
        };
    }
    // halves[i] = the two neighbour pairs for a split vertex i.
    let half_of = |i: usize, j: usize| -> usize {
        // Which half of vertex i faces neighbour j.
        let others: Vec<usize> = (0..5).filter(|&x| x != i).collect();
        let p = match spec[i] {
            SplitChoice::Unsplit => return first_index[i],
            SplitChoice::Pairing(p) => p,
        };
        let first_half = match p {
            1 => [others[0], others[1]],
            2 => [others[0], others[2]],
            _ => [others[0], others[3]],
        };
        if first_half.contains(&j) {
            first_index[i]
        } else {
            first_index[i] + 1
        }
    };
    let mut edges = Vec::new();
    for i in 0..5 {
        if let SplitChoice::Pairing(_) = spec[i] {
            edges.push((first_index[i], first_index[i] + 1));
        }
        for j in (i + 1)..5 {
            edges.push((half_of(i, j), half_of(j, i)));
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("valid"))
}

/// All 4^5 split assignments, deduplicated up to isomorphism: exactly 22
/// graphs, sorted by vertex count and canonical form.
pub fn enumerate_k5_splits() -> Vec<Graph> {
    let choices = [
        SplitChoice::Unsplit,
        SplitChoice::Pairing(1),
        SplitChoice::Pairing(2),
        SplitChoice::Pairing(3),
    ];
    let mut classes: HashMap<Vec<u8>, Graph> = HashMap::new();
    for code in 0..4u32.pow(5) {
        let mut c = code;
        let mut spec = [SplitChoice::Unsplit; 5];
        for slot in &mut spec {
            *slot = choices[(c % 4) as usize];
            c /= 4;
        }
        let g = split_k5(&spec).expect("valid spec");
        let form = canonical_form(&g).expect("splits have at most 10 vertices");
        classes.entry(form).or_insert(g);
    }
    let mut out: Vec<(usize, Vec<u8>, Graph)> = classes
        .into_iter()
        .map(|(form, g)| (g.n(), form, g))
        .collect();
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, g)| g).collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructorError {
    #[error("graph exceeds the n <= {cap} cap for the constructor, got {n}")]
    SizeCap { n: usize, cap: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has {0} vertices, need at least 4")]
    TooFewVertices(usize),
    #[error("invalid clique: {0}")]
    Clique(#[from] CliqueError),
    #[error("vertex {0} has degree at most 2 but is not in L")]
    LowDegreeOutsideL(usize),
    #[error("a clique vertex has degree at least 3, so L must be a single vertex")]
    CliqueDegreeTooLarge,
    #[error("construction failed internally: {0}")]
    Internal(&'static str),
}

pub const CONSTRUCTOR_CAP: usize = 32;

/// Build a dominating K_4-model (T_1, T_2, T_3, T_4) with L ⊆ T_1.
///
/// Requires: G connected with at least four vertices; every vertex of degree
/// at most 2 lies in L; and if any vertex of L has degree at least 3 then L
/// is a single vertex. Under those hypotheses the construction always
/// succeeds.
///
/// The recursion mirrors the existence argument: a K_4 base case; across a
/// cut vertex the model is built in one side and T_1 absorbs the other; in
/// the 2-connected case a cycle C and a component H of G - C containing L
/// are improved by rerouting until every vertex of C has a neighbour in H,
/// and then (H, C - x - y, {x}, {y}) is the model for the least edge xy of C.
pub fn dominating_k4_constructor(
    g: &Graph,
    l: &OrderedClique,
) -> Result<DominatingModel, ConstructorError> {
    if g.n() > CONSTRUCTOR_CAP {
        return Err(ConstructorError::SizeCap {
            n: g.n(),
            cap: CONSTRUCTOR_CAP,
        });
    }
    validate_hypotheses(g, l)?;
    let model = build(g, l)?;
    let violations = verify_dominating_model(g, &model);
    if !violations.is_empty() || l.iter().any(|v| !model.branch_sets[0].contains(v)) {
        return Err(ConstructorError::Internal("output failed verification"));
    }
    Ok(model)
}

fn validate_hypotheses(g: &Graph, l: &OrderedClique) -> Result<(), ConstructorError> {
    if !g.is_connected() {
        return Err(ConstructorError::NotConnected);
    }
    if g.n() < 4 {
        return Err(ConstructorError::TooFewVertices(g.n()));
    }
    l.validate(g)?;
    for v in g.vertices() {
        if g.degree(v) <= 2 && !l.iter().any(|u| u == v) {
            return Err(ConstructorError::LowDegreeOutsideL(v));
        }
    }
    if l.len() == 2 && l.iter().any(|v| g.degree(v) >= 3) {
        return Err(ConstructorError::CliqueDegreeTooLarge);
    }
    Ok(())
}

fn build(g: &Graph, l: &OrderedClique) -> Result<DominatingModel, ConstructorError> {
    if g.n() == 4 {
        if g.edge_count() != 6 {
            return Err(ConstructorError::Internal("four vertices but not K4"));
        }
        let lead = l.get(0).unwrap_or(0);
        let mut order = vec![lead];
        order.extend(g.vertices().filter(|&v| v != lead));
        return Ok(DominatingModel::new(
            order.into_iter().map(VertexSet::singleton).collect(),
        ));
    }

    if let Some((cut, side)) = cut_vertex_split(g, l) {
        // Recurse on side + cut with L' = {cut}; T_1 swallows the rest.
        let mut b = side.clone();
        b.insert(cut);
        let sub = g.induced_subgraph(&b).expect("subset in range");
        let l_inner = OrderedClique::single(sub.old_to_new[cut].unwrap());
        validate_hypotheses(&sub.graph, &l_inner)
            .map_err(|_| ConstructorError::Internal("cut side lost the hypotheses"))?;
        let inner = build(&sub.graph, &l_inner)?;
        let mut sets: Vec<VertexSet> = inner
            .branch_sets
            .iter()
            .map(|s| s.iter().map(|v| sub.new_to_old[v]).collect())
            .collect();
        let absorbed = g.vertex_set().difference(&side);
        sets[0].union_with(&absorbed);
        return Ok(DominatingModel::new(sets));
    }

    // 2-connected case.
    let (h, cycle) = cycle_with_dominated_rim(g, l)?;
    let cycle_set: VertexSet = cycle.iter().copied().collect();
    let (x, y) = least_cycle_edge(&cycle);
    let mut t2 = cycle_set;
    t2.remove(x);
    t2.remove(y);
    Ok(DominatingModel::new(vec![
        h,
        t2,
        VertexSet::singleton(x),
        VertexSet::singleton(y),
    ]))
}

/// First cut vertex (ascending) together with the component of G - cut that
/// avoids L, preferring the component with the smallest vertex.
fn cut_vertex_split(g: &Graph, l: &OrderedClique) -> Option<(usize, VertexSet)> {
    let all = g.vertex_set();
    for v in g.vertices() {
        let mut rest = all.clone();
        rest.remove(v);
        let sub = g.induced_subgraph(&rest).expect("subset");
        let comps = sub.graph.components();
        if comps.len() < 2 {
            continue;
        }
        let comps: Vec<VertexSet> = comps
            .into_iter()
            .map(|c| c.iter().map(|x| sub.new_to_old[x]).collect())
            .collect();
        let side = comps
            .iter()
            .find(|c| !l.iter().any(|u| u != v && c.contains(u)))
            .expect("L is a clique, so it avoids some component");
        return Some((v, side.clone()));
    }
    None
}

/// A cycle C disjoint from L and the component H of G - C holding L (or the
/// anchor component when L is empty) such that every vertex of C has a
/// neighbour in H. Rerouting grows H strictly, so the loop terminates.
fn cycle_with_dominated_rim(
    g: &Graph,
    l: &OrderedClique,
) -> Result<(VertexSet, Vec<usize>), ConstructorError> {
    let l_set: VertexSet = l.iter().collect();
    let mut cycle =
        find_cycle_avoiding(g, &l_set).ok_or(ConstructorError::Internal("no cycle outside L"))?;
    let mut anchor = l.get(0);
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > g.n() * g.n() + 16 {
            return Err(ConstructorError::Internal("rerouting failed to converge"));
        }
        shrink_to_induced(g, &mut cycle);
        let cycle_set: VertexSet = cycle.iter().copied().collect();
        let rest = g.vertex_set().difference(&cycle_set);
        let comps = components_within(g, &rest);
        if comps.is_empty() {
            return Err(ConstructorError::Internal("cycle swallowed the graph"));
        }
        let h = match anchor {
            Some(a) => comps
                .iter()
                .find(|c| c.contains(a))
                .expect("anchor survives")
                .clone(),
            None => {
                let best = comps
                    .iter()
                    .max_by_key(|c| (c.count(), std::cmp::Reverse(c.min().unwrap())))
                    .unwrap()
                    .clone();
                anchor = best.min();
                best
            }
        };
        match cycle.iter().find(|&&v| !g.neighbours(v).intersects(&h)) {
            None => return Ok((h, cycle)),
            Some(&v) => {
                cycle = reroute(g, &cycle, &h, v)?;
            }
        }
    }
}

/// Components of G[within], in host indices.
fn components_within(g: &Graph, within: &VertexSet) -> Vec<VertexSet> {
    let sub = g.induced_subgraph(within).expect("subset");
    sub.graph
        .components()
        .into_iter()
        .map(|c| c.iter().map(|x| sub.new_to_old[x]).collect())
        .collect()
}

/// Fundamental cycle from a DFS of G - avoid, if any.
fn find_cycle_avoiding(g: &Graph, avoid: &VertexSet) -> Option<Vec<usize>> {
    let allowed = g.vertex_set().difference(avoid);
    let mut parent: Vec<Option<usize>> = vec![None; g.n()];
    let mut state = vec![0u8; g.n()]; // 0 new, 1 active, 2 done
    for root in allowed.iter() {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, None::<usize>)];
        while let Some(&(v, from)) = stack.last() {
            if state[v] == 0 {
                state[v] = 1;
                parent[v] = from;
                let mut pushed = false;
                for u in g.neighbours(v).intersection(&allowed).iter() {
                    if Some(u) == from {
                        continue;
                    }
                    if state[u] == 1 {
                        // Back edge: walk v up to u.
                        let mut path = vec![v];
                        let mut cur = v;
                        while cur != u {
                            cur = parent[cur].expect("u is an ancestor");
                            path.push(cur);
                        }
                        return Some(path);
                    }
                    if state[u] == 0 {
                        stack.push((u, Some(v)));
                        pushed = true;
                    }
                }
                if !pushed {
                    state[v] = 2;
                    stack.pop();
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Remove chords by repeatedly replacing the cycle with a shorter sub-cycle.
fn shrink_to_induced(g: &Graph, cycle: &mut Vec<usize>) {
    'outer: loop {
        let k = cycle.len();
        for i in 0..k {
            for j in (i + 2)..k {
                if i == 0 && j == k - 1 {
                    continue; // consecutive around the wrap
                }
                if g.has_edge(cycle[i], cycle[j]) {
                    // Keep the arc i..=j closed by the chord; it is a
                    // strictly shorter cycle. Choose the arc containing the
                    // smallest vertex for determinism.
                    let arc_a: Vec<usize> = cycle[i..=j].to_vec();
                    let mut arc_b: Vec<usize> = cycle[j..].to_vec();
                    arc_b.extend_from_slice(&cycle[..=i]);
                    let pick = if arc_a.iter().min() <= arc_b.iter().min() {
                        arc_a
                    } else {
                        arc_b
                    };
                    *cycle = pick;
                    continue 'outer;
                }
            }
        }
        return;
    }
}

/// The proof's exchange step: v on the cycle has no neighbour in H, so v
/// leans on another component J; rerouting the cycle through J frees a
/// vertex adjacent to H, growing H.
fn reroute(
    g: &Graph,
    cycle: &[usize],
    h: &VertexSet,
    v: usize,
) -> Result<Vec<usize>, ConstructorError> {
    let cycle_set: VertexSet = cycle.iter().copied().collect();
    let u = g
        .neighbours(v)
        .difference(&cycle_set)
        .min()
        .ok_or(ConstructorError::Internal(
            "degree-3 cycle vertex with no outside neighbour",
        ))?;
    let rest = g.vertex_set().difference(&cycle_set);
    let j = components_within(g, &rest)
        .into_iter()
        .find(|c| c.contains(u))
        .expect("u is outside the cycle");
    // Attachments of J and H on the cycle.
    let attach_j: Vec<usize> = cycle
        .iter()
        .copied()
        .filter(|&c| g.neighbours(c).intersects(&j))
        .collect();
    let attach_h: Vec<usize> = cycle
        .iter()
        .copied()
        .filter(|&c| g.neighbours(c).intersects(h))
        .collect();
    let w =
        attach_j
            .iter()
            .copied()
            .filter(|&c| c != v)
            .min()
            .ok_or(ConstructorError::Internal(
                "2-connectivity gives J a second attachment",
            ))?;
    let spared =
        attach_h
            .iter()
            .copied()
            .filter(|&c| c != w)
            .min()
            .ok_or(ConstructorError::Internal(
                "2-connectivity gives H two attachments",
            ))?;
    // Arc of the cycle from v to w avoiding `spared`: one arc follows the
    // cycle order, the complementary one runs against it.
    let pv = cycle.iter().position(|&c| c == v).unwrap();
    let pw = cycle.iter().position(|&c| c == w).unwrap();
    let k = cycle.len();
    let forward: Vec<usize> = (0..=((pw + k - pv) % k))
        .map(|s| cycle[(pv + s) % k])
        .collect();
    let backward: Vec<usize> = (0..=((pv + k - pw) % k))
        .map(|s| cycle[(pv + k - s) % k])
        .collect();
    let arc = if !forward.contains(&spared) {
        forward
    } else {
        backward
    };
    debug_assert!(!arc.contains(&spared));
    debug_assert_eq!(arc.first(), Some(&v));
    debug_assert_eq!(arc.last(), Some(&w));
    // Path from v to w through J (BFS, not using the direct edge).
    let mut allowed = j.clone();
    allowed.insert(v);
    allowed.insert(w);
    let through = bfs_path_via(g, v, w, &allowed)
        .ok_or(ConstructorError::Internal("J connects its attachments"))?;
    // Splice: arc runs v..w, path runs v..w; reverse the path tail.
    let mut new_cycle = arc;
    for &x in through.iter().rev().skip(1) {
        if x == v {
            break;
        }
        new_cycle.push(x);
    }
    Ok(new_cycle)
}

/// Shortest v-w path inside `allowed` with at least one internal vertex.
fn bfs_path_via(g: &Graph, v: usize, w: usize, allowed: &VertexSet) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; g.n()];
    let mut seen = VertexSet::singleton(v);
    let mut layer = vec![v];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &a in &layer {
            for b in g.neighbours(a).intersection(allowed).iter() {
                if b == w && a == v {
                    continue; // forbid the direct edge
                }
                if !seen.contains(b) {
                    seen.insert(b);
                    parent[b] = Some(a);
                    next.push(b);
                }
            }
        }
        if seen.contains(w) {
            let mut path = vec![w];
            let mut cur = w;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        next.sort_unstable();
        layer = next;
    }
    None
}

fn least_cycle_edge(cycle: &[usize]) -> (usize, usize) {
    let k = cycle.len();
    (0..k)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .min()
        .expect("cycles are non-empty")
}
