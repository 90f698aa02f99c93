//! Exhaustive search for dominating (and standard) K_t-models.
//!
//! Branch sets are filled from T_t down to T_1: the later sets are the most
//! constrained, since each of their vertices must be dominated by every
//! earlier set. A vertex placed in T_j needs j-1 pairwise disjoint future
//! sets each containing one of its neighbours, so it needs at least j-1
//! neighbours among the still-unassigned vertices; that capacity bound plus
//! the requirement that the set under construction dominates everything
//! already placed prunes the search. Candidate sets are enumerated as
//! connected subsets in ascending order, so results are deterministic.

use super::{
    is_l_compatible, verify_dominating_model, CliqueError, DominatingModel, OrderedClique,
};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Complete backtracking over all branch-set shapes.
    General,
    /// Fix the last two branch sets to adjacent single vertices of degree at
    /// least t-1 and search the rest. Complete for t in {4, 5}: any
    /// dominating model can be rebuilt in this shape, and the rebuild leaves
    /// the branch indices of compatible clique vertices untouched.
    SingletonReduced,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("model order must be at least 1")]
    BadOrder,
    #[error("singleton-reduced search supports t = 4 or 5, got t = {0}")]
    UnsupportedMode(usize),
    #[error("invalid anchor clique: {0}")]
    Clique(#[from] CliqueError),
}

/// Find an L-compatible dominating K_t-model, or None when G has none.
pub fn find_dominating_model(
    g: &Graph,
    t: usize,
    l: &OrderedClique,
    mode: SearchMode,
) -> Result<Option<DominatingModel>, SearchError> {
    if t == 0 {
        return Err(SearchError::BadOrder);
    }
    if mode == SearchMode::SingletonReduced && !(t == 4 || t == 5) {
        return Err(SearchError::UnsupportedMode(t));
    }
    l.validate(g)?;
    for placement in l_placements(l) {
        let found = match mode {
            SearchMode::General => Searcher::new(g, t, &placement).run(),
            SearchMode::SingletonReduced => run_singleton_reduced(g, t, &placement),
        };
        if let Some(model) = found {
            debug_assert!(verify_dominating_model(g, &model).is_empty());
            debug_assert!(is_l_compatible(&model, l));
            return Ok(Some(model));
        }
    }
    Ok(None)
}

/// A fixed choice of branch index for each clique vertex: slot 0 keeps the
/// vertex out of every branch set, slot i >= 1 forces it into T_i.
#[derive(Debug, Clone)]
struct Placement {
    assignments: Vec<(usize, usize)>, // (vertex, slot)
}

/// The finitely many compatible (ind(v_1), ind(v_2)) patterns, in ascending
/// order.
fn l_placements(l: &OrderedClique) -> Vec<Placement> {
    match *l.as_slice() {
        [] => vec![Placement {
            assignments: vec![],
        }],
        [v1] => vec![
            Placement {
                assignments: vec![(v1, 0)],
            },
            Placement {
                assignments: vec![(v1, 1)],
            },
        ],
        [v1, v2] => [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2)]
            .iter()
            .map(|&(i1, i2)| Placement {
                assignments: vec![(v1, i1), (v2, i2)],
            })
            .collect(),
        _ => unreachable!("ordered cliques have at most two vertices"),
    }
}

fn run_singleton_reduced(g: &Graph, t: usize, placement: &Placement) -> Option<DominatingModel> {
    let reserved: VertexSet = placement.assignments.iter().map(|&(v, _)| v).collect();
    for v in g.vertices() {
        if g.degree(v) < t - 1 || reserved.contains(v) {
            continue;
        }
        for w in g.neighbours(v).iter() {
            if g.degree(w) < t - 1 || reserved.contains(w) {
                continue;
            }
            let mut searcher = Searcher::new(g, t, placement);
            if let Some(model) = searcher.run_with_fixed_tail(v, w) {
                return Some(model);
            }
        }
    }
    None
}

struct Searcher<'g> {
    g: &'g Graph,
    t: usize,
    sets: Vec<VertexSet>,
    pool: VertexSet,
    placed: VertexSet,
    /// forced_slot[v] = Some(i): v must end up with branch index i.
    forced_slot: Vec<Option<usize>>,
}

impl<'g> Searcher<'g> {
    fn new(g: &'g Graph, t: usize, placement: &Placement) -> Self {
        let mut pool = g.vertex_set();
        let mut forced_slot = vec![None; g.n()];
        for &(v, slot) in &placement.assignments {
            forced_slot[v] = Some(slot);
            if slot == 0 {
                pool.remove(v);
            }
        }
        Searcher {
            g,
            t,
            sets: vec![VertexSet::new(); t],
            pool,
            placed: VertexSet::new(),
            forced_slot,
        }
    }

    fn run(&mut self) -> Option<DominatingModel> {
        self.fill(self.t)
    }

    fn run_with_fixed_tail(&mut self, v: usize, w: usize) -> Option<DominatingModel> {
        // T_{t-1} = {v}, T_t = {w}; both demands were degree-checked upstream.
        if !self.pool.contains(v) || !self.pool.contains(w) {
            return None;
        }
        self.sets[self.t - 2] = VertexSet::singleton(v);
        self.sets[self.t - 1] = VertexSet::singleton(w);
        self.pool.remove(v);
        self.pool.remove(w);
        self.placed.insert(v);
        self.placed.insert(w);
        self.fill(self.t - 2)
    }

    fn fill(&mut self, level: usize) -> Option<DominatingModel> {
        if level == 0 {
            return Some(DominatingModel::new(self.sets.clone()));
        }
        // Vertices allowed in T_level: in the pool, not forced elsewhere, and
        // with enough pool neighbours to be dominated by T_1..T_{level-1}.
        let mut eligible = VertexSet::new();
        for v in self.pool.iter() {
            if let Some(slot) = self.forced_slot[v] {
                if slot != level {
                    continue;
                }
            }
            if self.g.neighbours(v).intersection_count(&self.pool) >= level - 1 {
                eligible.insert(v);
            }
        }
        let required: VertexSet = self
            .pool
            .iter()
            .filter(|&v| self.forced_slot[v] == Some(level))
            .collect();
        if !required.is_subset(&eligible) {
            return None;
        }
        // Every placed vertex must pick up a neighbour inside T_level.
        for p in self.placed.iter() {
            if !self.g.neighbours(p).intersects(&eligible) {
                return None;
            }
        }
        let mut candidates = ConnectedSubsets::new(self.g, &eligible);
        while let Some(set) = candidates.next() {
            if !required.is_subset(&set) {
                continue;
            }
            if self
                .placed
                .iter()
                .any(|p| !self.g.neighbours(p).intersects(&set))
            {
                continue;
            }
            let new_pool = self.pool.difference(&set);
            if !self.capacity_ok(&set, &new_pool, level) {
                continue;
            }
            let old_pool = std::mem::replace(&mut self.pool, new_pool);
            self.sets[level - 1] = set.clone();
            self.placed.union_with(&set);
            if let Some(model) = self.fill(level - 1) {
                return Some(model);
            }
            self.placed = self.placed.difference(&set);
            self.sets[level - 1] = VertexSet::new();
            self.pool = old_pool;
        }
        None
    }

    /// After committing T_level, every vertex already in a branch set still
    /// needs one neighbour per unfinished earlier set, and those sets are
    /// disjoint subsets of the remaining pool.
    fn capacity_ok(&self, set: &VertexSet, new_pool: &VertexSet, level: usize) -> bool {
        if level == 1 {
            return true;
        }
        let need = level - 1;
        set.iter()
            .chain(self.placed.iter())
            .all(|v| self.g.neighbours(v).intersection_count(new_pool) >= need)
    }
}

/// Enumerates every non-empty connected subset of `allowed` exactly once, in
/// a deterministic order: grouped by smallest member, grown by ascending
/// candidate vertex.
struct ConnectedSubsets<'g> {
    g: &'g Graph,
    allowed: VertexSet,
    anchors: Vec<usize>,
    stack: Vec<Frame>,
    anchor_idx: usize,
}

struct Frame {
    set: VertexSet,
    candidates: Vec<usize>,
    next_candidate: usize,
    forbidden: VertexSet,
    emitted: bool,
}

impl<'g> ConnectedSubsets<'g> {
    fn new(g: &'g Graph, allowed: &VertexSet) -> Self {
        ConnectedSubsets {
            g,
            allowed: allowed.clone(),
            anchors: allowed.iter().collect(),
            stack: Vec::new(),
            anchor_idx: 0,
        }
    }

    fn next(&mut self) -> Option<VertexSet> {
        loop {
            if let Some(top) = self.stack.last_mut() {
                if !top.emitted {
                    top.emitted = true;
                    return Some(top.set.clone());
                }
                if top.next_candidate < top.candidates.len() {
                    let v = top.candidates[top.next_candidate];
                    top.next_candidate += 1;
                    let mut set = top.set.clone();
                    set.insert(v);
                    let mut forbidden = top.forbidden.clone();
                    // Later branches of the parent must not reuse v.
                    forbidden.insert(v);
                    let mut candidates: Vec<usize> = top.candidates[top.next_candidate..].to_vec();
                    for u in self.g.neighbours(v).intersection(&self.allowed).iter() {
                        if !set.contains(u) && !forbidden.contains(u) && !candidates.contains(&u) {
                            candidates.push(u);
                        }
                    }
                    candidates.sort_unstable();
                    let child_forbidden = top.forbidden.clone();
                    top.forbidden.insert(v);
                    self.stack.push(Frame {
                        set,
                        candidates,
                        next_candidate: 0,
                        forbidden: child_forbidden,
                        emitted: false,
                    });
                    continue;
                }
                self.stack.pop();
                continue;
            }
            // Start the next anchor: subsets whose smallest member is m.
            if self.anchor_idx >= self.anchors.len() {
                return None;
            }
            let m = self.anchors[self.anchor_idx];
            self.anchor_idx += 1;
            let below: VertexSet = self
                .anchors
                .iter()
                .copied()
                .take_while(|&a| a < m)
                .collect();
            let candidates: Vec<usize> = self
                .g
                .neighbours(m)
                .intersection(&self.allowed)
                .difference(&below)
                .iter()
                .collect();
            self.stack.push(Frame {
                set: VertexSet::singleton(m),
                candidates,
                next_candidate: 0,
                forbidden: below,
                emitted: false,
            });
        }
    }
}

/// Find a standard K_t-model (a K_t-minor with ordered branch sets), or None.
/// Complete backtracking; no compatibility constraints.
pub fn find_standard_model(g: &Graph, t: usize) -> Result<Option<DominatingModel>, SearchError> {
    if t == 0 {
        return Err(SearchError::BadOrder);
    }
    let mut sets: Vec<VertexSet> = vec![VertexSet::new(); t];
    let pool = g.vertex_set();
    Ok(fill_standard(g, t, &mut sets, pool))
}

fn fill_standard(
    g: &Graph,
    level: usize,
    sets: &mut Vec<VertexSet>,
    pool: VertexSet,
) -> Option<DominatingModel> {
    if level == 0 {
        return Some(DominatingModel::new(sets.clone()));
    }
    let t = sets.len();
    let touches_pool =
        |s: &VertexSet, pool: &VertexSet| s.iter().any(|v| g.neighbours(v).intersects(pool));
    let mut candidates = ConnectedSubsets::new(g, &pool);
    while let Some(set) = candidates.next() {
        // The new set must touch every set already placed.
        let touches_all =
            (level..t).all(|k| sets[k].iter().any(|v| g.neighbours(v).intersects(&set)));
        if !touches_all {
            continue;
        }
        let new_pool = pool.difference(&set);
        // With future sets still to place, every committed set must keep a
        // contact point in the remaining pool.
        if level > 1
            && (!touches_pool(&set, &new_pool)
                || !(level..t).all(|k| touches_pool(&sets[k], &new_pool)))
        {
            continue;
        }
        sets[level - 1] = set.clone();
        if let Some(model) = fill_standard(g, level - 1, sets, new_pool) {
            return Some(model);
        }
        sets[level - 1] = VertexSet::new();
    }
    None
}
