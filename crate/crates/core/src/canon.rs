//! Canonical labelling for small graphs.
//!
//! Refinement by iterated neighbour-class signatures, then backtracking over
//! the remaining cell orderings with individualisation. The canonical form is
//! the lexicographically least packed adjacency string over all labellings
//! consistent with the refined partition; two graphs are isomorphic iff their
//! forms are equal.

use crate::graph::{Graph, GraphError};

/// Largest order accepted by the canonicaliser. Geared to the ten-vertex
/// split graphs and the small catalogs; beyond this the plain backtracking
/// search degrades on highly symmetric inputs.
pub const CANONICAL_CAP: usize = 12;

/// Canonical byte string: order byte, then the upper-triangle adjacency bits
/// of the canonically relabelled graph, row-major, packed MSB first.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>, GraphError> {
    Ok(encode(g, &canonical_permutation(g)?))
}

/// The canonically relabelled graph itself (new index -> position in the
/// canonical order). Independent of the input labelling within its
/// isomorphism class.
pub fn canonical_graph(g: &Graph) -> Result<Graph, GraphError> {
    let perm = canonical_permutation(g)?;
    let n = g.n();
    let mut edges = Vec::with_capacity(g.edge_count());
    let mut position = vec![0usize; n];
    for (pos, &old) in perm.iter().enumerate() {
        position[old] = pos;
    }
    for (u, v) in g.edges() {
        edges.push((position[u], position[v]));
    }
    Ok(Graph::from_edges(n, &edges).expect("relabelling a valid graph"))
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// perm[position] = original vertex.
fn canonical_permutation(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(GraphError::SizeCapExceeded {
            n,
            cap: CANONICAL_CAP,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let cells = refine(g, vec![g.vertices().collect()]);
    let mut best: Option<Vec<u8>> = None;
    let mut best_perm = Vec::new();
    search(g, cells, &mut best, &mut best_perm);
    Ok(best_perm)
}

fn search(
    g: &Graph,
    cells: Vec<Vec<usize>>,
    best: &mut Option<Vec<u8>>,
    best_perm: &mut Vec<usize>,
) {
    if let Some(target) = cells.iter().position(|c| c.len() > 1) {
        for i in 0..cells[target].len() {
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (j, cell) in cells.iter().enumerate() {
                if j == target {
                    let v = cell[i];
                    child.push(vec![v]);
                    child.push(cell.iter().copied().filter(|&u| u != v).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            search(g, refine(g, child), best, best_perm);
        }
        return;
    }
    let perm: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let key = encode(g, &perm);
    if best.as_ref().is_none_or(|b| key < *b) {
        *best = Some(key);
        *best_perm = perm;
    }
}

/// Split cells by iterated neighbour-class signatures until stable. Cell
/// order is derived from the signatures, so it is labelling-independent.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.n();
    loop {
        let mut cell_of = vec![0usize; n];
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            // Signature: multiset of neighbour cell indices.
            let mut sigs: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut s: Vec<usize> = g.neighbours(v).iter().map(|u| cell_of[u]).collect();
                    s.sort_unstable();
                    (s, v)
                })
                .collect();
            sigs.sort();
            let mut start = 0;
            for i in 1..=sigs.len() {
                if i == sigs.len() || sigs[i].0 != sigs[start].0 {
                    next.push(sigs[start..i].iter().map(|&(_, v)| v).collect());
                    if i - start != cell.len() {
                        changed = true;
                    }
                    start = i;
                }
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn encode(g: &Graph, perm: &[usize]) -> Vec<u8> {
    let n = perm.len();
    let mut out = Vec::with_capacity(1 + (n * n / 2).div_ceil(8));
    out.push(n as u8);
    let mut acc = 0u8;
    let mut filled = 0u8;
    for i in 0..n {
        for j in (i + 1)..n {
            acc <<= 1;
            if g.has_edge(perm[i], perm[j]) {
                acc |= 1;
            }
            filled += 1;
            if filled == 8 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    out
}
