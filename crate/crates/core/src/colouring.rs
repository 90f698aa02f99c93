//! Exact graph colouring and the separation-based colouring stitch.

use crate::graph::{Graph, GraphError, Separation, SeparationError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A proper colouring candidate: colour of vertex v is `colours[v]`, drawn
/// from {1, ..., budget}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub budget: usize,
    pub colours: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("assignment covers {got} vertices, graph has {expected}")]
    UncolouredVertices { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ColouringViolation {
    MonochromaticEdge {
        u: usize,
        v: usize,
        colour: usize,
    },
    ColourOutsideBudget {
        vertex: usize,
        colour: usize,
        budget: usize,
    },
}

/// Check a colouring against a graph. Empty vector means proper.
pub fn verify_colouring(
    g: &Graph,
    col: &Colouring,
) -> Result<Vec<ColouringViolation>, ColouringError> {
    if col.colours.len() != g.n() {
        return Err(ColouringError::UncolouredVertices {
            expected: g.n(),
            got: col.colours.len(),
        });
    }
    let mut out = Vec::new();
    for v in g.vertices() {
        let c = col.colours[v];
        if c < 1 || c > col.budget {
            out.push(ColouringViolation::ColourOutsideBudget {
                vertex: v,
                colour: c,
                budget: col.budget,
            });
        }
    }
    for (u, v) in g.edges() {
        if col.colours[u] == col.colours[v] {
            out.push(ColouringViolation::MonochromaticEdge {
                u,
                v,
                colour: col.colours[u],
            });
        }
    }
    Ok(out)
}

/// Exact k-colourability: a proper k-colouring if one exists, else None.
///
/// Complete backtracking with saturation-degree vertex selection; symmetry is
/// broken by pre-colouring a greedily found clique and by only ever opening
/// one fresh colour at a time. Colour classes of the result are renamed to
/// first-occurrence order, so the output is deterministic.
pub fn k_colour(g: &Graph, k: usize) -> Option<Colouring> {
    assert!(k >= 1, "colour budget must be at least 1");
    let n = g.n();
    if n == 0 {
        return Some(Colouring {
            budget: k,
            colours: Vec::new(),
        });
    }
    let clique = greedy_clique(g);
    if clique.len() > k {
        return None;
    }
    let mut colours = vec![0usize; n];
    for (i, &v) in clique.iter().enumerate() {
        colours[v] = i + 1;
    }
    let mut solver = Solver {
        g,
        k,
        colours,
        uncoloured: n - clique.len(),
        max_used: clique.len(),
    };
    if solver.solve() {
        Some(canonical_classes(solver.colours, k))
    } else {
        None
    }
}

struct Solver<'g> {
    g: &'g Graph,
    k: usize,
    colours: Vec<usize>,
    uncoloured: usize,
    max_used: usize,
}

impl Solver<'_> {
    fn solve(&mut self) -> bool {
        if self.uncoloured == 0 {
            return true;
        }
        let v = self.pick();
        let limit = self.k.min(self.max_used + 1);
        let mut forbidden = 0u64;
        for u in self.g.neighbours(v).iter() {
            if self.colours[u] != 0 {
                forbidden |= 1 << (self.colours[u] - 1);
            }
        }
        for c in 1..=limit {
            if forbidden & (1 << (c - 1)) != 0 {
                continue;
            }
            self.colours[v] = c;
            self.uncoloured -= 1;
            let old_max = self.max_used;
            self.max_used = self.max_used.max(c);
            if self.solve() {
                return true;
            }
            self.max_used = old_max;
            self.uncoloured += 1;
            self.colours[v] = 0;
        }
        false
    }

    /// Uncoloured vertex with most distinct neighbour colours; ties broken by
    /// degree, then by index.
    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_key = (0usize, 0usize);
        for v in self.g.vertices() {
            if self.colours[v] != 0 {
                continue;
            }
            let mut seen = 0u64;
            for u in self.g.neighbours(v).iter() {
                if self.colours[u] != 0 {
                    seen |= 1 << (self.colours[u] - 1);
                }
            }
            let key = (seen.count_ones() as usize, self.g.degree(v));
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        best
    }
}

fn greedy_clique(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let seed = (0..n).max_by_key(|&v| (g.degree(v), n - v)).unwrap();
    let mut clique = vec![seed];
    let mut common = g.neighbours(seed).clone();
    while let Some(next) = common
        .iter()
        .max_by_key(|&v| (common.intersection_count(g.neighbours(v)), n - v))
    {
        clique.push(next);
        common = common.intersection(g.neighbours(next));
    }
    clique
}

fn canonical_classes(colours: Vec<usize>, budget: usize) -> Colouring {
    let mut rename = vec![0usize; budget + 1];
    let mut next = 0usize;
    let colours = colours
        .into_iter()
        .map(|c| {
            if rename[c] == 0 {
                next += 1;
                rename[c] = next;
            }
            rename[c]
        })
        .collect();
    Colouring { budget, colours }
}

/// Least k admitting a proper k-colouring; 0 for the empty graph.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    (1..=g.n())
        .find(|&k| k_colour(g, k).is_some())
        .expect("n colours always suffice")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StitchError {
    #[error("not a proper separation: {0}")]
    ImproperSeparation(#[from] SeparationError),
    #[error("separator has {size} vertices, exceeding the colour budget {budget}")]
    SeparatorTooLarge { size: usize, budget: usize },
    #[error("the supplied colouring of G[A] is not a proper {0}-colouring")]
    BaseColouringImproper(usize),
    #[error("oracle found no colouring of the contracted graph")]
    OracleDeclined,
    #[error("oracle returned a colouring with budget {got}, expected {expected}")]
    OracleBudgetMismatch { expected: usize, got: usize },
    #[error("oracle returned an improper colouring")]
    OracleImproper,
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
}

/// Extend a colouring of G[A] across a proper separation (A, B).
///
/// With c = `chi_a.budget`, the vertices of A ∩ B are grouped by their colour
/// under `chi_a`; G[B] gains a clique on A ∩ B and each colour group S_i is
/// contracted to a single vertex s_i. The oracle must colour that contracted
/// graph with c colours; its classes are then renamed so s_i receives colour
/// i, and the two colourings are glued: `chi_a` on A, the oracle's on B \ A.
///
/// `chi_a` is indexed by the induced subgraph G[A] (ascending members of A).
pub fn stitch_colourings<F>(
    g: &Graph,
    sep: &Separation,
    chi_a: &Colouring,
    mut oracle: F,
) -> Result<Colouring, StitchError>
where
    F: FnMut(&Graph) -> Option<Colouring>,
{
    let c = chi_a.budget;
    sep.validate(g)?;
    let cut = sep.separator();
    if cut.count() > c {
        return Err(StitchError::SeparatorTooLarge {
            size: cut.count(),
            budget: c,
        });
    }
    let ia = g.induced_subgraph(&sep.a)?;
    match verify_colouring(&ia.graph, chi_a) {
        Ok(v) if v.is_empty() => {}
        _ => return Err(StitchError::BaseColouringImproper(c)),
    }

    // G[B] plus a clique on the separator.
    let ib = g.induced_subgraph(&sep.b)?;
    let cut_in_b: Vec<usize> = cut.iter().map(|v| ib.old_to_new[v].unwrap()).collect();
    let mut edges = ib.graph.edges();
    for (i, &x) in cut_in_b.iter().enumerate() {
        for &y in &cut_in_b[i + 1..] {
            edges.push((x.min(y), x.max(y)));
        }
    }
    let g_prime = Graph::from_edges(ib.graph.n(), &edges)?;

    // Contract each colour class of the separator to one vertex.
    let colour_of = |old: usize| chi_a.colours[ia.old_to_new[old].unwrap()];
    let mut class_members: Vec<Vec<usize>> = vec![Vec::new(); c + 1];
    for v in cut.iter() {
        class_members[colour_of(v)].push(ib.old_to_new[v].unwrap());
    }
    let mut contract = Vec::new();
    for members in &class_members {
        if let Some((&first, rest)) = members.split_first() {
            for &w in rest {
                contract.push((first, w));
            }
        }
    }
    let witness = g_prime.contract_edges(&contract)?;
    let g_double = &witness.result;

    let chi_b = oracle(g_double).ok_or(StitchError::OracleDeclined)?;
    if chi_b.budget != c {
        return Err(StitchError::OracleBudgetMismatch {
            expected: c,
            got: chi_b.budget,
        });
    }
    match verify_colouring(g_double, &chi_b) {
        Ok(v) if v.is_empty() => {}
        _ => return Err(StitchError::OracleImproper),
    }

    // Rename oracle colours so the contracted class of colour i receives i.
    // The s_i form a clique, so their oracle colours are pairwise distinct.
    let mut rename = vec![0usize; c + 1];
    let mut taken = vec![false; c + 1];
    for (i, members) in class_members.iter().enumerate() {
        if let Some(&m) = members.first() {
            let s_i = witness.vertex_map[m];
            rename[chi_b.colours[s_i]] = i;
            taken[i] = true;
        }
    }
    let mut spare = (1..=c).filter(|&i| !taken[i]);
    for target in rename.iter_mut().skip(1) {
        if *target == 0 {
            *target = spare.next().expect("bijection on colours");
        }
    }

    let mut colours = vec![0usize; g.n()];
    for v in g.vertices() {
        colours[v] = if sep.a.contains(v) {
            colour_of(v)
        } else {
            rename[chi_b.colours[witness.vertex_map[ib.old_to_new[v].unwrap()]]]
        };
    }
    let out = Colouring { budget: c, colours };
    debug_assert!(matches!(verify_colouring(g, &out), Ok(v) if v.is_empty()));
    Ok(out)
}
