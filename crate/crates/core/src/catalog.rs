//! Exhaustive catalogs of small graphs, one representative per isomorphism
//! class: every labelled graph on n vertices is generated and deduplicated by
//! canonical form. Representatives are the canonically relabelled graphs, so
//! the catalog content does not depend on generation or merge order.

use crate::bitset::VertexSet;
use crate::canon::{canonical_form, canonical_graph};
use crate::graph::{Graph, GraphError};
use std::collections::HashMap;

/// Catalog enumeration is bounded by the labelled-graph count 2^(n(n-1)/2).
pub const CATALOG_CAP: usize = 7;

/// Number of labelled graphs on n vertices (the mask space).
pub fn mask_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// Decode an edge mask into a graph. Bit k of the mask is the k-th pair in
/// column-major upper-triangle order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut adj = vec![VertexSet::new(); n];
    let mut k = 0;
    for col in 1..n {
        for row in 0..col {
            if mask & (1u64 << k) != 0 {
                adj[row].insert(col);
                adj[col].insert(row);
            }
            k += 1;
        }
    }
    Graph::from_adjacency(adj)
}

/// Canonical representatives found in a sub-range of the mask space, keyed by
/// canonical form. Chunks from different workers merge into the same map.
pub fn catalog_chunk(n: usize, lo: u64, hi: u64) -> Result<HashMap<Vec<u8>, Graph>, GraphError> {
    if n > CATALOG_CAP {
        return Err(GraphError::SizeCapExceeded {
            n,
            cap: CATALOG_CAP,
        });
    }
    let mut out = HashMap::new();
    for mask in lo..hi {
        let g = graph_from_mask(n, mask);
        let form = canonical_form(&g)?;
        out.entry(form)
            .or_insert_with(|| canonical_graph(&g).expect("within cap"));
    }
    Ok(out)
}

/// All graphs on exactly n vertices up to isomorphism, sorted by canonical
/// form.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    let map = catalog_chunk(n, 0, mask_count(n))?;
    Ok(sorted_catalog(map))
}

pub fn sorted_catalog(map: HashMap<Vec<u8>, Graph>) -> Vec<Graph> {
    let mut entries: Vec<(Vec<u8>, Graph)> = map.into_iter().collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries.into_iter().map(|(_, g)| g).collect()
}
