//! Dominating K_t-models in small graphs.
//!
//! A dominating K_t-model in a graph G is a sequence (T_1, ..., T_t) of
//! pairwise disjoint connected subgraphs such that for all i < j every
//! vertex of T_j has a neighbour in T_i. Weakening "every" to "some"
//! gives the standard K_t-model, i.e. a K_t-minor with named branch sets.
//!
//! This crate provides the graph substrate (bitset adjacency, graph6 I/O,
//! contraction, connectivity, canonical forms), exact k-colouring, exhaustive
//! model search and verification, the model-lifting transformations for
//! contraction/deletion/clique-extension, generators for the named example
//! families (including the 22 graphs obtained by splitting K_5), a
//! constructive dominating-K_4 builder, and subdivision (topological minor)
//! search together with the K_5-or-K_5-hat extractor that turns a dominating
//! K_5-model into an explicit subdivision embedding.
//!
//! Everything is exact and deterministic: same inputs, same outputs.

pub mod bitset;
pub mod canon;
pub mod catalog;
pub mod colouring;
pub mod constructions;
pub mod graph;
pub mod graph6;
pub mod models;
pub mod subdivision;

pub use bitset::VertexSet;
pub use canon::{canonical_form, canonical_graph, is_isomorphic, CANONICAL_CAP};
pub use colouring::{chromatic_number, k_colour, stitch_colourings, verify_colouring, Colouring};
pub use graph::{ContractionWitness, Graph, GraphError, InducedSubgraph, Separation};
pub use graph6::{parse_graph6, to_graph6, Graph6Error};
pub use models::{
    find_dominating_model, find_standard_model, induced_cycle_normalize, is_l_compatible,
    lift_model, singleton_normalize, verify_dominating_model, verify_standard_model,
    DominatingModel, LiftTransform, ModelViolation, OrderedClique, SearchMode,
};
pub use subdivision::{
    check_unsubdivided_incident_edges, extract_k5_or_k5hat, find_subdivision, verify_subdivision,
    Extraction, PatternKind, SubdivisionEmbedding,
};
