//! Carrying compatible dominating models back across graph transformations.
//!
//! Each transformation pairs a graph operation with the rule for what the
//! anchor clique becomes; given a compatible model in the transformed graph,
//! `lift_model` rebuilds a compatible model in the original. For the two
//! contraction shapes the rebuild is uniform: replace every model vertex by
//! its preimage class, which un-contracts the merged class into whichever
//! branch set absorbed it.

use super::{
    is_l_compatible, verify_dominating_model, CliqueError, DominatingModel, OrderedClique,
};
use crate::bitset::VertexSet;
use crate::graph::{ContractionWitness, Graph, InducedSubgraph};
use thiserror::Error;

#[derive(Debug, Clone, Copy)]
pub enum LiftTransform<'a> {
    /// A connected subgraph containing the first clique vertex was
    /// contracted to a single vertex.
    ContractConnected { witness: &'a ContractionWitness },
    /// A connected subgraph of the neighbourhood of the first clique vertex,
    /// containing the second, was contracted to a single vertex.
    ContractInNeighbourhood { witness: &'a ContractionWitness },
    /// The model lives in an induced subgraph; the clique shrinks to its
    /// surviving members.
    RestrictToInduced { subgraph: &'a InducedSubgraph },
    /// No graph change: the model is compatible with an extension of the
    /// clique, and the extra constraint is simply dropped.
    ExtendClique,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("witness host does not match the supplied graph")]
    HostMismatch,
    #[error("transform requires a clique with at least {0} vertices")]
    CliqueTooSmall(usize),
    #[error("invalid clique: {0}")]
    Clique(#[from] CliqueError),
    #[error("contraction merged a class not containing the designated vertex")]
    ExtraContraction,
    #[error("contracted class is not inside the neighbourhood of the first clique vertex")]
    NotInNeighbourhood,
    #[error("contracted class contains the first clique vertex")]
    FirstVertexContracted,
    #[error("supplied transformed clique does not match the transformation")]
    CliquePrimeMismatch,
    #[error("induced-subgraph map is inconsistent with the graph")]
    BadSubgraphMap,
    #[error("model is not valid in the transformed graph")]
    ModelInvalid,
    #[error("model is not compatible with the transformed clique")]
    ModelIncompatible,
    #[error("lifted model failed verification")]
    LiftedModelInvalid,
}

/// Lift an `l_prime`-compatible dominating model of the transformed graph to
/// an `l`-compatible dominating model of `g`.
pub fn lift_model(
    g: &Graph,
    transform: &LiftTransform,
    model: &DominatingModel,
    l: &OrderedClique,
    l_prime: &OrderedClique,
) -> Result<DominatingModel, LiftError> {
    l.validate(g)?;
    let lifted = match transform {
        LiftTransform::ContractConnected { witness } => {
            lift_contract_first(g, witness, model, l, l_prime)?
        }
        LiftTransform::ContractInNeighbourhood { witness } => {
            lift_contract_neighbourhood(g, witness, model, l, l_prime)?
        }
        LiftTransform::RestrictToInduced { subgraph } => {
            lift_restrict(g, subgraph, model, l, l_prime)?
        }
        LiftTransform::ExtendClique => {
            l_prime.validate(g)?;
            if !l.is_initial_segment_of(l_prime) {
                return Err(LiftError::CliquePrimeMismatch);
            }
            check_model(g, model, l_prime)?;
            model.clone()
        }
    };
    if !verify_dominating_model(g, &lifted).is_empty() || !is_l_compatible(&lifted, l) {
        return Err(LiftError::LiftedModelInvalid);
    }
    Ok(lifted)
}

fn check_model(
    host: &Graph,
    model: &DominatingModel,
    l_prime: &OrderedClique,
) -> Result<(), LiftError> {
    if !verify_dominating_model(host, model).is_empty() {
        return Err(LiftError::ModelInvalid);
    }
    if !is_l_compatible(model, l_prime) {
        return Err(LiftError::ModelIncompatible);
    }
    Ok(())
}

/// Image of an ordered clique under a contraction. Vertices merged into the
/// same class collapse to one entry, keeping the lowest position.
fn clique_image(l: &OrderedClique, vertex_map: &[usize]) -> OrderedClique {
    let imgs: Vec<usize> = l.iter().map(|v| vertex_map[v]).collect();
    match imgs[..] {
        [] => OrderedClique::empty(),
        [a] => OrderedClique::single(a),
        [a, b] if a == b => OrderedClique::single(a),
        [a, b] => OrderedClique::pair(a, b).expect("distinct images"),
        _ => unreachable!(),
    }
}

fn preimage_union(witness: &ContractionWitness, set: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for (old, &new) in witness.vertex_map.iter().enumerate() {
        if set.contains(new) {
            out.insert(old);
        }
    }
    out
}

fn lift_by_preimage(witness: &ContractionWitness, model: &DominatingModel) -> DominatingModel {
    DominatingModel::new(
        model
            .branch_sets
            .iter()
            .map(|s| preimage_union(witness, s))
            .collect(),
    )
}

/// Only the class of `star` may have been merged; everything else must map
/// bijectively.
fn check_single_class(witness: &ContractionWitness, star: usize) -> Result<(), LiftError> {
    for (new, class) in witness.classes().iter().enumerate() {
        if new != star && class.count() != 1 {
            return Err(LiftError::ExtraContraction);
        }
    }
    Ok(())
}

fn lift_contract_first(
    g: &Graph,
    witness: &ContractionWitness,
    model: &DominatingModel,
    l: &OrderedClique,
    l_prime: &OrderedClique,
) -> Result<DominatingModel, LiftError> {
    if witness.host != *g {
        return Err(LiftError::HostMismatch);
    }
    let v1 = l.get(0).ok_or(LiftError::CliqueTooSmall(1))?;
    let star = witness.vertex_map[v1];
    check_single_class(witness, star)?;
    if clique_image(l, &witness.vertex_map) != *l_prime {
        return Err(LiftError::CliquePrimeMismatch);
    }
    check_model(&witness.result, model, l_prime)?;
    Ok(lift_by_preimage(witness, model))
}

fn lift_contract_neighbourhood(
    g: &Graph,
    witness: &ContractionWitness,
    model: &DominatingModel,
    l: &OrderedClique,
    l_prime: &OrderedClique,
) -> Result<DominatingModel, LiftError> {
    if witness.host != *g {
        return Err(LiftError::HostMismatch);
    }
    if l.len() < 2 {
        return Err(LiftError::CliqueTooSmall(2));
    }
    let (v1, v2) = (l.get(0).unwrap(), l.get(1).unwrap());
    let star = witness.vertex_map[v2];
    check_single_class(witness, star)?;
    let class = witness.preimage(star);
    if class.contains(v1) {
        return Err(LiftError::FirstVertexContracted);
    }
    if class.iter().any(|x| !g.has_edge(v1, x)) {
        return Err(LiftError::NotInNeighbourhood);
    }
    if clique_image(l, &witness.vertex_map) != *l_prime {
        return Err(LiftError::CliquePrimeMismatch);
    }
    check_model(&witness.result, model, l_prime)?;
    Ok(lift_by_preimage(witness, model))
}

fn lift_restrict(
    g: &Graph,
    sub: &InducedSubgraph,
    model: &DominatingModel,
    l: &OrderedClique,
    l_prime: &OrderedClique,
) -> Result<DominatingModel, LiftError> {
    // Validate the map against g before trusting it.
    if sub.old_to_new.len() != g.n() {
        return Err(LiftError::BadSubgraphMap);
    }
    for (new, &old) in sub.new_to_old.iter().enumerate() {
        if old >= g.n() || sub.old_to_new[old] != Some(new) {
            return Err(LiftError::BadSubgraphMap);
        }
    }
    for x in sub.graph.vertices() {
        for y in sub.graph.neighbours(x).iter() {
            if !g.has_edge(sub.new_to_old[x], sub.new_to_old[y]) {
                return Err(LiftError::BadSubgraphMap);
            }
        }
        let old = sub.new_to_old[x];
        for w in g.neighbours(old).iter() {
            if let Some(wn) = sub.old_to_new.get(w).copied().flatten() {
                if !sub.graph.has_edge(x, wn) {
                    return Err(LiftError::BadSubgraphMap);
                }
            }
        }
    }
    // The clique restricted to the subgraph, in subgraph indices.
    let surviving: Vec<usize> = l.iter().filter_map(|v| sub.old_to_new[v]).collect();
    let expected = OrderedClique::from_slice(&surviving).expect("at most two");
    if expected != *l_prime {
        return Err(LiftError::CliquePrimeMismatch);
    }
    check_model(&sub.graph, model, l_prime)?;
    Ok(DominatingModel::new(
        model
            .branch_sets
            .iter()
            .map(|s| s.iter().map(|v| sub.new_to_old[v]).collect())
            .collect(),
    ))
}
