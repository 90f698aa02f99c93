//! Name grammar for generator specs: k<N> complete, c<N> cycle, p<N> path,
//! kb<A>,<B> complete bipartite, plus the named graphs.

use domk_core::constructions::{
    complete, complete_bipartite, cycle, k55_minus_matching, k5_hat, path, petersen, split_k5,
    SplitChoice,
};
use domk_core::graph::Graph;
use domk_core::models::OrderedClique;

pub fn graph_by_name(name: &str) -> Result<Graph, String> {
    let name = name.trim().to_ascii_lowercase();
    match name.as_str() {
        "petersen" => return Ok(petersen()),
        "k5-hat" | "k5hat" => return Ok(k5_hat()),
        "k55-minus-matching" => return Ok(k55_minus_matching()),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("kb") {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| format!("expected kb<A>,<B>, got {name:?}"))?;
        let a: usize = a
            .parse()
            .map_err(|_| format!("bad side size in {name:?}"))?;
        let b: usize = b
            .parse()
            .map_err(|_| format!("bad side size in {name:?}"))?;
        return Ok(complete_bipartite(a, b));
    }
    if let Some(rest) = name.strip_prefix('k') {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("unknown graph name {name:?}"))?;
        return Ok(complete(n));
    }
    if let Some(rest) = name.strip_prefix('c') {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("unknown graph name {name:?}"))?;
        return cycle(n).map_err(|e| e.to_string());
    }
    if let Some(rest) = name.strip_prefix('p') {
        let n: usize = rest
            .parse()
            .map_err(|_| format!("unknown graph name {name:?}"))?;
        return path(n).map_err(|e| e.to_string());
    }
    Err(format!("unknown graph name {name:?}"))
}

/// Five comma-separated tokens, each u (unsplit) or a pairing 1..3.
pub fn split_from_spec(spec: &str) -> Result<Graph, String> {
    let tokens: Vec<&str> = spec.split(',').map(str::trim).collect();
    if tokens.len() != 5 {
        return Err(format!("--spec needs five entries, got {}", tokens.len()));
    }
    let mut choices = [SplitChoice::Unsplit; 5];
    for (slot, token) in choices.iter_mut().zip(tokens.iter()) {
        *slot = match *token {
            "u" => SplitChoice::Unsplit,
            "1" => SplitChoice::Pairing(1),
            "2" => SplitChoice::Pairing(2),
            "3" => SplitChoice::Pairing(3),
            other => return Err(format!("bad split choice {other:?}: use u, 1, 2 or 3")),
        };
    }
    split_k5(&choices).map_err(|e| e.to_string())
}

pub fn clique_from_spec(spec: &str) -> Result<OrderedClique, String> {
    let vs: Result<Vec<usize>, _> = spec.split(',').map(|s| s.trim().parse()).collect();
    let vs = vs.map_err(|_| format!("bad clique spec {spec:?}"))?;
    OrderedClique::from_slice(&vs).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_grammar() {
        assert_eq!(graph_by_name("k5").unwrap().n(), 5);
        assert_eq!(graph_by_name("c7").unwrap().edge_count(), 7);
        assert_eq!(graph_by_name("p4").unwrap().edge_count(), 3);
        assert_eq!(graph_by_name("kb3,4").unwrap().edge_count(), 12);
        assert_eq!(graph_by_name("petersen").unwrap().n(), 10);
        assert!(graph_by_name("frobnicator").is_err());
        assert!(graph_by_name("c2").is_err());
    }

    #[test]
    fn split_spec_grammar() {
        assert_eq!(split_from_spec("u,u,u,u,u").unwrap().n(), 5);
        assert_eq!(split_from_spec("1,u,u,u,u").unwrap().n(), 6);
        assert!(split_from_spec("u,u,u,u").is_err());
        assert!(split_from_spec("u,u,u,u,9").is_err());
    }
}
