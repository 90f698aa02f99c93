//! Shared helpers for the integration suites: independent brute-force
//! oracles (kept deliberately separate from the library's search paths) and
//! seeded random graph generators.

#![allow(dead_code)]

use domk_core::bitset::VertexSet;
use domk_core::graph::Graph;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Order-preserving parallel map over owned items.
pub fn par_map<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    let slots: Vec<std::sync::Mutex<Option<T>>> = items
        .into_iter()
        .map(|t| std::sync::Mutex::new(Some(t)))
        .collect();
    let cursor = std::sync::atomic::AtomicUsize::new(0);
    let (tx, rx) = std::sync::mpsc::channel::<(usize, R)>();
    let mut out: Vec<Option<R>> = (0..slots.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers.min(slots.len()) {
            let tx = tx.clone();
            let cursor = &cursor;
            let slots = &slots;
            let f = &f;
            scope.spawn(move || loop {
                let idx = cursor.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if idx >= slots.len() {
                    break;
                }
                let item = slots[idx].lock().unwrap().take().expect("taken once");
                let _ = tx.send((idx, f(item)));
            });
        }
        drop(tx);
        for (idx, r) in rx {
            out[idx] = Some(r);
        }
    });
    out.into_iter().map(|r| r.expect("all filled")).collect()
}

/// Exhaustive k-colourability by counting through all k^n assignments.
pub fn brute_k_colourable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let edges = g.edges();
    let mut assignment = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| assignment[u] != assignment[v]) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            assignment[pos] += 1;
            if assignment[pos] < k {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Exhaustive dominating-K_t-model existence by enumerating every assignment
/// of vertices to {none, T_1, ..., T_t}. Vertices in `pin_t1` are fixed in
/// T_1.
pub fn brute_dominating_model_exists(g: &Graph, t: usize, pin_t1: &[usize]) -> bool {
    let n = g.n();
    let free: Vec<usize> = (0..n).filter(|v| !pin_t1.contains(v)).collect();
    let mut slot = vec![0usize; n]; // 0 = unassigned, 1..=t = branch set
    for &v in pin_t1 {
        slot[v] = 1;
    }
    let mut counter = vec![0usize; free.len()];
    loop {
        for (i, &v) in free.iter().enumerate() {
            slot[v] = counter[i];
        }
        if dominating_assignment_valid(g, t, &slot) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return false;
            }
            counter[pos] += 1;
            if counter[pos] <= t {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

fn dominating_assignment_valid(g: &Graph, t: usize, slot: &[usize]) -> bool {
    let mut sets = vec![VertexSet::new(); t];
    for (v, &s) in slot.iter().enumerate() {
        if s > 0 {
            sets[s - 1].insert(v);
        }
    }
    if sets.iter().any(|s| s.is_empty()) {
        return false;
    }
    if sets.iter().any(|s| !g.is_connected_subset(s)) {
        return false;
    }
    for j in 1..t {
        for v in sets[j].iter() {
            for set in sets.iter().take(j) {
                if !g.neighbours(v).intersects(set) {
                    return false;
                }
            }
        }
    }
    true
}

/// Independent exhaustive subdivision-existence oracle: enumerate injective
/// branch maps and all internally disjoint path systems, with no ordering
/// heuristics.
pub fn brute_subdivision_exists(g: &Graph, h: &Graph) -> bool {
    let hn = h.n();
    if hn > g.n() {
        return false;
    }
    let mut map = vec![usize::MAX; hn];
    let mut used = vec![false; g.n()];
    brute_assign(g, h, 0, &mut map, &mut used)
}

fn brute_assign(
    g: &Graph,
    h: &Graph,
    pv: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pv == h.n() {
        let edges = h.edges();
        let mut blocked: Vec<bool> = used.clone();
        return brute_routes(g, &edges, map, 0, &mut blocked);
    }
    for gv in 0..g.n() {
        if used[gv] || g.degree(gv) < h.degree(pv) {
            continue;
        }
        map[pv] = gv;
        used[gv] = true;
        if brute_assign(g, h, pv + 1, map, used) {
            return true;
        }
        used[gv] = false;
        map[pv] = usize::MAX;
    }
    false
}

fn brute_routes(
    g: &Graph,
    edges: &[(usize, usize)],
    map: &[usize],
    idx: usize,
    blocked: &mut Vec<bool>,
) -> bool {
    if idx == edges.len() {
        return true;
    }
    let (s, t) = (map[edges[idx].0], map[edges[idx].1]);
    let mut path = vec![s];
    brute_walk(g, edges, map, idx, t, &mut path, blocked)
}

fn brute_walk(
    g: &Graph,
    edges: &[(usize, usize)],
    map: &[usize],
    idx: usize,
    target: usize,
    path: &mut Vec<usize>,
    blocked: &mut Vec<bool>,
) -> bool {
    let cur = *path.last().unwrap();
    for next in g.neighbours(cur).iter() {
        if next == target {
            for &x in &path[1..] {
                blocked[x] = true;
            }
            let ok = brute_routes(g, edges, map, idx + 1, blocked);
            for &x in &path[1..] {
                blocked[x] = false;
            }
            if ok {
                return true;
            }
            continue;
        }
        if blocked[next] || path.contains(&next) {
            continue;
        }
        path.push(next);
        if brute_walk(g, edges, map, idx, target, path, blocked) {
            return true;
        }
        path.pop();
    }
    false
}

/// Random simple graph with edge probability p.
pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected graph: spanning tree plus extra random edges.
pub fn random_connected_graph(rng: &mut StdRng, n: usize, extra_edges: usize) -> Graph {
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((order[i], order[j]));
    }
    for _ in 0..extra_edges {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random connected cubic graph by the pairing model with rejection.
pub fn random_cubic_graph(rng: &mut StdRng, n: usize) -> Graph {
    assert!(n.is_multiple_of(2) && n >= 4);
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(rng);
        let mut edges = Vec::with_capacity(3 * n / 2);
        let mut ok = true;
        let mut seen = std::collections::HashSet::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                ok = false;
                break;
            }
            edges.push((u, v));
        }
        if !ok {
            continue;
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// graph6 encoder written independently from the library's, straight from
/// the format description, as a cross-check oracle.
pub fn oracle_graph6_encode(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62, "oracle covers the short form");
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    while bits.len() % 6 != 0 {
        bits.push(false);
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (k, &bit) in chunk.iter().enumerate() {
            if bit {
                value |= 1 << (5 - k);
            }
        }
        out.push((value + 63) as char);
    }
    out
}

/// Companion decoder for the oracle encoder.
pub fn oracle_graph6_decode(line: &str) -> Graph {
    let bytes = line.as_bytes();
    let n = (bytes[0] - 63) as usize;
    let mut bits = Vec::new();
    for &b in &bytes[1..] {
        let v = b - 63;
        for k in 0..6 {
            bits.push((v >> (5 - k)) & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}
