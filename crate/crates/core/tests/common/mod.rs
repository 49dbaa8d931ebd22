//! Independent oracles and generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tcdesign::{is_temporally_connected, Edge, Label, TemporalGraph, Vertex};

/// A random graph on `n` vertices with up to `max_labels` label instances
/// drawn from `1..=alpha` on random vertex pairs.
pub fn random_temporal_graph(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_labels: usize,
    alpha: Label,
    directed: bool,
) -> TemporalGraph {
    let mut g = TemporalGraph::new(n, directed);
    if n < 2 {
        return g;
    }
    let count = rng.random_range(0..=max_labels);
    for _ in 0..count {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.add_label(u, v, rng.random_range(1..=alpha)).unwrap();
    }
    g
}

/// A random connected graph: a random recursive tree plus `extra` random
/// edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> TemporalGraph {
    let mut g = TemporalGraph::undirected(n);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        g.add_edge(order[i], parent).unwrap();
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Every label-increasing walk from `u`, counted by endpoint. Walks may
/// revisit vertices; they are finite because labels strictly increase.
pub fn journey_counts_from(g: &TemporalGraph, u: Vertex) -> Vec<usize> {
    fn go(g: &TemporalGraph, at: Vertex, after: Label, counts: &mut Vec<usize>) {
        for te in g.time_edges() {
            if te.from == at && te.label > after {
                counts[te.to] += 1;
                go(g, te.to, te.label, counts);
            }
        }
    }
    let mut counts = vec![0; g.vertex_count()];
    go(g, u, 0, &mut counts);
    counts
}

/// The label-increasing walks from `u` to `v`, as vertex sequences.
pub fn journeys_between(
    g: &TemporalGraph,
    u: Vertex,
    v: Vertex,
) -> Vec<Vec<(Vertex, Vertex, Label)>> {
    fn go(
        g: &TemporalGraph,
        at: Vertex,
        after: Label,
        target: Vertex,
        path: &mut Vec<(Vertex, Vertex, Label)>,
        out: &mut Vec<Vec<(Vertex, Vertex, Label)>>,
    ) {
        for te in g.time_edges() {
            if te.from == at && te.label > after {
                path.push((te.from, te.to, te.label));
                if te.to == target {
                    out.push(path.clone());
                }
                go(g, te.to, te.label, target, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, u, 0, v, &mut Vec::new(), &mut out);
    out
}

/// Maximum number of label instances removable with TC kept, by trying
/// every subset.
pub fn subset_sweep_profit(g: &TemporalGraph) -> usize {
    let inst = g.label_instances();
    let c = inst.len();
    assert!(c <= 16, "subset sweep limited to 16 labels");
    let mut best = 0;
    for mask in 0u32..(1 << c) {
        let removed = mask.count_ones() as usize;
        if removed <= best {
            continue;
        }
        let mut h = g.clone();
        for (i, &(e, l)) in inst.iter().enumerate() {
            if mask >> i & 1 == 1 {
                h.remove_label_in_place(e, l).unwrap();
            }
        }
        if is_temporally_connected(&h) {
            best = removed;
        }
    }
    best
}

/// Trees on `n` labelled vertices from Prüfer sequences, one per
/// isomorphism class.
pub fn nonisomorphic_trees(n: usize) -> Vec<TemporalGraph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let total = n.pow((n - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let edges = prufer_edges(n, &seq);
        if seen.insert(canonical_form(n, &edges)) {
            out.push(TemporalGraph::from_edges(n, false, edges).unwrap());
        }
    }
    out
}

fn prufer_edges(n: usize, seq: &[usize]) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Lexicographically smallest sorted edge list over all vertex
/// permutations.
pub fn canonical_form(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let mut best: Option<Vec<(Vertex, Vertex)>> = None;
    for perm in permutations(n) {
        let mut mapped: Vec<(Vertex, Vertex)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    }
    best.unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `K_n` with the labels `1..=n(n-1)/2` in a random order.
pub fn random_slse_clique(rng: &mut ChaCha8Rng, n: usize) -> TemporalGraph {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut labels: Vec<Label> = (1..=pairs.len() as Label).collect();
    labels.shuffle(rng);
    TemporalGraph::from_labelled_edges(
        n,
        false,
        pairs.into_iter().zip(labels).map(|((u, v), l)| (u, v, [l])),
    )
    .unwrap()
}

/// The set of `(edge, label)` pairs of `g`.
pub fn instance_set(g: &TemporalGraph) -> BTreeSet<(Edge, Label)> {
    g.label_instances().into_iter().collect()
}
