//! Constructive labellings.
//!
//! * [`spanning_tree_labelling`]: two labels per edge of a BFS spanning
//!   tree, `2(n-1)` in total, routing every pair up to the root and back
//!   down.
//! * [`star_optimal_labelling`]: the `2n-3` star labelling.
//! * [`tree_lower_bound_check`]: exhaustive search for cheap TC labellings
//!   of small trees.
//! * [`hypercube_design`] / [`hypercube_journey`]: a minimal
//!   single-label-single-edge labelling of `Q_k` where every ordered pair has
//!   exactly one journey, flipping differing bits in increasing dimension.
//! * [`k4_redundant`] / [`clique_slse_reduce`]: a removable label in every
//!   single-label-single-edge `K_4`, applied blockwise to `K_n`.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Journey, Label, LabelSet, TemporalGraph, TimeEdge, Vertex};

/// Output of [`spanning_tree_labelling`].
#[derive(Clone, Debug)]
pub struct TreeDesign {
    pub root: Vertex,
    /// BFS parent of every vertex; `None` for the root.
    pub parent: Vec<Option<Vertex>>,
    pub depth: Vec<usize>,
    /// Longest root-to-leaf path length.
    pub radius: usize,
    /// Label used when crossing the edge `(parent[v], v)` towards the root.
    pub up_label: Vec<Label>,
    /// Label used when crossing the edge `(parent[v], v)` away from the root.
    pub down_label: Vec<Label>,
    pub labelling: TemporalGraph,
}

impl TreeDesign {
    /// The journey from `u` up to the root and down to `v`.
    pub fn journey(&self, u: Vertex, v: Vertex) -> Journey {
        let mut steps = Vec::new();
        let mut cur = u;
        while let Some(p) = self.parent[cur] {
            steps.push(TimeEdge::new(cur, p, self.up_label[cur]));
            cur = p;
        }
        let mut down = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            down.push(TimeEdge::new(p, cur, self.down_label[cur]));
            cur = p;
        }
        steps.extend(down.into_iter().rev());
        Journey::new(steps)
    }
}

/// Labels a BFS spanning tree of `g` rooted at `root`.
///
/// Going up, the edge above `v` gets one more than the largest label in the
/// subtree of `v` (1 above a leaf). Going down, the root's edges get `r + 1`
/// and each edge one more than its parent edge. Non-tree edges stay
/// unlabelled.
pub fn spanning_tree_labelling(g: &TemporalGraph, root: Vertex) -> Result<TreeDesign> {
    if g.is_directed() {
        return Err(Error::Directed);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooSmall(format!(
            "spanning tree design needs n >= 2, got {n}"
        )));
    }
    g.check_vertex(root)?;

    let adj = g.adjacency();
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    if order.len() != n {
        return Err(Error::NotConnected);
    }
    let radius = depth.iter().copied().max().unwrap_or(0);

    // Children in increasing id order.
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }

    // subtree_max[v]: largest upward label inside the subtree rooted at v.
    let mut subtree_max = vec![0 as Label; n];
    let mut up_label = vec![0 as Label; n];
    for &v in order.iter().rev() {
        if v == root {
            continue;
        }
        let inner = children[v]
            .iter()
            .map(|&c| subtree_max[c])
            .max()
            .unwrap_or(0);
        up_label[v] = inner + 1;
        subtree_max[v] = up_label[v];
    }

    let mut down_label = vec![0 as Label; n];
    for &v in &order {
        if let Some(p) = parent[v] {
            down_label[v] = if p == root {
                radius as Label + 1
            } else {
                down_label[p] + 1
            };
        }
    }

    let mut labelling = g.underlying();
    for v in 0..n {
        if let Some(p) = parent[v] {
            labelling.set_labels(p, v, LabelSet::from([up_label[v], down_label[v]]))?;
        }
    }

    Ok(TreeDesign {
        root,
        parent,
        depth,
        radius,
        up_label,
        down_label,
        labelling,
    })
}

/// Star on `n` vertices with centre 0: leaves `1..n-1` get `{1, 3}` and
/// leaf `n-1` gets `{2}`.
pub fn star_optimal_labelling(n: usize) -> Result<TemporalGraph> {
    if n < 3 {
        return Err(Error::TooSmall(format!(
            "star labelling needs n >= 3, got {n}"
        )));
    }
    let mut g = TemporalGraph::undirected(n);
    for leaf in 1..n - 1 {
        g.set_labels(0, leaf, LabelSet::from([1, 3]))?;
    }
    g.set_labels(0, n - 1, LabelSet::from([2]))?;
    Ok(g)
}

/// Default vertex limit for [`tree_lower_bound_check`].
pub const DEFAULT_TREE_SEARCH_LIMIT: usize = 5;

/// Is there a labelling of `tree` with labels from `1..=label_universe` and
/// total cost at most `budget` that satisfies TC? Decided by exhaustive
/// enumeration; trees with more than `max_vertices` vertices are refused.
pub fn tree_lower_bound_check(
    tree: &TemporalGraph,
    budget: usize,
    label_universe: Label,
    max_vertices: usize,
) -> Result<bool> {
    let n = tree.vertex_count();
    if tree.is_directed() {
        return Err(Error::Directed);
    }
    if n > max_vertices.min(64) {
        return Err(Error::InstanceTooLarge(format!(
            "tree with {n} vertices exceeds the search limit of {max_vertices}"
        )));
    }
    if tree.edge_count() + 1 != n || !tree.is_connected() {
        return Err(Error::NotConnected);
    }
    if n <= 1 {
        return Ok(true);
    }

    let edges: Vec<Edge> = tree.edges().map(|(e, _)| e).collect();
    let max_per_edge = budget.min(label_universe as usize);
    // subsets[k] = all k-subsets of the universe, as sorted vectors.
    let subsets: Vec<Vec<Vec<Label>>> = (0..=max_per_edge)
        .map(|k| k_subsets(label_universe, k))
        .collect();

    // Fan out over the first edge's choice.
    let first: Vec<&Vec<Label>> = subsets.iter().flatten().collect();
    let found = first.par_iter().any(|s0| {
        let mut chosen: Vec<&[Label]> = vec![s0.as_slice()];
        search_tree(n, &edges, &subsets, budget - s0.len(), &mut chosen)
    });
    Ok(found)
}

fn search_tree<'a>(
    n: usize,
    edges: &[Edge],
    subsets: &'a [Vec<Vec<Label>>],
    remaining: usize,
    chosen: &mut Vec<&'a [Label]>,
) -> bool {
    if chosen.len() == edges.len() {
        return small_tc(n, edges, chosen);
    }
    for size in 0..=remaining.min(subsets.len() - 1) {
        for s in &subsets[size] {
            chosen.push(s);
            let hit = search_tree(n, edges, subsets, remaining - size, chosen);
            chosen.pop();
            if hit {
                return true;
            }
        }
    }
    false
}

fn k_subsets(universe: Label, k: usize) -> Vec<Vec<Label>> {
    fn rec(
        start: Label,
        universe: Label,
        k: usize,
        cur: &mut Vec<Label>,
        out: &mut Vec<Vec<Label>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for l in start..=universe {
            cur.push(l);
            rec(l + 1, universe, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, universe, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// TC test for undirected graphs with at most 64 vertices, by a
/// label-ordered sweep of 64-bit reach sets.
fn small_tc(n: usize, edges: &[Edge], labels: &[&[Label]]) -> bool {
    let mut steps: Vec<(Label, Vertex, Vertex)> = Vec::with_capacity(32);
    for (e, ls) in edges.iter().zip(labels) {
        for &l in ls.iter() {
            steps.push((l, e.u, e.v));
        }
    }
    steps.sort_unstable_by_key(|s| s.0);
    let mut reach = [0u64; 64];
    for (v, r) in reach.iter_mut().enumerate().take(n) {
        *r = 1 << v;
    }
    let mut i = 0;
    let mut updates: Vec<(Vertex, u64)> = Vec::with_capacity(16);
    while i < steps.len() {
        let l = steps[i].0;
        updates.clear();
        while i < steps.len() && steps[i].0 == l {
            let (_, a, b) = steps[i];
            updates.push((b, reach[a]));
            updates.push((a, reach[b]));
            i += 1;
        }
        for &(v, bits) in &updates {
            reach[v] |= bits;
        }
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    reach[..n].iter().all(|&r| r == full)
}

/// Largest supported hypercube dimension.
pub const MAX_HYPERCUBE_DIMENSION: u32 = 16;

/// Output of [`hypercube_design`].
#[derive(Clone, Debug)]
pub struct HypercubeDesign {
    pub k: u32,
    pub labelling: TemporalGraph,
}

impl HypercubeDesign {
    pub fn vertex_count(&self) -> usize {
        1 << self.k
    }

    /// Dimension (1-based) whose edges carry `label`.
    pub fn dimension_of_label(&self, label: Label) -> Option<u32> {
        let per_dim = 1u32 << (self.k - 1);
        (label >= 1 && label <= self.k * per_dim).then(|| (label - 1) / per_dim + 1)
    }
}

/// Labels `Q_k`: dimension `i` (bit `i-1`) receives the consecutive labels
/// `(i-1)2^(k-1)+1 ..= i 2^(k-1)`, assigned to its edges in order of the
/// smaller endpoint.
pub fn hypercube_design(k: u32) -> Result<HypercubeDesign> {
    if k == 0 {
        return Err(Error::TooSmall("hypercube dimension must be >= 1".into()));
    }
    if k > MAX_HYPERCUBE_DIMENSION {
        return Err(Error::InstanceTooLarge(format!(
            "hypercube dimension {k} exceeds {MAX_HYPERCUBE_DIMENSION}"
        )));
    }
    let n = 1usize << k;
    let per_dim = 1u32 << (k - 1);
    let mut g = TemporalGraph::undirected(n);
    for dim in 1..=k {
        let bit = 1usize << (dim - 1);
        let mut next = (dim - 1) * per_dim + 1;
        for u in (0..n).filter(|u| u & bit == 0) {
            g.set_labels(u, u | bit, LabelSet::from([next]))?;
            next += 1;
        }
    }
    Ok(HypercubeDesign { k, labelling: g })
}

/// The journey from `u` to `v` that flips the differing bits in increasing
/// dimension order.
pub fn hypercube_journey(d: &HypercubeDesign, u: Vertex, v: Vertex) -> Result<Journey> {
    d.labelling.check_vertex(u)?;
    d.labelling.check_vertex(v)?;
    if u == v {
        return Err(Error::EqualEndpoints);
    }
    let diff = u ^ v;
    let mut cur = u;
    let mut steps = Vec::new();
    for bit in 0..d.k {
        if diff >> bit & 1 == 1 {
            let next = cur ^ (1 << bit);
            let label = d
                .labelling
                .labels(cur, next)
                .and_then(LabelSet::min)
                .expect("hypercube edge is labelled");
            steps.push(TimeEdge::new(cur, next, label));
            cur = next;
        }
    }
    Ok(Journey::new(steps))
}

/// A label of a single-label-single-edge `K_4` whose removal keeps TC.
///
/// The vertices are named `v1..v4` so that the perimeter labels
/// `a={v1,v2}`, `b={v1,v4}`, `c={v2,v3}`, `d={v3,v4}` (diagonals
/// `x={v2,v4}`, `y={v1,v3}`) fall into one of three orderings:
///
/// * alternation `a<b>d<c>a`: both diagonals are redundant; `x` is returned,
/// * cycle `a<b<d<c`: `x` is redundant,
/// * entanglement `a<b<c<d`, split on the position of `x` and `y`.
pub fn k4_redundant(g: &TemporalGraph) -> Result<(Edge, Label)> {
    if g.vertex_count() != 4 || g.is_directed() {
        return Err(Error::NotComplete(" on 4 vertices"));
    }
    check_complete_slse(g)?;
    Ok(k4_choice([0, 1, 2, 3], |u, v| single_label(g, u, v)))
}

fn single_label(g: &TemporalGraph, u: Vertex, v: Vertex) -> Label {
    g.labels(u, v).and_then(LabelSet::min).expect("SLSE edge")
}

fn check_complete_slse(g: &TemporalGraph) -> Result<()> {
    let n = g.vertex_count();
    if g.is_directed() || g.edge_count() != n * (n - 1) / 2 {
        return Err(Error::NotComplete(""));
    }
    if !g.is_slse() {
        return Err(Error::NotSlse);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum K4Removal {
    A,
    B,
    C,
    X,
}

fn k4_case(a: Label, b: Label, c: Label, d: Label, x: Label, y: Label) -> Option<K4Removal> {
    use K4Removal::*;
    if a < b && b > d && d < c && c > a {
        return Some(X);
    }
    if a < b && b < d && d < c {
        return Some(X);
    }
    if a < b && b < c && c < d {
        return match (x < b, y < b, y < c) {
            (true, _, true) => Some(A),
            (true, _, false) => Some(B),
            (false, _, false) => Some(A),
            (false, false, true) => Some(X),
            (false, true, _) => Some(C),
        };
    }
    None
}

fn k4_choice(vs: [Vertex; 4], label: impl Fn(Vertex, Vertex) -> Label) -> (Edge, Label) {
    for p in permutations4() {
        let [v1, v2, v3, v4] = p.map(|i| vs[i]);
        let a = label(v1, v2);
        let b = label(v1, v4);
        let c = label(v2, v3);
        let d = label(v3, v4);
        let x = label(v2, v4);
        let y = label(v1, v3);
        if let Some(which) = k4_case(a, b, c, d, x, y) {
            let (u, v, l) = match which {
                K4Removal::A => (v1, v2, a),
                K4Removal::B => (v1, v4, b),
                K4Removal::C => (v2, v3, c),
                K4Removal::X => (v2, v4, x),
            };
            return (Edge::undirected(u, v), l);
        }
    }
    unreachable!("every ordering of six distinct labels on K4 matches a case")
}

fn permutations4() -> impl Iterator<Item = [usize; 4]> {
    (0..4).flat_map(|a| {
        (0..4).flat_map(move |b| {
            (0..4).flat_map(move |c| {
                (0..4).filter_map(move |d| {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter()
                        .all(|&i| !std::mem::replace(&mut seen[i], true))
                        .then_some(p)
                })
            })
        })
    })
}

/// The labels removed by [`clique_slse_reduce`]: one per block of four
/// consecutive vertex ids.
pub fn clique_slse_removals(g: &TemporalGraph) -> Result<Vec<(Edge, Label)>> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(Error::TooSmall(format!(
            "clique reduction needs n >= 4, got {n}"
        )));
    }
    check_complete_slse(g)?;
    Ok((0..n / 4)
        .map(|block| {
            let base = 4 * block;
            k4_choice([base, base + 1, base + 2, base + 3], |u, v| {
                single_label(g, u, v)
            })
        })
        .collect())
}

/// Removes one label from each full block of four vertices of a
/// single-label-single-edge complete graph: at least `n/4` labels, TC kept.
pub fn clique_slse_reduce(g: &TemporalGraph) -> Result<TemporalGraph> {
    let mut out = g.clone();
    for (e, l) in clique_slse_removals(g)? {
        out.remove_label_in_place(e, l)?;
    }
    Ok(out)
}
