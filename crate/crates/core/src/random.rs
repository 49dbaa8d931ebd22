//! Uniform random temporal graphs and router-based sparsification.
//!
//! Labels `1..=alpha` are split into four consecutive classes `A1..A4`
//! (green, yellow, blue, red). A journey whose consecutive steps use
//! consecutive classes is automatically label-increasing, which is what both
//! routers rely on:
//!
//! * the clique router keeps only the edges touching `2s + 1` router
//!   vertices, `s = ceil(gamma log2 n)`, and joins outside vertices through
//!   special paths `w - v_in - v0 - v_out - w'`;
//! * the G(n,p) router collects theta subgraphs `(v1, v2, a_i, b_i)` and
//!   attaches every outside vertex by one green edge to some `a_i` and one
//!   red edge from the matching `b_i`.
//!
//! Every trial derives its randomness from one `u64` seed, reported back for
//! replay.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Journey, Label, LabelSet, TemporalGraph, TimeEdge, Vertex};
use crate::reachability::is_temporally_connected;

const EDGE_STREAM: u64 = 0;
const SHUFFLE_STREAM: u64 = 1;
const LABEL_STREAM: u64 = 2;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Seed of trial `index` in a run with base seed `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut r = ChaCha8Rng::seed_from_u64(base);
    r.set_stream(index);
    r.next_u64()
}

fn check_alpha(alpha: Label, min: Label) -> Result<()> {
    if alpha < min {
        return Err(Error::TooSmall(format!(
            "alpha must be >= {min}, got {alpha}"
        )));
    }
    Ok(())
}

/// Gives every edge of `g` one label drawn uniformly from `1..=alpha`,
/// replacing any labels it had.
pub fn uniform_random_labelling(
    g: &TemporalGraph,
    alpha: Label,
    seed: u64,
) -> Result<TemporalGraph> {
    check_alpha(alpha, 1)?;
    let mut r = rng(seed, LABEL_STREAM);
    let mut out = g.underlying();
    let edges: Vec<_> = g.edges().map(|(e, _)| e).collect();
    for e in edges {
        out.set_labels(e.u, e.v, LabelSet::from([r.random_range(1..=alpha)]))?;
    }
    Ok(out)
}

/// `K_n` without labels.
pub fn complete_graph(n: usize) -> TemporalGraph {
    TemporalGraph::from_edges(
        n,
        false,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))),
    )
    .expect("valid complete graph")
}

/// Four consecutive label classes tiling `1..=alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelPartition {
    pub alpha: Label,
    /// Inclusive `(first, last)` of `A1..A4`.
    pub ranges: [(Label, Label); 4],
}

impl LabelPartition {
    /// `k` in `alpha = 4k + v`.
    pub fn k(&self) -> Label {
        self.alpha / 4
    }

    pub fn size(&self, class: usize) -> Label {
        let (lo, hi) = self.ranges[class];
        hi - lo + 1
    }

    /// Class index `0..4` of `label`.
    pub fn class_of(&self, label: Label) -> Option<usize> {
        self.ranges
            .iter()
            .position(|&(lo, hi)| (lo..=hi).contains(&label))
    }

    pub fn contains(&self, class: usize, label: Label) -> bool {
        self.class_of(label) == Some(class)
    }

    /// Probability that a uniform label from `1..=alpha` lands in `class`.
    pub fn probability(&self, class: usize) -> f64 {
        self.size(class) as f64 / self.alpha as f64
    }
}

pub const GREEN: usize = 0;
pub const YELLOW: usize = 1;
pub const BLUE: usize = 2;
pub const RED: usize = 3;

/// Splits `1..=alpha` by `v = alpha mod 4`: the last `v` classes get one
/// extra label.
pub fn partition_labels(alpha: Label) -> Result<LabelPartition> {
    check_alpha(alpha, 4)?;
    let k = alpha / 4;
    let v = alpha % 4;
    let mut ranges = [(0, 0); 4];
    let mut next = 1;
    for (i, r) in ranges.iter_mut().enumerate() {
        let size = k + u32::from(i as Label >= 4 - v);
        *r = (next, next + size - 1);
        next += size;
    }
    Ok(LabelPartition { alpha, ranges })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouterKind {
    Clique,
    Gnp,
}

/// Outcome of one sparsification trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RouterReport {
    pub kind: RouterKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub alpha: Label,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    pub seed: u64,
    pub original_label_count: usize,
    pub kept_label_count: usize,
    pub tc_verdict: bool,
    pub router_vertices: usize,
    /// Special paths per outside pair (clique router).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_paths: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_count: Option<usize>,
    /// Outside vertices with no green/red attachment (G(n,p) router).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unattached: Option<usize>,
}

/// Centre `v0`, and `V_in`, `V_out` of size `s` each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueRouter {
    pub centre: Vertex,
    pub v_in: Vec<Vertex>,
    pub v_out: Vec<Vertex>,
}

impl CliqueRouter {
    /// Lowest ids: `v0 = 0`, `V_in = 1..=s`, `V_out = s+1..=2s`.
    pub fn new(s: usize) -> Self {
        CliqueRouter {
            centre: 0,
            v_in: (1..=s).collect(),
            v_out: (s + 1..=2 * s).collect(),
        }
    }

    pub fn s(&self) -> usize {
        self.v_in.len()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.s() + 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v == self.centre || self.v_in.contains(&v) || self.v_out.contains(&v)
    }

    /// The `i`-th special path `(w, v_in[i], v0, v_out[i], w2)`.
    pub fn special_path(&self, w: Vertex, w2: Vertex, i: usize) -> [Vertex; 5] {
        [w, self.v_in[i], self.centre, self.v_out[i], w2]
    }
}

/// `s = ceil(gamma log2 n)`, at least 1.
pub fn router_half_size(n: usize, gamma: f64) -> Result<usize> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::TooSmall(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    if n < 2 {
        return Err(Error::TooSmall(format!("n must be >= 2, got {n}")));
    }
    Ok(((gamma * (n as f64).log2()).ceil() as usize).max(1))
}

/// Labels kept by the clique router: all edges inside it plus every edge
/// from an outside vertex to it.
pub fn clique_kept_count(n: usize, s: usize) -> usize {
    let r = 2 * s + 1;
    r * (r - 1) / 2 + (n - r) * r
}

/// Output of [`clique_router_sparsify`].
#[derive(Clone, Debug)]
pub struct CliqueSparsification {
    pub graph: TemporalGraph,
    pub router: CliqueRouter,
    pub partition: LabelPartition,
    pub report: RouterReport,
}

/// Labels `K_n` uniformly from `1..=alpha` and keeps only the edges touching
/// the clique router.
pub fn clique_router_sparsify(
    n: usize,
    alpha: Label,
    gamma: f64,
    seed: u64,
) -> Result<CliqueSparsification> {
    let partition = partition_labels(alpha)?;
    let s = router_half_size(n, gamma)?;
    let router = CliqueRouter::new(s);
    if router.vertex_count() >= n {
        return Err(Error::RouterDoesNotFit {
            router: router.vertex_count(),
            n,
        });
    }
    let full = uniform_random_labelling(&complete_graph(n), alpha, seed)?;
    let mut graph = TemporalGraph::undirected(n);
    for (e, ls) in full.edges() {
        if router.contains(e.u) || router.contains(e.v) {
            graph.set_labels(e.u, e.v, ls.clone())?;
        }
    }
    let report = RouterReport {
        kind: RouterKind::Clique,
        n,
        p: None,
        alpha,
        gamma: Some(gamma),
        seed,
        original_label_count: full.cost(),
        kept_label_count: graph.cost(),
        tc_verdict: is_temporally_connected(&graph),
        router_vertices: router.vertex_count(),
        special_paths: Some(s),
        theta_count: None,
        unattached: None,
    };
    Ok(CliqueSparsification {
        graph,
        router,
        partition,
        report,
    })
}

fn single_label(g: &TemporalGraph, a: Vertex, b: Vertex) -> Option<Label> {
    g.labels(a, b).and_then(LabelSet::min)
}

fn coloured_walk(
    g: &TemporalGraph,
    partition: &LabelPartition,
    walk: &[Vertex],
    colours: &[usize],
) -> Option<Journey> {
    let mut steps = Vec::with_capacity(colours.len());
    for (pair, &colour) in walk.windows(2).zip(colours) {
        let l = single_label(g, pair[0], pair[1])?;
        if !partition.contains(colour, l) {
            return None;
        }
        steps.push(TimeEdge::new(pair[0], pair[1], l));
    }
    Some(Journey::new(steps))
}

/// The special paths from `w` to `w2` coloured green, yellow, blue, red in
/// order, as journeys.
pub fn coloured_special_paths(s: &CliqueSparsification, w: Vertex, w2: Vertex) -> Vec<Journey> {
    (0..s.router.s())
        .filter_map(|i| {
            coloured_walk(
                &s.graph,
                &s.partition,
                &s.router.special_path(w, w2, i),
                &[GREEN, YELLOW, BLUE, RED],
            )
        })
        .collect()
}

/// Seeded `G(n,p)` without labels.
///
/// Edge `{u,v}` exists iff its uniform draw is below `p`; the draws depend
/// only on the seed, so for a fixed seed the graphs grow with `p`.
pub fn gnp_instance(n: usize, p: f64, seed: u64) -> Result<TemporalGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut r = rng(seed, EDGE_STREAM);
    let mut g = TemporalGraph::undirected(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.random::<f64>() < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `G(n,p)` with a uniform label from `1..=alpha` per edge.
pub fn gnp_labelled(n: usize, p: f64, alpha: Label, seed: u64) -> Result<TemporalGraph> {
    uniform_random_labelling(&gnp_instance(n, p, seed)?, alpha, seed)
}

/// Hubs `v1`, `v2` and the theta pairs `(a_i, b_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRouter {
    pub v1: Vertex,
    pub v2: Vertex,
    pub thetas: Vec<(Vertex, Vertex)>,
}

impl ThetaRouter {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![self.v1, self.v2];
        for &(a, b) in &self.thetas {
            out.push(a);
            out.push(b);
        }
        out
    }
}

/// The five coloured edges of a theta: `{a,b}` green, `{a,v1}` yellow,
/// `{v1,b}` blue, `{v2,a}` blue, `{b,v2}` yellow.
pub fn theta_edges(v1: Vertex, v2: Vertex, a: Vertex, b: Vertex) -> [(Vertex, Vertex, usize); 5] {
    [
        (a, b, GREEN),
        (a, v1, YELLOW),
        (v1, b, BLUE),
        (v2, a, BLUE),
        (b, v2, YELLOW),
    ]
}

/// Does `(v1, v2, a, b)` form a theta in `g`?
pub fn is_theta(
    g: &TemporalGraph,
    partition: &LabelPartition,
    v1: Vertex,
    v2: Vertex,
    a: Vertex,
    b: Vertex,
) -> bool {
    theta_edges(v1, v2, a, b)
        .iter()
        .all(|&(x, y, colour)| single_label(g, x, y).is_some_and(|l| partition.contains(colour, l)))
}

/// The candidate pairs that are thetas, in pair order.
pub fn find_thetas(
    g: &TemporalGraph,
    partition: &LabelPartition,
    v1: Vertex,
    v2: Vertex,
    pairs: &[(Vertex, Vertex)],
) -> ThetaRouter {
    ThetaRouter {
        v1,
        v2,
        thetas: pairs
            .iter()
            .copied()
            .filter(|&(a, b)| is_theta(g, partition, v1, v2, a, b))
            .collect(),
    }
}

/// Which internal connection of a theta router a journey witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaFamily {
    /// `(a_i, v1, b_j)`
    AToBViaV1,
    /// `(b_i, v2, a_j)`
    BToAViaV2,
    /// `(a_i, b_i, v2, a_j)`, `j != i`
    AToA,
    /// `(b_i, a_i, v1, b_j)`, `j != i`
    BToB,
    /// `(v1, a_i, v2)`
    V1ToV2,
    /// `(v2, b_i, v1)`
    V2ToV1,
    /// single router edges, both directions
    Direct,
}

/// Every journey the theta router promises, tagged by family. Returns
/// `None` for a walk whose labels do not fit (which would mean `router` is
/// not a theta router of `g`).
pub fn theta_journeys(
    g: &TemporalGraph,
    router: &ThetaRouter,
) -> Vec<(ThetaFamily, Vec<Vertex>, Option<Journey>)> {
    let (v1, v2) = (router.v1, router.v2);
    let mut walks: Vec<(ThetaFamily, Vec<Vertex>)> = Vec::new();
    for (i, &(ai, bi)) in router.thetas.iter().enumerate() {
        for (j, &(aj, bj)) in router.thetas.iter().enumerate() {
            walks.push((ThetaFamily::AToBViaV1, vec![ai, v1, bj]));
            walks.push((ThetaFamily::BToAViaV2, vec![bi, v2, aj]));
            if i != j {
                walks.push((ThetaFamily::AToA, vec![ai, bi, v2, aj]));
                walks.push((ThetaFamily::BToB, vec![bi, ai, v1, bj]));
            }
        }
        walks.push((ThetaFamily::V1ToV2, vec![v1, ai, v2]));
        walks.push((ThetaFamily::V2ToV1, vec![v2, bi, v1]));
        for (x, y, _) in theta_edges(v1, v2, ai, bi) {
            walks.push((ThetaFamily::Direct, vec![x, y]));
            walks.push((ThetaFamily::Direct, vec![y, x]));
        }
    }
    walks
        .into_iter()
        .map(|(family, walk)| {
            let steps: Option<Vec<TimeEdge>> = walk
                .windows(2)
                .map(|w| single_label(g, w[0], w[1]).map(|l| TimeEdge::new(w[0], w[1], l)))
                .collect();
            (family, walk, steps.map(Journey::new))
        })
        .collect()
}

/// Output of [`gnp_router_sparsify`].
#[derive(Clone, Debug)]
pub struct GnpSparsification {
    /// The labelled `G(n,p)` before sparsification.
    pub original: TemporalGraph,
    pub graph: TemporalGraph,
    pub router: ThetaRouter,
    pub partition: LabelPartition,
    /// Candidate `(a_i, b_i)` pairs: `V1[i]` with `V2[i]`.
    pub pairs: Vec<(Vertex, Vertex)>,
    /// Outside vertex and the theta index it is attached through.
    pub attachments: Vec<(Vertex, usize)>,
    pub unattached: Vec<Vertex>,
    pub report: RouterReport,
}

/// Hubs `v1 = 0`, `v2 = 1`; the other vertices are shuffled, split into
/// halves `V1`, `V2` of size `floor((n-2)/2)` and paired by index.
pub fn theta_candidates(n: usize, seed: u64) -> Vec<(Vertex, Vertex)> {
    let mut rest: Vec<Vertex> = (2..n).collect();
    rest.shuffle(&mut rng(seed, SHUFFLE_STREAM));
    let half = rest.len() / 2;
    (0..half).map(|i| (rest[i], rest[half + i])).collect()
}

/// Samples a labelled `G(n,p)`, finds its theta router and keeps the theta
/// edges plus, for every outside vertex `u`, one green `{u, a_i}` and the
/// red `{b_i, u}` of the first theta offering both. Everything else is
/// dropped. With no thetas the result keeps nothing and TC is reported as
/// it is.
pub fn gnp_router_sparsify(n: usize, p: f64, alpha: Label, seed: u64) -> Result<GnpSparsification> {
    let partition = partition_labels(alpha)?;
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    if n < 4 {
        return Err(Error::TooSmall(format!(
            "G(n,p) router needs n >= 4, got {n}"
        )));
    }
    let original = gnp_labelled(n, p, alpha, seed)?;
    let pairs = theta_candidates(n, seed);
    let router = find_thetas(&original, &partition, 0, 1, &pairs);

    let mut graph = TemporalGraph::undirected(n);
    let copy = |g: &mut TemporalGraph, a: Vertex, b: Vertex| -> Result<()> {
        let ls = original.labels(a, b).expect("edge checked").clone();
        g.set_labels(a, b, ls)
    };
    for &(a, b) in &router.thetas {
        for (x, y, _) in theta_edges(router.v1, router.v2, a, b) {
            copy(&mut graph, x, y)?;
        }
    }
    let mut in_router = vec![false; n];
    for v in router.vertices() {
        in_router[v] = true;
    }
    let coloured = |a: Vertex, b: Vertex, colour: usize| {
        single_label(&original, a, b).is_some_and(|l| partition.contains(colour, l))
    };
    let mut attachments = Vec::new();
    let mut unattached = Vec::new();
    for u in (0..n).filter(|&u| !in_router[u]) {
        let hit = router
            .thetas
            .iter()
            .position(|&(a, b)| coloured(u, a, GREEN) && coloured(b, u, RED));
        match hit {
            Some(i) => {
                let (a, b) = router.thetas[i];
                copy(&mut graph, u, a)?;
                copy(&mut graph, b, u)?;
                attachments.push((u, i));
            }
            None => unattached.push(u),
        }
    }

    let report = RouterReport {
        kind: RouterKind::Gnp,
        n,
        p: Some(p),
        alpha,
        gamma: None,
        seed,
        original_label_count: original.cost(),
        kept_label_count: graph.cost(),
        tc_verdict: is_temporally_connected(&graph),
        router_vertices: 2 + 2 * router.thetas.len(),
        special_paths: None,
        theta_count: Some(router.thetas.len()),
        unattached: Some(unattached.len()),
    };
    Ok(GnpSparsification {
        original,
        graph,
        router,
        partition,
        pairs,
        attachments,
        unattached,
        report,
    })
}

/// Mean and variance of the theta count: each of the `floor((n-2)/2)`
/// candidate pairs is a theta independently with probability
/// `p^5 |A1| |A2|^2 |A3|^2 / alpha^5`.
pub fn theta_count_moments(n: usize, p: f64, partition: &LabelPartition) -> (f64, f64) {
    let pairs = (n.saturating_sub(2) / 2) as f64;
    let q = p.powi(5)
        * partition.probability(GREEN)
        * partition.probability(YELLOW).powi(2)
        * partition.probability(BLUE).powi(2);
    (pairs * q, pairs * q * (1.0 - q))
}

/// Runs `trials` clique sparsifications in parallel; trial `t` uses
/// `trial_seed(seed, t)`. Reports come back in trial order.
pub fn clique_trials(
    n: usize,
    alpha: Label,
    gamma: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<RouterReport>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| clique_router_sparsify(n, alpha, gamma, trial_seed(seed, t)).map(|s| s.report))
        .collect()
}

/// Runs `trials` G(n,p) sparsifications in parallel, as [`clique_trials`].
pub fn gnp_trials(
    n: usize,
    p: f64,
    alpha: Label,
    trials: usize,
    seed: u64,
) -> Result<Vec<RouterReport>> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| gnp_router_sparsify(n, p, alpha, trial_seed(seed, t)).map(|s| s.report))
        .collect()
}

/// Aggregate over a batch of trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub tc_successes: usize,
    pub success_rate: f64,
    pub mean_kept_labels: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_theta_count: Option<f64>,
}

pub fn summarize(reports: &[RouterReport]) -> TrialSummary {
    let trials = reports.len();
    let denom = trials.max(1) as f64;
    let tc_successes = reports.iter().filter(|r| r.tc_verdict).count();
    let thetas: Vec<usize> = reports.iter().filter_map(|r| r.theta_count).collect();
    TrialSummary {
        trials,
        tc_successes,
        success_rate: tc_successes as f64 / denom,
        mean_kept_labels: reports.iter().map(|r| r.kept_label_count).sum::<usize>() as f64 / denom,
        mean_theta_count: (!thetas.is_empty())
            .then(|| thetas.iter().sum::<usize>() as f64 / thetas.len() as f64),
    }
}
