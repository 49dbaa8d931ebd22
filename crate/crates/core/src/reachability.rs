//! Foremost journeys and temporal connectivity.
//!
//! [`foremost`] scans the time edges once in increasing label order and
//! settles a vertex the first time it is entered by a time edge whose label
//! exceeds the arrival time at its tail. [`foremost_oracle`] answers the
//! same query by exhaustive search over `(vertex, last label)` states and
//! exists only to cross-check the scan. [`AllPairsSweep`] computes every
//! source's reach set in a single label-ordered pass and is the kernel used
//! by the removal searches.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Journey, Label, TemporalGraph, TimeEdge, Vertex};

/// Output of a single-source foremost computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForemostResult {
    pub source: Vertex,
    pub start_time: Label,
    /// `None` is the unreachable sentinel. The source maps to `start_time`.
    pub arrival: Vec<Option<Label>>,
    /// Time edge through which each settled vertex was first entered.
    pub parent: Vec<Option<TimeEdge>>,
}

impl ForemostResult {
    pub fn arrival_time(&self, v: Vertex) -> Option<Label> {
        self.arrival.get(v).copied().flatten()
    }

    pub fn is_reachable(&self, v: Vertex) -> bool {
        self.arrival_time(v).is_some()
    }

    /// Follows parent pointers back to the source. Returns `Ok(None)` for an
    /// unreachable vertex and the empty journey for the source itself.
    pub fn reconstruct(&self, v: Vertex) -> Result<Option<Journey>> {
        let n = self.arrival.len();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if self.arrival[v].is_none() {
            return Ok(None);
        }
        let mut steps = Vec::new();
        let mut cur = v;
        while cur != self.source {
            let step = self.parent[cur].expect("settled vertex has a parent");
            steps.push(step);
            cur = step.from;
            if steps.len() > n {
                unreachable!("parent pointers form a cycle");
            }
        }
        steps.reverse();
        Ok(Some(Journey::new(steps)))
    }
}

/// Free-function form of [`ForemostResult::reconstruct`].
pub fn reconstruct(res: &ForemostResult, v: Vertex) -> Result<Option<Journey>> {
    res.reconstruct(v)
}

/// The time edges of a graph sorted by label. Sorting is stable, so equal
/// labels keep edge-key order (and `u -> v` before `v -> u`).
#[derive(Clone, Debug)]
pub struct SortedTimeEdges {
    n: usize,
    edges: Vec<TimeEdge>,
}

impl SortedTimeEdges {
    pub fn new(g: &TemporalGraph) -> Self {
        let mut edges = g.time_edges();
        edges.sort_by_key(|t| t.label);
        SortedTimeEdges {
            n: g.vertex_count(),
            edges,
        }
    }

    /// Same as [`SortedTimeEdges::new`] but also reports the number of
    /// comparisons performed by the sort.
    pub fn with_comparison_count(g: &TemporalGraph) -> (Self, usize) {
        let mut edges = g.time_edges();
        let mut comparisons = 0usize;
        edges.sort_by(|a, b| {
            comparisons += 1;
            a.label.cmp(&b.label)
        });
        (
            SortedTimeEdges {
                n: g.vertex_count(),
                edges,
            },
            comparisons,
        )
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn as_slice(&self) -> &[TimeEdge] {
        &self.edges
    }

    pub fn foremost(&self, s: Vertex, start_time: Label) -> Result<ForemostResult> {
        self.foremost_counted(s, start_time).map(|(r, _)| r)
    }

    /// Runs the scan and returns how many time edges were examined.
    pub fn foremost_counted(
        &self,
        s: Vertex,
        start_time: Label,
    ) -> Result<(ForemostResult, usize)> {
        if s >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: s,
                n: self.n,
            });
        }
        let mut arrival: Vec<Option<Label>> = vec![None; self.n];
        let mut parent: Vec<Option<TimeEdge>> = vec![None; self.n];
        arrival[s] = Some(start_time);
        let mut examined = 0;
        for te in &self.edges {
            examined += 1;
            if let (Some(at), None) = (arrival[te.from], arrival[te.to]) {
                if at < te.label {
                    arrival[te.to] = Some(te.label);
                    parent[te.to] = Some(*te);
                }
            }
        }
        Ok((
            ForemostResult {
                source: s,
                start_time,
                arrival,
                parent,
            },
            examined,
        ))
    }

    /// Does `s` reach every vertex? Stops as soon as all are settled.
    pub fn reaches_all(&self, s: Vertex) -> bool {
        let mut arrival: Vec<Option<Label>> = vec![None; self.n];
        arrival[s] = Some(0);
        let mut remaining = self.n - 1;
        if remaining == 0 {
            return true;
        }
        for te in &self.edges {
            if let (Some(at), None) = (arrival[te.from], arrival[te.to]) {
                if at < te.label {
                    arrival[te.to] = Some(te.label);
                    remaining -= 1;
                    if remaining == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Vertices not reached from `s`.
    pub fn unreached_from(&self, s: Vertex) -> Vec<Vertex> {
        let res = self.foremost(s, 0).expect("source in range");
        (0..self.n).filter(|&v| res.arrival[v].is_none()).collect()
    }
}

/// Foremost arrival times from `s` for journeys departing strictly after
/// `start_time`.
pub fn foremost(g: &TemporalGraph, s: Vertex, start_time: Label) -> Result<ForemostResult> {
    g.check_vertex(s)?;
    SortedTimeEdges::new(g).foremost(s, start_time)
}

const PARALLEL_WORK_THRESHOLD: usize = 1 << 16;

/// Is there a journey between every ordered pair of distinct vertices?
/// Runs the foremost scan from every source over one shared sorted list.
pub fn is_temporally_connected(g: &TemporalGraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let sorted = SortedTimeEdges::new(g);
    if n * sorted.len() >= PARALLEL_WORK_THRESHOLD {
        (0..n).into_par_iter().all(|s| sorted.reaches_all(s))
    } else {
        (0..n).all(|s| sorted.reaches_all(s))
    }
}

/// Up to `limit` ordered pairs `(u, v)` with no `(u, v)`-journey, in
/// source-major order.
pub fn tc_failures(g: &TemporalGraph, limit: usize) -> Vec<(Vertex, Vertex)> {
    let sorted = SortedTimeEdges::new(g);
    let mut out = Vec::new();
    for s in 0..g.vertex_count() {
        if out.len() >= limit {
            break;
        }
        for v in sorted.unreached_from(s) {
            if out.len() >= limit {
                break;
            }
            out.push((s, v));
        }
    }
    out
}

/// Default cap on explored `(vertex, last label)` states for the oracle.
pub const DEFAULT_ORACLE_STATES: usize = 1_000_000;

/// Exhaustive foremost search: breadth-first over `(vertex, last label)`
/// states, expanding only time edges with a strictly larger label. Fails with
/// [`Error::InstanceTooLarge`] once more than `max_states` states are seen.
pub fn foremost_oracle(
    g: &TemporalGraph,
    s: Vertex,
    start_time: Label,
    max_states: usize,
) -> Result<ForemostResult> {
    g.check_vertex(s)?;
    let n = g.vertex_count();
    let mut out: Vec<Vec<(Vertex, Label)>> = vec![Vec::new(); n];
    for (e, ls) in g.edges() {
        for l in ls.iter() {
            out[e.u].push((e.v, l));
            if !g.is_directed() {
                out[e.v].push((e.u, l));
            }
        }
    }

    let mut seen: HashSet<(Vertex, Label)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((s, start_time));
    queue.push_back((s, start_time));
    let mut arrival: Vec<Option<Label>> = vec![None; n];
    arrival[s] = Some(start_time);

    while let Some((v, t)) = queue.pop_front() {
        for &(w, l) in &out[v] {
            if l <= t || !seen.insert((w, l)) {
                continue;
            }
            if seen.len() > max_states {
                return Err(Error::InstanceTooLarge(format!(
                    "oracle state space exceeds {max_states} states"
                )));
            }
            if w != s {
                arrival[w] = Some(arrival[w].map_or(l, |a| a.min(l)));
            }
            queue.push_back((w, l));
        }
    }

    // A foremost entry into v uses some time edge (a, v, arrival[v]) with
    // arrival[a] < arrival[v].
    let mut parent: Vec<Option<TimeEdge>> = vec![None; n];
    for (v, slot) in parent.iter_mut().enumerate() {
        if v == s {
            continue;
        }
        if let Some(av) = arrival[v] {
            *slot = (0..n)
                .filter_map(|a| {
                    let at = arrival[a]?;
                    let ls = g.labels(a, v)?;
                    (at < av && ls.contains(av)).then_some(TimeEdge::new(a, v, av))
                })
                .next();
        }
    }

    Ok(ForemostResult {
        source: s,
        start_time,
        arrival,
        parent,
    })
}

/// Label-ordered all-pairs reachability over a fixed list of label
/// instances, any subset of which can be switched off.
///
/// `reach[v]` is the set of sources with a journey into `v`; the sweep
/// processes one label value at a time and only propagates reach sets as
/// they stood before that label, so journeys use strictly increasing labels.
#[derive(Clone, Debug)]
pub struct AllPairsSweep {
    n: usize,
    words: usize,
    instances: Vec<(Edge, Label)>,
    /// `(from, to, instance)` sorted by label.
    steps: Vec<(Vertex, Vertex, usize)>,
    /// Half-open ranges of `steps` sharing one label.
    groups: Vec<(usize, usize)>,
}

impl AllPairsSweep {
    pub fn new(g: &TemporalGraph) -> Self {
        let instances = g.label_instances();
        let mut steps: Vec<(Label, Vertex, Vertex, usize)> = Vec::new();
        for (i, (e, l)) in instances.iter().enumerate() {
            steps.push((*l, e.u, e.v, i));
            if !g.is_directed() {
                steps.push((*l, e.v, e.u, i));
            }
        }
        steps.sort_by_key(|s| s.0);
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=steps.len() {
            if i == steps.len() || steps[i].0 != steps[start].0 {
                groups.push((start, i));
                start = i;
            }
        }
        let n = g.vertex_count();
        AllPairsSweep {
            n,
            words: n.div_ceil(64).max(1),
            instances,
            steps: steps.into_iter().map(|(_, a, b, i)| (a, b, i)).collect(),
            groups,
        }
    }

    pub fn instances(&self) -> &[(Edge, Label)] {
        &self.instances
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Flat `n x words` bit matrix; row `v` holds the sources reaching `v`.
    pub fn reach(&self, active: &[bool]) -> Vec<u64> {
        let w = self.words;
        let mut reach = vec![0u64; self.n * w];
        for v in 0..self.n {
            reach[v * w + v / 64] |= 1 << (v % 64);
        }
        let mut scratch: Vec<u64> = Vec::new();
        let mut targets: Vec<Vertex> = Vec::new();
        for &(lo, hi) in &self.groups {
            scratch.clear();
            targets.clear();
            for &(a, b, inst) in &self.steps[lo..hi] {
                if active[inst] {
                    scratch.extend_from_slice(&reach[a * w..(a + 1) * w]);
                    targets.push(b);
                }
            }
            for (k, &b) in targets.iter().enumerate() {
                let row = &mut reach[b * w..(b + 1) * w];
                for (dst, src) in row.iter_mut().zip(&scratch[k * w..(k + 1) * w]) {
                    *dst |= *src;
                }
            }
        }
        reach
    }

    pub fn is_tc(&self, active: &[bool]) -> bool {
        let reach = self.reach(active);
        let w = self.words;
        let full_words = self.n / 64;
        let tail = self.n % 64;
        (0..self.n).all(|v| {
            let row = &reach[v * w..(v + 1) * w];
            row[..full_words].iter().all(|&x| x == u64::MAX)
                && (tail == 0 || row[full_words] == (1u64 << tail) - 1)
        })
    }

    pub fn is_tc_all(&self) -> bool {
        self.is_tc(&vec![true; self.instances.len()])
    }

    /// Is there a `(u, v)`-journey using only active instances?
    pub fn reaches(&self, active: &[bool], u: Vertex, v: Vertex) -> bool {
        let reach = self.reach(active);
        reach[v * self.words + u / 64] >> (u % 64) & 1 == 1
    }
}
