//! Temporal-graph data model.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Label = u32;

/// An edge key. For undirected graphs the endpoints are stored with
/// `u <= v`; for directed graphs `(u, v)` is the arc `u -> v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        Edge { u, v }
    }

    /// Canonical key of the undirected edge `{u, v}`.
    pub fn undirected(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge { u, v }
        } else {
            Edge { u: v, v: u }
        }
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A sorted, duplicate-free set of labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelSet(Vec<Label>);

impl LabelSet {
    pub fn new() -> Self {
        LabelSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Label) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    /// Returns `false` if the label was already present.
    pub fn insert(&mut self, l: Label) -> bool {
        match self.0.binary_search(&l) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, l);
                true
            }
        }
    }

    /// Returns `false` if the label was absent.
    pub fn remove(&mut self, l: Label) -> bool {
        match self.0.binary_search(&l) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Label> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn min(&self) -> Option<Label> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<Label> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &LabelSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut v: Vec<Label> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LabelSet(v)
    }
}

impl<const N: usize> From<[Label; N]> for LabelSet {
    fn from(arr: [Label; N]) -> Self {
        arr.into_iter().collect()
    }
}

/// One directed availability instance `(from, to, label)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimeEdge {
    pub from: Vertex,
    pub to: Vertex,
    pub label: Label,
}

impl TimeEdge {
    pub fn new(from: Vertex, to: Vertex, label: Label) -> Self {
        TimeEdge { from, to, label }
    }
}

/// A sequence of time edges. A valid journey is vertex-chained with
/// strictly increasing labels; see [`TemporalGraph::validate_journey`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Journey {
    pub steps: Vec<TimeEdge>,
}

impl Journey {
    pub fn new(steps: Vec<TimeEdge>) -> Self {
        Journey { steps }
    }

    pub fn empty() -> Self {
        Journey { steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Label of the last step; `None` for the empty journey.
    pub fn arrival_time(&self) -> Option<Label> {
        self.steps.last().map(|s| s.label)
    }

    pub fn source(&self) -> Option<Vertex> {
        self.steps.first().map(|s| s.from)
    }

    pub fn target(&self) -> Option<Vertex> {
        self.steps.last().map(|s| s.to)
    }

    /// Vertices visited, starting with the source.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        if let Some(first) = self.steps.first() {
            out.push(first.from);
        }
        out.extend(self.steps.iter().map(|s| s.to));
        out
    }
}

/// A graph (directed or undirected) on vertices `0..n` together with a
/// label set per edge. Edges with empty label sets are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    directed: bool,
    n: usize,
    edges: BTreeMap<Edge, LabelSet>,
}

impl TemporalGraph {
    pub fn new(n: usize, directed: bool) -> Self {
        TemporalGraph {
            directed,
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn undirected(n: usize) -> Self {
        Self::new(n, false)
    }

    pub fn directed(n: usize) -> Self {
        Self::new(n, true)
    }

    /// Builds a graph from `(u, v, labels)` records. Repeated records for the
    /// same edge merge their labels.
    pub fn from_labelled_edges<I, L>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex, L)>,
        L: IntoIterator<Item = Label>,
    {
        let mut g = Self::new(n, directed);
        for (u, v, labels) in edges {
            g.add_edge(u, v)?;
            for l in labels {
                g.add_label(u, v, l)?;
            }
        }
        Ok(g)
    }

    /// Builds an unlabelled graph.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Self::new(n, directed);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn key(&self, u: Vertex, v: Vertex) -> Edge {
        if self.directed {
            Edge::new(u, v)
        } else {
            Edge::undirected(u, v)
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Adds the edge with an empty label set if it is not present yet.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<Edge> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let key = self.key(u, v);
        self.edges.entry(key).or_default();
        Ok(key)
    }

    /// Adds `l` to the label set of `{u, v}`, creating the edge if needed.
    pub fn add_label(&mut self, u: Vertex, v: Vertex, l: Label) -> Result<()> {
        if l == 0 {
            return Err(Error::ZeroLabel);
        }
        let key = self.add_edge(u, v)?;
        self.edges.get_mut(&key).expect("edge just added").insert(l);
        Ok(())
    }

    /// Replaces the label set of an existing or new edge.
    pub fn set_labels(&mut self, u: Vertex, v: Vertex, labels: LabelSet) -> Result<()> {
        if labels.min() == Some(0) {
            return Err(Error::ZeroLabel);
        }
        let key = self.add_edge(u, v)?;
        self.edges.insert(key, labels);
        Ok(())
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains_key(&self.key(u, v))
    }

    pub fn labels(&self, u: Vertex, v: Vertex) -> Option<&LabelSet> {
        self.edges.get(&self.key(u, v))
    }

    pub fn labels_of(&self, e: Edge) -> Option<&LabelSet> {
        self.edges.get(&e)
    }

    /// Edges in key order with their label sets.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (Edge, &LabelSet)> + '_ {
        self.edges.iter().map(|(e, ls)| (*e, ls))
    }

    /// Every `(edge, label)` pair, in edge order then label order.
    pub fn label_instances(&self) -> Vec<(Edge, Label)> {
        self.edges
            .iter()
            .flat_map(|(e, ls)| ls.iter().map(move |l| (*e, l)))
            .collect()
    }

    /// Total number of labels over all edges.
    pub fn cost(&self) -> usize {
        self.edges.values().map(LabelSet::len).sum()
    }

    /// Every edge has exactly one label and no label value repeats.
    pub fn is_slse(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.edges.len());
        self.edges
            .values()
            .all(|ls| ls.len() == 1 && seen.insert(ls.as_slice()[0]))
    }

    /// All time edges in edge order; an undirected edge contributes both
    /// orientations per label.
    pub fn time_edges(&self) -> Vec<TimeEdge> {
        let mut out = Vec::with_capacity(if self.directed { 1 } else { 2 } * self.cost());
        for (e, ls) in &self.edges {
            for l in ls.iter() {
                out.push(TimeEdge::new(e.u, e.v, l));
                if !self.directed {
                    out.push(TimeEdge::new(e.v, e.u, l));
                }
            }
        }
        out
    }

    /// Can `step` be used in this graph (edge exists and carries the label)?
    pub fn has_time_edge(&self, step: &TimeEdge) -> bool {
        step.from < self.n
            && step.to < self.n
            && step.from != step.to
            && self
                .labels(step.from, step.to)
                .is_some_and(|ls| ls.contains(step.label))
    }

    /// Checks every journey invariant against this graph: each step is an
    /// available time edge, steps are chained, and labels strictly increase.
    pub fn validate_journey(&self, j: &Journey) -> bool {
        j.steps.iter().all(|s| self.has_time_edge(s))
            && j.steps
                .windows(2)
                .all(|w| w[0].to == w[1].from && w[0].label < w[1].label)
    }

    /// Returns a copy with `l` removed from `L_e`.
    pub fn remove_label(&self, e: Edge, l: Label) -> Result<TemporalGraph> {
        let mut g = self.clone();
        g.remove_label_in_place(e, l)?;
        Ok(g)
    }

    pub fn remove_label_in_place(&mut self, e: Edge, l: Label) -> Result<()> {
        let key = self.key(e.u, e.v);
        let ls = self.edges.get_mut(&key).ok_or(Error::EdgeNotPresent(key))?;
        if ls.remove(l) {
            Ok(())
        } else {
            Err(Error::LabelNotPresent {
                edge: key,
                label: l,
            })
        }
    }

    /// The same graph with every label set emptied.
    pub fn underlying(&self) -> TemporalGraph {
        TemporalGraph {
            directed: self.directed,
            n: self.n,
            edges: self.edges.keys().map(|e| (*e, LabelSet::new())).collect(),
        }
    }

    /// Out-neighbours (all neighbours when undirected), sorted by id.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.keys() {
            adj[e.u].push(e.v);
            if !self.directed {
                adj[e.v].push(e.u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Plain connectivity of the underlying graph (weak for directed graphs).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.keys() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == self.n
    }

    /// Is every label set of `self` contained in the matching set of `other`
    /// (same vertex count and orientation, every edge of `self` in `other`)?
    pub fn is_sub_labelling_of(&self, other: &TemporalGraph) -> bool {
        self.n == other.n
            && self.directed == other.directed
            && self.edges.iter().all(|(e, ls)| {
                other
                    .edges
                    .get(e)
                    .is_some_and(|theirs| ls.is_subset(theirs))
            })
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel_vertices(&self, perm: &[Vertex]) -> Result<TemporalGraph> {
        if perm.len() != self.n {
            return Err(Error::TooSmall(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut g = TemporalGraph::new(self.n, self.directed);
        for (e, ls) in &self.edges {
            g.set_labels(perm[e.u], perm[e.v], ls.clone())?;
        }
        Ok(g)
    }
}
