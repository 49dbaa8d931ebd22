//! The monotone Max-XOR(3) gadget.
//!
//! A formula `phi` with `n` variables, each in exactly three clauses
//! `(x_i xor x_j)`, becomes a labelled graph `G_phi` on `10n + 1` vertices
//! with `17/4 n^2 + 28n + 1` labels. Every assignment satisfying `k` clauses
//! yields a TC sub-labelling missing exactly `9n + k` labels, and every TC
//! sub-labelling missing `9n + k` labels yields an assignment satisfying at
//! least `k` clauses.
//!
//! Vertex layout: `t0 = 0`; variable `i` owns `s, u0, w0, v0` at
//! `1 + 4i ..= 4 + 4i`; clause `c` owns one physical branch `U, V, W, T` at
//! `1 + 4n + 4c ..`. For a clause `(x_i xor x_j)` the first variable sees the
//! branch as `u = U, v = V`, the second as `u = V, v = U`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Journey, Label, LabelSet, TemporalGraph, TimeEdge, Vertex};
use crate::reachability::is_temporally_connected;

pub use crate::format::parse_formula;

/// A monotone XOR(3) formula. Variables are 0-based here and 1-based in
/// files and messages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorFormula {
    n: usize,
    clauses: Vec<(usize, usize)>,
    /// For each variable, the clauses of its first, second and third
    /// appearance.
    occurrences: Vec<[usize; 3]>,
}

impl XorFormula {
    pub fn new(n: usize, clauses: Vec<(usize, usize)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall(format!("formula needs n >= 2, got {n}")));
        }
        let mut seen: Vec<Vec<usize>> = vec![Vec::with_capacity(3); n];
        for (c, &(i, j)) in clauses.iter().enumerate() {
            if i >= n || j >= n {
                return Err(Error::InvalidClause {
                    clause: c,
                    message: format!("variable index outside 0..{n}"),
                });
            }
            if i == j {
                return Err(Error::InvalidClause {
                    clause: c,
                    message: format!("variable x{} appears twice", i + 1),
                });
            }
            seen[i].push(c);
            seen[j].push(c);
        }
        let occurrences = seen
            .into_iter()
            .enumerate()
            .map(|(i, occ)| {
                <[usize; 3]>::try_from(occ.as_slice()).map_err(|_| Error::OccurrenceCount {
                    variable: i + 1,
                    count: occ.len(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(XorFormula {
            n,
            clauses,
            occurrences,
        })
    }

    pub fn variable_count(&self) -> usize {
        self.n
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[(usize, usize)] {
        &self.clauses
    }

    /// Clause index of the `p`-th appearance (`p` in `1..=3`) of variable `i`.
    pub fn appearance(&self, i: usize, p: usize) -> usize {
        self.occurrences[i][p - 1]
    }

    pub fn occurrences(&self, i: usize) -> [usize; 3] {
        self.occurrences[i]
    }

    /// Number of clauses whose two variables differ under `values`.
    pub fn satisfied(&self, values: &[bool]) -> usize {
        self.clauses
            .iter()
            .filter(|&&(i, j)| values[i] != values[j])
            .count()
    }
}

/// A random formula from the pairing model on a 3-regular multigraph,
/// resampled until no clause repeats a variable.
pub fn random_formula(n: usize, seed: u64) -> Result<XorFormula> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::TooSmall(format!(
            "3-regular formulas need an even n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|i| [i; 3]).collect();
    loop {
        points.shuffle(&mut rng);
        let clauses: Vec<(usize, usize)> = points.chunks(2).map(|c| (c[0], c[1])).collect();
        if clauses.iter().all(|&(i, j)| i != j) {
            return XorFormula::new(n, clauses);
        }
    }
}

/// A truth assignment together with the number of clauses it satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub values: Vec<bool>,
    pub satisfied: usize,
}

impl Assignment {
    pub fn new(phi: &XorFormula, values: Vec<bool>) -> Result<Self> {
        if values.len() != phi.variable_count() {
            return Err(Error::AssignmentLength {
                got: values.len(),
                expected: phi.variable_count(),
            });
        }
        let satisfied = phi.satisfied(&values);
        Ok(Assignment { values, satisfied })
    }
}

/// What a gadget vertex is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    T0,
    S { variable: usize },
    U0 { variable: usize },
    W0 { variable: usize },
    V0 { variable: usize },
    BranchU { clause: usize },
    BranchV { clause: usize },
    BranchW { clause: usize },
    BranchT { clause: usize },
}

impl Role {
    /// Member of `A` (the `s`, `u_p`, `v_p` vertices).
    pub fn in_a(self) -> bool {
        matches!(
            self,
            Role::S { .. }
                | Role::U0 { .. }
                | Role::V0 { .. }
                | Role::BranchU { .. }
                | Role::BranchV { .. }
        )
    }

    /// Member of `B` (the `w_p` vertices).
    pub fn in_b(self) -> bool {
        matches!(self, Role::W0 { .. } | Role::BranchW { .. })
    }

    /// Member of `C` (the `t_p` vertices).
    pub fn in_c(self) -> bool {
        matches!(self, Role::BranchT { .. })
    }
}

/// The four vertices of a clause branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Branch {
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub t: Vertex,
}

/// `G_phi` with its labelling `L_phi` and vertex bookkeeping.
#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub formula: XorFormula,
    pub graph: TemporalGraph,
    pub roles: Vec<Role>,
}

impl GadgetGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn t0(&self) -> Vertex {
        0
    }

    pub fn s(&self, i: usize) -> Vertex {
        1 + 4 * i
    }

    pub fn u0(&self, i: usize) -> Vertex {
        2 + 4 * i
    }

    pub fn w0(&self, i: usize) -> Vertex {
        3 + 4 * i
    }

    pub fn v0(&self, i: usize) -> Vertex {
        4 + 4 * i
    }

    pub fn branch(&self, c: usize) -> Branch {
        let base = 1 + 4 * self.formula.variable_count() + 4 * c;
        Branch {
            u: base,
            v: base + 1,
            w: base + 2,
            t: base + 3,
        }
    }

    /// Is variable `i` the second variable of the clause of its `p`-th
    /// appearance (so that the branch's `u` and `v` are swapped)?
    pub fn swapped(&self, i: usize, p: usize) -> bool {
        self.formula.clauses[self.formula.appearance(i, p)].0 != i
    }

    /// `u_p` of variable `i`; `p = 0` is the base vertex.
    pub fn u(&self, i: usize, p: usize) -> Vertex {
        if p == 0 {
            return self.u0(i);
        }
        let b = self.branch(self.formula.appearance(i, p));
        if self.swapped(i, p) {
            b.v
        } else {
            b.u
        }
    }

    /// `v_p` of variable `i`; `p = 0` is the base vertex.
    pub fn v(&self, i: usize, p: usize) -> Vertex {
        if p == 0 {
            return self.v0(i);
        }
        let b = self.branch(self.formula.appearance(i, p));
        if self.swapped(i, p) {
            b.u
        } else {
            b.v
        }
    }

    /// `w_p` of variable `i`; `p = 0` is the base vertex.
    pub fn w(&self, i: usize, p: usize) -> Vertex {
        if p == 0 {
            self.w0(i)
        } else {
            self.branch(self.formula.appearance(i, p)).w
        }
    }

    /// `t_p` of variable `i`, `p` in `1..=3`.
    pub fn t(&self, i: usize, p: usize) -> Vertex {
        self.branch(self.formula.appearance(i, p)).t
    }

    /// `P_{i,p} = (s, u0, u_p, t_p)`.
    pub fn p_path(&self, i: usize, p: usize) -> [Vertex; 4] {
        [self.s(i), self.u0(i), self.u(i, p), self.t(i, p)]
    }

    /// `Q_{i,p} = (s, v0, v_p, t_p)`.
    pub fn q_path(&self, i: usize, p: usize) -> [Vertex; 4] {
        [self.s(i), self.v0(i), self.v(i, p), self.t(i, p)]
    }

    fn edge(&self, a: Vertex, b: Vertex) -> Edge {
        Edge::undirected(a, b)
    }

    fn label(&self, a: Vertex, b: Vertex) -> Label {
        self.graph
            .labels(a, b)
            .and_then(LabelSet::min)
            .expect("gadget edge is labelled")
    }
}

fn set(g: &mut TemporalGraph, a: Vertex, b: Vertex, labels: &[Label]) {
    g.set_labels(a, b, labels.iter().copied().collect())
        .expect("gadget vertices are in range and distinct");
}

/// Builds `(G_phi, L_phi)`.
///
/// Base of variable `i`: `{s,u0} = {s,v0} = 1`, transition edges
/// `{u0,w0} = {w0,v0} = {1,2}`, `{u0,u_p} = {v0,v_p} = 3`. Branch:
/// transition edges `{U,W} = {W,V} = {1,2}`, `{U,T} = {V,T} = 4`,
/// `{T,W} = 1`. All `w`-`w` and `t`-`t` pairs get 7. `t0` gets 5 towards
/// every `T` and the last variable's `w0`, and 6 towards every `A` vertex.
pub fn build_gadget(phi: &XorFormula) -> GadgetGraph {
    let n = phi.variable_count();
    let m = phi.clause_count();
    let vertex_count = 10 * n + 1;
    let mut roles = vec![Role::T0; vertex_count];
    for variable in 0..n {
        roles[1 + 4 * variable] = Role::S { variable };
        roles[2 + 4 * variable] = Role::U0 { variable };
        roles[3 + 4 * variable] = Role::W0 { variable };
        roles[4 + 4 * variable] = Role::V0 { variable };
    }
    for clause in 0..m {
        let base = 1 + 4 * n + 4 * clause;
        roles[base] = Role::BranchU { clause };
        roles[base + 1] = Role::BranchV { clause };
        roles[base + 2] = Role::BranchW { clause };
        roles[base + 3] = Role::BranchT { clause };
    }
    let mut gadget = GadgetGraph {
        formula: phi.clone(),
        graph: TemporalGraph::undirected(vertex_count),
        roles,
    };

    let mut g = TemporalGraph::undirected(vertex_count);
    let t0 = gadget.t0();
    for i in 0..n {
        let (s, u0, w0, v0) = (gadget.s(i), gadget.u0(i), gadget.w0(i), gadget.v0(i));
        set(&mut g, s, u0, &[1]);
        set(&mut g, s, v0, &[1]);
        set(&mut g, u0, w0, &[1, 2]);
        set(&mut g, w0, v0, &[1, 2]);
        for p in 1..=3 {
            set(&mut g, u0, gadget.u(i, p), &[3]);
            set(&mut g, v0, gadget.v(i, p), &[3]);
        }
        for a in [s, u0, v0] {
            set(&mut g, t0, a, &[6]);
        }
    }
    let mut ws: Vec<Vertex> = (0..n).map(|i| gadget.w0(i)).collect();
    let mut ts = Vec::with_capacity(m);
    for c in 0..m {
        let b = gadget.branch(c);
        set(&mut g, b.u, b.w, &[1, 2]);
        set(&mut g, b.w, b.v, &[1, 2]);
        set(&mut g, b.u, b.t, &[4]);
        set(&mut g, b.v, b.t, &[4]);
        set(&mut g, b.t, b.w, &[1]);
        set(&mut g, t0, b.t, &[5]);
        set(&mut g, t0, b.u, &[6]);
        set(&mut g, t0, b.v, &[6]);
        ws.push(b.w);
        ts.push(b.t);
    }
    for group in [&ws, &ts] {
        for (k, &a) in group.iter().enumerate() {
            for &b in &group[k + 1..] {
                set(&mut g, a, b, &[7]);
            }
        }
    }
    set(&mut g, t0, gadget.w0(n - 1), &[5]);
    gadget.graph = g;

    debug_assert!(gadget
        .roles
        .iter()
        .enumerate()
        .filter(|(_, r)| r.in_a())
        .all(|(a, _)| gadget
            .graph
            .validate_journey(&Journey::new(up_route(&gadget, a)))));
    gadget
}

/// A journey from an `A` vertex up to some `t_p`, labels at most 4.
fn up_route(g: &GadgetGraph, a: Vertex) -> Vec<TimeEdge> {
    let step = |x, y| TimeEdge::new(x, y, g.label(x, y));
    match g.roles[a] {
        Role::S { variable: i } => {
            let (u0, u1, t1) = (g.u0(i), g.u(i, 1), g.t(i, 1));
            vec![step(a, u0), step(u0, u1), step(u1, t1)]
        }
        Role::U0 { variable: i } => {
            let (u1, t1) = (g.u(i, 1), g.t(i, 1));
            vec![step(a, u1), step(u1, t1)]
        }
        Role::V0 { variable: i } => {
            let (v1, t1) = (g.v(i, 1), g.t(i, 1));
            vec![step(a, v1), step(v1, t1)]
        }
        Role::BranchU { clause } | Role::BranchV { clause } => {
            vec![step(a, g.branch(clause).t)]
        }
        other => unreachable!("{other:?} is not in A"),
    }
}

/// The `w` vertex sharing a transition edge with a non-`s` vertex of `A`.
fn own_w(g: &GadgetGraph, a: Vertex) -> Vertex {
    match g.roles[a] {
        Role::U0 { variable } | Role::V0 { variable } => g.w0(variable),
        Role::BranchU { clause } | Role::BranchV { clause } => g.branch(clause).w,
        other => unreachable!("{other:?} has no transition edge"),
    }
}

/// The `u` vertex on the transition edge of a `B` vertex.
fn own_u(g: &GadgetGraph, b: Vertex) -> Vertex {
    match g.roles[b] {
        Role::W0 { variable } => g.u0(variable),
        Role::BranchW { clause } => g.branch(clause).u,
        other => unreachable!("{other:?} is not in B"),
    }
}

/// Cuts `route` right after it first enters `target`, if it does.
fn truncate_at(route: &mut Vec<TimeEdge>, target: Vertex) -> bool {
    match route.iter().position(|s| s.to == target) {
        Some(k) => {
            route.truncate(k + 1);
            true
        }
        None => false,
    }
}

/// The journey from `x` to `y` in `L_phi` that the TC argument uses:
/// `A` and `B` vertices climb to a `t_p` by label 4, cross to `t0` at 5 and
/// leave it at 6; `w`-`w` and `t`-`t` pairs are joined directly at 7.
pub fn gadget_journey(g: &GadgetGraph, x: Vertex, y: Vertex) -> Result<Journey> {
    g.graph.check_vertex(x)?;
    g.graph.check_vertex(y)?;
    if x == y {
        return Err(Error::EqualEndpoints);
    }
    let step = |a, b| TimeEdge::new(a, b, g.label(a, b));
    let (rx, ry) = (g.roles[x], g.roles[y]);
    let t0 = g.t0();
    let w_last = g.w0(g.formula.variable_count() - 1);
    // Continue from the top of an upward route to an A vertex via t0.
    let via_t0 = |route: &mut Vec<TimeEdge>, target: Vertex| {
        if !truncate_at(route, target) {
            let top = route.last().expect("non-empty route").to;
            route.push(step(top, t0));
            route.push(step(t0, target));
        }
    };
    let to_c = |route: &mut Vec<TimeEdge>, target: Vertex| {
        let top = route.last().expect("non-empty route").to;
        if top != target {
            route.push(step(top, target));
        }
    };

    let steps = if rx == Role::T0 {
        if ry.in_b() && y != w_last {
            vec![step(t0, w_last), step(w_last, y)]
        } else {
            vec![step(t0, y)]
        }
    } else if ry == Role::T0 {
        if rx.in_b() {
            let u = own_u(g, x);
            vec![step(x, u), step(u, t0)]
        } else {
            vec![step(x, t0)]
        }
    } else if rx.in_a() {
        if ry.in_a() {
            let mut r = up_route(g, x);
            via_t0(&mut r, y);
            r
        } else if ry.in_b() {
            let w = match rx {
                Role::S { variable } => g.w0(variable),
                _ => own_w(g, x),
            };
            let mut r = match rx {
                Role::S { variable } => {
                    let u0 = g.u0(variable);
                    vec![step(x, u0), TimeEdge::new(u0, w, 2)]
                }
                _ => vec![step(x, w)],
            };
            if y != w {
                r.push(step(w, y));
            }
            r
        } else {
            let mut r = up_route(g, x);
            to_c(&mut r, y);
            r
        }
    } else if rx.in_b() {
        if ry.in_b() {
            vec![step(x, y)]
        } else if ry.in_a() {
            let u = own_u(g, x);
            let mut r = vec![step(x, u)];
            if u != y {
                let mut up = up_route(g, u);
                if truncate_at(&mut up, y) {
                    r.extend(up);
                } else {
                    r.extend(up);
                    via_t0(&mut r, y);
                }
            }
            r
        } else {
            let mut r = match rx {
                Role::W0 { variable } => {
                    let u0 = g.u0(variable);
                    let mut r = vec![step(x, u0)];
                    r.extend(up_route(g, u0));
                    r
                }
                Role::BranchW { clause } => vec![step(x, g.branch(clause).t)],
                _ => unreachable!(),
            };
            to_c(&mut r, y);
            r
        }
    } else {
        let Role::BranchT { clause } = rx else {
            unreachable!()
        };
        if ry.in_c() {
            vec![step(x, y)]
        } else if ry.in_a() {
            vec![step(x, t0), step(t0, y)]
        } else {
            let w = g.branch(clause).w;
            let mut r = vec![step(x, w)];
            if y != w {
                r.push(step(w, y));
            }
            r
        }
    };
    Ok(Journey::new(steps))
}

/// `GadgetGraph::u` or `GadgetGraph::v`.
type Endpoint = fn(&GadgetGraph, usize, usize) -> Vertex;

/// The TC sub-labelling for `tau`: keeps the `P` paths of false variables
/// and the `Q` paths of true ones, one label per transition edge, and drops
/// the unused `t`-edge of each satisfied clause. Removes exactly
/// `9n + |tau(phi)|` labels.
pub fn assignment_to_labelling(g: &GadgetGraph, tau: &Assignment) -> Result<TemporalGraph> {
    let phi = &g.formula;
    let n = phi.variable_count();
    if tau.values.len() != n {
        return Err(Error::AssignmentLength {
            got: tau.values.len(),
            expected: n,
        });
    }
    let mut l = g.graph.clone();
    let mut cut = |a: Vertex, b: Vertex, label: Label| {
        l.remove_label_in_place(g.edge(a, b), label)
            .expect("label of L_phi");
    };
    for i in 0..n {
        let (s, u0, w0, v0) = (g.s(i), g.u0(i), g.w0(i), g.v0(i));
        // `near` is the side whose paths are kept.
        let (near0, far0, far_p): (Vertex, Vertex, Endpoint) = if tau.values[i] {
            (v0, u0, GadgetGraph::u)
        } else {
            (u0, v0, GadgetGraph::v)
        };
        cut(s, far0, 1);
        for p in 1..=3 {
            cut(far0, far_p(g, i, p), 3);
        }
        cut(far0, w0, 2);
        cut(w0, near0, 1);
    }
    for (c, &(i, j)) in phi.clauses().iter().enumerate() {
        let b = g.branch(c);
        match (tau.values[i], tau.values[j]) {
            (false, true) => {
                cut(b.v, b.w, 2);
                cut(b.w, b.u, 1);
                cut(b.v, b.t, 4);
            }
            (true, false) => {
                cut(b.u, b.w, 2);
                cut(b.w, b.v, 1);
                cut(b.u, b.t, 4);
            }
            _ => {
                cut(b.u, b.w, 2);
                cut(b.w, b.v, 2);
            }
        }
    }
    Ok(l)
}

fn contains_all(l: &TemporalGraph, g: &GadgetGraph, a: Vertex, b: Vertex) -> bool {
    let full = g.graph.labels(a, b).expect("gadget edge");
    l.labels(a, b).is_some_and(|ls| full.is_subset(ls))
}

fn path_complete(l: &TemporalGraph, g: &GadgetGraph, path: [Vertex; 4]) -> bool {
    path.windows(2).all(|e| contains_all(l, g, e[0], e[1]))
}

/// Output of [`labelling_to_assignment`].
#[derive(Clone, Debug)]
pub struct Extraction {
    pub assignment: Assignment,
    /// The input rewritten so that every variable keeps all three `P` paths
    /// or all three `Q` paths; never costlier than the input and still TC.
    pub normalized: TemporalGraph,
}

/// Reads an assignment off a TC sub-labelling of `L_phi`.
///
/// A variable with a mixed profile (some `P` paths and some `Q` paths
/// complete) is first rewritten to its majority side: the missing majority
/// paths are restored, the minority `{s, .}` and `{., ._p}` labels dropped,
/// and the base transition edges set to `1` towards the dropped side and `2`
/// towards the kept one. Then `x_i = 0` iff all `P` paths are complete.
pub fn labelling_to_assignment(g: &GadgetGraph, l: &TemporalGraph) -> Result<Extraction> {
    if !l.is_sub_labelling_of(&g.graph) {
        return Err(Error::NotSubLabelling(
            "labels or edges outside L_phi".into(),
        ));
    }
    if !is_temporally_connected(l) {
        return Err(Error::NotTemporallyConnected);
    }
    let n = g.formula.variable_count();
    let mut out = l.clone();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let p_done: Vec<bool> = (1..=3)
            .map(|p| path_complete(&out, g, g.p_path(i, p)))
            .collect();
        let q_done: Vec<bool> = (1..=3)
            .map(|p| path_complete(&out, g, g.q_path(i, p)))
            .collect();
        let p_count = p_done.iter().filter(|&&b| b).count();
        let q_count = q_done.iter().filter(|&&b| b).count();
        let value = if p_count == 3 {
            false
        } else if q_count == 3 {
            true
        } else {
            let to_q = p_count < 2;
            let done = if to_q { &q_done } else { &p_done };
            let (s, w0) = (g.s(i), g.w0(i));
            let (near0, far0) = if to_q {
                (g.v0(i), g.u0(i))
            } else {
                (g.u0(i), g.v0(i))
            };
            for p in (1..=3).filter(|&p| !done[p - 1]) {
                let (near_p, far_p, t) = if to_q {
                    (g.v(i, p), g.u(i, p), g.t(i, p))
                } else {
                    (g.u(i, p), g.v(i, p), g.t(i, p))
                };
                out.set_labels(near0, near_p, LabelSet::from([3]))?;
                out.set_labels(near_p, t, LabelSet::from([4]))?;
                let _ = out.remove_label_in_place(g.edge(far0, far_p), 3);
            }
            let _ = out.remove_label_in_place(g.edge(s, far0), 1);
            out.set_labels(far0, w0, LabelSet::from([1]))?;
            out.set_labels(w0, near0, LabelSet::from([2]))?;
            to_q
        };
        values.push(value);
    }
    Ok(Extraction {
        assignment: Assignment::new(&g.formula, values)?,
        normalized: out,
    })
}

/// A failed condition of the necessary-labels check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// (a) a transition edge has no label.
    EmptyTransition(Edge),
    /// (b) a `{t_p, w_p}` edge lost its label.
    MissingTw(Edge),
    /// (c) a `t`-`t` edge lost its label.
    MissingTt(Edge),
    /// (d) a `w`-`w` edge lost its label.
    MissingWw(Edge),
    /// (e) an edge at `t0` lost its label.
    MissingT0(Edge),
    /// (f) neither `P_{i,p}` nor `Q_{i,p}` is complete.
    NoCompletePath { variable: usize, appearance: usize },
}

impl Violation {
    /// The condition letter `a` to `f`.
    pub fn condition(&self) -> char {
        match self {
            Violation::EmptyTransition(_) => 'a',
            Violation::MissingTw(_) => 'b',
            Violation::MissingTt(_) => 'c',
            Violation::MissingWw(_) => 'd',
            Violation::MissingT0(_) => 'e',
            Violation::NoCompletePath { .. } => 'f',
        }
    }
}

/// Result of [`verify_necessary_labels`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NecessaryLabelReport {
    pub violations: Vec<Violation>,
}

impl NecessaryLabelReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    /// The distinct condition letters that failed, in order.
    pub fn failed_conditions(&self) -> Vec<char> {
        let mut out: Vec<char> = self.violations.iter().map(Violation::condition).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Checks the six structural conditions every TC sub-labelling of `L_phi`
/// meets: (a) a label on every transition edge, (b) every `{t_p, w_p}`,
/// (c) every `t`-`t` edge, (d) every `w`-`w` edge, (e) every edge at `t0`,
/// (f) a complete `P_{i,p}` or `Q_{i,p}` for every variable and appearance.
pub fn verify_necessary_labels(g: &GadgetGraph, l: &TemporalGraph) -> NecessaryLabelReport {
    let mut violations = Vec::new();
    let nonempty = |a: Vertex, b: Vertex| l.labels(a, b).is_some_and(|ls| !ls.is_empty());
    let n = g.formula.variable_count();
    let m = g.formula.clause_count();

    let mut transitions: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|i| [(g.u0(i), g.w0(i)), (g.w0(i), g.v0(i))])
        .collect();
    transitions.extend((0..m).flat_map(|c| {
        let b = g.branch(c);
        [(b.u, b.w), (b.w, b.v)]
    }));
    for (a, b) in transitions {
        if !nonempty(a, b) {
            violations.push(Violation::EmptyTransition(g.edge(a, b)));
        }
    }
    for c in 0..m {
        let b = g.branch(c);
        if !contains_all(l, g, b.t, b.w) {
            violations.push(Violation::MissingTw(g.edge(b.t, b.w)));
        }
    }
    let ts: Vec<Vertex> = (0..m).map(|c| g.branch(c).t).collect();
    let ws: Vec<Vertex> = (0..n)
        .map(|i| g.w0(i))
        .chain((0..m).map(|c| g.branch(c).w))
        .collect();
    for (group, wrap) in [
        (&ts, Violation::MissingTt as fn(Edge) -> Violation),
        (&ws, Violation::MissingWw),
    ] {
        for (k, &a) in group.iter().enumerate() {
            for &b in &group[k + 1..] {
                if !contains_all(l, g, a, b) {
                    violations.push(wrap(g.edge(a, b)));
                }
            }
        }
    }
    let t0 = g.t0();
    for (e, _) in g.graph.edges().filter(|(e, _)| e.u == t0) {
        if !contains_all(l, g, e.u, e.v) {
            violations.push(Violation::MissingT0(e));
        }
    }
    for i in 0..n {
        for p in 1..=3 {
            if !path_complete(l, g, g.p_path(i, p)) && !path_complete(l, g, g.q_path(i, p)) {
                violations.push(Violation::NoCompletePath {
                    variable: i,
                    appearance: p,
                });
            }
        }
    }
    NecessaryLabelReport { violations }
}
