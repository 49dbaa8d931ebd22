//! Removal profit: how many labels can go while TC survives.
//!
//! TC is monotone in the label set, so a label that cannot be removed now
//! cannot be removed after further removals either. This makes one greedy
//! pass produce a minimal graph and lets the exact search prune every
//! superset of an infeasible removal set.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Label, TemporalGraph};
use crate::reachability::AllPairsSweep;

/// Outcome of a removal computation.
#[derive(Clone, Debug)]
pub struct RemovalResult {
    pub removed: Vec<(Edge, Label)>,
    pub profit: usize,
    /// Whether `profit` is the true removal profit.
    pub exact: bool,
    pub residual: TemporalGraph,
}

fn require_tc(sweep: &AllPairsSweep) -> Result<()> {
    if sweep.is_tc_all() {
        Ok(())
    } else {
        Err(Error::NotTemporallyConnected)
    }
}

fn result_from_mask(
    g: &TemporalGraph,
    sweep: &AllPairsSweep,
    active: &[bool],
    exact: bool,
) -> RemovalResult {
    let removed: Vec<(Edge, Label)> = sweep
        .instances()
        .iter()
        .zip(active)
        .filter(|(_, &on)| !on)
        .map(|(&inst, _)| inst)
        .collect();
    let mut residual = g.clone();
    for &(e, l) in &removed {
        residual
            .remove_label_in_place(e, l)
            .expect("instance taken from g");
    }
    RemovalResult {
        profit: removed.len(),
        removed,
        exact,
        residual,
    }
}

/// Does every single-label removal break TC? Errors if `g` is not TC.
pub fn is_minimal(g: &TemporalGraph) -> Result<bool> {
    let sweep = AllPairsSweep::new(g);
    require_tc(&sweep)?;
    let mut active = vec![true; sweep.instances().len()];
    for i in 0..active.len() {
        active[i] = false;
        let still_tc = sweep.is_tc(&active);
        active[i] = true;
        if still_tc {
            return Ok(false);
        }
    }
    Ok(true)
}

fn greedy_mask(sweep: &AllPairsSweep, seed: u64) -> Vec<bool> {
    let count = sweep.instances().len();
    let mut order: Vec<usize> = (0..count).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut active = vec![true; count];
    for i in order {
        active[i] = false;
        if !sweep.is_tc(&active) {
            active[i] = true;
        }
    }
    active
}

/// One pass over the labels in a seeded random order, removing each label
/// whose removal keeps TC. The residual is minimal.
pub fn greedy_removal(g: &TemporalGraph, order_seed: u64) -> Result<RemovalResult> {
    let sweep = AllPairsSweep::new(g);
    require_tc(&sweep)?;
    let active = greedy_mask(&sweep, order_seed);
    Ok(result_from_mask(g, &sweep, &active, false))
}

/// Limits for [`removal_profit_exact`].
#[derive(Clone, Copy, Debug)]
pub struct ExactConfig {
    /// Inputs with more labels are refused.
    pub label_cap: usize,
    /// Search nodes before giving up with the best removal found.
    pub node_budget: u64,
    /// Shuffles the branching order; the profit does not depend on it.
    pub seed: u64,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            label_cap: 22,
            node_budget: 20_000_000,
            seed: 0,
        }
    }
}

struct Search<'a> {
    sweep: &'a AllPairsSweep,
    order: Vec<usize>,
    active: Vec<bool>,
    best: Vec<bool>,
    best_profit: usize,
    ceiling: usize,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl Search<'_> {
    /// Invariant: `active` (with every undecided label still on) is TC.
    fn dfs(&mut self, depth: usize, removed: usize) {
        if removed > self.best_profit {
            self.best_profit = removed;
            self.best.clone_from(&self.active);
        }
        let bound = (removed + self.order.len() - depth).min(self.ceiling);
        if depth == self.order.len() || bound <= self.best_profit || self.out_of_budget {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return;
        }
        let i = self.order[depth];
        self.active[i] = false;
        if self.sweep.is_tc(&self.active) {
            self.dfs(depth + 1, removed + 1);
        }
        self.active[i] = true;
        self.dfs(depth + 1, removed);
    }
}

/// The exact removal profit by branch and bound over the labels.
///
/// Each label is either removed (only if TC survives, which prunes every
/// superset of an infeasible removal set) or kept. The bound is the number
/// of undecided labels, capped by `cost - (n - 1)` since a connected graph
/// needs `n - 1` labelled edges. Greedy supplies the initial incumbent.
///
/// Inputs above `label_cap` are refused. If the node budget runs out the
/// best removal found is returned with `exact = false`.
pub fn removal_profit_exact(g: &TemporalGraph, config: ExactConfig) -> Result<RemovalResult> {
    let cost = g.cost();
    if cost > config.label_cap {
        return Err(Error::InstanceTooLarge(format!(
            "{cost} labels exceed the exact-search cap of {}",
            config.label_cap
        )));
    }
    let sweep = AllPairsSweep::new(g);
    require_tc(&sweep)?;
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..cost).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(config.seed));
    let greedy = greedy_mask(&sweep, config.seed);
    let greedy_profit = greedy.iter().filter(|&&on| !on).count();
    let mut search = Search {
        sweep: &sweep,
        order,
        active: vec![true; cost],
        best: greedy,
        best_profit: greedy_profit,
        ceiling: cost - n.saturating_sub(1).min(cost),
        nodes: 0,
        budget: config.node_budget,
        out_of_budget: false,
    };
    search.dfs(0, 0);
    let exact = !search.out_of_budget;
    Ok(result_from_mask(g, &sweep, &search.best, exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{hypercube_design, star_optimal_labelling};
    use crate::reachability::is_temporally_connected;

    fn k4(labels: [Label; 6]) -> TemporalGraph {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        TemporalGraph::from_labelled_edges(
            4,
            false,
            pairs.iter().zip(labels).map(|(&(u, v), l)| (u, v, [l])),
        )
        .unwrap()
    }

    #[test]
    fn minimal_examples() {
        assert!(is_minimal(&hypercube_design(3).unwrap().labelling).unwrap());
        assert!(is_minimal(&star_optimal_labelling(5).unwrap()).unwrap());
        assert!(!is_minimal(&k4([1, 2, 3, 4, 5, 6])).unwrap());
    }

    #[test]
    fn non_tc_input_rejected() {
        let g = TemporalGraph::from_labelled_edges(3, false, [(0, 1, [2]), (1, 2, [1])]).unwrap();
        assert_eq!(is_minimal(&g), Err(Error::NotTemporallyConnected));
        assert!(greedy_removal(&g, 0).is_err());
        assert!(removal_profit_exact(&g, ExactConfig::default()).is_err());
    }

    #[test]
    fn greedy_on_k4() {
        let g = k4([3, 1, 4, 6, 2, 5]);
        let r = greedy_removal(&g, 1).unwrap();
        assert!(r.profit >= 1);
        assert_eq!(r.residual.cost(), 6 - r.profit);
        assert!(is_temporally_connected(&r.residual));
        assert!(is_minimal(&r.residual).unwrap());
        assert!(!r.exact);
    }

    #[test]
    fn exact_on_minimal_input_is_zero() {
        let r = removal_profit_exact(&star_optimal_labelling(4).unwrap(), ExactConfig::default())
            .unwrap();
        assert_eq!(r.profit, 0);
        assert!(r.exact);
    }

    #[test]
    fn exact_cap_and_budget() {
        let big = hypercube_design(4).unwrap().labelling;
        assert!(matches!(
            removal_profit_exact(&big, ExactConfig::default()),
            Err(Error::InstanceTooLarge(_))
        ));
        let mut g = TemporalGraph::undirected(5);
        for u in 0..5 {
            for v in u + 1..5 {
                g.add_label(u, v, (u * 5 + v) as Label).unwrap();
                g.add_label(u, v, 30 - (u * 5 + v) as Label).unwrap();
            }
        }
        let tight = ExactConfig {
            node_budget: 3,
            ..ExactConfig::default()
        };
        let r = removal_profit_exact(&g, tight).unwrap();
        assert!(!r.exact);
        assert!(is_temporally_connected(&r.residual));
    }

    #[test]
    fn exact_is_order_independent() {
        let g = k4([2, 6, 1, 5, 3, 4]);
        let profits: Vec<usize> = (0..3)
            .map(|seed| {
                removal_profit_exact(
                    &g,
                    ExactConfig {
                        seed,
                        ..ExactConfig::default()
                    },
                )
                .unwrap()
                .profit
            })
            .collect();
        assert!(profits.windows(2).all(|w| w[0] == w[1]));
    }
}
