//! Multicast distribution trees over the and-or hypergraph.
//!
//! A solution tree picks exactly one outgoing connector at every node it
//! contains, starting from the source; branches end at the queried
//! receivers, each terminated by its 0-connector. The tree cost combines
//! every chosen connector's cost, which by associativity equals the
//! bottom-up recursion (a node costs its connector combined with its
//! subtrees). No node may appear twice across branches, and queried
//! receivers are always leaves.
//!
//! The search expands the open branch with the smallest node id first and
//! pulls connectors from the lazy smallest-first stream, so results are
//! deterministic. Feasibility pruning caps open branches by the receivers
//! still unclaimed; branch-and-bound additionally cuts partial trees that
//! are already strictly worse than the incumbent or dominated by the
//! frontier.
//!
//! Region (reach) labels currently only prune; a natural extension for
//! networks partitioned into administrative regions is to memoize
//! per-region subtree results at the border nodes and stitch them, which
//! would trade the global search for one search per region plus a small
//! join. The query surface here is deliberately compatible with that:
//! regions are already first-class on nodes and links.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{CostOrdering, DimKind, Frontier, Metric, MultiCost, Rational, SemiringSpec};
use crate::graph::{Connector, ConnectorFilter, Hypergraph, Network, NodeId};
use crate::unicast::{default_max_depth, ScalarWindow, SearchError, SearchMode, SearchStats};

pub const ORACLE_TREE_LIMIT: usize = 5000;

#[derive(Debug, Clone)]
pub struct TreeQuery {
    pub source: NodeId,
    pub receivers: BTreeSet<NodeId>,
    pub allowed_modalities: Option<BTreeSet<String>>,
    /// Drop links whose reach labels miss every receiver region.
    pub reach_filter: bool,
    pub max_depth: Option<usize>,
    pub window: Option<ScalarWindow>,
    pub mode: SearchMode,
}

impl TreeQuery {
    pub fn new(source: NodeId, receivers: impl IntoIterator<Item = NodeId>) -> Self {
        TreeQuery {
            source,
            receivers: receivers.into_iter().collect(),
            allowed_modalities: None,
            reach_filter: false,
            max_depth: None,
            window: None,
            mode: SearchMode::BranchAndBound,
        }
    }
}

/// A complete solution tree: the connector chosen at every tree node
/// (receivers hold their 0-connector) and the combined cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSolution {
    pub root: NodeId,
    pub chosen: BTreeMap<NodeId, Connector>,
    pub leaves: BTreeSet<NodeId>,
    pub cost: MultiCost,
}

impl TreeSolution {
    /// `(node (child ...) ...)` with children sorted: a canonical encoding
    /// that identifies the tree shape.
    pub fn canonical(&self, net: &Network) -> String {
        fn enc(net: &Network, t: &TreeSolution, node: NodeId, out: &mut String) {
            out.push('(');
            out.push_str(net.name(node));
            if let Some(c) = t.chosen.get(&node) {
                for child in &c.outputs {
                    out.push(' ');
                    enc(net, t, *child, out);
                }
            }
            out.push(')');
        }
        let mut out = String::new();
        enc(net, self, self.root, &mut out);
        out
    }

    /// Longest chain of non-terminal connectors from the root to a leaf.
    pub fn depth(&self) -> usize {
        fn rec(t: &TreeSolution, node: NodeId) -> usize {
            match t.chosen.get(&node) {
                None => 0,
                Some(c) if c.is_terminal() => 0,
                Some(c) => 1 + c.outputs.iter().map(|o| rec(t, *o)).max().unwrap_or(0),
            }
        }
        rec(self, self.root)
    }
}

/// Frontier witness ordering trees by canonical encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeWitness {
    pub encoding: String,
    pub tree: Box<TreeSolution>,
}

impl PartialOrd for TreeWitness {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeWitness {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.encoding.cmp(&other.encoding)
    }
}

#[derive(Debug, Clone)]
pub struct BestTree {
    pub cost: MultiCost,
    pub tree: TreeSolution,
    pub stats: SearchStats,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ParetoTrees {
    pub frontier: Frontier<TreeWitness>,
    pub stats: SearchStats,
    pub warnings: Vec<String>,
}

/// Best distribution tree under a total cost order; None when some
/// receiver is unreachable.
pub fn best_tree(
    h: &Hypergraph<'_>,
    q: &TreeQuery,
    spec: &SemiringSpec,
) -> Result<Option<BestTree>, SearchError> {
    if !spec.is_total_order() {
        return Err(SearchError::PartialOrder);
    }
    let Some(first) = q.window else {
        return run_best_once(h, q, spec, None, SearchStats::default());
    };
    // Windowed restarts, widening exponentially; windows ascend, so the
    // first hit is the global best.
    let width = (first.hi - first.lo).max(Rational::from_integer(1));
    let mut window = first;
    let mut grow = width;
    let mut carried = SearchStats::default();
    for _ in 0..40 {
        let mut search = TreeSearch::new(h, q, spec)?;
        let found = search.run_best(Some(window));
        carried.absorb(search.stats);
        if let Some(tree) = found {
            return Ok(Some(BestTree {
                cost: tree.cost.clone(),
                tree,
                stats: carried,
                warnings: search.warnings,
            }));
        }
        grow *= Rational::from_integer(2);
        window = ScalarWindow { lo: first.lo, hi: window.hi + grow };
    }
    run_best_once(h, q, spec, None, carried)
}

fn run_best_once(
    h: &Hypergraph<'_>,
    q: &TreeQuery,
    spec: &SemiringSpec,
    window: Option<ScalarWindow>,
    carried: SearchStats,
) -> Result<Option<BestTree>, SearchError> {
    let mut search = TreeSearch::new(h, q, spec)?;
    let found = search.run_best(window);
    let mut stats = carried;
    stats.absorb(search.stats);
    Ok(found.map(|tree| BestTree {
        cost: tree.cost.clone(),
        tree,
        stats,
        warnings: search.warnings,
    }))
}

/// Best tree restricted to connectors whose modality label fits within the
/// allowed set (0-connectors carry the empty label and always qualify).
pub fn modal_tree(
    h: &Hypergraph<'_>,
    q: &TreeQuery,
    spec: &SemiringSpec,
) -> Result<Option<BestTree>, SearchError> {
    match &q.allowed_modalities {
        Some(m) if !m.is_empty() => best_tree(h, q, spec),
        _ => Err(SearchError::InvalidQuery("modal query needs a non-empty modality set".into())),
    }
}

/// Non-dominated set of solution-tree costs with tree witnesses.
pub fn pareto_trees(
    h: &Hypergraph<'_>,
    q: &TreeQuery,
    spec: &SemiringSpec,
) -> Result<ParetoTrees, SearchError> {
    let mut search = TreeSearch::new(h, q, spec)?;
    let frontier = search.run_pareto();
    Ok(ParetoTrees { frontier, stats: search.stats, warnings: search.warnings })
}

/// Exhaustive enumeration of solution trees satisfying the query filters,
/// refusing beyond [`ORACLE_TREE_LIMIT`] trees. No cost pruning: this is
/// the oracle the tree search is checked against.
pub fn brute_force_trees(
    h: &Hypergraph<'_>,
    q: &TreeQuery,
) -> Result<Vec<TreeSolution>, SearchError> {
    let spec = h.network().spec().clone();
    let mut sub = q.clone();
    sub.mode = SearchMode::Exhaustive;
    let mut search = TreeSearch::new(h, &sub, &spec)?;
    let mut out: Vec<TreeSolution> = Vec::new();
    let mut state = search.initial();
    let mut sink = Sink::All { out: &mut out };
    search.expand(&mut state, &mut sink)?;
    Ok(out)
}

/// Bottom-up tree cost: a leaf costs its terminal connector's constant, an
/// internal node combines its connector's cost with its subtree costs.
pub fn tree_cost(spec: &SemiringSpec, tree: &TreeSolution) -> Result<MultiCost, SearchError> {
    fn rec(
        spec: &SemiringSpec,
        tree: &TreeSolution,
        node: NodeId,
        seen: &mut BTreeSet<NodeId>,
    ) -> Result<MultiCost, SearchError> {
        if !seen.insert(node) {
            return Err(SearchError::InvalidQuery(format!(
                "node #{} appears twice in the tree",
                node.0
            )));
        }
        let Some(c) = tree.chosen.get(&node) else {
            return Err(SearchError::InvalidQuery(format!(
                "node #{} has no chosen connector",
                node.0
            )));
        };
        let mut cost = c.cost.clone();
        for child in &c.outputs {
            cost = spec.combine(&cost, &rec(spec, tree, *child, seen)?);
        }
        Ok(cost)
    }
    let mut seen = BTreeSet::new();
    let cost = rec(spec, tree, tree.root, &mut seen)?;
    if seen.len() != tree.chosen.len() {
        return Err(SearchError::InvalidQuery(
            "tree has connectors unreachable from the root".into(),
        ));
    }
    Ok(cost)
}

/// Independent structural validator: one connector per tree node, all
/// connectors present in the hypergraph with the right cost, leaves exactly
/// the queried receivers, no duplicate nodes, depth within bounds.
pub fn validate_tree(
    h: &Hypergraph<'_>,
    q: &TreeQuery,
    tree: &TreeSolution,
) -> Result<(), String> {
    let net = h.network();
    if tree.root != q.source {
        return Err(format!("root {} is not the source", net.name(tree.root)));
    }
    let mut seen: BTreeSet<NodeId> = BTreeSet::new();
    let mut leaves: BTreeSet<NodeId> = BTreeSet::new();
    let mut stack = vec![tree.root];
    while let Some(node) = stack.pop() {
        if !seen.insert(node) {
            return Err(format!("node {} appears twice", net.name(node)));
        }
        let Some(c) = tree.chosen.get(&node) else {
            return Err(format!("node {} has no connector", net.name(node)));
        };
        if c.input != node {
            return Err(format!("connector at {} has input {}", net.name(node), net.name(c.input)));
        }
        if c.is_terminal() {
            let declared = net.receiver_cost(node).cloned().unwrap_or_else(|| net.spec().one());
            if c.cost != declared {
                return Err(format!("terminal cost mismatch at {}", net.name(node)));
            }
            leaves.insert(node);
        } else {
            let rebuilt = h
                .connector(node, &c.outputs)
                .ok_or_else(|| format!("hypergraph has no such connector at {}", net.name(node)))?;
            if rebuilt.cost != c.cost {
                return Err(format!("connector cost mismatch at {}", net.name(node)));
            }
            if let Some(allowed) = &q.allowed_modalities {
                if !rebuilt.modalities.is_subset(allowed) {
                    return Err(format!(
                        "connector at {} uses disallowed modalities",
                        net.name(node)
                    ));
                }
            }
            stack.extend(c.outputs.iter().copied());
        }
    }
    if seen.len() != tree.chosen.len() {
        return Err("chosen map has entries outside the tree".into());
    }
    if leaves != q.receivers {
        return Err("leaves differ from the queried receivers".into());
    }
    if leaves != tree.leaves {
        return Err("recorded leaf set is wrong".into());
    }
    if let Some(depth) = q.max_depth {
        if tree.depth() > depth {
            return Err(format!("depth {} exceeds bound {}", tree.depth(), depth));
        }
    }
    Ok(())
}

/// What a search does with partial and completed states.
enum Sink<'s> {
    Best {
        incumbent: &'s mut Option<(TreeSolution, String)>,
        window: Option<ScalarWindow>,
        prune: bool,
    },
    Pareto {
        frontier: &'s mut Frontier<TreeWitness>,
        prune: bool,
    },
    All {
        out: &'s mut Vec<TreeSolution>,
    },
}

struct TreeSearch<'a> {
    h: &'a Hypergraph<'a>,
    spec: &'a SemiringSpec,
    q: &'a TreeQuery,
    filter: ConnectorFilter,
    max_depth: usize,
    stats: SearchStats,
    warnings: Vec<String>,
}

struct TreeState {
    /// Branch tips still to expand, with their depths.
    open: BTreeMap<NodeId, usize>,
    visited: BTreeSet<NodeId>,
    chosen: BTreeMap<NodeId, Connector>,
    closed_receivers: usize,
    acc: MultiCost,
}

impl<'a> TreeSearch<'a> {
    fn new(
        h: &'a Hypergraph<'a>,
        q: &'a TreeQuery,
        spec: &'a SemiringSpec,
    ) -> Result<Self, SearchError> {
        let net = h.network();
        if q.receivers.is_empty() {
            return Err(SearchError::InvalidQuery("multicast needs at least one receiver".into()));
        }
        if q.max_depth == Some(0) {
            return Err(SearchError::InvalidQuery("max depth must be at least 1".into()));
        }
        let mut warnings = Vec::new();
        for r in &q.receivers {
            if net.receiver_cost(*r).is_none() {
                warnings.push(format!(
                    "{} is not a declared receiver; treating it as one with neutral cost",
                    net.name(*r)
                ));
            }
        }
        let mut filter = ConnectorFilter {
            modalities_within: q.allowed_modalities.clone(),
            ..Default::default()
        };
        if q.reach_filter {
            filter.reach = q
                .receivers
                .iter()
                .filter_map(|r| net.region(*r).map(str::to_string))
                .collect();
        }
        let max_depth = q.max_depth.unwrap_or_else(|| default_max_depth(net));
        Ok(TreeSearch { h, spec, q, filter, max_depth, stats: SearchStats::default(), warnings })
    }

    fn initial(&self) -> TreeState {
        TreeState {
            open: BTreeMap::from([(self.q.source, 0)]),
            visited: BTreeSet::from([self.q.source]),
            chosen: BTreeMap::new(),
            closed_receivers: 0,
            acc: self.spec.one(),
        }
    }

    fn run_best(&mut self, window: Option<ScalarWindow>) -> Option<TreeSolution> {
        let mut incumbent: Option<(TreeSolution, String)> = None;
        let prune = self.q.mode == SearchMode::BranchAndBound;
        let mut state = self.initial();
        let mut sink = Sink::Best { incumbent: &mut incumbent, window, prune };
        self.expand(&mut state, &mut sink).expect("best search emits no errors");
        incumbent.map(|(tree, _)| tree)
    }

    fn run_pareto(&mut self) -> Frontier<TreeWitness> {
        let mut frontier = Frontier::new();
        let prune = self.q.mode == SearchMode::BranchAndBound;
        let mut state = self.initial();
        let mut sink = Sink::Pareto { frontier: &mut frontier, prune };
        self.expand(&mut state, &mut sink).expect("pareto search emits no errors");
        frontier
    }

    fn terminal_cost(&self, node: NodeId) -> MultiCost {
        self.h
            .network()
            .receiver_cost(node)
            .cloned()
            .unwrap_or_else(|| self.spec.one())
    }

    fn complete(&self, state: &TreeState) -> TreeSolution {
        TreeSolution {
            root: self.q.source,
            chosen: state.chosen.clone(),
            leaves: self.q.receivers.clone(),
            cost: state.acc.clone(),
        }
    }

    fn scalar(&self, c: &MultiCost) -> Metric {
        if self.spec.dims() == 1 {
            *c.get(0)
        } else {
            self.spec.scalarize(c)
        }
    }

    fn window_prunes(&self, acc: &MultiCost, w: ScalarWindow) -> bool {
        match self.spec.kind(0) {
            DimKind::Weighted => match self.scalar(acc) {
                Metric::Fin(v) => v > w.hi,
                Metric::Inf => true,
            },
            _ => match self.scalar(acc) {
                Metric::Fin(v) => v < w.lo,
                Metric::Inf => false,
            },
        }
    }

    fn in_window(&self, cost: &MultiCost, w: ScalarWindow) -> bool {
        match self.scalar(cost) {
            Metric::Fin(v) => v >= w.lo && v <= w.hi,
            Metric::Inf => false,
        }
    }

    /// Partial-state pruning per sink; sound because combining further
    /// connectors never improves the accumulated cost.
    fn prunes_partial(&self, state: &TreeState, sink: &Sink<'_>) -> bool {
        match sink {
            Sink::Best { incumbent, window, prune } => {
                if let Some(w) = window {
                    if self.window_prunes(&state.acc, *w) {
                        return true;
                    }
                }
                if *prune {
                    if let Some((best, _)) = incumbent {
                        return self.spec.compare(&state.acc, &best.cost) == CostOrdering::Worse;
                    }
                }
                false
            }
            Sink::Pareto { frontier, prune } => {
                *prune && frontier.strictly_dominates(self.spec, &state.acc)
            }
            Sink::All { .. } => false,
        }
    }

    fn emit(&self, state: &TreeState, sink: &mut Sink<'_>) -> Result<(), SearchError> {
        let cost = &state.acc;
        match sink {
            Sink::Best { incumbent, window, .. } => {
                if let Some(w) = window {
                    if !self.in_window(cost, *w) {
                        return Ok(());
                    }
                }
                if *cost == self.spec.zero() {
                    return Ok(());
                }
                let tree = self.complete(state);
                let encoding = tree.canonical(self.h.network());
                match incumbent {
                    None => **incumbent = Some((tree, encoding)),
                    Some((best, best_enc)) => match self.spec.compare(cost, &best.cost) {
                        CostOrdering::Better => **incumbent = Some((tree, encoding)),
                        // Equal-cost trees resolve to the smallest encoding;
                        // scalar ties between distinct tuples keep the
                        // first-found incumbent.
                        CostOrdering::Equal => {
                            if encoding < *best_enc {
                                **incumbent = Some((tree, encoding));
                            }
                        }
                        CostOrdering::Worse | CostOrdering::Incomparable => {}
                    },
                }
                Ok(())
            }
            Sink::Pareto { frontier, .. } => {
                let tree = self.complete(state);
                let encoding = tree.canonical(self.h.network());
                frontier.insert(
                    self.spec,
                    cost.clone(),
                    TreeWitness { encoding, tree: Box::new(tree) },
                );
                Ok(())
            }
            Sink::All { out } => {
                if out.len() >= ORACLE_TREE_LIMIT {
                    return Err(SearchError::OracleTooLarge { limit: ORACLE_TREE_LIMIT });
                }
                out.push(self.complete(state));
                Ok(())
            }
        }
    }

    fn expand(&mut self, state: &mut TreeState, sink: &mut Sink<'_>) -> Result<(), SearchError> {
        if self.prunes_partial(state, sink) {
            self.stats.pruned += 1;
            return Ok(());
        }
        self.stats.explored += 1;
        let Some((&node, &depth)) = state.open.first_key_value() else {
            // All branches terminated; a solution tree additionally needs
            // every queried receiver among its leaves.
            if state.closed_receivers == self.q.receivers.len() {
                return self.emit(state, sink);
            }
            return Ok(());
        };
        state.open.remove(&node);

        if self.q.receivers.contains(&node) {
            // Queried receivers terminate their branch with the
            // 0-connector; they never forward.
            let terminal = Connector {
                input: node,
                outputs: Vec::new(),
                cost: self.terminal_cost(node),
                modalities: BTreeSet::new(),
                reach: BTreeSet::new(),
            };
            let saved_acc = state.acc.clone();
            state.acc = self.spec.combine(&state.acc, &terminal.cost);
            state.chosen.insert(node, terminal);
            state.closed_receivers += 1;
            let result = self.expand(state, sink);
            state.closed_receivers -= 1;
            state.chosen.remove(&node);
            state.acc = saved_acc;
            state.open.insert(node, depth);
            return result;
        }

        if depth < self.max_depth {
            let connectors: Vec<Connector> = self
                .h
                .connectors_from(node, &self.filter)
                .filter(|c| c.outputs.iter().all(|o| !state.visited.contains(o)))
                .collect();
            for connector in connectors {
                // Every open non-receiver branch still needs its own
                // receiver; a connector that opens more branches than
                // receivers remain can never complete.
                let open_receivers = state
                    .open
                    .keys()
                    .chain(connector.outputs.iter())
                    .filter(|n| self.q.receivers.contains(n))
                    .count();
                let open_plain = state.open.len() + connector.outputs.len() - open_receivers;
                let unclaimed =
                    self.q.receivers.len() - state.closed_receivers - open_receivers;
                if open_plain > unclaimed {
                    self.stats.pruned += 1;
                    continue;
                }

                let saved_acc = state.acc.clone();
                state.acc = self.spec.combine(&state.acc, &connector.cost);
                for o in &connector.outputs {
                    state.visited.insert(*o);
                    state.open.insert(*o, depth + 1);
                }
                state.chosen.insert(node, connector.clone());

                let result = self.expand(state, sink);

                state.chosen.remove(&node);
                for o in &connector.outputs {
                    state.visited.remove(o);
                    state.open.remove(o);
                }
                state.acc = saved_acc;
                result?;
            }
        }
        state.open.insert(node, depth);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::WeightProfile;
    use crate::fixtures;
    use crate::graph::parse_network;
    use crate::unicast::{best_path, PathQuery};

    fn multicast_net() -> Network {
        parse_network(fixtures::BW_MONEY_MULTICAST).unwrap()
    }

    fn modal_net() -> Network {
        parse_network(fixtures::BW_MONEY_MODAL).unwrap()
    }

    fn node_set(net: &Network, names: &[&str]) -> Vec<NodeId> {
        names.iter().map(|n| net.node(n).unwrap()).collect()
    }

    #[test]
    fn multicast_reference_tree_costs_2_16() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(
            net.node("n0").unwrap(),
            node_set(&net, &["n6", "n7", "n8", "n9"]),
        );
        let out = pareto_trees(&h, &q, net.spec()).unwrap();
        let costs: Vec<MultiCost> = out.frontier.costs().cloned().collect();
        assert_eq!(costs, vec![MultiCost::from_ints(&[2, 16])]);
        let witness = &out.frontier.entries()[0].witnesses[0];
        assert_eq!(
            witness.encoding,
            "(n0 (n1 (n3 (n6) (n7)) (n4 (n5 (n8) (n9)))))"
        );
        validate_tree(&h, &q, &witness.tree).unwrap();
    }

    #[test]
    fn scalarized_best_tree_matches_pareto_singleton() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(
            net.node("n0").unwrap(),
            node_set(&net, &["n6", "n7", "n8", "n9"]),
        );
        // Money is the only weighted dimension here, so scalarize a
        // money-only projection is not possible; instead check via the
        // exhaustive route: the single frontier element is the best tree.
        let all = brute_force_trees(&h, &q).unwrap();
        let best_money = all
            .iter()
            .map(|t| t.cost.get(1).finite().unwrap())
            .min()
            .unwrap();
        assert_eq!(best_money, Rational::from_integer(16));
        assert!(all.iter().all(|t| t.cost.get(0) == &Metric::from_int(2)));
    }

    #[test]
    fn single_receiver_tree_degenerates_to_unicast() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        for receiver in ["n6", "n9"] {
            let q = TreeQuery::new(net.node("n0").unwrap(), node_set(&net, &[receiver]));
            let trees = brute_force_trees(&h, &q).unwrap();
            let paths = crate::unicast::brute_force_paths(
                &net,
                net.node("n0").unwrap(),
                net.node(receiver).unwrap(),
                default_max_depth(&net),
            )
            .unwrap();
            assert_eq!(trees.len(), paths.len());
            let mut tree_costs: Vec<String> = trees.iter().map(|t| t.cost.to_string()).collect();
            let mut path_costs: Vec<String> = paths.iter().map(|p| p.cost.to_string()).collect();
            tree_costs.sort();
            path_costs.sort();
            assert_eq!(tree_costs, path_costs);
        }
    }

    #[test]
    fn source_equals_sole_receiver() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        let n9 = net.node("n9").unwrap();
        let q = TreeQuery::new(n9, [n9]);
        let out = pareto_trees(&h, &q, net.spec()).unwrap();
        let costs: Vec<MultiCost> = out.frontier.costs().cloned().collect();
        assert_eq!(costs, vec![MultiCost::from_ints(&[2, 3])]);
        let tree = &out.frontier.entries()[0].witnesses[0].tree;
        assert_eq!(tree.chosen.len(), 1);
        assert!(tree.chosen[&n9].is_terminal());
    }

    #[test]
    fn unreachable_receiver_gives_empty_frontier() {
        let net = parse_network(
            "qnet 1\ndims weighted\nnode a\nnode b\nnode c\nedge a b 1\nreceiver c\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(net.node("a").unwrap(), [net.node("c").unwrap()]);
        let out = pareto_trees(&h, &q, net.spec()).unwrap();
        assert!(out.frontier.is_empty());
    }

    #[test]
    fn wired_only_tree_excludes_mixed_bundle() {
        let net = modal_net();
        let h = Hypergraph::new(&net);
        let receivers = node_set(&net, &["n3", "n4"]);
        let mut q = TreeQuery::new(net.node("n0").unwrap(), receivers.clone());
        q.allowed_modalities = Some(["w".to_string()].into_iter().collect());
        let wired = pareto_trees(&h, &q, net.spec()).unwrap();
        let costs: Vec<MultiCost> = wired.frontier.costs().cloned().collect();
        assert_eq!(costs, vec![MultiCost::from_ints(&[6, 6])]);

        q.allowed_modalities = Some(["l", "w"].iter().map(|s| s.to_string()).collect());
        let both = pareto_trees(&h, &q, net.spec()).unwrap();
        let costs: Vec<MultiCost> = both.frontier.costs().cloned().collect();
        assert_eq!(costs, vec![MultiCost::from_ints(&[7, 5])]);
        // The re-admitted bundle from n0 covers n1 and n2 in one connector.
        let tree = &both.frontier.entries()[0].witnesses[0].tree;
        assert_eq!(tree.chosen[&net.node("n0").unwrap()].outputs.len(), 2);
    }

    #[test]
    fn all_labels_equals_unrestricted() {
        let net = modal_net();
        let h = Hypergraph::new(&net);
        let receivers = node_set(&net, &["n3", "n4"]);
        let unrestricted =
            pareto_trees(&h, &TreeQuery::new(net.node("n0").unwrap(), receivers.clone()), net.spec())
                .unwrap();
        let mut q = TreeQuery::new(net.node("n0").unwrap(), receivers);
        q.allowed_modalities = Some(["l", "w"].iter().map(|s| s.to_string()).collect());
        let modal = pareto_trees(&h, &q, net.spec()).unwrap();
        assert!(unrestricted.frontier.same_costs(&modal.frontier));
    }

    #[test]
    fn tree_cost_recursion_matches_flat_fold() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(
            net.node("n0").unwrap(),
            node_set(&net, &["n6", "n7", "n8", "n9"]),
        );
        for tree in brute_force_trees(&h, &q).unwrap() {
            let recursive = tree_cost(net.spec(), &tree).unwrap();
            let mut flat = net.spec().one();
            for c in tree.chosen.values() {
                flat = net.spec().combine(&flat, &c.cost);
            }
            assert_eq!(recursive, flat);
            assert_eq!(recursive, tree.cost);
        }
    }

    #[test]
    fn tree_cost_rejects_broken_trees() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(
            net.node("n0").unwrap(),
            node_set(&net, &["n6", "n7", "n8", "n9"]),
        );
        let mut tree = brute_force_trees(&h, &q).unwrap().remove(0);
        let root = tree.root;
        tree.chosen.remove(&root);
        assert!(tree_cost(net.spec(), &tree).is_err());
    }

    #[test]
    fn diamond_tree_enumeration_matches_hand_count() {
        // a feeds b and c; both feed d... receivers are b and c, so valid
        // trees pick at a: (b), (c), or (b,c); single outputs strand the
        // other receiver, so only (a,b,c) completes. Adding a direct a->d->b
        // style alternative route multiplies options; hand count on this
        // fixture: connector (a,b,c) alone, or chains through d.
        let net = parse_network(
            "qnet 1\ndims weighted\nnode a\nnode b\nnode c\nnode d\n\
             edge a b 1\nedge a c 2\nedge a d 1\nedge d b 1\nedge d c 1\n\
             receiver b\nreceiver c\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let mut q = TreeQuery::new(net.node("a").unwrap(), node_set(&net, &["b", "c"]));
        q.max_depth = Some(3);
        let trees = brute_force_trees(&h, &q).unwrap();
        // Hand enumeration: a->(b,c); a->(b,d),d->(c); a->(c,d),d->(b);
        // a->(d),d->(b,c). The two-branch splits at a where d forwards to
        // the remaining receiver, plus the pure relay through d.
        assert_eq!(trees.len(), 4);
        for t in &trees {
            validate_tree(&h, &q, t).unwrap();
        }
        let encodings: BTreeSet<String> = trees.iter().map(|t| t.canonical(&net)).collect();
        assert!(encodings.contains("(a (b) (c))"));
        assert!(encodings.contains("(a (d (b) (c)))"));
    }

    #[test]
    fn receiver_order_does_not_matter() {
        let net = multicast_net();
        let h = Hypergraph::new(&net);
        let fwd = TreeQuery::new(
            net.node("n0").unwrap(),
            node_set(&net, &["n6", "n7", "n8", "n9"]),
        );
        let rev = TreeQuery::new(
            net.node("n0").unwrap(),
            node_set(&net, &["n9", "n7", "n8", "n6"]),
        );
        let a = pareto_trees(&h, &fwd, net.spec()).unwrap();
        let b = pareto_trees(&h, &rev, net.spec()).unwrap();
        assert!(a.frontier.same_costs(&b.frontier));
        assert_eq!(
            a.frontier.entries()[0].witnesses[0].encoding,
            b.frontier.entries()[0].witnesses[0].encoding
        );
    }

    #[test]
    fn undeclared_receiver_warns_and_uses_neutral_cost() {
        let net = parse_network("qnet 1\ndims weighted\nnode a\nnode b\nedge a b 3\n").unwrap();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(net.node("a").unwrap(), [net.node("b").unwrap()]);
        let out = pareto_trees(&h, &q, net.spec()).unwrap();
        assert_eq!(out.warnings.len(), 1);
        let costs: Vec<MultiCost> = out.frontier.costs().cloned().collect();
        assert_eq!(costs, vec![MultiCost::from_ints(&[3])]);
    }

    #[test]
    fn reach_pruning_keeps_the_cost_on_aligned_regions() {
        let net = parse_network(
            "qnet 1\ndims weighted\nnode a\nnode b\nnode c\nnode d\n\
             edge a b 1 reach=AS1\nedge a c 5 reach=AS2\nedge b d 1 reach=AS1\nedge c d 1 reach=AS2\n\
             receiver d\nregion d AS1\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let mut q = TreeQuery::new(net.node("a").unwrap(), [net.node("d").unwrap()]);
        let unfiltered = pareto_trees(&h, &q, net.spec()).unwrap();
        q.reach_filter = true;
        let filtered = pareto_trees(&h, &q, net.spec()).unwrap();
        assert!(unfiltered.frontier.same_costs(&filtered.frontier));
        assert!(filtered.stats.explored <= unfiltered.stats.explored);
    }

    #[test]
    fn modal_tree_needs_modalities_and_total_order() {
        let net = modal_net();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(net.node("n0").unwrap(), node_set(&net, &["n3", "n4"]));
        assert!(matches!(modal_tree(&h, &q, net.spec()), Err(SearchError::InvalidQuery(_))));
        let mut with_mods = q.clone();
        with_mods.allowed_modalities = Some(["w".to_string()].into_iter().collect());
        assert!(matches!(
            modal_tree(&h, &with_mods, net.spec()),
            Err(SearchError::PartialOrder)
        ));
    }

    #[test]
    fn best_tree_under_scalar_order_on_weighted_net() {
        // Two weighted dims so the scalarized order applies; receivers b, c.
        let net = parse_network(
            "qnet 1\ndims x:weighted,y:weighted\nnode a\nnode b\nnode c\nnode d\n\
             edge a b 1,2\nedge a c 2,1\nedge a d 1,1\nedge d b 1,1\nedge d c 1,1\n\
             receiver b\nreceiver c\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let spec = net.spec().ordered_weighted(WeightProfile::uniform(2)).unwrap();
        let q = TreeQuery::new(net.node("a").unwrap(), node_set(&net, &["b", "c"]));
        let best = best_tree(&h, &q, &spec).unwrap().unwrap();
        // Bundled links cost their worst member, so both the direct split
        // (a,b,c) and the relay a-d-(b,c) come to <2,2> (scalar 4); the
        // mixed splits land at <2,3>/<3,2> (scalar 5). The equal-cost tie
        // resolves to the smallest canonical encoding.
        assert_eq!(best.cost, MultiCost::from_ints(&[2, 2]));
        assert_eq!(best.tree.canonical(&net), "(a (b) (c))");
        validate_tree(&h, &q, &best.tree).unwrap();
        // bnb and exhaustive agree.
        let mut ex = q.clone();
        ex.mode = SearchMode::Exhaustive;
        let full = best_tree(&h, &ex, &spec).unwrap().unwrap();
        assert_eq!(best.cost, full.cost);
        assert_eq!(best.tree.canonical(&net), full.tree.canonical(&net));
        assert!(best.stats.explored <= full.stats.explored);
    }

    #[test]
    fn windowed_tree_search_matches_plain_search() {
        let net = parse_network(
            "qnet 1\ndims x:weighted,y:weighted\nnode a\nnode b\nnode c\nnode d\n\
             edge a b 1,2\nedge a c 2,1\nedge a d 1,1\nedge d b 1,1\nedge d c 1,1\n\
             receiver b\nreceiver c\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let spec = net.spec().ordered_weighted(WeightProfile::uniform(2)).unwrap();
        let mut q = TreeQuery::new(net.node("a").unwrap(), node_set(&net, &["b", "c"]));
        let plain = best_tree(&h, &q, &spec).unwrap().unwrap();
        // A window below every tree cost forces widening restarts.
        q.window = Some(ScalarWindow {
            lo: Rational::from_integer(0),
            hi: Rational::from_integer(1),
        });
        let windowed = best_tree(&h, &q, &spec).unwrap().unwrap();
        assert_eq!(windowed.cost, plain.cost);
        assert_eq!(windowed.tree.canonical(&net), plain.tree.canonical(&net));
    }

    #[test]
    fn best_path_and_best_tree_agree_on_single_receiver() {
        let net = parse_network(
            "qnet 1\ndims money:weighted\nnode a\nnode b\nnode c\n\
             edge a b 2\nedge b c 3\nedge a c 9\nreceiver c 1\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let q = TreeQuery::new(net.node("a").unwrap(), [net.node("c").unwrap()]);
        let tree = best_tree(&h, &q, net.spec()).unwrap().unwrap();
        let path = best_path(
            &net,
            &PathQuery::new(net.node("a").unwrap(), net.node("c").unwrap()),
            net.spec(),
        )
        .unwrap()
        .unwrap();
        // Path cost already includes c's declared terminal cost.
        assert_eq!(tree.cost, path.cost);
        assert_eq!(tree.cost, MultiCost::from_ints(&[6]));
        // On a totally ordered algebra the frontier is that one best cost.
        let frontier = pareto_trees(&h, &q, net.spec()).unwrap().frontier;
        assert_eq!(frontier.len(), 1);
        assert_eq!(frontier.costs().next().unwrap(), &tree.cost);
    }
}
