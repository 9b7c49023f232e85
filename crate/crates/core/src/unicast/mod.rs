//! Unicast path search: best path, Pareto frontier, constrained paths, and
//! modality-restricted variants, plus the exhaustive oracle they are tested
//! against.
//!
//! All searches enumerate simple paths depth-first with a visited set, in
//! lexicographic neighbor order, so equal-cost results resolve to the
//! lexicographically smallest node sequence. Branch-and-bound pruning
//! exploits that combining more links never improves a cost: a partial path
//! already strictly worse than the incumbent (or strictly dominated by the
//! frontier) cannot recover.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{
    CostOrdering, DimKind, Frontier, Metric, MultiCost, Rational, SemiringSpec, TupleOrder,
};
use crate::graph::{GraphError, Network, NodeId};
use crate::netgen;

pub const ORACLE_PATH_LIMIT: usize = 2000;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("the cost order is partial here; use the pareto search")]
    PartialOrder,
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("oracle refuses: more than {limit} candidate solutions")]
    OracleTooLarge { limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundOp {
    Le,
    Ge,
}

/// A per-dimension feasibility bound on the aggregate path cost.
#[derive(Debug, Clone, PartialEq)]
pub struct DimBound {
    pub dim: usize,
    pub op: BoundOp,
    pub value: Metric,
}

impl DimBound {
    pub fn le(dim: usize, value: i64) -> Self {
        DimBound { dim, op: BoundOp::Le, value: Metric::from_int(value) }
    }

    pub fn ge(dim: usize, value: i64) -> Self {
        DimBound { dim, op: BoundOp::Ge, value: Metric::from_int(value) }
    }

    fn satisfied(&self, cost: &MultiCost) -> bool {
        let v = cost.get(self.dim);
        match self.op {
            BoundOp::Le => v.num_cmp(&self.value) != std::cmp::Ordering::Greater,
            BoundOp::Ge => v.num_cmp(&self.value) != std::cmp::Ordering::Less,
        }
    }
}

/// Scalar cost window for windowed branch-and-bound restarts. Solutions
/// are accepted when their scalar lies in `[lo, hi]`; on failure the upper
/// bound widens exponentially, and after repeated failures the search runs
/// unbounded. The answer is the best solution of the first window that
/// contains any, so a window starting at 0 yields the global optimum for
/// minimizing metrics while a raised `lo` deliberately excludes cheaper
/// solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarWindow {
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    BranchAndBound,
    Exhaustive,
}

#[derive(Debug, Clone)]
pub struct PathQuery {
    pub src: NodeId,
    pub dst: NodeId,
    pub bounds: Vec<DimBound>,
    pub allowed_modalities: Option<BTreeSet<String>>,
    pub uniform_modality: bool,
    pub max_depth: Option<usize>,
    pub window: Option<ScalarWindow>,
    pub mode: SearchMode,
}

impl PathQuery {
    pub fn new(src: NodeId, dst: NodeId) -> Self {
        PathQuery {
            src,
            dst,
            bounds: Vec::new(),
            allowed_modalities: None,
            uniform_modality: false,
            max_depth: None,
            window: None,
            mode: SearchMode::BranchAndBound,
        }
    }
}

/// A simple path with its aggregate cost (hop costs combined, plus the
/// destination's terminal cost when it is a declared receiver) and the
/// modality tokens available on each hop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSolution {
    pub nodes: Vec<NodeId>,
    pub cost: MultiCost,
    pub modalities_used: Vec<BTreeSet<String>>,
}

impl PathSolution {
    pub fn depth(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }
}

impl PartialOrd for PathSolution {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PathSolution {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nodes.cmp(&other.nodes)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// Node expansions performed.
    pub explored: u64,
    /// Branches cut by bounds, windows, or dominance.
    pub pruned: u64,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: SearchStats) {
        self.explored += other.explored;
        self.pruned += other.pruned;
    }
}

#[derive(Debug, Clone)]
pub struct BestPath {
    pub cost: MultiCost,
    pub path: PathSolution,
    /// Every distinct minimum-cost path seen, ascending, capped.
    pub tied: Vec<PathSolution>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct ParetoPaths {
    pub frontier: Frontier<PathSolution>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone)]
pub struct ConstrainedPaths {
    pub paths: Vec<PathSolution>,
    pub stats: SearchStats,
}

const TIE_CAP: usize = 4;
const WINDOW_RESTARTS: usize = 40;

/// Depth used when a query does not set one: twice the hop diameter of the
/// topology's largest component.
pub fn default_max_depth(net: &Network) -> usize {
    (2 * netgen::stats(net).diameter).max(1)
}

/// Best path under a total cost order (one dimension, or a scalarized
/// product). Returns the choose-dominant cost with the lexicographically
/// smallest witness, or None when the destination is out of reach.
pub fn best_path(
    net: &Network,
    q: &PathQuery,
    spec: &SemiringSpec,
) -> Result<Option<BestPath>, SearchError> {
    if !spec.is_total_order() {
        return Err(SearchError::PartialOrder);
    }
    if q.uniform_modality {
        return best_path_uniform(net, q, spec);
    }
    let Some(first) = q.window else {
        let mut ctx = Context::new(net, q, spec)?;
        return Ok(ctx.run_best(None));
    };
    // Windowed restarts: search [lo..hi], widen exponentially on failure,
    // fall back to an unbounded pass. Windows are tried in ascending order,
    // so the first hit is the global best.
    let width = (first.hi - first.lo).max(Rational::from_integer(1));
    let mut window = first;
    let mut grow = width;
    let mut stats = SearchStats::default();
    for _ in 0..WINDOW_RESTARTS {
        let mut attempt = Context::new(net, q, spec)?;
        let found = attempt.run_best(Some(window));
        stats.absorb(attempt.stats);
        if let Some(mut hit) = found {
            hit.stats = stats;
            return Ok(Some(hit));
        }
        grow *= Rational::from_integer(2);
        window = ScalarWindow { lo: first.lo, hi: window.hi + grow };
    }
    let mut unbounded = Context::new(net, q, spec)?;
    let found = unbounded.run_best(None);
    stats.absorb(unbounded.stats);
    Ok(found.map(|mut hit| {
        hit.stats = stats;
        hit
    }))
}

/// Best path over a set of allowed modalities. Uniform mode demands one
/// common allowed modality across every hop; per-arc mode lets each hop
/// pick any allowed modality independently.
pub fn modal_best_path(
    net: &Network,
    q: &PathQuery,
    spec: &SemiringSpec,
) -> Result<Option<BestPath>, SearchError> {
    match &q.allowed_modalities {
        Some(m) if !m.is_empty() => best_path(net, q, spec),
        _ => Err(SearchError::InvalidQuery("modal query needs a non-empty modality set".into())),
    }
}

fn best_path_uniform(
    net: &Network,
    q: &PathQuery,
    spec: &SemiringSpec,
) -> Result<Option<BestPath>, SearchError> {
    let Some(allowed) = &q.allowed_modalities else {
        return Err(SearchError::InvalidQuery(
            "uniform modality needs an explicit allowed set".into(),
        ));
    };
    let mut best: Option<BestPath> = None;
    let mut stats = SearchStats::default();
    for modality in allowed {
        let mut sub = q.clone();
        sub.uniform_modality = false;
        sub.allowed_modalities = Some([modality.clone()].into_iter().collect());
        let found = best_path(net, &sub, spec)?;
        if let Some(hit) = found {
            stats.absorb(hit.stats);
            best = Some(match best {
                None => hit,
                Some(cur) => merge_best(spec, cur, hit),
            });
        }
    }
    Ok(best.map(|mut b| {
        b.stats = stats;
        b
    }))
}

fn merge_best(spec: &SemiringSpec, a: BestPath, b: BestPath) -> BestPath {
    match spec.compare(&a.cost, &b.cost) {
        CostOrdering::Better => a,
        CostOrdering::Worse => b,
        CostOrdering::Equal => {
            let mut merged = a;
            for t in b.tied {
                if let Err(pos) = merged.tied.binary_search(&t) {
                    if pos < TIE_CAP {
                        merged.tied.insert(pos, t);
                        merged.tied.truncate(TIE_CAP);
                    }
                }
            }
            merged.path = merged.tied[0].clone();
            merged
        }
        // Distinct tuples on an exact scalar tie: the smaller witness wins.
        CostOrdering::Incomparable => {
            if a.path <= b.path {
                a
            } else {
                b
            }
        }
    }
}

/// The exact non-dominated set of simple-path costs, with witnesses.
pub fn pareto_paths(
    net: &Network,
    q: &PathQuery,
    spec: &SemiringSpec,
) -> Result<ParetoPaths, SearchError> {
    if q.uniform_modality {
        let Some(allowed) = q.allowed_modalities.clone() else {
            return Err(SearchError::InvalidQuery(
                "uniform modality needs an explicit allowed set".into(),
            ));
        };
        let mut frontier = Frontier::new();
        let mut stats = SearchStats::default();
        for modality in &allowed {
            let mut sub = q.clone();
            sub.uniform_modality = false;
            sub.allowed_modalities = Some([modality.clone()].into_iter().collect());
            let mut ctx = Context::new(net, &sub, spec)?;
            let part = ctx.run_pareto();
            stats.absorb(ctx.stats);
            frontier.union(spec, &part);
        }
        return Ok(ParetoPaths { frontier, stats });
    }
    let mut ctx = Context::new(net, q, spec)?;
    let frontier = ctx.run_pareto();
    Ok(ParetoPaths { frontier, stats: ctx.stats })
}

/// Every simple path within the depth bound whose aggregate cost satisfies
/// all declared bounds, sorted by cost values then node sequence.
pub fn constrained_paths(
    net: &Network,
    q: &PathQuery,
    spec: &SemiringSpec,
) -> Result<ConstrainedPaths, SearchError> {
    if q.bounds.is_empty() {
        return Err(SearchError::InvalidQuery("constrained search needs at least one bound".into()));
    }
    let mut ctx = Context::new(net, q, spec)?;
    let mut paths = ctx.run_collect();
    paths.sort_by(|a, b| a.cost.value_cmp(&b.cost).then_with(|| a.nodes.cmp(&b.nodes)));
    Ok(ConstrainedPaths { paths, stats: ctx.stats })
}

/// Exhaustive enumeration of all simple paths from `src` to `dst` within
/// `max_depth` hops, refusing beyond [`ORACLE_PATH_LIMIT`] completed paths.
/// No filters, no pruning: this is the oracle the searches are checked
/// against.
pub fn brute_force_paths(
    net: &Network,
    src: NodeId,
    dst: NodeId,
    max_depth: usize,
) -> Result<Vec<PathSolution>, SearchError> {
    fn recurse(
        net: &Network,
        dst: NodeId,
        max_depth: usize,
        visited: &mut Vec<bool>,
        nodes: &mut Vec<NodeId>,
        out: &mut Vec<PathSolution>,
    ) -> Result<(), SearchError> {
        let here = *nodes.last().unwrap();
        if here == dst {
            if out.len() >= ORACLE_PATH_LIMIT {
                return Err(SearchError::OracleTooLarge { limit: ORACLE_PATH_LIMIT });
            }
            let spec = net.spec();
            let mut cost = spec.one();
            let mut mods = Vec::new();
            for hop in nodes.windows(2) {
                let e = net
                    .out_edges(hop[0])
                    .iter()
                    .map(|i| net.edge(*i))
                    .find(|e| e.dst == hop[1])
                    .expect("path follows edges");
                cost = spec.combine(&cost, &e.cost);
                mods.push(e.modalities.clone());
            }
            cost = spec.combine(&cost, &net.terminal_cost(dst));
            out.push(PathSolution { nodes: nodes.clone(), cost, modalities_used: mods });
            return Ok(());
        }
        if nodes.len() > max_depth {
            return Ok(());
        }
        for idx in net.out_edges(here) {
            let next = net.edge(*idx).dst;
            if visited[next.index()] {
                continue;
            }
            visited[next.index()] = true;
            nodes.push(next);
            recurse(net, dst, max_depth, visited, nodes, out)?;
            nodes.pop();
            visited[next.index()] = false;
        }
        Ok(())
    }

    let mut out = Vec::new();
    let mut visited = vec![false; net.node_count()];
    let mut nodes = vec![src];
    visited[src.index()] = true;
    recurse(net, dst, max_depth, &mut visited, &mut nodes, &mut out)?;
    Ok(out)
}

struct BestState {
    incumbent: Option<MultiCost>,
    tied: Vec<PathSolution>,
}

/// Shared depth-first machinery for the three search flavors.
struct Context<'a> {
    net: &'a Network,
    spec: &'a SemiringSpec,
    q: &'a PathQuery,
    max_depth: usize,
    usable: Vec<bool>,
    stats: SearchStats,
}

impl<'a> Context<'a> {
    fn new(net: &'a Network, q: &'a PathQuery, spec: &'a SemiringSpec) -> Result<Self, SearchError> {
        for b in &q.bounds {
            if b.dim >= spec.dims() {
                return Err(SearchError::InvalidQuery(format!(
                    "bound names dimension {} of {}",
                    b.dim,
                    spec.dims()
                )));
            }
        }
        if q.window.is_some() && spec.dims() > 1 && !matches!(spec.order, TupleOrder::Scalarized(_))
        {
            return Err(SearchError::InvalidQuery("cost windows need a scalar order".into()));
        }
        if q.max_depth == Some(0) {
            return Err(SearchError::InvalidQuery("max depth must be at least 1".into()));
        }
        let max_depth = q.max_depth.unwrap_or_else(|| default_max_depth(net));
        let usable = net
            .edges()
            .iter()
            .map(|e| match &q.allowed_modalities {
                None => true,
                Some(allowed) => e.modalities.intersection(allowed).next().is_some(),
            })
            .collect();
        Ok(Context { net, spec, q, max_depth, usable, stats: SearchStats::default() })
    }

    fn scalar(&self, c: &MultiCost) -> Metric {
        if self.spec.dims() == 1 {
            *c.get(0)
        } else {
            self.spec.scalarize(c)
        }
    }

    /// Whether the running scalar can still enter the window. Weighted
    /// scalars only grow along a path, concave and probabilistic ones only
    /// shrink, so one side of the window is decisive early.
    fn window_prunes(&self, acc: &MultiCost, w: ScalarWindow) -> bool {
        let s = self.scalar(acc);
        match self.spec.kind(0) {
            DimKind::Weighted => match s {
                Metric::Fin(v) => v > w.hi,
                Metric::Inf => true,
            },
            _ => match s {
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

    /// Bounds that can already be judged on a partial cost: dimensions
    /// where further combining only moves away from the bound.
    fn partial_bounds_violated(&self, acc: &MultiCost) -> bool {
        self.q.bounds.iter().any(|b| {
            let monotone = matches!(
                (self.spec.kind(b.dim), b.op),
                (DimKind::Weighted, BoundOp::Le)
                    | (DimKind::Bandwidth, BoundOp::Ge)
                    | (DimKind::Probabilistic, BoundOp::Ge)
                    | (DimKind::Boolean, BoundOp::Ge)
            );
            monotone && !b.satisfied(acc)
        })
    }

    fn final_bounds_ok(&self, cost: &MultiCost) -> bool {
        self.q.bounds.iter().all(|b| b.satisfied(cost))
    }

    fn finish(&self, acc: &MultiCost) -> MultiCost {
        self.spec.combine(acc, &self.net.terminal_cost(self.q.dst))
    }

    fn hop_modalities(&self, edge: usize) -> BTreeSet<String> {
        let mods = &self.net.edge(edge).modalities;
        match &self.q.allowed_modalities {
            None => mods.clone(),
            Some(allowed) => mods.intersection(allowed).cloned().collect(),
        }
    }

    fn run_best(&mut self, window: Option<ScalarWindow>) -> Option<BestPath> {
        let mut state = BestState { incumbent: None, tied: Vec::new() };
        let mut visited = vec![false; self.net.node_count()];
        let mut nodes = vec![self.q.src];
        let mut hops: Vec<usize> = Vec::new();
        visited[self.q.src.index()] = true;
        self.dfs_best(&mut visited, &mut nodes, &mut hops, self.spec.one(), &mut state, window);
        let cost = state.incumbent?;
        let path = state.tied.first()?.clone();
        Some(BestPath { cost, path, tied: state.tied, stats: self.stats })
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_best(
        &mut self,
        visited: &mut Vec<bool>,
        nodes: &mut Vec<NodeId>,
        hops: &mut Vec<usize>,
        acc: MultiCost,
        state: &mut BestState,
        window: Option<ScalarWindow>,
    ) {
        self.stats.explored += 1;
        if self.partial_bounds_violated(&acc) {
            self.stats.pruned += 1;
            return;
        }
        if let Some(w) = window {
            if self.window_prunes(&acc, w) {
                self.stats.pruned += 1;
                return;
            }
        }
        if self.q.mode == SearchMode::BranchAndBound {
            if let Some(best) = &state.incumbent {
                // Strictly worse already: no extension can tie or win.
                if self.spec.compare(&acc, best) == CostOrdering::Worse {
                    self.stats.pruned += 1;
                    return;
                }
            }
        }
        let here = *nodes.last().unwrap();
        if here == self.q.dst {
            // Simple paths cannot revisit the destination, so this branch
            // ends here either way.
            let cost = self.finish(&acc);
            let ok = match window {
                None => true,
                Some(w) => self.in_window(&cost, w),
            };
            if ok && self.final_bounds_ok(&cost) && cost != self.spec.zero() {
                let path = PathSolution {
                    nodes: nodes.clone(),
                    cost: cost.clone(),
                    modalities_used: hops.iter().map(|e| self.hop_modalities(*e)).collect(),
                };
                match &state.incumbent {
                    None => {
                        state.incumbent = Some(cost);
                        state.tied = vec![path];
                    }
                    Some(best) => match self.spec.compare(&cost, best) {
                        CostOrdering::Better => {
                            state.incumbent = Some(cost);
                            state.tied = vec![path];
                        }
                        CostOrdering::Equal => {
                            if let Err(pos) = state.tied.binary_search(&path) {
                                if pos < TIE_CAP {
                                    state.tied.insert(pos, path);
                                    state.tied.truncate(TIE_CAP);
                                }
                            }
                        }
                        // Worse loses; an exact scalar tie between distinct
                        // tuples keeps the earlier (lex-smaller) incumbent.
                        CostOrdering::Worse | CostOrdering::Incomparable => {}
                    },
                }
            }
            return;
        }
        if nodes.len() > self.max_depth {
            return;
        }
        for idx in self.net.out_edges(here) {
            if !self.usable[*idx] {
                continue;
            }
            let edge = self.net.edge(*idx);
            if visited[edge.dst.index()] {
                continue;
            }
            let next_acc = self.spec.combine(&acc, &edge.cost);
            visited[edge.dst.index()] = true;
            nodes.push(edge.dst);
            hops.push(*idx);
            self.dfs_best(visited, nodes, hops, next_acc, state, window);
            hops.pop();
            nodes.pop();
            visited[edge.dst.index()] = false;
        }
    }

    fn run_pareto(&mut self) -> Frontier<PathSolution> {
        let mut frontier = Frontier::new();
        let mut visited = vec![false; self.net.node_count()];
        let mut nodes = vec![self.q.src];
        let mut hops: Vec<usize> = Vec::new();
        visited[self.q.src.index()] = true;
        self.dfs_pareto(&mut visited, &mut nodes, &mut hops, self.spec.one(), &mut frontier);
        frontier
    }

    fn dfs_pareto(
        &mut self,
        visited: &mut Vec<bool>,
        nodes: &mut Vec<NodeId>,
        hops: &mut Vec<usize>,
        acc: MultiCost,
        frontier: &mut Frontier<PathSolution>,
    ) {
        self.stats.explored += 1;
        if self.partial_bounds_violated(&acc) {
            self.stats.pruned += 1;
            return;
        }
        if self.q.mode == SearchMode::BranchAndBound
            && frontier.strictly_dominates(self.spec, &acc)
        {
            self.stats.pruned += 1;
            return;
        }
        let here = *nodes.last().unwrap();
        if here == self.q.dst {
            let cost = self.finish(&acc);
            if self.final_bounds_ok(&cost) {
                let path = PathSolution {
                    nodes: nodes.clone(),
                    cost: cost.clone(),
                    modalities_used: hops.iter().map(|e| self.hop_modalities(*e)).collect(),
                };
                frontier.insert(self.spec, cost, path);
            }
            return;
        }
        if nodes.len() > self.max_depth {
            return;
        }
        for idx in self.net.out_edges(here) {
            if !self.usable[*idx] {
                continue;
            }
            let edge = self.net.edge(*idx);
            if visited[edge.dst.index()] {
                continue;
            }
            let next_acc = self.spec.combine(&acc, &edge.cost);
            visited[edge.dst.index()] = true;
            nodes.push(edge.dst);
            hops.push(*idx);
            self.dfs_pareto(visited, nodes, hops, next_acc, frontier);
            hops.pop();
            nodes.pop();
            visited[edge.dst.index()] = false;
        }
    }

    fn run_collect(&mut self) -> Vec<PathSolution> {
        let mut out = Vec::new();
        let mut visited = vec![false; self.net.node_count()];
        let mut nodes = vec![self.q.src];
        let mut hops: Vec<usize> = Vec::new();
        visited[self.q.src.index()] = true;
        self.dfs_collect(&mut visited, &mut nodes, &mut hops, self.spec.one(), &mut out);
        out
    }

    fn dfs_collect(
        &mut self,
        visited: &mut Vec<bool>,
        nodes: &mut Vec<NodeId>,
        hops: &mut Vec<usize>,
        acc: MultiCost,
        out: &mut Vec<PathSolution>,
    ) {
        self.stats.explored += 1;
        if self.partial_bounds_violated(&acc) {
            self.stats.pruned += 1;
            return;
        }
        let here = *nodes.last().unwrap();
        if here == self.q.dst {
            let cost = self.finish(&acc);
            if self.final_bounds_ok(&cost) {
                out.push(PathSolution {
                    nodes: nodes.clone(),
                    cost,
                    modalities_used: hops.iter().map(|e| self.hop_modalities(*e)).collect(),
                });
            }
            return;
        }
        if nodes.len() > self.max_depth {
            return;
        }
        for idx in self.net.out_edges(here) {
            if !self.usable[*idx] {
                continue;
            }
            let edge = self.net.edge(*idx);
            if visited[edge.dst.index()] {
                continue;
            }
            let next_acc = self.spec.combine(&acc, &edge.cost);
            visited[edge.dst.index()] = true;
            nodes.push(edge.dst);
            hops.push(*idx);
            self.dfs_collect(visited, nodes, hops, next_acc, out);
            hops.pop();
            nodes.pop();
            visited[edge.dst.index()] = false;
        }
    }
}
