//! Scale-free topology generation and graph statistics.
//!
//! Generation grows the graph one node at a time: each new node attaches to
//! existing nodes accepted with probability `(degree(v) + 1) / (|E| + |V|)`,
//! so well-connected nodes keep attracting links and a few hubs emerge.
//! Costs are sampled per undirected link and shared by its two directed
//! twins. A fixed seed fully determines the output.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::algebra::{DimSpec, Metric, MultiCost, SemiringSpec};
use crate::graph::{GraphError, Network, NetworkBuilder, NodeId};

/// RNG identifier recorded next to generated files so outputs are
/// reproducible per implementation.
pub const RNG_ALGORITHM: &str = "chacha12";

#[derive(Debug, Error)]
pub enum GenError {
    #[error("cannot fit {target} undirected edges into {nodes} nodes (max {max})")]
    Infeasible { target: usize, nodes: usize, max: usize },
    #[error("need one cost range per dimension: {ranges} ranges for {dims} dims")]
    RangeArity { ranges: usize, dims: usize },
    #[error("empty cost range [{lo}..{hi}]")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("node count must be at least 1")]
    NoNodes,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How many undirected edges to create.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTarget {
    /// Attach up to this many links per newly added node.
    PerStep(usize),
    /// Hit this total exactly.
    Total(usize),
}

#[derive(Debug, Clone)]
pub struct GenParams {
    pub nodes: usize,
    pub edges: EdgeTarget,
    pub seed: u64,
    pub dims: Vec<DimSpec>,
    /// Inclusive per-dimension integer sampling ranges.
    pub cost_ranges: Vec<(i64, i64)>,
}

impl GenParams {
    pub fn new(nodes: usize, edges: EdgeTarget, seed: u64, dims: Vec<DimSpec>) -> Self {
        let ranges = vec![(1, 10); dims.len()];
        GenParams { nodes, edges, seed, dims, cost_ranges: ranges }
    }
}

/// Generates a scale-free topology and expands it to directed edge pairs.
pub fn generate(p: &GenParams) -> Result<Network, GenError> {
    if p.nodes == 0 {
        return Err(GenError::NoNodes);
    }
    if p.cost_ranges.len() != p.dims.len() {
        return Err(GenError::RangeArity { ranges: p.cost_ranges.len(), dims: p.dims.len() });
    }
    for (lo, hi) in &p.cost_ranges {
        if lo > hi || *lo < 0 {
            return Err(GenError::EmptyRange { lo: *lo, hi: *hi });
        }
    }
    let max_edges = p.nodes * p.nodes.saturating_sub(1) / 2;
    let target_total = match p.edges {
        EdgeTarget::Total(t) => {
            if t > max_edges {
                return Err(GenError::Infeasible { target: t, nodes: p.nodes, max: max_edges });
            }
            Some(t)
        }
        // Per-step quotas self-cap at the available partners.
        EdgeTarget::PerStep(_) => None,
    };

    let mut rng = ChaCha12Rng::seed_from_u64(p.seed);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); p.nodes];
    let mut degree = vec![0usize; p.nodes];
    let mut edge_pairs: Vec<(usize, usize)> = Vec::new();

    let add_edge = |a: usize,
                        b: usize,
                        adj: &mut Vec<BTreeSet<usize>>,
                        degree: &mut Vec<usize>,
                        edge_pairs: &mut Vec<(usize, usize)>|
     -> bool {
        if a == b || adj[a].contains(&b) {
            return false;
        }
        adj[a].insert(b);
        adj[b].insert(a);
        degree[a] += 1;
        degree[b] += 1;
        edge_pairs.push((a.min(b), a.max(b)));
        true
    };

    // Preferential acceptance: candidate v joins with probability
    // (degree(v)+1) / (|E|+|V|), decided by an exact integer draw.
    let accepts = |rng: &mut ChaCha12Rng, v: usize, nodes: usize, edges: usize, degree: &[usize]| {
        let denom = (edges + nodes) as u64;
        rng.random_range(0..denom.max(1)) < (degree[v] + 1) as u64
    };

    for new in 1..p.nodes {
        let existing = new;
        let remaining_steps = p.nodes - new;
        let quota = match p.edges {
            EdgeTarget::PerStep(k) => k.min(existing),
            EdgeTarget::Total(t) => {
                let remaining = t.saturating_sub(edge_pairs.len());
                remaining.div_ceil(remaining_steps).min(existing)
            }
        };
        let mut added = 0;
        let mut stall = 0;
        while added < quota && adj[new].len() < existing {
            let v = rng.random_range(0..existing);
            if accepts(&mut rng, v, new + 1, edge_pairs.len(), &degree)
                && add_edge(new, v, &mut adj, &mut degree, &mut edge_pairs)
            {
                added += 1;
                stall = 0;
            } else {
                stall += 1;
                if stall > 64 * existing {
                    // Acceptance starves on tiny graphs; fall back to the
                    // lowest-index free partner to keep the step moving.
                    if let Some(v) = (0..existing).find(|v| !adj[new].contains(v)) {
                        add_edge(new, v, &mut adj, &mut degree, &mut edge_pairs);
                        added += 1;
                    }
                    stall = 0;
                }
            }
        }
    }

    if let Some(target) = target_total {
        // Top up with preferentially accepted extra links between existing
        // nodes until the total is exact.
        let mut stall = 0;
        while edge_pairs.len() < target {
            let a = rng.random_range(0..p.nodes);
            let b = rng.random_range(0..p.nodes);
            if a != b
                && accepts(&mut rng, b, p.nodes, edge_pairs.len(), &degree)
                && add_edge(a, b, &mut adj, &mut degree, &mut edge_pairs)
            {
                stall = 0;
            } else {
                stall += 1;
                if stall > 64 * p.nodes {
                    'fill: for a in 0..p.nodes {
                        for b in a + 1..p.nodes {
                            if add_edge(a, b, &mut adj, &mut degree, &mut edge_pairs) {
                                break 'fill;
                            }
                        }
                    }
                    stall = 0;
                }
            }
        }
    }

    edge_pairs.sort();

    let spec = SemiringSpec::new(p.dims.clone());
    let mut parts = NetworkBuilder {
        nodes: (0..p.nodes).map(|i| format!("n{i}")).collect(),
        ..Default::default()
    };
    for (a, b) in &edge_pairs {
        let cost = MultiCost::new(
            p.cost_ranges
                .iter()
                .map(|(lo, hi)| Metric::from_int(rng.random_range(*lo..=*hi)))
                .collect(),
        );
        let na = format!("n{a}");
        let nb = format!("n{b}");
        parts.edges.push((na.clone(), nb.clone(), cost.clone(), BTreeSet::new(), BTreeSet::new()));
        parts.edges.push((nb, na, cost, BTreeSet::new(), BTreeSet::new()));
    }
    Ok(Network::build(spec, parts)?)
}

/// Topology statistics over the undirected support of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphStats {
    pub nodes: usize,
    /// Undirected link count (directed twins collapse to one).
    pub edges: usize,
    /// Mean local clustering; nodes of degree < 2 contribute 0.
    pub clustering: f64,
    /// Average hop distance over ordered pairs of the largest component.
    pub avg_shortest_path: f64,
    pub min_degree: usize,
    pub max_degree: usize,
    pub avg_degree: f64,
    /// Longest shortest path within the largest component.
    pub diameter: usize,
    pub connected: bool,
    pub largest_component: usize,
}

pub fn stats(net: &Network) -> GraphStats {
    let n = net.node_count();
    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for e in net.edges() {
        neighbors[e.src.index()].insert(e.dst.index());
        neighbors[e.dst.index()].insert(e.src.index());
    }
    let edges = neighbors.iter().map(|s| s.len()).sum::<usize>() / 2;
    let degrees: Vec<usize> = neighbors.iter().map(|s| s.len()).collect();
    let min_degree = degrees.iter().copied().min().unwrap_or(0);
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let avg_degree = if n == 0 { 0.0 } else { degrees.iter().sum::<usize>() as f64 / n as f64 };

    let mut clustering_sum = 0.0;
    for v in 0..n {
        let d = degrees[v];
        if d < 2 {
            continue;
        }
        let mut links = 0usize;
        let nb: Vec<usize> = neighbors[v].iter().copied().collect();
        for (i, a) in nb.iter().enumerate() {
            for b in &nb[i + 1..] {
                if neighbors[*a].contains(b) {
                    links += 1;
                }
            }
        }
        clustering_sum += 2.0 * links as f64 / (d * (d - 1)) as f64;
    }
    let clustering = if n == 0 { 0.0 } else { clustering_sum / n as f64 };

    // Components, then all-pairs BFS over the largest one.
    let mut component = vec![usize::MAX; n];
    let mut comp_sizes: Vec<usize> = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let c = comp_sizes.len();
        let mut size = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        component[start] = c;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for w in &neighbors[v] {
                if component[*w] == usize::MAX {
                    component[*w] = c;
                    queue.push_back(*w);
                }
            }
        }
        comp_sizes.push(size);
    }
    let (largest_idx, largest_component) = comp_sizes
        .iter()
        .copied()
        .enumerate()
        .max_by_key(|(i, s)| (*s, std::cmp::Reverse(*i)))
        .unwrap_or((0, 0));
    let connected = comp_sizes.len() <= 1;

    let mut diameter = 0usize;
    let mut dist_sum = 0u64;
    let mut pair_count = 0u64;
    for start in 0..n {
        if component[start] != largest_idx {
            continue;
        }
        let mut dist = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in &neighbors[v] {
                if dist[*w] == usize::MAX {
                    dist[*w] = dist[v] + 1;
                    queue.push_back(*w);
                }
            }
        }
        for (v, d) in dist.iter().enumerate() {
            if v != start && component[v] == largest_idx {
                diameter = diameter.max(*d);
                dist_sum += *d as u64;
                pair_count += 1;
            }
        }
    }
    let avg_shortest_path = if pair_count == 0 { 0.0 } else { dist_sum as f64 / pair_count as f64 };

    GraphStats {
        nodes: n,
        edges,
        clustering,
        avg_shortest_path,
        min_degree,
        max_degree,
        avg_degree,
        diameter,
        connected,
        largest_component,
    }
}

/// Degree of a node in the undirected support; exposed for tests and the
/// benchmark endpoint sampler.
pub fn undirected_degree(net: &Network, node: NodeId) -> usize {
    let mut nb = BTreeSet::new();
    for e in net.edges() {
        if e.src == node {
            nb.insert(e.dst);
        }
        if e.dst == node {
            nb.insert(e.src);
        }
    }
    nb.len()
}
