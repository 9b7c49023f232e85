//! The and-or hypergraph view of a network.
//!
//! Every node's forward star induces one connector (hyperarc) per non-empty
//! subset of its outgoing links: the connector leads from the node to all
//! the subset's targets at once, at the parallel composition of the member
//! costs. A node of out-degree `d` therefore has `2^d - 1` connectors, so
//! they are never materialized as a table — searches pull them from a lazy
//! stream, smallest subsets first. Receivers additionally carry a
//! 0-connector (no outputs) whose cost terminates a branch.

use std::collections::BTreeSet;

use crate::algebra::MultiCost;
use crate::graph::{GraphError, Network, NodeId};

/// A hyperarc from `input` to the sorted set `outputs`. The cost is the
/// parallel composition of the member links' costs; modalities and reach
/// are the unions of the member sets. A 0-connector has no outputs and an
/// empty modality label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    pub input: NodeId,
    pub outputs: Vec<NodeId>,
    pub cost: MultiCost,
    pub modalities: BTreeSet<String>,
    pub reach: BTreeSet<String>,
}

impl Connector {
    pub fn is_terminal(&self) -> bool {
        self.outputs.is_empty()
    }
}

/// Which links participate in connector enumeration.
#[derive(Debug, Clone, Default)]
pub struct ConnectorFilter {
    /// Keep only links toward these nodes (empty: no restriction).
    pub want: BTreeSet<NodeId>,
    /// Drop links whose declared reach set misses all of these labels.
    /// Links with no declared reach are unrestricted. Empty: no pruning.
    pub reach: BTreeSet<String>,
    /// Keep only links whose modality set is contained in this set, so the
    /// union label of any emitted connector stays within it. None: keep all.
    pub modalities_within: Option<BTreeSet<String>>,
}

impl ConnectorFilter {
    fn admits(&self, net: &Network, edge_idx: usize) -> bool {
        let e = net.edge(edge_idx);
        if !self.want.is_empty() && !self.want.contains(&e.dst) {
            return false;
        }
        if !self.reach.is_empty()
            && !e.reach.is_empty()
            && e.reach.intersection(&self.reach).next().is_none()
        {
            return false;
        }
        if let Some(allowed) = &self.modalities_within {
            if !e.modalities.is_subset(allowed) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Hypergraph<'a> {
    net: &'a Network,
}

impl<'a> Hypergraph<'a> {
    pub fn new(net: &'a Network) -> Self {
        Hypergraph { net }
    }

    pub fn network(&self) -> &'a Network {
        self.net
    }

    /// Streams the connectors leaving `node`, by ascending output-set size
    /// and lexicographic output order within each size.
    pub fn connectors_from(
        &self,
        node: NodeId,
        filter: &ConnectorFilter,
    ) -> impl Iterator<Item = Connector> + 'a {
        let net = self.net;
        let members: Vec<usize> = net
            .out_edges(node)
            .iter()
            .copied()
            .filter(|e| filter.admits(net, *e))
            .collect();
        SubsetStream::new(members).map(move |subset| build_connector(net, node, &subset))
    }

    /// The terminal connector of a declared receiver.
    pub fn zero_connector(&self, node: NodeId) -> Result<Connector, GraphError> {
        let cost = self
            .net
            .receiver_cost(node)
            .cloned()
            .ok_or_else(|| GraphError::NotAReceiver(self.net.name(node).to_string()))?;
        Ok(Connector {
            input: node,
            outputs: Vec::new(),
            cost,
            modalities: BTreeSet::new(),
            reach: BTreeSet::new(),
        })
    }

    /// Looks up the connector with exactly these outputs, if the forward
    /// star provides every member link.
    pub fn connector(&self, input: NodeId, outputs: &[NodeId]) -> Option<Connector> {
        let mut members = Vec::with_capacity(outputs.len());
        for want in outputs {
            let idx = self
                .net
                .out_edges(input)
                .iter()
                .copied()
                .find(|e| self.net.edge(*e).dst == *want)?;
            members.push(idx);
        }
        if members.is_empty() {
            return None;
        }
        Some(build_connector(self.net, input, &members))
    }
}

fn build_connector(net: &Network, input: NodeId, members: &[usize]) -> Connector {
    let costs: Vec<MultiCost> = members.iter().map(|e| net.edge(*e).cost.clone()).collect();
    let cost = net
        .spec()
        .compose_parallel(&costs)
        .expect("connector members share the network's arity");
    let mut modalities = BTreeSet::new();
    let mut reach = BTreeSet::new();
    let mut outputs: Vec<NodeId> = Vec::with_capacity(members.len());
    for e in members {
        let edge = net.edge(*e);
        outputs.push(edge.dst);
        modalities.extend(edge.modalities.iter().cloned());
        reach.extend(edge.reach.iter().cloned());
    }
    outputs.sort();
    outputs.dedup();
    Connector { input, outputs, cost, modalities, reach }
}

/// Enumerates non-empty subsets of `items` by ascending cardinality, in
/// lexicographic index order within each cardinality.
struct SubsetStream {
    items: Vec<usize>,
    size: usize,
    indices: Vec<usize>,
    done: bool,
}

impl SubsetStream {
    fn new(items: Vec<usize>) -> Self {
        let done = items.is_empty();
        SubsetStream { items, size: 1, indices: vec![0], done }
    }

    fn advance(&mut self) {
        let n = self.items.len();
        let k = self.size;
        let mut i = k;
        loop {
            if i == 0 {
                self.size += 1;
                if self.size > n {
                    self.done = true;
                    return;
                }
                self.indices = (0..self.size).collect();
                return;
            }
            i -= 1;
            if self.indices[i] < n - (k - i) {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return;
            }
        }
    }
}

impl Iterator for SubsetStream {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let subset: Vec<usize> = self.indices.iter().map(|i| self.items[*i]).collect();
        self.advance();
        Some(subset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DimKind, SemiringSpec};
    use crate::graph::parse_network;

    fn star_net() -> Network {
        parse_network(
            "qnet 1\ndims bandwidth,money:weighted\n\
             node i\nnode j\nnode k\nnode z\n\
             edge i j 7,2 mods=w reach=AS1\n\
             edge i k 10,3 mods=l reach=AS2\n\
             edge i z 5,9 reach=AS1\n\
             receiver z 2,3\n",
        )
        .unwrap()
    }

    #[test]
    fn three_targets_make_seven_connectors_smallest_first() {
        let net = star_net();
        let h = Hypergraph::new(&net);
        let i = net.node("i").unwrap();
        let cons: Vec<Connector> = h.connectors_from(i, &ConnectorFilter::default()).collect();
        assert_eq!(cons.len(), 7);
        let sizes: Vec<usize> = cons.iter().map(|c| c.outputs.len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2, 2, 2, 3]);
        let names: Vec<String> = cons
            .iter()
            .map(|c| c.outputs.iter().map(|n| net.name(*n)).collect::<Vec<_>>().join(""))
            .collect();
        assert_eq!(names, vec!["j", "k", "z", "jk", "jz", "kz", "jkz"]);
    }

    #[test]
    fn connector_cost_is_parallel_composition() {
        let net = star_net();
        let h = Hypergraph::new(&net);
        let i = net.node("i").unwrap();
        let jk = h
            .connector(i, &[net.node("j").unwrap(), net.node("k").unwrap()])
            .unwrap();
        assert_eq!(jk.cost, MultiCost::from_ints(&[7, 3]));
        assert_eq!(
            jk.modalities,
            ["l", "w"].iter().map(|s| s.to_string()).collect::<BTreeSet<_>>()
        );
        assert_eq!(
            jk.reach,
            ["AS1", "AS2"].iter().map(|s| s.to_string()).collect::<BTreeSet<_>>()
        );
    }

    #[test]
    fn connector_count_and_cost_law_up_to_degree_five() {
        for d in 1..=5usize {
            let mut text = String::from("qnet 1\ndims weighted\nnode hub\n");
            for t in 0..d {
                text.push_str(&format!("node t{t}\n"));
            }
            for t in 0..d {
                text.push_str(&format!("edge hub t{t} {}\n", t + 1));
            }
            let net = parse_network(&text).unwrap();
            let h = Hypergraph::new(&net);
            let hub = net.node("hub").unwrap();
            let cons: Vec<Connector> =
                h.connectors_from(hub, &ConnectorFilter::default()).collect();
            assert_eq!(cons.len(), (1 << d) - 1);
            for c in &cons {
                assert!(c.outputs.windows(2).all(|w| w[0] < w[1]), "outputs sorted");
                let member_costs: Vec<MultiCost> = c
                    .outputs
                    .iter()
                    .map(|o| {
                        net.edges()
                            .iter()
                            .find(|e| e.src == hub && e.dst == *o)
                            .unwrap()
                            .cost
                            .clone()
                    })
                    .collect();
                assert_eq!(c.cost, net.spec().compose_parallel(&member_costs).unwrap());
            }
        }
    }

    #[test]
    fn reach_filtered_link_is_absent_from_every_emitted_connector() {
        // Exhaustive emission over a 6-node graph: with the filter set to
        // AS1, the AS2-only links may not appear inside any connector of
        // any node.
        let net = parse_network(
            "qnet 1\ndims weighted\n\
             node a\nnode b\nnode c\nnode d\nnode e\nnode f\n\
             edge a b 1 reach=AS1\nedge a c 2 reach=AS2\nedge a d 3 reach=AS1|AS2\n\
             edge b e 1 reach=AS2\nedge c f 2 reach=AS1\nedge d e 1\nedge e f 4 reach=AS2\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let filter = ConnectorFilter {
            reach: ["AS1".to_string()].into_iter().collect(),
            ..Default::default()
        };
        let as2_only: Vec<(NodeId, NodeId)> = net
            .edges()
            .iter()
            .filter(|e| !e.reach.is_empty() && !e.reach.contains("AS1"))
            .map(|e| (e.src, e.dst))
            .collect();
        assert_eq!(as2_only.len(), 3);
        let mut emitted = 0;
        for node in net.nodes() {
            for c in h.connectors_from(node, &filter) {
                emitted += 1;
                for out in &c.outputs {
                    assert!(
                        !as2_only.contains(&(node, *out)),
                        "{}->{} slipped through the reach filter",
                        net.name(node),
                        net.name(*out)
                    );
                }
            }
        }
        // a keeps b and d (3 subsets), d keeps e, c keeps f: 5 connectors.
        assert_eq!(emitted, 5);
    }

    #[test]
    fn reach_filter_excludes_the_link_everywhere() {
        let net = star_net();
        let h = Hypergraph::new(&net);
        let i = net.node("i").unwrap();
        let k = net.node("k").unwrap();
        let filter = ConnectorFilter {
            reach: ["AS1".to_string()].into_iter().collect(),
            ..Default::default()
        };
        let cons: Vec<Connector> = h.connectors_from(i, &filter).collect();
        // The AS2-only link to k must appear in no emitted connector; the
        // reach-free link to z is unrestricted and stays.
        assert_eq!(cons.len(), 3);
        assert!(cons.iter().all(|c| !c.outputs.contains(&k)));
    }

    #[test]
    fn modality_filter_keeps_labels_within_query() {
        let net = star_net();
        let h = Hypergraph::new(&net);
        let i = net.node("i").unwrap();
        let filter = ConnectorFilter {
            modalities_within: Some(["w".to_string()].into_iter().collect()),
            ..Default::default()
        };
        let cons: Vec<Connector> = h.connectors_from(i, &filter).collect();
        // j carries {w}, z carries {}: both fit within {w}; k's {l} does not.
        assert_eq!(cons.len(), 3);
        for c in &cons {
            assert!(c.modalities.is_subset(&["w".to_string()].into_iter().collect()));
        }
    }

    #[test]
    fn zero_connector_uses_declared_cost_and_empty_label() {
        let net = star_net();
        let h = Hypergraph::new(&net);
        let z = net.node("z").unwrap();
        let c = h.zero_connector(z).unwrap();
        assert_eq!(c.cost, MultiCost::from_ints(&[2, 3]));
        assert!(c.outputs.is_empty());
        assert!(c.modalities.is_empty());
        assert!(h.zero_connector(net.node("i").unwrap()).is_err());
    }

    #[test]
    fn default_receiver_cost_is_one() {
        let net = parse_network(
            "qnet 1\ndims bandwidth,money:weighted\nnode a\nreceiver a\n",
        )
        .unwrap();
        let h = Hypergraph::new(&net);
        let c = h.zero_connector(net.node("a").unwrap()).unwrap();
        assert_eq!(c.cost, net.spec().one());
        assert_eq!(c.cost.to_string(), "inf,0");
    }

    #[test]
    fn empty_forward_star_yields_no_connectors() {
        let net = parse_network("qnet 1\ndims weighted\nnode a\n").unwrap();
        let h = Hypergraph::new(&net);
        let a = net.node("a").unwrap();
        assert_eq!(h.connectors_from(a, &ConnectorFilter::default()).count(), 0);
    }

    #[test]
    fn connector_cost_law_holds_exhaustively() {
        // Every emitted connector re-costs to the parallel composition of
        // its member links, checked on stars up to degree 5.
        let kinds = [DimKind::Bandwidth, DimKind::Weighted];
        let spec = SemiringSpec::from_kinds(&kinds);
        let net = star_net();
        let h = Hypergraph::new(&net);
        for node in net.nodes() {
            for c in h.connectors_from(node, &ConnectorFilter::default()) {
                let member_costs: Vec<MultiCost> = c
                    .outputs
                    .iter()
                    .map(|o| {
                        net.edges()
                            .iter()
                            .find(|e| e.src == node && e.dst == *o)
                            .unwrap()
                            .cost
                            .clone()
                    })
                    .collect();
                assert_eq!(c.cost, spec.compose_parallel(&member_costs).unwrap());
            }
        }
    }
}
