//! Directed multi-cost network model and its and-or hypergraph view.

mod format;
mod hyper;

pub use format::{parse_network, serialize_network, ParseError};
pub use hyper::{Connector, ConnectorFilter, Hypergraph};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{MultiCost, SemiringSpec};

/// Index into a network's sorted node table. Node indices follow the
/// lexicographic order of node names, so ordering ids orders names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(String, String),
    #[error("self loop on `{0}`")]
    SelfLoop(String),
    #[error("node `{0}` is not a receiver")]
    NotAReceiver(String),
    #[error("invalid node identifier `{0}`")]
    BadIdentifier(String),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// One directed link: endpoints, cost tuple, modality tokens, and the
/// region labels the link leads toward. An empty reach set means the link
/// is unrestricted.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub src: NodeId,
    pub dst: NodeId,
    pub cost: MultiCost,
    pub modalities: BTreeSet<String>,
    pub reach: BTreeSet<String>,
}

/// A validated network: the cost algebra, the sorted node table, edges
/// indexed by source, declared receivers with their terminal costs, and
/// node region labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    spec: SemiringSpec,
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<EdgeRecord>,
    out: Vec<Vec<usize>>,
    receivers: BTreeMap<NodeId, MultiCost>,
    regions: BTreeMap<NodeId, String>,
}

pub fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Raw edge line: src, dst, cost, modalities, reach labels.
pub type EdgeInput = (String, String, MultiCost, BTreeSet<String>, BTreeSet<String>);

/// Raw material for a network; `Network::build` validates and canonicalizes.
#[derive(Debug, Clone, Default)]
pub struct NetworkBuilder {
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeInput>,
    pub receivers: Vec<(String, Option<MultiCost>)>,
    pub regions: Vec<(String, String)>,
}

impl Network {
    pub fn build(spec: SemiringSpec, parts: NetworkBuilder) -> Result<Network, GraphError> {
        let mut names: Vec<String> = Vec::new();
        for n in parts.nodes {
            if !valid_identifier(&n) {
                return Err(GraphError::BadIdentifier(n));
            }
            if !names.contains(&n) {
                names.push(n);
            }
        }
        names.sort();
        let index: HashMap<String, NodeId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), NodeId(i as u32)))
            .collect();
        let lookup = |name: &str| -> Result<NodeId, GraphError> {
            index.get(name).copied().ok_or_else(|| GraphError::UnknownNode(name.to_string()))
        };

        let mut edges = Vec::with_capacity(parts.edges.len());
        for (src, dst, cost, modalities, reach) in parts.edges {
            if src == dst {
                return Err(GraphError::SelfLoop(src));
            }
            let s = lookup(&src)?;
            let d = lookup(&dst)?;
            spec.check_carrier(&cost)?;
            edges.push(EdgeRecord { src: s, dst: d, cost, modalities, reach });
        }
        edges.sort_by_key(|e| (e.src, e.dst));
        for pair in edges.windows(2) {
            if pair[0].src == pair[1].src && pair[0].dst == pair[1].dst {
                return Err(GraphError::DuplicateEdge(
                    names[pair[0].src.index()].clone(),
                    names[pair[0].dst.index()].clone(),
                ));
            }
        }
        let mut out = vec![Vec::new(); names.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src.index()].push(i);
        }

        let mut receivers = BTreeMap::new();
        for (name, cost) in parts.receivers {
            let id = lookup(&name)?;
            let cost = cost.unwrap_or_else(|| spec.one());
            spec.check_carrier(&cost)?;
            receivers.insert(id, cost);
        }
        let mut regions = BTreeMap::new();
        for (name, label) in parts.regions {
            let id = lookup(&name)?;
            if !valid_identifier(&label) {
                return Err(GraphError::BadIdentifier(label));
            }
            regions.insert(id, label);
        }

        Ok(Network { spec, names, index, edges, out, receivers, regions })
    }

    pub fn spec(&self) -> &SemiringSpec {
        &self.spec
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.names.len() as u32).map(NodeId)
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id.index()]
    }

    pub fn node(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn require_node(&self, name: &str) -> Result<NodeId, GraphError> {
        self.node(name).ok_or_else(|| GraphError::UnknownNode(name.to_string()))
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &EdgeRecord {
        &self.edges[idx]
    }

    /// Edge indices of the forward star of `node`, ordered by target name.
    pub fn out_edges(&self, node: NodeId) -> &[usize] {
        &self.out[node.index()]
    }

    pub fn receivers(&self) -> &BTreeMap<NodeId, MultiCost> {
        &self.receivers
    }

    pub fn receiver_cost(&self, node: NodeId) -> Option<&MultiCost> {
        self.receivers.get(&node)
    }

    pub fn regions(&self) -> &BTreeMap<NodeId, String> {
        &self.regions
    }

    pub fn region(&self, node: NodeId) -> Option<&str> {
        self.regions.get(&node).map(String::as_str)
    }

    /// Terminal cost applied when a path ends at `node`: the declared
    /// receiver cost, or the algebra's one for plain nodes.
    pub fn terminal_cost(&self, node: NodeId) -> MultiCost {
        self.receivers.get(&node).cloned().unwrap_or_else(|| self.spec.one())
    }

    /// Renders a node-id path as `a-b-c`.
    pub fn render_path(&self, nodes: &[NodeId]) -> String {
        nodes.iter().map(|n| self.name(*n)).collect::<Vec<_>>().join("-")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DimKind;

    fn spec1() -> SemiringSpec {
        SemiringSpec::from_kinds(&[DimKind::Weighted])
    }

    fn builder(edges: &[(&str, &str, i64)]) -> NetworkBuilder {
        let mut b = NetworkBuilder::default();
        let mut nodes: Vec<String> = Vec::new();
        for (s, d, _) in edges {
            for n in [s, d] {
                if !nodes.contains(&n.to_string()) {
                    nodes.push(n.to_string());
                }
            }
        }
        b.nodes = nodes;
        b.edges = edges
            .iter()
            .map(|(s, d, c)| {
                (
                    s.to_string(),
                    d.to_string(),
                    MultiCost::from_ints(&[*c]),
                    BTreeSet::new(),
                    BTreeSet::new(),
                )
            })
            .collect();
        b
    }

    #[test]
    fn node_ids_follow_name_order() {
        let net = Network::build(spec1(), builder(&[("z", "a", 1), ("a", "m", 2)])).unwrap();
        assert_eq!(net.name(NodeId(0)), "a");
        assert_eq!(net.name(NodeId(2)), "z");
    }

    #[test]
    fn rejects_self_loop_and_duplicates() {
        let err = Network::build(spec1(), builder(&[("a", "a", 1)]));
        assert!(matches!(err, Err(GraphError::SelfLoop(_))));
        let err = Network::build(spec1(), builder(&[("a", "b", 1), ("a", "b", 2)]));
        assert!(matches!(err, Err(GraphError::DuplicateEdge(_, _))));
    }

    #[test]
    fn rejects_unknown_receiver() {
        let mut b = builder(&[("a", "b", 1)]);
        b.receivers.push(("ghost".into(), None));
        let err = Network::build(spec1(), b);
        assert!(matches!(err, Err(GraphError::UnknownNode(n)) if n == "ghost"));
    }

    #[test]
    fn rejects_arity_mismatch() {
        let mut b = builder(&[("a", "b", 1)]);
        b.edges[0].2 = MultiCost::from_ints(&[1, 2]);
        assert!(Network::build(spec1(), b).is_err());
    }

    #[test]
    fn identifier_rules() {
        assert!(valid_identifier("n0"));
        assert!(valid_identifier("_x9"));
        assert!(!valid_identifier("0n"));
        assert!(!valid_identifier("a-b"));
        assert!(!valid_identifier(""));
    }
}
