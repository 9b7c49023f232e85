//! Semiring-parametric QoS routing engine.
//!
//! Networks carry multi-dimensional link costs (delay, bandwidth, money,
//! loss probability, policy bits) whose composition rules are captured by a
//! cost algebra. On top of that sit four query families: best unicast
//! paths, Pareto frontiers of incomparable path costs, constrained paths,
//! and best multicast distribution trees over the and-or hypergraph induced
//! by the network. A scale-free generator and graph statistics support
//! benchmarking at realistic topologies.

pub mod algebra;
pub mod fixtures;
pub mod graph;
pub mod multicast;
pub mod netgen;
pub mod unicast;

pub use algebra::{
    cut, law_check, CostOrdering, DimKind, DimSpec, Frontier, LawConfig, LawReport, Metric,
    MultiCost, Rational, SemiringSpec, WeightProfile,
};
pub use graph::{parse_network, serialize_network, Connector, Hypergraph, Network, NodeId};
