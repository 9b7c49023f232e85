//! Bundled reference networks used by the self test and the documentation.
//!
//! Five small networks exercise each query family: a single-metric delay
//! graph, a cost/delay bicriteria graph, a modality-labeled delay graph,
//! a bandwidth/money multicast network with receivers, and a
//! modality-labeled multicast network.

/// Single weighted metric (delay). Best r-to-v delay is 6, reached by both
/// r-t-s-v and r-u-v.
pub const DELAY_BASIC: &str = include_str!("../fixtures/delay-basic.qnet");

/// Two weighted metrics (cost, delay). The p-to-v frontier is
/// {<7,8>, <9,7>}, which collapses to <7,7>; exactly three simple paths
/// keep delay <= 8.
pub const COST_DELAY: &str = include_str!("../fixtures/cost-delay.qnet");

/// One weighted metric with modality labels c / w / l on the links. The
/// best uniform-c path p-to-v is p-r-u-v at delay 8.
pub const DELAY_MODAL: &str = include_str!("../fixtures/delay-modal.qnet");

/// Bandwidth/money network with receivers n6..n9; n9 hides a subnetwork
/// behind terminal cost <2,3>. The best distribution tree from n0 to all
/// four receivers costs <2,16>.
pub const BW_MONEY_MULTICAST: &str = include_str!("../fixtures/bw-money-multicast.qnet");

/// Bandwidth/money network with wired/wireless modality labels. Restricting
/// a tree query to {w} excludes the mixed-label bundle from n0 and yields
/// <6,6>; allowing {w,l} re-admits it and improves the tree to <7,5>.
pub const BW_MONEY_MODAL: &str = include_str!("../fixtures/bw-money-modal.qnet");

pub const ALL: &[(&str, &str)] = &[
    ("delay-basic", DELAY_BASIC),
    ("cost-delay", COST_DELAY),
    ("delay-modal", DELAY_MODAL),
    ("bw-money-multicast", BW_MONEY_MULTICAST),
    ("bw-money-modal", BW_MONEY_MODAL),
];

pub fn by_name(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
