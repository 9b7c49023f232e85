pub mod bench;
pub mod cut;
pub mod gen;
pub mod mroute;
pub mod pareto;
pub mod route;
pub mod selftest;
pub mod stats;
