use std::time::Instant;

use qroute_core::algebra::{Metric, WeightProfile};
use qroute_core::unicast::{best_path, default_max_depth, PathQuery, SearchMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::support::{load_network, print_json, CliError};
use crate::OrderArgs;

/// Exhaustive mode enumerates every simple path per query, which is only
/// sane on small instances.
const EXHAUSTIVE_NODE_GUARD: usize = 64;

pub fn run(
    net_path: &str,
    queries: usize,
    seed: u64,
    mode: &str,
    order: &OrderArgs,
    depth: Option<usize>,
    json: bool,
) -> Result<(), CliError> {
    if queries == 0 {
        return Err(CliError::usage("bench needs at least one query"));
    }
    let mode = match mode {
        "bnb" => SearchMode::BranchAndBound,
        "exhaustive" => SearchMode::Exhaustive,
        other => return Err(CliError::usage(format!("unknown mode `{other}` (bnb|exhaustive)"))),
    };
    let net = load_network(net_path)?;
    if mode == SearchMode::Exhaustive && net.node_count() > EXHAUSTIVE_NODE_GUARD {
        return Err(CliError::usage(format!(
            "exhaustive mode refuses networks over {EXHAUSTIVE_NODE_GUARD} nodes"
        )));
    }
    if net.node_count() < 2 {
        return Err(CliError::usage("bench needs at least two nodes"));
    }

    // Multi-dimensional networks scalarize with unit weights unless told
    // otherwise; one-dimensional networks are already totally ordered.
    let spec = match (&order.weights, net.spec().dims()) {
        (None, 1) => net.spec().clone(),
        (None, d) => net
            .spec()
            .ordered_weighted(WeightProfile::uniform(d))
            .map_err(|e| CliError::usage(e.to_string()))?,
        (Some(w), _) => {
            crate::support::order_spec(&net, Some(w), order.eps.as_deref())?
        }
    };
    let depth = depth.unwrap_or_else(|| default_max_depth(&net));

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = net.node_count() as u32;
    let mut records = Vec::with_capacity(queries);
    for index in 0..queries {
        let src = qroute_core::NodeId(rng.random_range(0..n));
        let dst = loop {
            let d = qroute_core::NodeId(rng.random_range(0..n));
            if d != src {
                break d;
            }
        };
        let mut q = PathQuery::new(src, dst);
        q.max_depth = Some(depth);
        q.mode = mode;
        let started = Instant::now();
        let hit = best_path(&net, &q, &spec)?;
        let elapsed = started.elapsed().as_secs_f64();
        let scalar_of = |c: &qroute_core::MultiCost| {
            if spec.dims() == 1 {
                scalar_f64(c.get(0))
            } else {
                scalar_f64(&spec.scalarize(c))
            }
        };
        records.push(Record {
            index,
            src: net.name(src).to_string(),
            dst: net.name(dst).to_string(),
            seconds: elapsed,
            scalar: hit.as_ref().map(|h| scalar_of(&h.cost)),
            cost: hit.as_ref().map(|h| h.cost.to_string()),
            depth: hit.as_ref().map(|h| h.path.depth()),
            explored: hit.as_ref().map(|h| h.stats.explored).unwrap_or(0),
            pruned: hit.as_ref().map(|h| h.stats.pruned).unwrap_or(0),
        });
    }

    let agg = Aggregates::from(&records);
    if json {
        print_json(&serde_json::json!({
            "nodes": net.node_count(),
            "queries": queries,
            "mode": if mode == SearchMode::BranchAndBound { "bnb" } else { "exhaustive" },
            "seed": seed,
            "depth": depth,
            "records": records.iter().map(Record::json).collect::<Vec<_>>(),
            "aggregates": agg.json(),
        }));
    } else {
        let header = [
            "Nodes", "Queries", "Min Time", "Max Time", "Avg Time", "Avg Cost", "Avg Depth",
            "Max Depth",
        ];
        let row = [
            qroute_core::netgen::stats(&net).nodes.to_string(),
            queries.to_string(),
            format!("{:.3}s", agg.min_time),
            format!("{:.3}s", agg.max_time),
            format!("{:.3}s", agg.avg_time),
            format!("{:.2}", agg.avg_cost),
            format!("{:.2}", agg.avg_depth),
            agg.max_depth.to_string(),
        ];
        let widths: Vec<usize> =
            header.iter().zip(&row).map(|(h, r)| h.len().max(r.len())).collect();
        let fmt = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        println!("{}", fmt(&header.map(String::from)));
        println!("{}", fmt(&row));
        if agg.unsolved > 0 {
            println!("note: {} of {} queries had no route", agg.unsolved, queries);
        }
    }
    Ok(())
}

fn scalar_f64(m: &Metric) -> f64 {
    match m {
        Metric::Inf => f64::INFINITY,
        Metric::Fin(r) => *r.numer() as f64 / *r.denom() as f64,
    }
}

struct Record {
    index: usize,
    src: String,
    dst: String,
    seconds: f64,
    scalar: Option<f64>,
    cost: Option<String>,
    depth: Option<usize>,
    explored: u64,
    pruned: u64,
}

impl Record {
    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "index": self.index,
            "src": self.src,
            "dst": self.dst,
            "seconds": self.seconds,
            "cost": self.cost,
            "scalar_cost": self.scalar,
            "depth": self.depth,
            "explored": self.explored,
            "pruned": self.pruned,
        })
    }
}

struct Aggregates {
    min_time: f64,
    max_time: f64,
    avg_time: f64,
    avg_cost: f64,
    avg_depth: f64,
    max_depth: usize,
    unsolved: usize,
}

impl Aggregates {
    fn from(records: &[Record]) -> Aggregates {
        let times: Vec<f64> = records.iter().map(|r| r.seconds).collect();
        let solved: Vec<&Record> = records.iter().filter(|r| r.scalar.is_some()).collect();
        let avg = |xs: &[f64]| if xs.is_empty() { 0.0 } else { xs.iter().sum::<f64>() / xs.len() as f64 };
        Aggregates {
            min_time: times.iter().copied().fold(f64::INFINITY, f64::min),
            max_time: times.iter().copied().fold(0.0, f64::max),
            avg_time: avg(&times),
            avg_cost: avg(&solved.iter().filter_map(|r| r.scalar).collect::<Vec<_>>()),
            avg_depth: avg(&solved.iter().filter_map(|r| r.depth.map(|d| d as f64)).collect::<Vec<_>>()),
            max_depth: solved.iter().filter_map(|r| r.depth).max().unwrap_or(0),
            unsolved: records.len() - solved.len(),
        }
    }

    fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "min_time": self.min_time,
            "max_time": self.max_time,
            "avg_time": self.avg_time,
            "avg_cost": self.avg_cost,
            "avg_depth": self.avg_depth,
            "max_depth": self.max_depth,
            "unsolved": self.unsolved,
        })
    }
}
