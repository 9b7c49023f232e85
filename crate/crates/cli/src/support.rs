//! Shared argument parsing and rendering helpers.

use qroute_core::algebra::{Metric, MultiCost, Rational, SemiringSpec, WeightProfile};
use qroute_core::graph::{parse_network, Network, NodeId};
use qroute_core::unicast::{BoundOp, DimBound, PathSolution, ScalarWindow, SearchError};

/// Command outcomes map onto the exit-code contract: usage and parse
/// problems exit 2, a well-posed query without a solution exits 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NoSolution,
    Failed(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

pub fn load_network(path: &str) -> Result<Network, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
    parse_network(&text).map_err(|e| CliError::usage(format!("{path}: {e}")))
}

pub fn resolve_node(net: &Network, name: &str) -> Result<NodeId, CliError> {
    net.node(name)
        .ok_or_else(|| CliError::usage(format!("unknown node `{name}`")))
}

pub fn parse_rational(token: &str) -> Result<Rational, CliError> {
    match Metric::parse(token) {
        Some(Metric::Fin(r)) => Ok(r),
        _ => Err(CliError::usage(format!("unparsable number `{token}`"))),
    }
}

pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',').map(parse_rational).collect()
}

/// Builds the search order: the network's own spec, or its scalarized
/// variant when weights are given.
pub fn order_spec(
    net: &Network,
    weights: Option<&str>,
    eps: Option<&str>,
) -> Result<SemiringSpec, CliError> {
    let spec = net.spec().clone();
    let Some(weights) = weights else {
        if eps.is_some() {
            return Err(CliError::usage("--eps needs --weights"));
        }
        return Ok(spec);
    };
    let weights = parse_rational_list(weights)?;
    let slacks = match eps {
        Some(e) => parse_rational_list(e)?,
        None => vec![Rational::from_integer(0); weights.len()],
    };
    let profile = WeightProfile::new(weights, slacks)
        .map_err(|e| CliError::usage(e.to_string()))?;
    spec.ordered_weighted(profile).map_err(|e| CliError::usage(e.to_string()))
}

pub fn parse_profile(
    spec: &SemiringSpec,
    weights: &str,
    eps: Option<&str>,
) -> Result<WeightProfile, CliError> {
    let weights = parse_rational_list(weights)?;
    let slacks = match eps {
        Some(e) => parse_rational_list(e)?,
        None => vec![Rational::from_integer(0); weights.len()],
    };
    if weights.len() != spec.dims() {
        return Err(CliError::usage(format!(
            "{} weights for {} dimensions",
            weights.len(),
            spec.dims()
        )));
    }
    WeightProfile::new(weights, slacks).map_err(|e| CliError::usage(e.to_string()))
}

/// `delay<=8`, `bw>=5`, or by index: `1<=8`.
pub fn parse_bound(spec: &SemiringSpec, text: &str) -> Result<DimBound, CliError> {
    let (name, op, value) = if let Some((n, v)) = text.split_once("<=") {
        (n, BoundOp::Le, v)
    } else if let Some((n, v)) = text.split_once(">=") {
        (n, BoundOp::Ge, v)
    } else {
        return Err(CliError::usage(format!("bound `{text}` needs <= or >=")));
    };
    let dim = spec
        .dim_index(name.trim())
        .ok_or_else(|| CliError::usage(format!("unknown dimension `{}`", name.trim())))?;
    let value = Metric::parse(value.trim())
        .ok_or_else(|| CliError::usage(format!("unparsable bound value in `{text}`")))?;
    Ok(DimBound { dim, op, value })
}

/// `lo..hi` scalar window.
pub fn parse_window(text: &str) -> Result<ScalarWindow, CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| CliError::usage(format!("window `{text}` needs lo..hi")))?;
    let lo = parse_rational(lo)?;
    let hi = parse_rational(hi)?;
    if hi < lo {
        return Err(CliError::usage("window upper bound below lower bound"));
    }
    Ok(ScalarWindow { lo, hi })
}

pub fn parse_mods(text: &str) -> std::collections::BTreeSet<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// One machine-readable solution line: `cost=.. depth=.. path=a-b-c`.
pub fn path_line(net: &Network, p: &PathSolution) -> String {
    format!("cost={} depth={} path={}", p.cost, p.depth(), net.render_path(&p.nodes))
}

pub fn path_json(net: &Network, p: &PathSolution) -> serde_json::Value {
    serde_json::json!({
        "cost": cost_json(&p.cost),
        "depth": p.depth(),
        "path": p.nodes.iter().map(|n| net.name(*n)).collect::<Vec<_>>(),
    })
}

pub fn cost_json(c: &MultiCost) -> serde_json::Value {
    serde_json::Value::Array(
        c.values().iter().map(|m| serde_json::Value::String(m.to_string())).collect(),
    )
}

pub fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json renders"));
}
