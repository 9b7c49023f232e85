use qroute_core::algebra::{DimKind, DimSpec};
use qroute_core::graph::serialize_network;
use qroute_core::netgen::{generate, EdgeTarget, GenParams, RNG_ALGORITHM};

use crate::support::CliError;

#[allow(clippy::too_many_arguments)]
pub fn run(
    nodes: usize,
    edges: Option<usize>,
    per_step: Option<usize>,
    seed: u64,
    dims: &str,
    range: &str,
    out: Option<&str>,
    json: bool,
) -> Result<(), CliError> {
    let dims = parse_dims(dims)?;
    let ranges = parse_ranges(range, dims.len())?;
    let edges = match (edges, per_step) {
        (Some(total), None) => EdgeTarget::Total(total),
        (None, Some(k)) => EdgeTarget::PerStep(k),
        (None, None) => EdgeTarget::PerStep(2),
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };
    let mut params = GenParams::new(nodes, edges, seed, dims);
    params.cost_ranges = ranges;
    let net = generate(&params).map_err(|e| CliError::usage(e.to_string()))?;

    let mut text = format!("# generated: seed={seed} rng={RNG_ALGORITHM}\n");
    text.push_str(&serialize_network(&net));
    match out {
        None => print!("{text}"),
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write {path}: {e}")))?,
    }
    if json {
        crate::support::print_json(&serde_json::json!({
            "path": out,
            "nodes": net.node_count(),
            "directed_edges": net.edge_count(),
            "seed": seed,
            "rng": RNG_ALGORITHM,
        }));
    }
    Ok(())
}

fn parse_dims(text: &str) -> Result<Vec<DimSpec>, CliError> {
    let mut dims = Vec::new();
    for entry in text.split(',') {
        let (name, kind) = match entry.split_once(':') {
            Some((n, k)) => (n, k),
            None => (entry, entry),
        };
        let kind = DimKind::parse(kind)
            .ok_or_else(|| CliError::usage(format!("unknown dimension kind `{kind}`")))?;
        dims.push(DimSpec::new(name, kind));
    }
    Ok(dims)
}

fn parse_ranges(text: &str, dims: usize) -> Result<Vec<(i64, i64)>, CliError> {
    let mut ranges = Vec::new();
    for entry in text.split(',') {
        let (lo, hi) = entry
            .split_once("..")
            .ok_or_else(|| CliError::usage(format!("range `{entry}` needs lo..hi")))?;
        let lo: i64 = lo.parse().map_err(|_| CliError::usage(format!("bad range `{entry}`")))?;
        let hi: i64 = hi.parse().map_err(|_| CliError::usage(format!("bad range `{entry}`")))?;
        ranges.push((lo, hi));
    }
    if ranges.len() == 1 && dims > 1 {
        ranges = vec![ranges[0]; dims];
    }
    if ranges.len() != dims {
        return Err(CliError::usage(format!("{} ranges for {dims} dimensions", ranges.len())));
    }
    Ok(ranges)
}
