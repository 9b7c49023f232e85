use qroute_core::algebra::cut;
use qroute_core::unicast::{pareto_paths, PathQuery};

use crate::support::{
    load_network, parse_mods, parse_profile, path_json, path_line, resolve_node, CliError,
};
use crate::QueryTuning;

#[allow(clippy::too_many_arguments)]
pub fn run(
    net_path: &str,
    from: &str,
    to: &str,
    weights: &str,
    eps: Option<&str>,
    grid: usize,
    tuning: &QueryTuning,
    json: bool,
) -> Result<(), CliError> {
    let net = load_network(net_path)?;
    let spec = net.spec().clone();
    let profile = parse_profile(&spec, weights, eps)?;
    let mut q = PathQuery::new(resolve_node(&net, from)?, resolve_node(&net, to)?);
    q.max_depth = tuning.depth;
    q.allowed_modalities = tuning.mods.as_deref().map(parse_mods);
    let out = pareto_paths(&net, &q, &spec)?;
    let kept = cut(&spec, &out.frontier, &profile, grid)
        .map_err(|e| CliError::usage(e.to_string()))?;

    if json {
        crate::support::print_json(&serde_json::json!({
            "frontier_size": out.frontier.len(),
            "kept": kept
                .entries()
                .iter()
                .map(|e| serde_json::json!({
                    "cost": crate::support::cost_json(&e.cost),
                    "witnesses": e.witnesses.iter().map(|w| path_json(&net, w)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        }));
    } else {
        for e in kept.entries() {
            println!("{}", path_line(&net, &e.witnesses[0]));
        }
        println!("kept {} of {} frontier costs", kept.len(), out.frontier.len());
    }
    if kept.is_empty() {
        return Err(CliError::NoSolution);
    }
    Ok(())
}
