use qroute_core::unicast::{pareto_paths, PathQuery};

use crate::support::{
    load_network, parse_mods, path_json, path_line, resolve_node, CliError,
};
use crate::QueryTuning;

pub fn run(
    net_path: &str,
    from: &str,
    to: &str,
    tuning: &QueryTuning,
    uniform: bool,
    json: bool,
) -> Result<(), CliError> {
    let net = load_network(net_path)?;
    let spec = net.spec().clone();
    let mut q = PathQuery::new(resolve_node(&net, from)?, resolve_node(&net, to)?);
    q.max_depth = tuning.depth;
    q.uniform_modality = uniform;
    q.allowed_modalities = tuning.mods.as_deref().map(parse_mods);
    let out = pareto_paths(&net, &q, &spec)?;

    if json {
        crate::support::print_json(&serde_json::json!({
            "frontier": out
                .frontier
                .entries()
                .iter()
                .map(|e| serde_json::json!({
                    "cost": crate::support::cost_json(&e.cost),
                    "witnesses": e.witnesses.iter().map(|w| path_json(&net, w)).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
            "glb": out.frontier.collapse(&spec).map(|c| crate::support::cost_json(&c)),
            "explored": out.stats.explored,
            "pruned": out.stats.pruned,
        }));
    } else {
        for e in out.frontier.entries() {
            println!("{}", path_line(&net, &e.witnesses[0]));
        }
        if let Some(glb) = out.frontier.collapse(&spec) {
            println!("glb={glb}");
        }
    }
    if out.frontier.is_empty() {
        return Err(CliError::NoSolution);
    }
    Ok(())
}
