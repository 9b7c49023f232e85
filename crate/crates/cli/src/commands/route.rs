use qroute_core::unicast::{
    best_path, constrained_paths, modal_best_path, PathQuery, SearchMode,
};

use crate::support::{
    load_network, parse_bound, parse_mods, parse_window, path_json, path_line, resolve_node,
    CliError,
};
use crate::{OrderArgs, QueryTuning};

#[allow(clippy::too_many_arguments)]
pub fn run(
    net_path: &str,
    from: &str,
    to: &str,
    order: &OrderArgs,
    tuning: &QueryTuning,
    bounds: &[String],
    uniform: bool,
    exhaustive: bool,
    json: bool,
) -> Result<(), CliError> {
    let net = load_network(net_path)?;
    let spec = crate::support::order_spec(&net, order.weights.as_deref(), order.eps.as_deref())?;
    let mut q = PathQuery::new(resolve_node(&net, from)?, resolve_node(&net, to)?);
    q.max_depth = tuning.depth;
    q.uniform_modality = uniform;
    q.allowed_modalities = tuning.mods.as_deref().map(parse_mods);
    if let Some(w) = &tuning.window {
        q.window = Some(parse_window(w)?);
    }
    if exhaustive {
        q.mode = SearchMode::Exhaustive;
    }
    for b in bounds {
        q.bounds.push(parse_bound(&spec, b)?);
    }

    if !q.bounds.is_empty() {
        let out = constrained_paths(&net, &q, &spec)?;
        if json {
            crate::support::print_json(&serde_json::json!({
                "paths": out.paths.iter().map(|p| path_json(&net, p)).collect::<Vec<_>>(),
                "explored": out.stats.explored,
                "pruned": out.stats.pruned,
            }));
        } else {
            for p in &out.paths {
                println!("{}", path_line(&net, p));
            }
        }
        if out.paths.is_empty() {
            return Err(CliError::NoSolution);
        }
        return Ok(());
    }

    let hit = if q.allowed_modalities.is_some() {
        modal_best_path(&net, &q, &spec)?
    } else {
        best_path(&net, &q, &spec)?
    };
    let Some(hit) = hit else {
        return Err(CliError::NoSolution);
    };
    if json {
        crate::support::print_json(&serde_json::json!({
            "cost": crate::support::cost_json(&hit.cost),
            "path": path_json(&net, &hit.path),
            "tied_paths": hit.tied.iter().map(|p| path_json(&net, p)).collect::<Vec<_>>(),
            "explored": hit.stats.explored,
            "pruned": hit.stats.pruned,
        }));
    } else {
        println!("{}", path_line(&net, &hit.path));
    }
    Ok(())
}
