use qroute_core::graph::{Hypergraph, Network};
use qroute_core::multicast::{best_tree, modal_tree, pareto_trees, TreeQuery, TreeSolution};

use crate::support::{load_network, parse_mods, parse_window, resolve_node, CliError};
use crate::{OrderArgs, QueryTuning};

pub fn run(
    net_path: &str,
    from: &str,
    to: &str,
    order: &OrderArgs,
    tuning: &QueryTuning,
    reach: bool,
    json: bool,
) -> Result<(), CliError> {
    let net = load_network(net_path)?;
    let h = Hypergraph::new(&net);
    let spec = crate::support::order_spec(&net, order.weights.as_deref(), order.eps.as_deref())?;
    let mut receivers = Vec::new();
    for name in to.split(',') {
        receivers.push(resolve_node(&net, name.trim())?);
    }
    let mut q = TreeQuery::new(resolve_node(&net, from)?, receivers);
    q.allowed_modalities = tuning.mods.as_deref().map(parse_mods);
    q.reach_filter = reach;
    q.max_depth = tuning.depth;
    if let Some(w) = &tuning.window {
        q.window = Some(parse_window(w)?);
    }

    // A total order (one dimension or explicit weights) answers with the
    // single best tree; a partial order reports the whole frontier.
    if spec.is_total_order() {
        let hit = if q.allowed_modalities.is_some() {
            modal_tree(&h, &q, &spec)?
        } else {
            best_tree(&h, &q, &spec)?
        };
        let Some(hit) = hit else {
            return Err(CliError::NoSolution);
        };
        for w in &hit.warnings {
            eprintln!("warning: {w}");
        }
        if json {
            crate::support::print_json(&serde_json::json!({
                "trees": [tree_json(&net, &hit.tree)],
                "explored": hit.stats.explored,
                "pruned": hit.stats.pruned,
            }));
        } else {
            print_tree(&net, &hit.tree);
        }
        return Ok(());
    }

    let out = pareto_trees(&h, &q, &spec)?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    if json {
        crate::support::print_json(&serde_json::json!({
            "trees": out
                .frontier
                .entries()
                .iter()
                .map(|e| tree_json(&net, &e.witnesses[0].tree))
                .collect::<Vec<_>>(),
            "explored": out.stats.explored,
            "pruned": out.stats.pruned,
        }));
    } else {
        for e in out.frontier.entries() {
            print_tree(&net, &e.witnesses[0].tree);
        }
    }
    if out.frontier.is_empty() {
        return Err(CliError::NoSolution);
    }
    Ok(())
}

fn print_tree(net: &Network, tree: &TreeSolution) {
    let receivers: Vec<&str> = tree.leaves.iter().map(|n| net.name(*n)).collect();
    println!(
        "cost={} depth={} receivers={}",
        tree.cost,
        tree.depth(),
        receivers.join(",")
    );
    fn walk(net: &Network, tree: &TreeSolution, node: qroute_core::NodeId, indent: usize) {
        let Some(c) = tree.chosen.get(&node) else { return };
        let pad = "  ".repeat(indent);
        if c.is_terminal() {
            println!("{pad}{} -> [] cost={}", net.name(node), c.cost);
        } else {
            let outs: Vec<&str> = c.outputs.iter().map(|o| net.name(*o)).collect();
            println!("{pad}{} -> {} cost={}", net.name(node), outs.join(","), c.cost);
            for o in &c.outputs {
                walk(net, tree, *o, indent + 1);
            }
        }
    }
    walk(net, tree, tree.root, 1);
    println!("canonical={}", tree.canonical(net));
}

fn tree_json(net: &Network, tree: &TreeSolution) -> serde_json::Value {
    serde_json::json!({
        "cost": crate::support::cost_json(&tree.cost),
        "depth": tree.depth(),
        "receivers": tree.leaves.iter().map(|n| net.name(*n)).collect::<Vec<_>>(),
        "canonical": tree.canonical(net),
        "connectors": tree
            .chosen
            .iter()
            .map(|(node, c)| serde_json::json!({
                "input": net.name(*node),
                "outputs": c.outputs.iter().map(|o| net.name(*o)).collect::<Vec<_>>(),
                "cost": crate::support::cost_json(&c.cost),
            }))
            .collect::<Vec<_>>(),
    })
}
