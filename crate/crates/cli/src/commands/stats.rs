use qroute_core::netgen::stats;

use crate::support::{load_network, print_json, CliError};

pub fn run(net_path: &str, json: bool) -> Result<(), CliError> {
    let net = load_network(net_path)?;
    let st = stats(&net);
    if json {
        print_json(&serde_json::json!({
            "nodes": st.nodes,
            "edges": st.edges,
            "clustering": st.clustering,
            "avg_shortest_path": st.avg_shortest_path,
            "min_degree": st.min_degree,
            "max_degree": st.max_degree,
            "avg_degree": st.avg_degree,
            "diameter": st.diameter,
            "connected": st.connected,
            "largest_component": st.largest_component,
        }));
        return Ok(());
    }
    let header = [
        "Nodes", "Edges", "Clustering", "Avg. SP", "Min Deg", "Max Deg", "Avg. Deg", "Diameter",
    ];
    let row = [
        st.nodes.to_string(),
        st.edges.to_string(),
        format!("{:.2}", st.clustering),
        format!("{:.2}", st.avg_shortest_path),
        st.min_degree.to_string(),
        st.max_degree.to_string(),
        format!("{:.2}", st.avg_degree),
        st.diameter.to_string(),
    ];
    let widths: Vec<usize> = header
        .iter()
        .zip(&row)
        .map(|(h, r)| h.len().max(r.len()))
        .collect();
    let fmt_row = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    println!("{}", fmt_row(&header.map(String::from)));
    println!("{}", fmt_row(&row));
    if !st.connected {
        println!("note: disconnected; distances cover the largest component ({} nodes)", st.largest_component);
    }
    Ok(())
}
