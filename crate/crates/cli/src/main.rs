//! qroute: QoS routing queries over multi-metric networks.

mod commands;
mod support;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use support::CliError;

#[derive(Parser)]
#[command(
    name = "qroute",
    version,
    about = "Best paths, Pareto frontiers, and multicast trees over multi-metric networks",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct NetArg {
    /// Network file in qnet format.
    #[arg(long, value_name = "FILE")]
    net: String,
}

#[derive(Args, Clone)]
struct OrderArgs {
    /// Per-dimension weights k1,k2,... selecting the scalarized total order.
    #[arg(long, value_name = "K1,K2,..")]
    weights: Option<String>,
    /// Per-dimension weight slacks e1,e2,... (with --weights).
    #[arg(long, value_name = "E1,E2,..")]
    eps: Option<String>,
}

#[derive(Args, Clone)]
struct QueryTuning {
    /// Maximum hop (tree) depth; defaults to twice the topology diameter.
    #[arg(long, value_name = "N")]
    depth: Option<usize>,
    /// Initial scalar cost window lo..hi with widening restarts.
    #[arg(long, value_name = "LO..HI")]
    window: Option<String>,
    /// Allowed modalities, comma separated.
    #[arg(long, value_name = "M1,M2,..")]
    mods: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a scale-free network with random QoS costs.
    Gen {
        /// Node count.
        #[arg(long)]
        nodes: usize,
        /// Total undirected edge count.
        #[arg(long, conflicts_with = "per_step")]
        edges: Option<usize>,
        /// Links attached per newly added node (alternative to --edges).
        #[arg(long)]
        per_step: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Dimension list, e.g. `bandwidth,money:weighted`.
        #[arg(long, default_value = "a:weighted,b:weighted")]
        dims: String,
        /// Inclusive sampling ranges per dimension, e.g. `1..10,1..10`.
        #[arg(long, default_value = "1..10")]
        range: String,
        /// Output file (stdout when omitted).
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
        /// Print a generation summary as JSON (requires --out).
        #[arg(long, requires = "out")]
        json: bool,
    },
    /// Print topology statistics for a network file.
    Stats {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        json: bool,
    },
    /// Best or constrained unicast route.
    Route {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        tuning: QueryTuning,
        /// Feasibility bound like `delay<=8` or `bw>=5`; repeatable.
        #[arg(long, value_name = "DIM<=V")]
        bound: Vec<String>,
        /// Demand one common allowed modality across the whole path.
        #[arg(long)]
        uniform: bool,
        /// Disable branch-and-bound pruning.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Non-dominated path costs between two nodes.
    Pareto {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        tuning: QueryTuning,
        /// Demand one common allowed modality across the whole path.
        #[arg(long)]
        uniform: bool,
        #[arg(long)]
        json: bool,
    },
    /// Pareto frontier reduced by the weight-interval cut.
    Cut {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Weights k1,k2,... around which the cut intervals live.
        #[arg(long, value_name = "K1,K2,..")]
        weights: String,
        /// Interval half-widths e1,e2,... (default 0).
        #[arg(long, value_name = "E1,E2,..")]
        eps: Option<String>,
        /// Sample points per weight interval.
        #[arg(long, default_value_t = 5)]
        grid: usize,
        #[command(flatten)]
        tuning: QueryTuning,
        #[arg(long)]
        json: bool,
    },
    /// Best multicast distribution tree from a source to receivers.
    Mroute {
        #[command(flatten)]
        net: NetArg,
        #[arg(long)]
        from: String,
        /// Receivers, comma separated.
        #[arg(long, value_name = "R1,R2,..")]
        to: String,
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        tuning: QueryTuning,
        /// Prune links whose reach labels miss every receiver region.
        #[arg(long)]
        reach: bool,
        #[arg(long)]
        json: bool,
    },
    /// Timed batches of random unicast queries.
    Bench {
        #[command(flatten)]
        net: NetArg,
        #[arg(long, default_value_t = 50)]
        queries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// bnb (branch-and-bound) or exhaustive.
        #[arg(long, default_value = "bnb")]
        mode: String,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, value_name = "N")]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check the bundled reference networks against their known answers.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when a pager closes the pipe.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { nodes, edges, per_step, seed, dims, range, out, json } => {
            commands::gen::run(nodes, edges, per_step, seed, &dims, &range, out.as_deref(), json)
        }
        Command::Stats { net, json } => commands::stats::run(&net.net, json),
        Command::Route { net, from, to, order, tuning, bound, uniform, exhaustive, json } => {
            commands::route::run(
                &net.net, &from, &to, &order, &tuning, &bound, uniform, exhaustive, json,
            )
        }
        Command::Pareto { net, from, to, tuning, uniform, json } => {
            commands::pareto::run(&net.net, &from, &to, &tuning, uniform, json)
        }
        Command::Cut { net, from, to, weights, eps, grid, tuning, json } => {
            commands::cut::run(&net.net, &from, &to, &weights, eps.as_deref(), grid, &tuning, json)
        }
        Command::Mroute { net, from, to, order, tuning, reach, json } => {
            commands::mroute::run(&net.net, &from, &to, &order, &tuning, reach, json)
        }
        Command::Bench { net, queries, seed, mode, order, depth, json } => {
            commands::bench::run(&net.net, queries, seed, &mode, &order, depth, json)
        }
        Command::Selftest { json } => commands::selftest::run(json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::NoSolution) => {
            println!("no solution");
            ExitCode::from(1)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("FAIL: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
