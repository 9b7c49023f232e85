//! Checks the bundled reference networks against their known answers.

use qroute_core::algebra::{LawConfig, MultiCost};
use qroute_core::fixtures;
use qroute_core::graph::{parse_network, Hypergraph, Network};
use qroute_core::multicast::{pareto_trees, TreeQuery};
use qroute_core::unicast::{
    best_path, constrained_paths, modal_best_path, pareto_paths, DimBound, PathQuery,
};

use crate::support::{print_json, CliError};

struct Outcome {
    fixture: &'static str,
    check: String,
    passed: bool,
    detail: String,
}

pub fn run(json: bool) -> Result<(), CliError> {
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut record = |fixture: &'static str, check: &str, result: Result<String, String>| {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        outcomes.push(Outcome { fixture, check: check.to_string(), passed, detail });
    };

    check_delay_basic(&mut record);
    check_cost_delay(&mut record);
    check_delay_modal(&mut record);
    check_multicast(&mut record);
    check_modal_multicast(&mut record);
    check_laws(&mut record);

    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if json {
        print_json(&serde_json::json!({
            "checks": outcomes
                .iter()
                .map(|o| serde_json::json!({
                    "fixture": o.fixture,
                    "check": o.check,
                    "passed": o.passed,
                    "detail": o.detail,
                }))
                .collect::<Vec<_>>(),
            "failed": failed,
        }));
    } else {
        for o in &outcomes {
            let mark = if o.passed { "ok  " } else { "FAIL" };
            println!("{mark} {}: {} ({})", o.fixture, o.check, o.detail);
        }
        println!(
            "{} checks, {} failed",
            outcomes.len(),
            failed
        );
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} selftest checks failed")));
    }
    Ok(())
}

fn parse(text: &'static str, name: &'static str) -> Result<Network, String> {
    parse_network(text).map_err(|e| format!("{name}: {e}"))
}

type Recorder<'a> = dyn FnMut(&'static str, &str, Result<String, String>) + 'a;

fn check_delay_basic(record: &mut Recorder<'_>) {
    let name = "delay-basic";
    let net = match parse(fixtures::DELAY_BASIC, name) {
        Ok(n) => n,
        Err(e) => return record(name, "parse", Err(e)),
    };
    record(
        name,
        "shape",
        if net.node_count() == 7 && net.edge_count() == 13 {
            Ok("7 nodes, 13 edges".into())
        } else {
            Err(format!("{} nodes, {} edges", net.node_count(), net.edge_count()))
        },
    );
    let q = PathQuery::new(net.node("r").unwrap(), net.node("v").unwrap());
    match best_path(&net, &q, net.spec()) {
        Ok(Some(hit)) => {
            let witness = net.render_path(&hit.path.nodes);
            let ok = hit.cost == MultiCost::from_ints(&[6])
                && (witness == "r-t-s-v" || witness == "r-u-v");
            record(
                name,
                "best r-v delay",
                if ok { Ok(format!("cost=6 via {witness}")) } else { Err(format!("cost={} via {witness}", hit.cost)) },
            );
        }
        other => record(name, "best r-v delay", Err(format!("{other:?}"))),
    }
}

fn check_cost_delay(record: &mut Recorder<'_>) {
    let name = "cost-delay";
    let net = match parse(fixtures::COST_DELAY, name) {
        Ok(n) => n,
        Err(e) => return record(name, "parse", Err(e)),
    };
    let q = PathQuery::new(net.node("p").unwrap(), net.node("v").unwrap());
    match pareto_paths(&net, &q, net.spec()) {
        Ok(out) => {
            let costs: Vec<String> = out.frontier.costs().map(|c| c.to_string()).collect();
            record(
                name,
                "p-v frontier",
                if costs == ["7,8", "9,7"] {
                    Ok(costs.join(" "))
                } else {
                    Err(costs.join(" "))
                },
            );
            let glb = out.frontier.collapse(net.spec()).map(|c| c.to_string());
            record(
                name,
                "frontier glb",
                if glb.as_deref() == Some("7,7") {
                    Ok("7,7".into())
                } else {
                    Err(format!("{glb:?}"))
                },
            );
        }
        Err(e) => record(name, "p-v frontier", Err(e.to_string())),
    }
    let delay = net.spec().dim_index("delay").unwrap();
    let mut qc = PathQuery::new(net.node("p").unwrap(), net.node("v").unwrap());
    qc.bounds.push(DimBound::le(delay, 8));
    match constrained_paths(&net, &qc, net.spec()) {
        Ok(out) => record(
            name,
            "paths with delay<=8",
            if out.paths.len() == 3 {
                Ok("3 paths".into())
            } else {
                Err(format!("{} paths", out.paths.len()))
            },
        ),
        Err(e) => record(name, "paths with delay<=8", Err(e.to_string())),
    }
}

fn check_delay_modal(record: &mut Recorder<'_>) {
    let name = "delay-modal";
    let net = match parse(fixtures::DELAY_MODAL, name) {
        Ok(n) => n,
        Err(e) => return record(name, "parse", Err(e)),
    };
    let mut q = PathQuery::new(net.node("p").unwrap(), net.node("v").unwrap());
    q.allowed_modalities = Some(["c".to_string()].into_iter().collect());
    q.uniform_modality = true;
    match modal_best_path(&net, &q, net.spec()) {
        Ok(Some(hit)) => {
            let witness = net.render_path(&hit.path.nodes);
            let ok = hit.cost == MultiCost::from_ints(&[8]) && witness == "p-r-u-v";
            record(
                name,
                "uniform c route",
                if ok { Ok(format!("cost=8 via {witness}")) } else { Err(format!("cost={} via {witness}", hit.cost)) },
            );
        }
        other => record(name, "uniform c route", Err(format!("{other:?}"))),
    }
}

fn check_multicast(record: &mut Recorder<'_>) {
    let name = "bw-money-multicast";
    let net = match parse(fixtures::BW_MONEY_MULTICAST, name) {
        Ok(n) => n,
        Err(e) => return record(name, "parse", Err(e)),
    };
    let h = Hypergraph::new(&net);
    let n1 = net.node("n1").unwrap();
    let bundle = h.connector(n1, &[net.node("n3").unwrap(), net.node("n4").unwrap()]);
    record(
        name,
        "bundled connector cost",
        match bundle {
            Some(c) if c.cost == MultiCost::from_ints(&[7, 3]) => Ok("7,3".into()),
            other => Err(format!("{:?}", other.map(|c| c.cost))),
        },
    );
    let n9 = net.node("n9").unwrap();
    record(
        name,
        "receiver terminal cost",
        match h.zero_connector(n9) {
            Ok(c) if c.cost == MultiCost::from_ints(&[2, 3]) => Ok("2,3".into()),
            other => Err(format!("{other:?}")),
        },
    );
    let receivers: Vec<_> = ["n6", "n7", "n8", "n9"]
        .iter()
        .map(|n| net.node(n).unwrap())
        .collect();
    let q = TreeQuery::new(net.node("n0").unwrap(), receivers);
    match pareto_trees(&h, &q, net.spec()) {
        Ok(out) => {
            let costs: Vec<String> = out.frontier.costs().map(|c| c.to_string()).collect();
            record(
                name,
                "best distribution tree",
                if costs == ["2,16"] { Ok("2,16".into()) } else { Err(costs.join(" ")) },
            );
        }
        Err(e) => record(name, "best distribution tree", Err(e.to_string())),
    }
}

fn check_modal_multicast(record: &mut Recorder<'_>) {
    let name = "bw-money-modal";
    let net = match parse(fixtures::BW_MONEY_MODAL, name) {
        Ok(n) => n,
        Err(e) => return record(name, "parse", Err(e)),
    };
    let h = Hypergraph::new(&net);
    let receivers: Vec<_> = ["n3", "n4"].iter().map(|n| net.node(n).unwrap()).collect();
    let mut q = TreeQuery::new(net.node("n0").unwrap(), receivers);
    q.allowed_modalities = Some(["w".to_string()].into_iter().collect());
    let wired = pareto_trees(&h, &q, net.spec())
        .map(|o| o.frontier.costs().map(|c| c.to_string()).collect::<Vec<_>>());
    record(
        name,
        "wired-only tree",
        match wired {
            Ok(costs) if costs == ["6,6"] => Ok("6,6".into()),
            other => Err(format!("{other:?}")),
        },
    );
    q.allowed_modalities = Some(["l", "w"].iter().map(|s| s.to_string()).collect());
    let both = pareto_trees(&h, &q, net.spec())
        .map(|o| o.frontier.costs().map(|c| c.to_string()).collect::<Vec<_>>());
    record(
        name,
        "wired+wireless tree",
        match both {
            Ok(costs) if costs == ["7,5"] => Ok("7,5 (mixed bundle re-admitted)".into()),
            other => Err(format!("{other:?}")),
        },
    );
}

fn check_laws(record: &mut Recorder<'_>) {
    use qroute_core::algebra::{law_check, DimKind, SemiringSpec};
    let cfg = LawConfig { samples: 200, seed: 7 };
    for kind in [DimKind::Weighted, DimKind::Bandwidth, DimKind::Probabilistic, DimKind::Boolean] {
        let report = law_check(&SemiringSpec::from_kinds(&[kind]), &cfg);
        record(
            "algebra",
            &format!("{kind} laws"),
            if report.clean() {
                Ok(format!("{} structures clean", report.structures.len()))
            } else {
                Err(format!("{} violations", report.violation_count()))
            },
        );
    }
}
