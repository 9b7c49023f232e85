//! The `qnet` network file format.
//!
//! Line-oriented UTF-8 text, `#` starts a comment, one record per line:
//!
//! ```text
//! qnet 1
//! dims bandwidth,money:weighted
//! undirected false
//! parallel max
//! units 10mbps,10eur
//! node n0
//! edge n0 n1 10,1 mods=w reach=AS1
//! receiver n9 2,3
//! region n4 AS2
//! ```
//!
//! A dims entry is `name:kind` or just `kind` (then the kind doubles as the
//! name). Costs are comma-separated integers, rationals `a/b`, or `inf`.
//! Modalities and reach labels are `|`-separated tokens. With
//! `undirected true` every edge line declares both directions with the same
//! cost. Canonical output is directed, with nodes and edges sorted
//! lexicographically.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{DimKind, DimSpec, MultiCost, ParallelRule, SemiringSpec};
use crate::graph::{Network, NetworkBuilder};

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, reason: reason.into() })
}

pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let mut spec: Option<SemiringSpec> = None;
    let mut units: Option<Vec<String>> = None;
    let mut undirected = false;
    let mut parallel = ParallelRule::Worst;
    let mut saw_magic = false;
    let mut parts = NetworkBuilder::default();
    let mut directed_pairs: BTreeSet<(String, String)> = BTreeSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();

        if !saw_magic {
            if keyword != "qnet" {
                return err(lineno, "expected `qnet 1` header");
            }
            if rest != ["1"] {
                return err(lineno, format!("unsupported qnet version {:?}", rest));
            }
            saw_magic = true;
            continue;
        }

        match keyword {
            "qnet" => return err(lineno, "duplicate qnet header"),
            "dims" => {
                if spec.is_some() {
                    return err(lineno, "duplicate dims line");
                }
                let [arg] = rest[..] else {
                    return err(lineno, "dims takes one comma-separated list");
                };
                spec = Some(parse_dims(arg, lineno)?);
            }
            "undirected" => match rest[..] {
                ["true"] => undirected = true,
                ["false"] => undirected = false,
                _ => return err(lineno, "undirected takes true or false"),
            },
            "parallel" => match rest[..] {
                ["max"] => parallel = ParallelRule::Worst,
                ["sum"] => parallel = ParallelRule::Sum,
                _ => return err(lineno, "parallel takes max or sum"),
            },
            "units" => {
                let [arg] = rest[..] else {
                    return err(lineno, "units takes one comma-separated list");
                };
                units = Some(arg.split(',').map(str::to_string).collect());
            }
            "node" => {
                let [name] = rest[..] else {
                    return err(lineno, "node takes one identifier");
                };
                parts.nodes.push(name.to_string());
            }
            "edge" => {
                let spec_ref = match &spec {
                    Some(s) => s,
                    None => return err(lineno, "edge before dims"),
                };
                if rest.len() < 3 {
                    return err(lineno, "edge takes: src dst cost [mods=..] [reach=..]");
                }
                let src = rest[0].to_string();
                let dst = rest[1].to_string();
                let cost = match MultiCost::parse(rest[2]) {
                    Some(c) if c.len() == spec_ref.dims() => c,
                    Some(c) => {
                        return err(
                            lineno,
                            format!("cost has {} values, dims declares {}", c.len(), spec_ref.dims()),
                        )
                    }
                    None => return err(lineno, format!("unparsable cost `{}`", rest[2])),
                };
                let mut mods = BTreeSet::new();
                let mut reach = BTreeSet::new();
                for attr in &rest[3..] {
                    if let Some(v) = attr.strip_prefix("mods=") {
                        mods = v.split('|').map(str::to_string).collect();
                    } else if let Some(v) = attr.strip_prefix("reach=") {
                        reach = v.split('|').map(str::to_string).collect();
                    } else {
                        return err(lineno, format!("unknown edge attribute `{attr}`"));
                    }
                }
                let mut push = |s: String, d: String| -> Result<(), ParseError> {
                    if !directed_pairs.insert((s.clone(), d.clone())) {
                        return err(lineno, format!("duplicate edge {s} -> {d}"));
                    }
                    parts.edges.push((s, d, cost.clone(), mods.clone(), reach.clone()));
                    Ok(())
                };
                push(src.clone(), dst.clone())?;
                if undirected {
                    push(dst, src)?;
                }
            }
            "receiver" => {
                let spec_ref = match &spec {
                    Some(s) => s,
                    None => return err(lineno, "receiver before dims"),
                };
                match rest[..] {
                    [name] => parts.receivers.push((name.to_string(), None)),
                    [name, cost] => {
                        let cost = match MultiCost::parse(cost) {
                            Some(c) if c.len() == spec_ref.dims() => c,
                            _ => return err(lineno, format!("unparsable receiver cost `{cost}`")),
                        };
                        parts.receivers.push((name.to_string(), Some(cost)));
                    }
                    _ => return err(lineno, "receiver takes: node [cost]"),
                }
            }
            "region" => {
                let [name, label] = rest[..] else {
                    return err(lineno, "region takes: node label");
                };
                parts.regions.push((name.to_string(), label.to_string()));
            }
            other => return err(lineno, format!("unknown record `{other}`")),
        }
    }

    if !saw_magic {
        return err(1, "missing `qnet 1` header");
    }
    let mut spec = match spec {
        Some(s) => s,
        None => return err(1, "missing dims line"),
    };
    spec.parallel = parallel;
    if let Some(units) = units {
        if units.len() != spec.dims() {
            return err(1, format!("units lists {} entries for {} dims", units.len(), spec.dims()));
        }
        for (d, u) in spec.dims.iter_mut().zip(units) {
            d.unit = Some(u);
        }
    }

    Network::build(spec, parts).map_err(|e| ParseError { line: 0, reason: e.to_string() })
}

fn parse_dims(arg: &str, lineno: usize) -> Result<SemiringSpec, ParseError> {
    let mut dims = Vec::new();
    for entry in arg.split(',') {
        let (name, kind_token) = match entry.split_once(':') {
            Some((n, k)) => (n.to_string(), k),
            None => (entry.to_string(), entry),
        };
        let Some(kind) = DimKind::parse(kind_token) else {
            return err(lineno, format!("unknown dimension kind `{kind_token}`"));
        };
        if name.is_empty() {
            return err(lineno, "empty dimension name");
        }
        dims.push(DimSpec::new(name, kind));
    }
    if dims.is_empty() {
        return err(lineno, "dims must declare at least one dimension");
    }
    let mut seen = BTreeSet::new();
    for d in &dims {
        if !seen.insert(d.name.clone()) {
            return err(lineno, format!("duplicate dimension name `{}`", d.name));
        }
    }
    Ok(SemiringSpec::new(dims))
}

/// Canonical text form; `parse_network(serialize_network(n))` reproduces
/// `n` exactly, and serializing again is byte-identical.
pub fn serialize_network(net: &Network) -> String {
    let spec = net.spec();
    let mut out = String::from("qnet 1\n");
    let dims: Vec<String> = spec
        .dims
        .iter()
        .map(|d| {
            if d.name == d.kind.name() {
                d.name.clone()
            } else {
                format!("{}:{}", d.name, d.kind.name())
            }
        })
        .collect();
    out.push_str(&format!("dims {}\n", dims.join(",")));
    out.push_str("undirected false\n");
    if spec.parallel == ParallelRule::Sum {
        out.push_str("parallel sum\n");
    }
    if spec.dims.iter().any(|d| d.unit.is_some()) {
        let units: Vec<String> = spec
            .dims
            .iter()
            .map(|d| d.unit.clone().unwrap_or_default())
            .collect();
        out.push_str(&format!("units {}\n", units.join(",")));
    }
    for node in net.nodes() {
        out.push_str(&format!("node {}\n", net.name(node)));
    }
    for e in net.edges() {
        out.push_str(&format!("edge {} {} {}", net.name(e.src), net.name(e.dst), e.cost));
        if !e.modalities.is_empty() {
            out.push_str(&format!(
                " mods={}",
                e.modalities.iter().cloned().collect::<Vec<_>>().join("|")
            ));
        }
        if !e.reach.is_empty() {
            out.push_str(&format!(" reach={}", e.reach.iter().cloned().collect::<Vec<_>>().join("|")));
        }
        out.push('\n');
    }
    for (node, cost) in net.receivers() {
        out.push_str(&format!("receiver {} {}\n", net.name(*node), cost));
    }
    for (node, label) in net.regions() {
        out.push_str(&format!("region {} {}\n", net.name(*node), label));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
qnet 1
dims bandwidth,money:weighted
node a
node b
node c
edge a b 10,1 mods=w reach=AS1
edge b c 7,5
receiver c 2,3
region b AS2
";

    #[test]
    fn parses_and_round_trips() {
        let net = parse_network(SMALL).unwrap();
        assert_eq!(net.node_count(), 3);
        assert_eq!(net.edge_count(), 2);
        assert_eq!(net.receivers().len(), 1);
        let text = serialize_network(&net);
        let again = parse_network(&text).unwrap();
        assert_eq!(net, again);
        assert_eq!(serialize_network(&again), text);
    }

    #[test]
    fn empty_body_is_a_valid_empty_network() {
        let net = parse_network("qnet 1\ndims weighted\n").unwrap();
        assert_eq!(net.node_count(), 0);
        assert_eq!(net.edge_count(), 0);
    }

    #[test]
    fn undeclared_edge_endpoint_is_named() {
        let text = "qnet 1\ndims weighted\nnode a\nedge a ghost 1\n";
        let e = parse_network(text).unwrap_err();
        assert!(e.reason.contains("ghost"), "{e}");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "qnet 1\ndims weighted\nnode a\nnode b\nedge a b nonsense\n";
        let e = parse_network(text).unwrap_err();
        assert_eq!(e.line, 5);
    }

    #[test]
    fn undirected_expands_both_ways() {
        let text = "qnet 1\ndims weighted\nundirected true\nnode a\nnode b\nedge a b 4\n";
        let net = parse_network(text).unwrap();
        assert_eq!(net.edge_count(), 2);
        let a = net.node("a").unwrap();
        let b = net.node("b").unwrap();
        assert!(net.edges().iter().any(|e| e.src == a && e.dst == b));
        assert!(net.edges().iter().any(|e| e.src == b && e.dst == a));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# generated\nqnet 1\n\ndims weighted # one metric\nnode a # trailing\n";
        let net = parse_network(text).unwrap();
        assert_eq!(net.node_count(), 1);
    }

    #[test]
    fn rejects_wrong_arity_and_bad_kind() {
        assert!(parse_network("qnet 1\ndims weighted\nnode a\nnode b\nedge a b 1,2\n").is_err());
        assert!(parse_network("qnet 1\ndims sideways\n").is_err());
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_network("dims weighted\n").is_err());
    }

    #[test]
    fn parallel_and_units_survive_round_trip() {
        let text = "qnet 1\ndims bandwidth,money:weighted\nparallel sum\nunits 10mbps,10eur\nnode a\n";
        let net = parse_network(text).unwrap();
        assert_eq!(net.spec().parallel, ParallelRule::Sum);
        assert_eq!(net.spec().dims[0].unit.as_deref(), Some("10mbps"));
        let again = parse_network(&serialize_network(&net)).unwrap();
        assert_eq!(net, again);
    }
}
