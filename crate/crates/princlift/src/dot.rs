//! Graphviz export of cover graphs.
//!
//! Styling is read off the structured labels: anchors are drawn as boxes,
//! frame elements are grouped into one cluster and gadget interiors into
//! one cluster per gadget.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::congruence::PrincPoset;
use crate::labels::{parse, Parsed};
use crate::order::Poset;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Role {
    Plain,
    Anchor,
    Frame,
}

/// Cover graph, bottom to top. Output depends only on the labeled order.
pub fn export_dot(p: &Poset) -> String {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
    let mut id = vec![0; p.len()];
    for (k, &i) in order.iter().enumerate() {
        id[i] = k;
    }
    let mut plain = Vec::new();
    let mut frame = Vec::new();
    let mut gadgets: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut role = vec![Role::Plain; p.len()];
    for &i in &order {
        match parse(p.label(i)) {
            Some(Parsed::AnchorA(_)) | Some(Parsed::AnchorB(_)) => {
                role[i] = Role::Anchor;
                plain.push(i);
            }
            Some(Parsed::Frame(_)) => {
                role[i] = Role::Frame;
                frame.push(i);
            }
            Some(Parsed::Gadget { dual, p: cp, q, rank, .. }) => {
                let star = if dual { "*" } else { "" };
                gadgets
                    .entry(format!("{cp},{q},{rank}{star}"))
                    .or_default()
                    .push(i);
            }
            _ => plain.push(i),
        }
    }
    let node = |out: &mut String, indent: &str, i: usize| {
        let style = match role[i] {
            Role::Anchor => ", shape=box, style=filled, fillcolor=lightblue",
            Role::Frame => ", style=filled, fillcolor=lightgoldenrod",
            Role::Plain => "",
        };
        let _ = writeln!(out, "{indent}n{} [label={}{style}];", id[i], quote(p.label(i)));
    };
    let mut out = String::from("digraph {\n  rankdir=BT;\n  node [shape=ellipse];\n");
    for &i in &plain {
        node(&mut out, "  ", i);
    }
    if !frame.is_empty() {
        out.push_str("  subgraph cluster_mnh {\n    label=\"Mnh\";\n    style=dashed;\n");
        for &i in &frame {
            node(&mut out, "    ", i);
        }
        out.push_str("  }\n");
    }
    for (k, (name, members)) in gadgets.iter().enumerate() {
        let _ = writeln!(
            out,
            "  subgraph cluster_g{k} {{\n    label={};\n    style=rounded;",
            quote(&format!("gadget {name}"))
        );
        for &i in members {
            node(&mut out, "    ", i);
        }
        out.push_str("  }\n");
    }
    let mut edges: Vec<(usize, usize)> = p.covers().into_iter().map(|(a, b)| (id[a], id[b])).collect();
    edges.sort();
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the principal congruences.
pub fn export_princ_dot(pp: &PrincPoset) -> String {
    export_dot(&pp.order)
}
