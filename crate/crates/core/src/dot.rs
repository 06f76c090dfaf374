//! Graphviz export.

use std::fmt::Write;

use crate::automata::Coloring;
use crate::graph::Graph;
use crate::word::Letter;

fn fill(role: &str) -> &'static str {
    match role.chars().next() {
        Some('x') => "lightblue",
        Some('V' | 'W' | 'Z') => "lightyellow",
        Some('C') => "pink",
        Some('D') => "gray80",
        Some('F') => "palegreen",
        Some('d') => "orange",
        _ => "white",
    }
}

/// DOT source for `g`; `roles` labels and fills states, `coloring` labels edges.
pub fn to_dot(g: &Graph, roles: Option<&[String]>, coloring: Option<&Coloring>) -> String {
    let mut out = String::from("digraph G {\n  node [shape=circle, style=filled];\n");
    for s in 0..g.state_count() {
        match roles.and_then(|r| r.get(s)) {
            Some(role) => writeln!(
                out,
                "  {s} [label=\"{}\", fillcolor={}];",
                role.replace('"', "\\\""),
                fill(role)
            ),
            None => writeln!(out, "  {s} [fillcolor=white];"),
        }
        .unwrap();
    }
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        match coloring.and_then(|c| c.letter_of(g, e)) {
            Some(Letter::A) => writeln!(out, "  {s} -> {t} [label=a, color=blue];"),
            Some(Letter::B) => writeln!(out, "  {s} -> {t} [label=b, color=red, style=dashed];"),
            None => writeln!(out, "  {s} -> {t};"),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}
