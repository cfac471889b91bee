use std::fmt::Write;

use super::{MemoryOccurrenceGraph, Node};
use crate::tmfa::dot_escape;

/// Graphviz rendering; nodes are ordered by mark.
pub fn graph_to_dot(g: &MemoryOccurrenceGraph) -> String {
    let id = |n: Node| match n {
        Node::Src => "src".to_string(),
        Node::Snk => "snk".to_string(),
        Node::Occ(m) => format!("n{m}"),
    };
    let mut out = String::from("digraph memory_occurrence_graph {\n  rankdir=LR;\n");
    out.push_str("  src [shape=point];\n  snk [shape=doublecircle, label=\"\"];\n");
    for &m in g.occurrences().keys() {
        let label = dot_escape(&g.node_name(Node::Occ(m)));
        let _ = writeln!(out, "  n{m} [shape=box, label=\"{label}\"];");
    }
    for e in g.edges() {
        let label = if e.label.is_empty() {
            String::new()
        } else {
            dot_escape(&e.label.to_string())
        };
        let _ = writeln!(out, "  {} -> {} [label=\"{label}\"];", id(e.from), id(e.to));
    }
    out.push_str("}\n");
    out
}
