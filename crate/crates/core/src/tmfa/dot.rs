use std::fmt::Write;

use super::Tmfa;

/// Graphviz rendering with stable state ids.
pub fn to_dot(m: &Tmfa) -> String {
    let mut out = String::from("digraph tmfa {\n  rankdir=LR;\n  node [shape=circle];\n");
    out.push_str("  start [shape=point];\n");
    for q in 0..m.num_states() {
        let shape = if m.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        if q == m.trap() {
            let _ = writeln!(out, "  q{q} [label=\"trap\", shape={shape}, style=dashed];");
        } else {
            let _ = writeln!(out, "  q{q} [label=\"{q}\", shape={shape}];");
        }
    }
    let _ = writeln!(out, "  start -> q{};", m.initial());
    for (from, t) in m.all_transitions() {
        let label = if m.memories() == 0 {
            t.label.to_string()
        } else {
            format!("{} / {}", t.label, t.actions)
        };
        let _ = writeln!(
            out,
            "  q{from} -> q{} [label=\"{}\"];",
            t.to,
            dot_escape(&label)
        );
    }
    out.push_str("}\n");
    out
}

pub(crate) fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Alphabet};
    use crate::tmfa::compile_naive;

    #[test]
    fn renders_states_and_edges() {
        let m = compile_naive(&parse("{x:a}&x").unwrap(), &Alphabet::default());
        let dot = to_dot(&m);
        assert!(dot.starts_with("digraph tmfa {"));
        assert!(dot.contains("label=\"trap\""));
        assert!(dot.contains("&0 / (c)"));
        assert_eq!(dot, to_dot(&m));
    }
}
