use std::collections::BTreeMap;
use std::fmt;

use super::{Edge, MemoryOccurrenceGraph, Node, OccSymbol};
use crate::refsem::RefWord;

/// A node and two of its outgoing edges that violate a determinism
/// condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// 1: two occurrences of one terminal; 2: a reference next to another
    /// occurrence; 3: one occurrence under two labels; 4: two labels into
    /// the sink.
    pub condition: u8,
    pub node: Node,
    pub node_name: String,
    pub edges: [Edge; 2],
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "condition={} node={}", self.condition, self.node_name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Deterministic,
    Nondeterministic(Witness),
}

impl Verdict {
    pub fn is_deterministic(&self) -> bool {
        matches!(self, Verdict::Deterministic)
    }

    pub fn condition(&self) -> Option<u8> {
        match self {
            Verdict::Deterministic => None,
            Verdict::Nondeterministic(w) => Some(w.condition),
        }
    }
}

/// Checks every node, `src` first and then occurrences by mark, against the
/// four conditions in order and reports the first violation.
pub fn graph_determinism(g: &MemoryOccurrenceGraph) -> Verdict {
    let triples: Vec<_> = g.edges().iter().map(|e| (e.from, &e.label, e.to)).collect();
    match first_violation(g.occurrences(), &triples, 4) {
        Some(w) => Verdict::Nondeterministic(w),
        None => Verdict::Deterministic,
    }
}

fn name(occ: &BTreeMap<u32, OccSymbol>, n: Node) -> String {
    match n {
        Node::Src => "src".into(),
        Node::Snk => "snk".into(),
        Node::Occ(m) => format!("{}({m})", occ[&m]),
    }
}

/// First violation of conditions `1..=max_condition`.
pub(super) fn first_violation(
    occ: &BTreeMap<u32, OccSymbol>,
    edges: &[(Node, &RefWord, Node)],
    max_condition: u8,
) -> Option<Witness> {
    let mut by_node: BTreeMap<Node, Vec<(Node, &RefWord)>> = BTreeMap::new();
    for &(u, l, v) in edges {
        by_node.entry(u).or_default().push((v, l));
    }
    for (u, mut out) in by_node {
        out.sort();
        if let Some((condition, a, b)) = node_violation(occ, &out, max_condition) {
            let edge = |(v, l): (Node, &RefWord)| Edge {
                from: u,
                label: l.clone(),
                to: v,
            };
            return Some(Witness {
                condition,
                node: u,
                node_name: name(occ, u),
                edges: [edge(a), edge(b)],
            });
        }
    }
    None
}

type Out<'a> = (Node, &'a RefWord);

fn node_violation<'a>(
    occ: &BTreeMap<u32, OccSymbol>,
    out: &[Out<'a>],
    max_condition: u8,
) -> Option<(u8, Out<'a>, Out<'a>)> {
    let symbol = |n: Node| match n {
        Node::Occ(m) => Some(&occ[&m]),
        _ => None,
    };
    let pairs = || {
        out.iter()
            .enumerate()
            .flat_map(move |(i, &a)| out[i + 1..].iter().map(move |&b| (a, b)))
    };
    let c1 = pairs().find(|&((v1, _), (v2, _))| {
        v1 != v2
            && matches!((symbol(v1), symbol(v2)), (Some(OccSymbol::Terminal(a)), Some(OccSymbol::Terminal(b))) if a == b)
    });
    if let Some((a, b)) = c1 {
        return Some((1, a, b));
    }
    if max_condition >= 2 {
        let c2 = pairs().find(|&((v1, _), (v2, _))| {
            v1 != v2
                && matches!((v1, v2), (Node::Occ(_), Node::Occ(_)))
                && (matches!(symbol(v1), Some(OccSymbol::Ref(_)))
                    || matches!(symbol(v2), Some(OccSymbol::Ref(_))))
        });
        if let Some((a, b)) = c2 {
            return Some((2, a, b));
        }
    }
    if max_condition >= 3 {
        let c3 = pairs()
            .find(|&((v1, l1), (v2, l2))| v1 == v2 && matches!(v1, Node::Occ(_)) && l1 != l2);
        if let Some((a, b)) = c3 {
            return Some((3, a, b));
        }
    }
    if max_condition >= 4 {
        let c4 =
            pairs().find(|&((v1, l1), (v2, l2))| v1 == Node::Snk && v2 == Node::Snk && l1 != l2);
        if let Some((a, b)) = c4 {
            return Some((4, a, b));
        }
    }
    None
}
