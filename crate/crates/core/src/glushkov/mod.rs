//! Memory occurrence graphs: a Glushkov construction for regexes with
//! back-references, the determinism test on the graph and the conversion
//! into an automaton with one state per occurrence.

mod build;
mod check;
mod dot;
mod net;

use std::collections::BTreeMap;
use std::fmt;

use crate::dtmfa::Dtmfa;
use crate::error::{Error, Limits, Result};
use crate::refsem::RefWord;
use crate::syntax::{Alphabet, Regex};
use crate::tmfa::{Instr, Label, Tmfa};

pub use build::{build_graph, build_graph_with};
pub use check::{graph_determinism, Verdict, Witness};
pub use dot::graph_to_dot;
pub use net::{gmin, gmin_of, net_action, NetAction};

/// Node of a memory occurrence graph. Occurrences are identified by their
/// mark in the marked regex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Src,
    Occ(u32),
    Snk,
}

/// What an occurrence node reads.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OccSymbol {
    Terminal(char),
    Ref(String),
}

impl fmt::Display for OccSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OccSymbol::Terminal(c) => write!(f, "{c}"),
            OccSymbol::Ref(x) => write!(f, "&{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: Node,
    pub label: RefWord,
    pub to: Node,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryOccurrenceGraph {
    variables: Vec<String>,
    occurrences: BTreeMap<u32, OccSymbol>,
    edges: Vec<Edge>,
}

impl MemoryOccurrenceGraph {
    /// Variables in memory order.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Occurrence nodes by mark.
    pub fn occurrences(&self) -> &BTreeMap<u32, OccSymbol> {
        &self.occurrences
    }

    /// Edges sorted by source, label and target.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn outgoing(&self, u: Node) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == u)
    }

    pub fn symbol(&self, n: Node) -> Option<&OccSymbol> {
        match n {
            Node::Occ(m) => self.occurrences.get(&m),
            _ => None,
        }
    }

    /// Display name: `src`, `snk`, or the occurrence with its mark.
    pub fn node_name(&self, n: Node) -> String {
        match n {
            Node::Src => "src".into(),
            Node::Snk => "snk".into(),
            Node::Occ(m) => format!("{}({m})", self.occurrences[&m]),
        }
    }

    pub fn edge_name(&self, e: &Edge) -> String {
        format!(
            "({}, {}, {})",
            self.node_name(e.from),
            e.label,
            self.node_name(e.to)
        )
    }
}

/// Automaton read off the graph: state 0 is `src`, occurrences follow in
/// mark order and the rejecting trap comes last.
///
/// Nodes with an edge to `snk` accept; the memory actions on those edges are
/// dropped. A recall edge that resets the recalled variable recalls an empty
/// memory, so it becomes an ε-transition carrying the reset.
pub fn graph_to_tmfa(g: &MemoryOccurrenceGraph, alphabet: &Alphabet) -> Tmfa {
    let terminals = g.occurrences.values().filter_map(|s| match s {
        OccSymbol::Terminal(c) => Some(*c),
        OccSymbol::Ref(_) => None,
    });
    let alphabet = alphabet.union(&terminals.collect());
    let n = g.occurrences.len();
    let k = g.variables.len();
    let state_of: BTreeMap<u32, usize> = g
        .occurrences
        .keys()
        .enumerate()
        .map(|(i, &m)| (m, i + 1))
        .collect();
    let state = |node: Node| match node {
        Node::Src => 0,
        Node::Occ(m) => state_of[&m],
        Node::Snk => unreachable!("snk is not a state"),
    };
    let mut m = Tmfa::new(alphabet, k, n + 2);
    for e in &g.edges {
        let from = state(e.from);
        if e.to == Node::Snk {
            m.set_final(from, true);
            continue;
        }
        let net = net_action(&e.label.unmarked()).expect("edge labels are bracket words");
        let mut actions = net.to_actions(&g.variables);
        let label = match &g.occurrences[&match e.to {
            Node::Occ(mark) => mark,
            _ => unreachable!("edges into src do not exist"),
        }] {
            OccSymbol::Terminal(c) => Label::Char(*c),
            OccSymbol::Ref(x) => {
                let i = g
                    .variables
                    .iter()
                    .position(|v| v == x)
                    .expect("indexed variable");
                if actions.get(i) == Instr::Reset {
                    Label::Eps
                } else {
                    actions.set(i, Instr::Close);
                    Label::Recall(i)
                }
            }
        };
        m.add_transition(from, label, state(e.to), actions)
            .expect("graph transitions are well formed");
    }
    m
}

/// The automaton of the full graph, deterministic or not.
pub fn compile_glushkov(r: &Regex, alphabet: &Alphabet) -> Result<Tmfa> {
    Ok(graph_to_tmfa(&build_graph(r)?, alphabet))
}

/// Compiles a deterministic regex into a deterministic automaton with
/// `n + 2` states, or reports why the regex is not deterministic.
pub fn compile_deterministic(r: &Regex, alphabet: &Alphabet) -> Result<Dtmfa> {
    compile_deterministic_with(r, alphabet, &Limits::default())
}

pub fn compile_deterministic_with(
    r: &Regex,
    alphabet: &Alphabet,
    limits: &Limits,
) -> Result<Dtmfa> {
    let g = match build::build_checked(r, limits) {
        Ok(g) => g,
        Err(build::Aborted::Witness(w)) => return Err(nondeterministic(&w)),
        Err(build::Aborted::Error(e)) => return Err(e),
    };
    match graph_determinism(&g) {
        Verdict::Deterministic => Ok(Dtmfa::new(graph_to_tmfa(&g, alphabet))
            .expect("a deterministic graph yields a deterministic automaton")),
        Verdict::Nondeterministic(w) => Err(nondeterministic(&w)),
    }
}

fn nondeterministic(w: &Witness) -> Error {
    Error::NondeterministicRegex {
        condition: w.condition,
        node: w.node_name.clone(),
    }
}

/// Determinism verdict for a regex, from its full memory occurrence graph.
pub fn check_regex(r: &Regex) -> Result<Verdict> {
    match build::build_checked(r, &Limits::default()) {
        Ok(g) => Ok(graph_determinism(&g)),
        Err(build::Aborted::Witness(w)) => Ok(Verdict::Nondeterministic(w)),
        Err(build::Aborted::Error(e)) => Err(e),
    }
}
