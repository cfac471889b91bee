use std::collections::HashSet;

use super::Dtmfa;
use crate::tmfa::{Actions, Instr, Label, StateId, Tmfa};

/// Equivalent automaton without ε-transitions.
///
/// Each state follows its ε-chain, composing the instructions, and takes
/// over the transitions of the first state that is not an ε-state. A
/// recall of a memory the chain has opened or reset is empty and is
/// followed like an ε-transition. A chain that cycles leaves the state
/// without transitions. Acceptance is hoisted along the chain. State ids
/// are kept.
pub fn remove_epsilon(m: &Dtmfa) -> Dtmfa {
    let m = m.as_tmfa();
    let k = m.memories();
    let mut out = Tmfa::new(m.alphabet().clone(), k, m.num_states());
    out.set_initial(m.initial());
    out.set_trap(m.trap(), m.trap_accepting());
    for q in 0..m.num_states() {
        if q == m.trap() {
            continue;
        }
        let (accepting, moves) = follow(m, q);
        out.set_final(q, accepting);
        for (label, to, actions) in moves {
            out.add_transition(q, label, to, actions)
                .expect("composed transitions are well formed");
        }
    }
    Dtmfa::new(out).expect("removing ε keeps determinism")
}

fn skips(actions: &Actions, label: Label) -> bool {
    match label {
        Label::Eps => true,
        Label::Recall(b) => matches!(actions.get(b), Instr::Open | Instr::Reset),
        Label::Char(_) => false,
    }
}

/// Acceptance and transitions of `q` once its ε-chain is contracted.
fn follow(m: &Tmfa, q: StateId) -> (bool, Vec<(Label, StateId, Actions)>) {
    let k = m.memories();
    let mut acc = Actions::keep(k);
    let mut cur = q;
    let mut accepting = m.is_final(q);
    let mut seen = HashSet::new();
    seen.insert((cur, acc.clone()));
    loop {
        if cur == m.trap() {
            let moves = m
                .alphabet()
                .chars()
                .iter()
                .map(|&c| (Label::Char(c), m.trap(), acc.clone()))
                .collect();
            return (accepting || m.trap_accepting(), moves);
        }
        let ts = m.transitions(cur);
        match ts {
            [t] if skips(&acc, t.label) => {
                acc = acc.then(&t.actions);
                cur = t.to;
                accepting |= m.is_final(cur);
                if !seen.insert((cur, acc.clone())) {
                    return (accepting, Vec::new());
                }
            }
            _ => {
                let moves = ts
                    .iter()
                    .map(|t| (t.label, t.to, acc.then(&t.actions)))
                    .collect();
                return (accepting, moves);
            }
        }
    }
}
