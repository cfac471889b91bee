use std::collections::HashSet;

use super::{Label, StateId, Tmfa};

/// At most one transition per state and label, and a state with an ε or
/// recall transition has no other outgoing transition.
pub fn is_deterministic(m: &Tmfa) -> bool {
    (0..m.num_states()).all(|q| state_is_deterministic(m, q))
}

pub(crate) fn state_is_deterministic(m: &Tmfa, q: StateId) -> bool {
    let ts = m.transitions(q);
    let non_consuming = ts.iter().any(|t| !t.label.is_consuming_char());
    if non_consuming {
        return ts.len() <= 1;
    }
    let mut labels = HashSet::new();
    ts.iter().all(|t| labels.insert(t.label))
}

/// No cycle passes through a recall or through a transition with a
/// non-`d` instruction.
pub fn is_memory_cycle_free(m: &Tmfa) -> bool {
    m.all_transitions()
        .filter(|(_, t)| matches!(t.label, Label::Recall(_)) || !t.actions.is_identity())
        .all(|(from, t)| !reaches(m, t.to, from))
}

fn reaches(m: &Tmfa, from: StateId, target: StateId) -> bool {
    let mut seen = vec![false; m.num_states()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(q) = stack.pop() {
        if q == target {
            return true;
        }
        for t in m.transitions(q) {
            if !seen[t.to] {
                seen[t.to] = true;
                stack.push(t.to);
            }
        }
    }
    false
}
