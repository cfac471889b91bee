use std::collections::HashMap;

use super::{prefix, remove_epsilon, Dtmfa};
use crate::error::{Limits, Result};
use crate::tmfa::{flags_after, Flags};
use crate::tmfa::{Actions, Label, StateId, Tmfa};

/// Equivalent automaton in which every state has all terminal transitions,
/// exactly one recall or exactly one ε-transition.
///
/// Missing terminal transitions lead to a fresh rejecting sink that loops on
/// every terminal. The sink is only added if some transition is missing.
/// States with a recall or ε-transition are left alone.
pub fn complete(m: &Dtmfa) -> Dtmfa {
    let sigma = m.alphabet().chars().to_vec();
    let needs = |q: StateId| {
        q != m.trap()
            && m.transitions(q).iter().all(|t| t.label.is_consuming_char())
            && m.transitions(q).len() < sigma.len()
    };
    if !(0..m.num_states()).any(needs) {
        return m.clone();
    }
    let mut out = m.as_tmfa().clone();
    let sink = out.add_state();
    let k = out.memories();
    for q in 0..m.num_states() {
        if !needs(q) {
            continue;
        }
        for &c in &sigma {
            if !m.transitions(q).iter().any(|t| t.label == Label::Char(c)) {
                out.add_transition(q, Label::Char(c), sink, Actions::keep(k))
                    .expect("sink transitions are well formed");
            }
        }
    }
    for &c in &sigma {
        out.add_transition(sink, Label::Char(c), sink, Actions::keep(k))
            .expect("sink transitions are well formed");
    }
    Dtmfa::new(out).expect("completion keeps determinism")
}

/// Automaton for `Σ* \ L(m)`.
pub fn complement(m: &Dtmfa) -> Result<Dtmfa> {
    complement_with(m, &Limits::default())
}

/// Complement under explicit caps.
///
/// Each memory first keeps its first symbol in the state, so that a recall
/// reads that symbol by a terminal transition and only then recalls the
/// rest. After completion, emptiness tracking, ε-removal and a second
/// completion, the only states with recalls are entered by a terminal and
/// recall a non-empty memory. Such a state accepts at the end of the input
/// exactly when the trap does, so it is marked that way before every
/// acceptance flag, the trap's included, is flipped.
pub fn complement_with(m: &Dtmfa, limits: &Limits) -> Result<Dtmfa> {
    let split = if m.memories() == 0 {
        m.clone()
    } else {
        Dtmfa::new(prefix::build(m, 1, limits)?).expect("the prefix construction is deterministic")
    };
    let expanded = expand_emptiness(&complete(&split), limits)?;
    let mut out = complete(&remove_epsilon(&expanded)).into_inner();
    let trap_accepting = out.trap_accepting();
    for q in 0..out.num_states() {
        if q == out.trap() {
            continue;
        }
        let recalls = out
            .transitions(q)
            .iter()
            .any(|t| matches!(t.label, Label::Recall(_)));
        let accepting = out.is_final(q) || (recalls && trap_accepting);
        out.set_final(q, !accepting);
    }
    out.set_trap_accepting(!trap_accepting);
    Ok(Dtmfa::new(out).expect("flipping acceptance keeps determinism"))
}

/// States paired with whether each memory is open and empty; recalls of
/// empty memories become ε-transitions.
fn expand_emptiness(m: &Dtmfa, limits: &Limits) -> Result<Dtmfa> {
    let k = m.memories();
    let mut out = Tmfa::new(m.alphabet().clone(), k, 1);
    out.set_trap(0, m.trap_accepting());
    let mut ids: HashMap<(StateId, Vec<Flags>), StateId> = HashMap::new();
    let mut work = Vec::new();
    let mut intern =
        |out: &mut Tmfa, work: &mut Vec<_>, key: (StateId, Vec<Flags>)| -> Result<StateId> {
            if key.0 == m.trap() {
                return Ok(out.trap());
            }
            if let Some(&id) = ids.get(&key) {
                return Ok(id);
            }
            let id = out.add_state();
            limits.check_states(out.num_states())?;
            out.set_final(id, m.is_final(key.0));
            ids.insert(key.clone(), id);
            work.push((id, key));
            Ok(id)
        };
    let start = intern(&mut out, &mut work, (m.initial(), vec![Flags::INITIAL; k]))?;
    out.set_initial(start);
    while let Some((id, (q, flags))) = work.pop() {
        for t in m.transitions(q) {
            let (label, consumes) = match t.label {
                Label::Recall(b) if flags[b].empty => (Label::Eps, false),
                Label::Eps => (Label::Eps, false),
                other => (other, true),
            };
            let next = flags_after(&flags, &t.actions, consumes);
            let to = intern(&mut out, &mut work, (t.to, next))?;
            out.add_transition(id, label, to, t.actions.clone())?;
        }
    }
    Ok(Dtmfa::new(out).expect("emptiness tracking keeps determinism"))
}
