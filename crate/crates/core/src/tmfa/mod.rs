//! Memory automata with a trap state: data model, step semantics, the
//! membership oracle, normal form, trap conversion and naive compilation.

mod accrej;
mod analysis;
mod config;
mod dot;
mod instr;
mod json;
mod naive;
mod normal;

use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::Alphabet;

pub use accrej::{acc_to_rej, acc_to_rej_with};
pub(crate) use analysis::state_is_deterministic;
pub use analysis::{is_deterministic, is_memory_cycle_free};
pub use config::{
    enumerate_accepted, language_by_membership, member_oracle, member_oracle_with, step,
    Configuration, Memory,
};
pub(crate) use dot::dot_escape;
pub use dot::to_dot;
pub use instr::{Actions, Instr};
pub use json::{from_json, to_json};
pub use naive::compile_naive;
pub(crate) use normal::{flags_after, Flags};
pub use normal::{is_normal_shape, normalize, normalize_with};

pub type StateId = usize;

/// Transition label: a terminal, ε, or a recall of memory `i` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Char(char),
    Eps,
    Recall(usize),
}

impl Label {
    pub fn is_consuming_char(&self) -> bool {
        matches!(self, Label::Char(_))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Char(c) => write!(f, "{c}"),
            Label::Eps => f.write_str("ε"),
            Label::Recall(i) => write!(f, "&{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub label: Label,
    pub to: StateId,
    pub actions: Actions,
}

/// Memory automaton with trap state.
///
/// The trap's own transitions are implicit: it loops on every terminal and
/// on ε and never recalls. It is never given stored transitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tmfa {
    alphabet: Alphabet,
    memories: usize,
    initial: StateId,
    finals: Vec<bool>,
    trap: StateId,
    trap_accepting: bool,
    delta: Vec<Vec<Transition>>,
}

impl Tmfa {
    /// Automaton with `states` states, no transitions, initial state 0 and
    /// the last state as a rejecting trap.
    pub fn new(alphabet: Alphabet, memories: usize, states: usize) -> Tmfa {
        assert!(states >= 1, "an automaton needs at least its trap state");
        Tmfa {
            alphabet,
            memories,
            initial: 0,
            finals: vec![false; states],
            trap: states - 1,
            trap_accepting: false,
            delta: vec![Vec::new(); states],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn memories(&self) -> usize {
        self.memories
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn trap(&self) -> StateId {
        self.trap
    }

    pub fn trap_accepting(&self) -> bool {
        self.trap_accepting
    }

    /// Acceptance of `q` at the end of the input. For the trap this is the
    /// trap flag.
    pub fn is_final(&self, q: StateId) -> bool {
        if q == self.trap {
            self.trap_accepting
        } else {
            self.finals[q]
        }
    }

    /// Accepting non-trap states.
    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.num_states()).filter(move |&q| q != self.trap && self.finals[q])
    }

    pub fn transitions(&self, q: StateId) -> &[Transition] {
        &self.delta[q]
    }

    /// All stored transitions as `(from, transition)` in state order.
    pub fn all_transitions(&self) -> impl Iterator<Item = (StateId, &Transition)> {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(q, ts)| ts.iter().map(move |t| (q, t)))
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    pub fn add_state(&mut self) -> StateId {
        self.delta.push(Vec::new());
        self.finals.push(false);
        self.delta.len() - 1
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = q;
    }

    pub fn set_final(&mut self, q: StateId, accepting: bool) {
        self.finals[q] = accepting;
    }

    /// Makes `q` the trap, dropping any transitions stored on it.
    pub fn set_trap(&mut self, q: StateId, accepting: bool) {
        self.trap = q;
        self.trap_accepting = accepting;
        self.finals[q] = false;
        self.delta[q].clear();
    }

    pub fn set_trap_accepting(&mut self, accepting: bool) {
        self.trap_accepting = accepting;
    }

    /// Adds a transition; duplicates are ignored.
    pub fn add_transition(
        &mut self,
        from: StateId,
        label: Label,
        to: StateId,
        actions: Actions,
    ) -> Result<()> {
        self.check_transition(from, label, to, &actions)?;
        let t = Transition { label, to, actions };
        if !self.delta[from].contains(&t) {
            self.delta[from].push(t);
        }
        Ok(())
    }

    fn check_transition(
        &self,
        from: StateId,
        label: Label,
        to: StateId,
        actions: &Actions,
    ) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidAutomaton(msg));
        let n = self.num_states();
        if from >= n || to >= n {
            return invalid(format!("transition {from} -> {to} out of range"));
        }
        if from == self.trap {
            return invalid(format!("transition stored on the trap state {from}"));
        }
        if actions.len() != self.memories {
            return invalid(format!(
                "transition {from} -> {to} has {} actions for {} memories",
                actions.len(),
                self.memories
            ));
        }
        match label {
            Label::Char(c) if !self.alphabet.contains(c) => {
                invalid(format!("label {c:?} is not in the alphabet"))
            }
            Label::Recall(i) if i >= self.memories => {
                invalid(format!("recall of unknown memory {i}"))
            }
            Label::Recall(i) if actions.get(i) != Instr::Close => {
                invalid(format!("recall of memory {i} must close it"))
            }
            _ => Ok(()),
        }
    }

    /// Keeps only the given states, renumbered in the given order. Transitions
    /// into dropped states are removed.
    pub(crate) fn restrict(&self, keep: &[StateId]) -> Tmfa {
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            index[q] = i;
        }
        assert!(index[self.initial] != usize::MAX && index[self.trap] != usize::MAX);
        let mut out = Tmfa::new(self.alphabet.clone(), self.memories, keep.len());
        out.initial = index[self.initial];
        out.trap = index[self.trap];
        out.trap_accepting = self.trap_accepting;
        for (i, &q) in keep.iter().enumerate() {
            out.finals[i] = q != self.trap && self.finals[q];
            for t in &self.delta[q] {
                if index[t.to] != usize::MAX {
                    out.delta[i].push(Transition {
                        label: t.label,
                        to: index[t.to],
                        actions: t.actions.clone(),
                    });
                }
            }
        }
        out
    }

    /// States reachable from the initial state, in breadth-first order; the
    /// trap is always included, last if otherwise unreachable.
    pub fn reachable_states(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for t in &self.delta[q] {
                if !seen[t.to] {
                    seen[t.to] = true;
                    order.push(t.to);
                }
            }
        }
        if !seen[self.trap] {
            order.push(self.trap);
        }
        order
    }

    /// Drops unreachable states.
    pub fn trim(&self) -> Tmfa {
        self.restrict(&self.reachable_states())
    }

    /// The same automaton over a larger alphabet.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Tmfa> {
        if let Some(&c) = self
            .alphabet
            .chars()
            .iter()
            .find(|&&c| !alphabet.contains(c))
        {
            return Err(Error::OutsideAlphabet(c));
        }
        let mut out = self.clone();
        out.alphabet = alphabet.clone();
        Ok(out)
    }
}
