use std::collections::HashMap;

use super::{normalize_with, Actions, Instr, Label, StateId, Tmfa};
use crate::error::{Limits, Result};

/// Which half of a memory is currently being written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Phase {
    Closed,
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Split {
    /// First symbol of the second half of each memory, if any.
    first: Vec<Option<char>>,
    phase: Vec<Phase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Main(StateId, Split),
    /// The first half of memory `b` was recalled on the way to the state.
    Mid {
        to: StateId,
        b: usize,
        split: Split,
        switched: bool,
    },
    /// A recall failed if the next symbol differs from the one given.
    Fail(char),
    /// Accepting sink standing in for the old trap.
    Sink,
}

/// Equivalent automaton whose trap is rejecting.
///
/// Each memory `i` is split into memories `2i` and `2i + 1` holding a
/// guessed prefix and the rest, and the first symbol of the rest is kept in
/// the state. A recall failure is then guessed by recalling the prefix and
/// reading a symbol other than the stored one, or running out of input.
/// An automaton with a rejecting trap is returned unchanged.
pub fn acc_to_rej(m: &Tmfa) -> Result<Tmfa> {
    acc_to_rej_with(m, &Limits::default())
}

pub fn acc_to_rej_with(m: &Tmfa, limits: &Limits) -> Result<Tmfa> {
    if !m.trap_accepting() {
        return Ok(m.clone());
    }
    let m = normalize_with(m, limits)?;
    Builder::new(&m, limits).run()
}

struct Builder<'a> {
    m: &'a Tmfa,
    limits: &'a Limits,
    out: Tmfa,
    ids: HashMap<Node, StateId>,
    work: Vec<(StateId, Node)>,
}

impl<'a> Builder<'a> {
    fn new(m: &'a Tmfa, limits: &'a Limits) -> Builder<'a> {
        let mut out = Tmfa::new(m.alphabet().clone(), 2 * m.memories(), 1);
        out.set_trap(0, false);
        Builder {
            m,
            limits,
            out,
            ids: HashMap::new(),
            work: Vec::new(),
        }
    }

    fn k2(&self) -> usize {
        2 * self.m.memories()
    }

    fn intern(&mut self, node: Node) -> Result<StateId> {
        let node = match node {
            Node::Main(q, _) if q == self.m.trap() => Node::Sink,
            other => other,
        };
        if let Some(&id) = self.ids.get(&node) {
            return Ok(id);
        }
        let id = self.out.add_state();
        self.limits.check_states(self.out.num_states())?;
        let accepting = match &node {
            Node::Main(q, _) => self.m.is_final(*q),
            Node::Mid { .. } => false,
            Node::Fail(_) | Node::Sink => true,
        };
        self.out.set_final(id, accepting);
        self.ids.insert(node.clone(), id);
        self.work.push((id, node));
        Ok(id)
    }

    fn run(mut self) -> Result<Tmfa> {
        let k = self.m.memories();
        let start = Split {
            first: vec![None; k],
            phase: vec![Phase::Closed; k],
        };
        let init = self.intern(Node::Main(self.m.initial(), start))?;
        self.out.set_initial(init);
        while let Some((id, node)) = self.work.pop() {
            match node {
                Node::Main(q, split) => self.expand_main(id, q, &split)?,
                Node::Mid {
                    to,
                    b,
                    split,
                    switched,
                } => self.expand_mid(id, to, b, &split, switched)?,
                Node::Fail(x) => {
                    let sink = self.intern(Node::Sink)?;
                    for &c in self.m.alphabet().chars() {
                        if c != x {
                            self.out.add_transition(
                                id,
                                Label::Char(c),
                                sink,
                                Actions::keep(self.k2()),
                            )?;
                        }
                    }
                }
                Node::Sink => {
                    for &c in self.m.alphabet().chars() {
                        self.out.add_transition(
                            id,
                            Label::Char(c),
                            id,
                            Actions::keep(self.k2()),
                        )?;
                    }
                }
            }
        }
        Ok(self.out)
    }

    fn expand_main(&mut self, id: StateId, q: StateId, split: &Split) -> Result<()> {
        let k2 = self.k2();
        for t in self.m.transitions(q).to_vec() {
            match t.label {
                Label::Eps => {
                    let mut next = split.clone();
                    let mut actions = Actions::keep(k2);
                    for (i, &s) in t.actions.as_slice().iter().enumerate() {
                        let (a, b) = match s {
                            Instr::Keep => continue,
                            Instr::Open => {
                                next.first[i] = None;
                                next.phase[i] = Phase::First;
                                (Instr::Open, Instr::Reset)
                            }
                            Instr::Close => {
                                next.phase[i] = Phase::Closed;
                                (Instr::Close, Instr::Close)
                            }
                            Instr::Reset => {
                                next.first[i] = None;
                                next.phase[i] = Phase::Closed;
                                (Instr::Reset, Instr::Reset)
                            }
                        };
                        actions.set(2 * i, a);
                        actions.set(2 * i + 1, b);
                    }
                    let to = self.intern(Node::Main(t.to, next))?;
                    self.out.add_transition(id, Label::Eps, to, actions)?;
                }
                Label::Char(c) => {
                    for (next, actions) in switches(split, Some(c)) {
                        let to = self.intern(Node::Main(t.to, next))?;
                        self.out.add_transition(id, Label::Char(c), to, actions)?;
                    }
                }
                Label::Recall(b) => {
                    let mid = self.intern(Node::Mid {
                        to: t.to,
                        b,
                        split: split.clone(),
                        switched: false,
                    })?;
                    let actions = Actions::single(k2, 2 * b, Instr::Close);
                    self.out
                        .add_transition(id, Label::Recall(2 * b), mid, actions)?;
                }
            }
        }
        Ok(())
    }

    fn expand_mid(
        &mut self,
        id: StateId,
        to: StateId,
        b: usize,
        split: &Split,
        switched: bool,
    ) -> Result<()> {
        let k2 = self.k2();
        let target = self.intern(Node::Main(to, split.clone()))?;
        let recall = Actions::single(k2, 2 * b + 1, Instr::Close);
        self.out
            .add_transition(id, Label::Recall(2 * b + 1), target, recall)?;
        if switched {
            return Ok(());
        }
        if let Some(x) = split.first[b] {
            for (next, actions) in switches(split, Some(x)).into_iter().skip(1) {
                let mid = self.intern(Node::Mid {
                    to,
                    b,
                    split: next,
                    switched: true,
                })?;
                self.out.add_transition(id, Label::Eps, mid, actions)?;
            }
            let fail = self.intern(Node::Fail(x))?;
            self.out
                .add_transition(id, Label::Eps, fail, Actions::keep(k2))?;
        }
        Ok(())
    }
}

/// Every way of moving a subset of first-half memories to their second
/// half just before `c` is consumed; the empty subset comes first.
fn switches(split: &Split, c: Option<char>) -> Vec<(Split, Actions)> {
    let k = split.phase.len();
    let candidates: Vec<usize> = (0..k).filter(|&i| split.phase[i] == Phase::First).collect();
    (0u64..1 << candidates.len())
        .map(|mask| {
            let mut next = split.clone();
            let mut actions = Actions::keep(2 * k);
            for (j, &i) in candidates.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    next.first[i] = c;
                    next.phase[i] = Phase::Second;
                    actions.set(2 * i, Instr::Close);
                    actions.set(2 * i + 1, Instr::Open);
                }
            }
            (next, actions)
        })
        .collect()
}
