use std::collections::{HashMap, HashSet};

use super::Dtmfa;
use crate::error::{Error, Limits, Result};
use crate::tmfa::{
    is_deterministic, state_is_deterministic, Actions, Instr, Label, StateId, Tmfa, Transition,
};

/// Where a memory stands relative to its buffer of the first `ℓ` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Status {
    Closed,
    /// Open, buffer not yet full, real memory empty and closed.
    Filling,
    /// Open, buffer full, real memory still to be opened.
    Pending,
    /// Open, buffer full, real memory open.
    Open,
}

/// A memory's content is `buf` followed by the real memory, which is only
/// non-empty when `buf` holds `ℓ` symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Slot {
    buf: Vec<char>,
    status: Status,
}

type Slots = Vec<Slot>;

fn initial_slots(k: usize) -> Slots {
    vec![
        Slot {
            buf: Vec::new(),
            status: Status::Closed,
        };
        k
    ]
}

/// Applies an instruction of the simulated automaton; returns the
/// instruction for the real memory.
fn apply(slot: &mut Slot, s: Instr) -> Instr {
    match s {
        Instr::Keep if slot.status == Status::Pending => {
            slot.status = Status::Open;
            Instr::Open
        }
        Instr::Keep => Instr::Keep,
        Instr::Open => {
            slot.buf.clear();
            slot.status = Status::Filling;
            Instr::Reset
        }
        Instr::Close => {
            let real = if slot.status == Status::Open {
                Instr::Close
            } else {
                Instr::Keep
            };
            slot.status = Status::Closed;
            real
        }
        Instr::Reset => {
            slot.buf.clear();
            slot.status = Status::Closed;
            Instr::Reset
        }
    }
}

fn apply_all(slots: &Slots, actions: &Actions) -> (Actions, Slots) {
    let mut next = slots.clone();
    let real = next
        .iter_mut()
        .zip(actions.as_slice())
        .map(|(slot, &s)| apply(slot, s))
        .collect();
    (real, next)
}

/// Opens the real memories whose buffers filled up.
fn open_pending(slots: &mut Slots) -> Actions {
    slots
        .iter_mut()
        .map(|slot| {
            if slot.status == Status::Pending {
                slot.status = Status::Open;
                Instr::Open
            } else {
                Instr::Keep
            }
        })
        .collect()
}

fn absorb(slots: &mut Slots, c: char, ell: usize) {
    for slot in slots.iter_mut() {
        if slot.status == Status::Filling {
            slot.buf.push(c);
            if slot.buf.len() == ell {
                slot.status = Status::Pending;
            }
        }
    }
}

/// `u` and `v` are prefix equivalent given their first `ℓ` symbols.
fn prefix_equivalent(u: &[char], v: &[char]) -> bool {
    let n = u.len().min(v.len());
    u[..n] == v[..n]
}

/// Only determinism violations are several recalls of distinct memories.
fn relaxed_shape(m: &Tmfa) -> bool {
    (0..m.num_states()).all(|q| {
        if state_is_deterministic(m, q) {
            return true;
        }
        let mut memories = HashSet::new();
        m.transitions(q).iter().all(|t| match t.label {
            Label::Recall(b) => memories.insert(b),
            _ => false,
        })
    })
}

fn recall_violation(ts: &[Transition], slots: &Slots) -> bool {
    let bufs: Vec<&[char]> = ts
        .iter()
        .map(|t| match t.label {
            Label::Recall(b) => slots[b].buf.as_slice(),
            _ => unreachable!("a branching state only recalls"),
        })
        .collect();
    (0..bufs.len()).any(|i| (i + 1..bufs.len()).any(|j| prefix_equivalent(bufs[i], bufs[j])))
}

/// Whether every reachable state with several recalls sees pairwise
/// non-prefix-equivalent memory contents, comparing at most `ℓ` symbols.
/// For `ℓ = 0` this is plain determinism.
pub fn is_l_deterministic(m: &Tmfa, ell: usize) -> Result<bool> {
    is_l_deterministic_with(m, ell, &Limits::default())
}

pub fn is_l_deterministic_with(m: &Tmfa, ell: usize, limits: &Limits) -> Result<bool> {
    if ell == 0 || is_deterministic(m) {
        return Ok(is_deterministic(m));
    }
    if !relaxed_shape(m) {
        return Ok(false);
    }
    let start = (m.initial(), initial_slots(m.memories()));
    let mut seen = HashSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    while let Some((q, slots)) = stack.pop() {
        let ts = m.transitions(q);
        if ts.len() > 1 && matches!(ts[0].label, Label::Recall(_)) && recall_violation(ts, &slots) {
            return Ok(false);
        }
        for t in ts {
            if t.to == m.trap() {
                continue;
            }
            let (_, mut next) = apply_all(&slots, &t.actions);
            match t.label {
                Label::Char(c) => absorb(&mut next, c, ell),
                Label::Eps => {}
                Label::Recall(b) => {
                    for &c in &slots[b].buf {
                        open_pending(&mut next);
                        absorb(&mut next, c, ell);
                    }
                    open_pending(&mut next);
                }
            }
            let key = (t.to, next);
            if !seen.contains(&key) {
                seen.insert(key.clone());
                limits.check_configs(seen.len())?;
                stack.push(key);
            }
        }
    }
    Ok(true)
}

/// Equivalent deterministic automaton for an `ℓ`-deterministic one.
///
/// The first `ℓ` symbols of every memory live in the state and only the
/// rest in the real memory. A recall reads the buffered symbols by terminal
/// transitions and then recalls the real memory. Several candidate recalls
/// are followed in parallel, dropping a candidate as soon as its buffer
/// disagrees with the input, until one candidate is left.
pub fn l_determinize(m: &Tmfa, ell: usize) -> Result<Dtmfa> {
    l_determinize_with(m, ell, &Limits::default())
}

pub fn l_determinize_with(m: &Tmfa, ell: usize, limits: &Limits) -> Result<Dtmfa> {
    if ell == 0 {
        return Dtmfa::new(m.clone()).map_err(|_| Error::NotLDeterministic(0));
    }
    if !relaxed_shape(m) {
        return Err(Error::NotLDeterministic(ell));
    }
    let out = build(m, ell, limits)?;
    Ok(Dtmfa::new(out).expect("the prefix construction is deterministic"))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    /// A state of the input with its memory buffers.
    Main(StateId, Slots),
    /// Reading the buffers of the recalls `active` of a state, `pos`
    /// symbols in.
    Match {
        q: StateId,
        slots: Slots,
        pos: usize,
        active: Vec<usize>,
    },
    /// About to recall the real memory of recall `branch` of a state.
    Real {
        q: StateId,
        slots: Slots,
        branch: usize,
    },
}

struct Builder<'a> {
    m: &'a Tmfa,
    ell: usize,
    limits: &'a Limits,
    out: Tmfa,
    ids: HashMap<Node, StateId>,
    work: Vec<(StateId, Node)>,
}

/// The buffered construction for `ℓ ≥ 1`, assuming the relaxed shape.
pub(super) fn build(m: &Tmfa, ell: usize, limits: &Limits) -> Result<Tmfa> {
    let mut out = Tmfa::new(m.alphabet().clone(), m.memories(), 1);
    out.set_trap(0, m.trap_accepting());
    let mut b = Builder {
        m,
        ell,
        limits,
        out,
        ids: HashMap::new(),
        work: Vec::new(),
    };
    let start = b.intern(Node::Main(m.initial(), initial_slots(m.memories())))?;
    b.out.set_initial(start);
    while let Some((id, node)) = b.work.pop() {
        b.expand(id, node)?;
    }
    Ok(b.out)
}

impl Builder<'_> {
    fn intern(&mut self, node: Node) -> Result<StateId> {
        if let Node::Main(q, _) = &node {
            if *q == self.m.trap() {
                return Ok(self.out.trap());
            }
        }
        if let Some(&id) = self.ids.get(&node) {
            return Ok(id);
        }
        let id = self.out.add_state();
        self.limits.check_states(self.out.num_states())?;
        self.ids.insert(node.clone(), id);
        self.work.push((id, node));
        Ok(id)
    }

    fn edge(&mut self, from: StateId, label: Label, to: Node, actions: Actions) -> Result<()> {
        let to = self.intern(to)?;
        self.out.add_transition(from, label, to, actions)
    }

    fn recalled(&self, t: &Transition) -> usize {
        match t.label {
            Label::Recall(b) => b,
            _ => unreachable!("only recall transitions are matched"),
        }
    }

    fn expand(&mut self, id: StateId, node: Node) -> Result<()> {
        match node {
            Node::Main(q, slots) => self.expand_main(id, q, slots),
            Node::Match {
                q,
                slots,
                pos,
                active,
            } => {
                self.out.set_final(id, self.m.trap_accepting());
                self.expand_match(id, q, slots, pos, &active, Actions::keep(self.m.memories()))
            }
            Node::Real { q, slots, branch } => {
                let t = &self.m.transitions(q)[branch];
                let b = self.recalled(t);
                let to = t.to;
                let mut next = slots;
                let mut actions = open_pending(&mut next);
                debug_assert!(next.iter().all(|s| s.status != Status::Filling));
                actions.set(b, Instr::Close);
                self.edge(id, Label::Recall(b), Node::Main(to, next), actions)
            }
        }
    }

    fn expand_main(&mut self, id: StateId, q: StateId, slots: Slots) -> Result<()> {
        let m = self.m;
        let ts = m.transitions(q);
        let mut accepting = m.is_final(q);
        if ts.iter().any(|t| matches!(t.label, Label::Recall(_))) {
            let branches: Vec<(Actions, Slots)> =
                ts.iter().map(|t| apply_all(&slots, &t.actions)).collect();
            if branches.iter().any(|b| *b != branches[0]) {
                return Err(Error::Unsupported(
                    "parallel recalls with different memory instructions".into(),
                ));
            }
            let (actions, next) = branches.into_iter().next().expect("at least one recall");
            if ts.len() == 1 {
                let t = &ts[0];
                let b = self.recalled(t);
                if slots[b].buf.is_empty() || t.to == m.trap() {
                    self.out.set_final(id, accepting);
                    return self.edge(id, Label::Eps, Node::Main(t.to, next), actions);
                }
            } else if recall_violation(ts, &slots) {
                return Err(Error::NotLDeterministic(self.ell));
            }
            accepting |= m.trap_accepting();
            self.out.set_final(id, accepting);
            let active: Vec<usize> = (0..ts.len()).collect();
            return self.expand_match(id, q, next, 0, &active, actions);
        }
        self.out.set_final(id, accepting);
        for t in ts {
            let (actions, mut next) = apply_all(&slots, &t.actions);
            if let Label::Char(c) = t.label {
                absorb(&mut next, c, self.ell);
            }
            self.edge(id, t.label, Node::Main(t.to, next), actions)?;
        }
        Ok(())
    }

    /// Terminal transitions that continue reading the candidate buffers.
    /// `first` is composed in front of the instructions of every transition.
    fn expand_match(
        &mut self,
        id: StateId,
        q: StateId,
        slots: Slots,
        pos: usize,
        active: &[usize],
        first: Actions,
    ) -> Result<()> {
        let m = self.m;
        let ts = m.transitions(q);
        let bufs: Vec<Vec<char>> = ts
            .iter()
            .map(|t| match t.label {
                Label::Recall(b) => slots[b].buf.clone(),
                _ => Vec::new(),
            })
            .collect();
        let buf = |j: usize| &bufs[j];
        for &c in m.alphabet().chars() {
            let left: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&j| buf(j)[pos] == c)
                .collect();
            if left.is_empty() {
                if m.trap_accepting() {
                    self.out
                        .add_transition(id, Label::Char(c), self.out.trap(), first.clone())?;
                }
                continue;
            }
            let mut next = slots.clone();
            let actions = first.then(&open_pending(&mut next));
            absorb(&mut next, c, self.ell);
            let target = if let [j] = left[..] {
                let len = buf(j).len();
                if pos + 1 < len {
                    Node::Match {
                        q,
                        slots: next,
                        pos: pos + 1,
                        active: left,
                    }
                } else if len == self.ell {
                    Node::Real {
                        q,
                        slots: next,
                        branch: j,
                    }
                } else {
                    Node::Main(ts[j].to, next)
                }
            } else {
                if left.iter().any(|&j| buf(j).len() == pos + 1) {
                    return Err(Error::NotLDeterministic(self.ell));
                }
                Node::Match {
                    q,
                    slots: next,
                    pos: pos + 1,
                    active: left,
                }
            };
            self.edge(id, Label::Char(c), target, actions)?;
        }
        Ok(())
    }
}
