use std::collections::HashMap;

use super::{Actions, Instr, Label, StateId, Tmfa};
use crate::error::{Limits, Result};

/// Status of one memory as tracked in normalized states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Flags {
    pub open: bool,
    pub empty: bool,
}

impl Flags {
    pub const INITIAL: Flags = Flags {
        open: false,
        empty: true,
    };

    /// Flags after `instr`, before any consumption.
    pub fn after(self, instr: Instr) -> Flags {
        match instr {
            Instr::Keep => self,
            Instr::Open => Flags {
                open: true,
                empty: true,
            },
            Instr::Close => Flags {
                open: false,
                ..self
            },
            Instr::Reset => Flags::INITIAL,
        }
    }
}

/// Flags after a transition; `consumes` tells whether a non-empty factor
/// was read.
pub(crate) fn flags_after(flags: &[Flags], actions: &Actions, consumes: bool) -> Vec<Flags> {
    flags
        .iter()
        .zip(actions.as_slice())
        .map(|(&f, &s)| {
            let f = f.after(s);
            if consumes && f.open {
                Flags { empty: false, ..f }
            } else {
                f
            }
        })
        .collect()
}

/// Equivalent automaton in normal form.
///
/// States track whether each memory is open and whether it is empty, so
/// recalls of empty memories become ε-transitions. Every non-`d`
/// instruction rides its own ε-transition, opening an open memory is
/// preceded by closing it, a reset becomes a close–open–close sequence and
/// closing a closed memory is dropped. Consuming transitions carry only `d`
/// and recalls carry only the `c` on the recalled memory.
pub fn normalize(m: &Tmfa) -> Result<Tmfa> {
    normalize_with(m, &Limits::default())
}

pub fn normalize_with(m: &Tmfa, limits: &Limits) -> Result<Tmfa> {
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
                Label::Recall(b) => (Label::Recall(b), true),
                Label::Char(c) => (Label::Char(c), true),
                Label::Eps => (Label::Eps, false),
            };
            let next = flags_after(&flags, &t.actions, consumes);
            let target = intern(&mut out, &mut work, (t.to, next))?;
            let mut steps = Vec::new();
            for (i, (&f, &s)) in flags.iter().zip(t.actions.as_slice()).enumerate() {
                if matches!(label, Label::Recall(b) if b == i) {
                    if f.open {
                        steps.push(Actions::single(k, i, Instr::Close));
                    }
                    continue;
                }
                let seq: &[Instr] = match (s, f.open) {
                    (Instr::Keep, _) | (Instr::Close, false) => &[],
                    (Instr::Open, false) => &[Instr::Open],
                    (Instr::Open, true) => &[Instr::Close, Instr::Open],
                    (Instr::Close, true) => &[Instr::Close],
                    (Instr::Reset, false) => &[Instr::Open, Instr::Close],
                    (Instr::Reset, true) => &[Instr::Close, Instr::Open, Instr::Close],
                };
                steps.extend(seq.iter().map(|&x| Actions::single(k, i, x)));
            }
            let last = match label {
                Label::Recall(b) => Actions::single(k, b, Instr::Close),
                _ => Actions::keep(k),
            };
            if label == Label::Eps && !steps.is_empty() {
                let final_step = steps.pop().expect("non-empty");
                chain(&mut out, id, &steps, Label::Eps, final_step, target)?;
            } else {
                chain(&mut out, id, &steps, label, last, target)?;
            }
        }
    }
    Ok(out)
}

/// Adds `from -ε-> … -ε-> · -label-> to` through fresh states.
fn chain(
    out: &mut Tmfa,
    from: StateId,
    steps: &[Actions],
    label: Label,
    last: Actions,
    to: StateId,
) -> Result<()> {
    let mut cur = from;
    for s in steps {
        let next = out.add_state();
        out.add_transition(cur, Label::Eps, next, s.clone())?;
        cur = next;
    }
    out.add_transition(cur, label, to, last)
}

/// Whether `m` is in normal form, given that state flags are unknown: checks
/// only the shape of the transitions.
pub fn is_normal_shape(m: &Tmfa) -> bool {
    m.all_transitions().all(|(_, t)| {
        let non_keep: Vec<_> = t
            .actions
            .as_slice()
            .iter()
            .filter(|&&s| s != Instr::Keep)
            .collect();
        let no_reset = non_keep.iter().all(|&&s| s != Instr::Reset);
        no_reset
            && match t.label {
                Label::Char(_) => non_keep.is_empty(),
                Label::Eps => non_keep.len() <= 1,
                Label::Recall(_) => non_keep.len() == 1,
            }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Alphabet};
    use crate::tmfa::{compile_naive, language_by_membership};

    #[test]
    fn consuming_transition_is_split() {
        let mut m = Tmfa::new(Alphabet::new("a".chars()), 2, 3);
        m.add_transition(
            0,
            Label::Char('a'),
            1,
            Actions::new(vec![Instr::Open, Instr::Keep]),
        )
        .unwrap();
        m.set_final(1, true);
        let n = normalize(&m).unwrap();
        assert!(is_normal_shape(&n));
        let (q, t) = n.all_transitions().next().unwrap();
        assert_eq!(q, n.initial());
        assert_eq!(t.label, Label::Eps);
        assert_eq!(t.actions, Actions::new(vec![Instr::Open, Instr::Keep]));
        let next = &n.transitions(t.to)[0];
        assert_eq!(next.label, Label::Char('a'));
        assert!(next.actions.is_identity());
        assert_eq!(
            language_by_membership(&n, 3).unwrap(),
            language_by_membership(&m, 3).unwrap()
        );
    }

    #[test]
    fn reset_becomes_close_open_close() {
        let mut m = Tmfa::new(Alphabet::new("a".chars()), 1, 4);
        m.add_transition(0, Label::Eps, 1, Actions::single(1, 0, Instr::Open))
            .unwrap();
        m.add_transition(1, Label::Char('a'), 2, Actions::single(1, 0, Instr::Reset))
            .unwrap();
        m.set_final(2, true);
        let n = normalize(&m).unwrap();
        let mut instrs = Vec::new();
        let mut q = n.initial();
        while let Some(t) = n.transitions(q).first() {
            instrs.push((t.label, t.actions.get(0)));
            q = t.to;
        }
        use Instr::*;
        assert_eq!(
            instrs,
            [
                (Label::Eps, Open),
                (Label::Eps, Close),
                (Label::Eps, Open),
                (Label::Eps, Close),
                (Label::Char('a'), Keep),
            ]
        );
    }

    #[test]
    fn empty_recall_becomes_eps() {
        let m = compile_naive(&parse("{x:a*}&x b").unwrap(), &Alphabet::default());
        let n = normalize(&m).unwrap();
        assert!(is_normal_shape(&n));
        assert!(n
            .all_transitions()
            .any(|(_, t)| t.label == Label::Recall(0)));
        assert_eq!(
            language_by_membership(&n, 6).unwrap(),
            language_by_membership(&m, 6).unwrap()
        );
    }
}
