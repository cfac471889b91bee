use std::collections::HashSet;

use super::{remove_epsilon, Dtmfa};
use crate::syntax::Alphabet;
use crate::tmfa::{Actions, Instr, Label, Memory, StateId, Tmfa};

/// Applies `actions` in place at input position `pos`.
fn apply(mems: &mut [Memory], actions: &Actions, pos: usize) {
    for (mem, &s) in mems.iter_mut().zip(actions.as_slice()) {
        match s {
            Instr::Keep => {}
            Instr::Open => {
                *mem = Memory {
                    start: pos,
                    end: pos,
                    open: true,
                }
            }
            Instr::Close => {
                let (a, b) = mem.span(pos);
                *mem = if a == b {
                    Memory::EMPTY
                } else {
                    Memory {
                        start: a,
                        end: b,
                        open: false,
                    }
                };
            }
            Instr::Reset => *mem = Memory::EMPTY,
        }
    }
}

/// Length of the recall of `mem` at `pos`, or `None` if it fails.
fn recall(mem: &Memory, input: &[char], pos: usize) -> Option<usize> {
    let (s, e) = mem.span(pos);
    let len = e - s;
    (input.len() - pos >= len && input[s..e] == input[pos..pos + len]).then_some(len)
}

/// Membership by following the unique run of a deterministic automaton.
///
/// Runs of non-consuming steps are cut off once they revisit a state with
/// the same open and empty memories.
pub fn match_direct(m: &Dtmfa, w: &str) -> bool {
    if !m.alphabet().accepts_word(w) {
        return false;
    }
    let input: Vec<char> = w.chars().collect();
    let n = input.len();
    let mut mems = vec![Memory::EMPTY; m.memories()];
    let mut q = m.initial();
    let mut pos = 0;
    let mut stretch = 0;
    let mut seen = HashSet::new();
    loop {
        if q == m.trap() {
            return m.trap_accepting();
        }
        if pos == n && m.is_final(q) {
            return true;
        }
        let ts = m.transitions(q);
        let consumed = match ts {
            [] => return false,
            [t] if t.label == Label::Eps => {
                apply(&mut mems, &t.actions, pos);
                q = t.to;
                false
            }
            [t] if matches!(t.label, Label::Recall(_)) => {
                let Label::Recall(b) = t.label else {
                    unreachable!()
                };
                let Some(len) = recall(&mems[b], &input, pos) else {
                    return m.trap_accepting();
                };
                apply(&mut mems, &t.actions, pos);
                pos += len;
                q = t.to;
                len > 0
            }
            _ => {
                let Some(&c) = input.get(pos) else {
                    return false;
                };
                let Some(t) = ts.iter().find(|t| t.label == Label::Char(c)) else {
                    return false;
                };
                apply(&mut mems, &t.actions, pos);
                pos += 1;
                q = t.to;
                true
            }
        };
        if consumed {
            stretch = 0;
            seen.clear();
            continue;
        }
        stretch += 1;
        if stretch > m.num_states() {
            let flags: Vec<(bool, bool)> =
                mems.iter().map(|x| (x.open, x.is_empty_at(pos))).collect();
            if !seen.insert((q, flags)) {
                return false;
            }
        }
    }
}

/// One step of a recall list: a recall that is attempted when its memory is
/// not empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecallEntry {
    pub state: StateId,
    pub memory: usize,
    /// Instructions of the skipped empty recalls before this one.
    pub before: Actions,
    /// Instructions of the recall itself.
    pub actions: Actions,
    pub to: StateId,
    /// Some state reached since the previous entry, this one included,
    /// accepts.
    pub acc: bool,
}

/// How a recall list ends when every listed memory is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum End {
    /// Continue in `to` after the composed instructions.
    Fall {
        to: StateId,
        actions: Actions,
        acc: bool,
    },
    /// The empty recalls cycle; accept iff the input is exhausted and
    /// `acc` holds.
    Loop { acc: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateStep {
    /// Terminal transitions indexed by alphabet position.
    Chars(Vec<Option<(StateId, Actions)>>),
    Recall {
        entries: Vec<RecallEntry>,
        end: End,
    },
}

/// A deterministic automaton prepared for linear-time matching: ε-chains
/// are contracted and every recall state knows its chain of recalls up to
/// the first one that reads input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchTable {
    alphabet: Alphabet,
    memories: usize,
    initial: StateId,
    trap: StateId,
    trap_accepting: bool,
    finals: Vec<bool>,
    steps: Vec<StateStep>,
}

impl MatchTable {
    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn trap(&self) -> StateId {
        self.trap
    }

    pub fn num_states(&self) -> usize {
        self.steps.len()
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn step(&self, q: StateId) -> &StateStep {
        &self.steps[q]
    }
}

/// Builds the match table in time quadratic in the number of states.
pub fn preprocess(m: &Dtmfa) -> MatchTable {
    let m = remove_epsilon(m);
    let m = m.as_tmfa();
    let finals: Vec<bool> = (0..m.num_states()).map(|q| m.is_final(q)).collect();
    let steps = (0..m.num_states())
        .map(|q| match m.transitions(q) {
            [t] if matches!(t.label, Label::Recall(_)) => recall_list(m, q),
            ts => {
                let mut table = vec![None; m.alphabet().len()];
                for t in ts {
                    if let Label::Char(c) = t.label {
                        let i = m.alphabet().index(c).expect("labels are in the alphabet");
                        table[i] = Some((t.to, t.actions.clone()));
                    }
                }
                StateStep::Chars(table)
            }
        })
        .collect();
    MatchTable {
        alphabet: m.alphabet().clone(),
        memories: m.memories(),
        initial: m.initial(),
        trap: m.trap(),
        trap_accepting: m.trap_accepting(),
        finals,
        steps,
    }
}

/// The recall list of `p`. A memory recalled earlier in the list was empty
/// then and still is, as is one the skipped steps opened or reset, so such
/// recalls are skipped without a runtime test.
fn recall_list(m: &Tmfa, p: StateId) -> StateStep {
    let mut before = Actions::keep(m.memories());
    let mut seen_memories = HashSet::new();
    let mut visited = HashSet::new();
    let mut entries = Vec::new();
    let mut acc = false;
    let mut cur = p;
    let end = loop {
        let t = match m.transitions(cur) {
            [t] if cur != m.trap() && matches!(t.label, Label::Recall(_)) => t,
            _ => {
                break End::Fall {
                    to: cur,
                    actions: before,
                    acc,
                }
            }
        };
        if !visited.insert(cur) {
            break End::Loop { acc };
        }
        acc |= m.is_final(cur);
        let Label::Recall(b) = t.label else {
            unreachable!()
        };
        let known_empty =
            seen_memories.contains(&b) || matches!(before.get(b), Instr::Open | Instr::Reset);
        if !known_empty {
            seen_memories.insert(b);
            entries.push(RecallEntry {
                state: cur,
                memory: b,
                before: before.clone(),
                actions: t.actions.clone(),
                to: t.to,
                acc,
            });
            acc = false;
        }
        before = before.then(&t.actions);
        cur = t.to;
    };
    StateStep::Recall { entries, end }
}

/// Membership in time linear in `|w|` for a fixed table.
pub fn match_fast(t: &MatchTable, w: &str) -> bool {
    if !t.alphabet.accepts_word(w) {
        return false;
    }
    let input: Vec<char> = w.chars().collect();
    let n = input.len();
    let mut mems = vec![Memory::EMPTY; t.memories];
    let mut q = t.initial;
    let mut pos = 0;
    'run: loop {
        if q == t.trap {
            return t.trap_accepting;
        }
        match &t.steps[q] {
            StateStep::Chars(table) => {
                let Some(&c) = input.get(pos) else {
                    return t.finals[q];
                };
                let i = t.alphabet.index(c).expect("checked against the alphabet");
                let Some((to, actions)) = &table[i] else {
                    return false;
                };
                if !actions.is_identity() {
                    apply(&mut mems, actions, pos);
                }
                pos += 1;
                q = *to;
            }
            StateStep::Recall { entries, end } => {
                for e in entries {
                    if pos == n && e.acc {
                        return true;
                    }
                    let empty = match e.before.get(e.memory) {
                        Instr::Open | Instr::Reset => true,
                        _ => mems[e.memory].is_empty_at(pos),
                    };
                    if empty {
                        continue;
                    }
                    apply(&mut mems, &e.before, pos);
                    let Some(len) = recall(&mems[e.memory], &input, pos) else {
                        return t.trap_accepting;
                    };
                    apply(&mut mems, &e.actions, pos);
                    pos += len;
                    q = e.to;
                    continue 'run;
                }
                match end {
                    End::Fall { to, actions, acc } => {
                        if pos == n && *acc {
                            return true;
                        }
                        apply(&mut mems, actions, pos);
                        q = *to;
                    }
                    End::Loop { acc } => return pos == n && *acc,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glushkov::compile_deterministic;
    use crate::syntax::parse;
    use crate::tmfa::member_oracle;

    fn compiled(r: &str) -> Dtmfa {
        compile_deterministic(&parse(r).unwrap(), &Alphabet::default()).unwrap()
    }

    #[test]
    fn copy_language() {
        let m = compiled("{x:(a|b)*}c&x");
        let t = preprocess(&m);
        for (w, expected) in [
            ("abcab", true),
            ("c", true),
            ("abcba", false),
            ("abca", false),
            ("", false),
        ] {
            assert_eq!(match_direct(&m, w), expected, "{w}");
            assert_eq!(match_fast(&t, w), expected, "{w}");
        }
    }

    #[test]
    fn separator_example() {
        let m = compiled("{x:(a|b)+}d&x");
        assert!(match_direct(&m, "abdab"));
        assert!(!match_direct(&m, "abda"));
    }

    #[test]
    fn recall_chain_with_loop() {
        let k = 2;
        let mut m = Tmfa::new(Alphabet::new("a".chars()), k, 4);
        let close = |i| Actions::single(k, i, Instr::Close);
        m.add_transition(0, Label::Recall(0), 1, close(0)).unwrap();
        m.add_transition(1, Label::Recall(1), 2, close(1)).unwrap();
        m.add_transition(2, Label::Recall(0), 0, close(0)).unwrap();
        m.set_final(1, true);
        let m = Dtmfa::new(m).unwrap();
        let t = preprocess(&m);
        let StateStep::Recall { entries, end } = t.step(0) else {
            panic!()
        };
        let listed: Vec<_> = entries.iter().map(|e| (e.state, e.memory)).collect();
        assert_eq!(listed, [(0, 0), (1, 1)]);
        assert!(entries[1].acc);
        assert_eq!(*end, End::Loop { acc: false });
        assert!(match_fast(&t, ""));
        assert!(!match_fast(&t, "a"));
        assert!(match_direct(&m, ""));
    }

    #[test]
    fn recall_falls_through() {
        let m = compiled("{x:a*}b&x c");
        let t = preprocess(&m);
        for w in m.alphabet().words_up_to(5) {
            let expected = member_oracle(&m, &w).unwrap();
            assert_eq!(match_direct(&m, &w), expected, "{w}");
            assert_eq!(match_fast(&t, &w), expected, "{w}");
        }
    }

    #[test]
    fn outside_alphabet_rejects() {
        let m = compiled("a*");
        assert!(!match_direct(&m, "b"));
        assert!(!match_fast(&preprocess(&m), "b"));
    }
}
