use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{Instr, Label, StateId, Tmfa};
use crate::error::{Limits, Result};

/// Memory content as a span of the input. An open memory's span ends at the
/// current position, so only its start is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Memory {
    pub start: usize,
    pub end: usize,
    pub open: bool,
}

impl Memory {
    pub const EMPTY: Memory = Memory {
        start: 0,
        end: 0,
        open: false,
    };

    /// Content span given the current input position.
    pub fn span(&self, pos: usize) -> (usize, usize) {
        if self.open {
            (self.start, pos)
        } else {
            (self.start, self.end)
        }
    }

    pub fn is_empty_at(&self, pos: usize) -> bool {
        let (s, e) = self.span(pos);
        s == e
    }

    fn closed(start: usize, end: usize) -> Memory {
        if start == end {
            Memory::EMPTY
        } else {
            Memory {
                start,
                end,
                open: false,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub pos: usize,
    pub memories: Vec<Memory>,
}

impl Configuration {
    pub fn initial(m: &Tmfa) -> Configuration {
        Configuration {
            state: m.initial(),
            pos: 0,
            memories: vec![Memory::EMPTY; m.memories()],
        }
    }

    /// Content of memory `i` as a string.
    pub fn content(&self, i: usize, input: &[char]) -> String {
        let (s, e) = self.memories[i].span(self.pos);
        input[s..e].iter().collect()
    }

    pub fn is_accepting(&self, m: &Tmfa, input_len: usize) -> bool {
        if self.state == m.trap() {
            m.trap_accepting()
        } else {
            self.pos == input_len && m.is_final(self.state)
        }
    }
}

/// Applies `actions` and then the consumption of `consumed` symbols.
pub(crate) fn apply_actions(memories: &[Memory], actions: &[Instr], pos: usize) -> Vec<Memory> {
    memories
        .iter()
        .zip(actions)
        .map(|(&mem, &s)| match s {
            Instr::Keep => mem,
            Instr::Open => Memory {
                start: pos,
                end: pos,
                open: true,
            },
            Instr::Close => {
                let (a, b) = mem.span(pos);
                Memory::closed(a, b)
            }
            Instr::Reset => Memory::EMPTY,
        })
        .collect()
}

fn common_prefix(a: &[char], b: &[char]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// All successors of `c` on `input`.
///
/// A failed recall leads to the trap, past the longest common prefix of the
/// memory content and the remaining input, with the memories left unchanged.
pub fn step(m: &Tmfa, c: &Configuration, input: &[char]) -> Vec<Configuration> {
    let mut out = Vec::new();
    if c.state == m.trap() {
        out.push(c.clone());
        if c.pos < input.len() {
            out.push(Configuration {
                pos: c.pos + 1,
                ..c.clone()
            });
        }
        return out;
    }
    for t in m.transitions(c.state) {
        let consumed = match t.label {
            Label::Char(a) => {
                if input.get(c.pos) != Some(&a) {
                    continue;
                }
                1
            }
            Label::Eps => 0,
            Label::Recall(b) => {
                let (s, e) = c.memories[b].span(c.pos);
                let content = &input[s..e];
                let lcp = common_prefix(content, &input[c.pos..]);
                if lcp < content.len() {
                    out.push(Configuration {
                        state: m.trap(),
                        pos: c.pos + lcp,
                        memories: c.memories.clone(),
                    });
                    continue;
                }
                content.len()
            }
        };
        out.push(Configuration {
            state: t.to,
            pos: c.pos + consumed,
            memories: apply_actions(&c.memories, t.actions.as_slice(), c.pos),
        });
    }
    out
}

/// Exhaustive membership test with the default configuration cap.
///
/// Words with symbols outside the alphabet are rejected.
pub fn member_oracle(m: &Tmfa, w: &str) -> Result<bool> {
    member_oracle_with(m, w, &Limits::default())
}

pub fn member_oracle_with(m: &Tmfa, w: &str, limits: &Limits) -> Result<bool> {
    if !m.alphabet().accepts_word(w) {
        return Ok(false);
    }
    let input: Vec<char> = w.chars().collect();
    let start = Configuration::initial(m);
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(c) = queue.pop_front() {
        if c.is_accepting(m, input.len()) {
            return Ok(true);
        }
        if c.state == m.trap() {
            continue;
        }
        for next in step(m, &c, &input) {
            if seen.insert(next.clone()) {
                limits.check_configs(seen.len())?;
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// `L(m) ∩ Σ^{≤max_len}` by testing every word.
pub fn language_by_membership(m: &Tmfa, max_len: usize) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    for w in m.alphabet().words_up_to(max_len) {
        if member_oracle(m, &w)? {
            out.insert(w);
        }
    }
    Ok(out)
}

/// `L(m) ∩ Σ^{≤max_len}` by generating words along runs.
///
/// Runs that reach the trap are not followed, so for an accepting trap this
/// falls back to testing every word.
pub fn enumerate_accepted(m: &Tmfa, max_len: usize, limits: &Limits) -> Result<BTreeSet<String>> {
    if m.trap_accepting() {
        return language_by_membership(m, max_len);
    }
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct Node {
        state: StateId,
        word: Vec<char>,
        memories: Vec<Memory>,
    }
    let mut out = BTreeSet::new();
    let start = Node {
        state: m.initial(),
        word: Vec::new(),
        memories: vec![Memory::EMPTY; m.memories()],
    };
    let mut seen = HashSet::new();
    let mut stack = vec![start.clone()];
    seen.insert(start);
    while let Some(node) = stack.pop() {
        if node.state == m.trap() {
            continue;
        }
        let pos = node.word.len();
        if m.is_final(node.state) {
            out.insert(node.word.iter().collect::<String>());
        }
        for t in m.transitions(node.state) {
            let mut word = node.word.clone();
            match t.label {
                Label::Char(a) => word.push(a),
                Label::Eps => {}
                Label::Recall(b) => {
                    let (s, e) = node.memories[b].span(pos);
                    word.extend_from_within(s..e);
                }
            }
            if word.len() > max_len {
                continue;
            }
            let next = Node {
                state: t.to,
                memories: apply_actions(&node.memories, t.actions.as_slice(), pos),
                word,
            };
            if seen.insert(next.clone()) {
                limits.check_configs(seen.len())?;
                stack.push(next);
            }
        }
    }
    Ok(out)
}
