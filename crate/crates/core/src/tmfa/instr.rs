use std::fmt;

use serde::{Deserialize, Serialize};

/// Memory instruction: open, close, reset or keep (`o`, `c`, `r`, `d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Instr {
    #[serde(rename = "o")]
    Open,
    #[serde(rename = "c")]
    Close,
    #[serde(rename = "r")]
    Reset,
    #[serde(rename = "d")]
    Keep,
}

impl Instr {
    pub const ALL: [Instr; 4] = [Instr::Open, Instr::Close, Instr::Reset, Instr::Keep];

    /// The single instruction equivalent to applying `self` and then `next`.
    ///
    /// Opening and then closing leaves the memory empty and closed, which is
    /// a reset; plain last-writer-wins would wrongly give a close.
    pub fn then(self, next: Instr) -> Instr {
        match (self, next) {
            (x, Instr::Keep) => x,
            (Instr::Open | Instr::Reset, Instr::Close) => Instr::Reset,
            (_, y) => y,
        }
    }

    /// Applies the instruction to a memory `(content, open)` without consuming input.
    pub fn apply(self, content: &str, open: bool) -> (&str, bool) {
        match self {
            Instr::Open => ("", true),
            Instr::Close => (content, false),
            Instr::Reset => ("", false),
            Instr::Keep => (content, open),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Instr::Open => 'o',
            Instr::Close => 'c',
            Instr::Reset => 'r',
            Instr::Keep => 'd',
        }
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One instruction per memory.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Actions(Vec<Instr>);

impl Actions {
    pub fn keep(k: usize) -> Actions {
        Actions(vec![Instr::Keep; k])
    }

    pub fn new(instrs: Vec<Instr>) -> Actions {
        Actions(instrs)
    }

    /// All `d` except `instr` on memory `i`.
    pub fn single(k: usize, i: usize, instr: Instr) -> Actions {
        let mut a = Actions::keep(k);
        a.0[i] = instr;
        a
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Instr {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, instr: Instr) {
        self.0[i] = instr;
    }

    pub fn as_slice(&self) -> &[Instr] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&s| s == Instr::Keep)
    }

    /// Componentwise composition: `self` first, then `next`.
    pub fn then(&self, next: &Actions) -> Actions {
        debug_assert_eq!(self.len(), next.len());
        Actions(
            self.0
                .iter()
                .zip(&next.0)
                .map(|(&a, &b)| a.then(b))
                .collect(),
        )
    }
}

impl FromIterator<Instr> for Actions {
    fn from_iter<T: IntoIterator<Item = Instr>>(iter: T) -> Self {
        Actions(iter.into_iter().collect())
    }
}

impl fmt::Display for Actions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}
