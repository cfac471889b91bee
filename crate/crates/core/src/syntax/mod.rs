//! Regex syntax: the AST, its parser and printer, and structural predicates.

mod alphabet;
mod parse;
mod print;

use std::collections::BTreeSet;
use std::fmt;

pub use alphabet::Alphabet;
pub use parse::{parse, ParseError, ParseErrorKind};
pub use print::print;

/// Characters that must be escaped to be used as terminals.
pub const RESERVED: &[char] = &['(', ')', '{', '}', '|', '+', '*', '&', '\\', ':', '#'];

/// Regex with variable bindings and references.
///
/// `*` has no node of its own: `β*` is `Alt(Epsilon, Plus(β))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    /// The empty language. Only valid as the whole regex.
    Empty,
    Epsilon,
    Char(char),
    Ref(String),
    Concat(Box<Regex>, Box<Regex>),
    Alt(Box<Regex>, Box<Regex>),
    Plus(Box<Regex>),
    Bind(String, Box<Regex>),
}

impl Regex {
    pub fn chr(c: char) -> Regex {
        Regex::Char(c)
    }

    pub fn reference(name: impl Into<String>) -> Regex {
        Regex::Ref(name.into())
    }

    pub fn concat(a: Regex, b: Regex) -> Regex {
        Regex::Concat(Box::new(a), Box::new(b))
    }

    pub fn alt(a: Regex, b: Regex) -> Regex {
        Regex::Alt(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Regex) -> Regex {
        Regex::Plus(Box::new(a))
    }

    pub fn star(a: Regex) -> Regex {
        Regex::alt(Regex::Epsilon, Regex::plus(a))
    }

    pub fn bind(name: impl Into<String>, a: Regex) -> Regex {
        Regex::Bind(name.into(), Box::new(a))
    }

    /// Right-nested concatenation; `Epsilon` for an empty sequence.
    pub fn concat_all(items: impl IntoIterator<Item = Regex>) -> Regex {
        let items: Vec<Regex> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .reduce(|acc, r| Regex::concat(r, acc))
            .unwrap_or(Regex::Epsilon)
    }

    /// Right-nested disjunction; `None` for an empty sequence.
    pub fn alt_all(items: impl IntoIterator<Item = Regex>) -> Option<Regex> {
        let items: Vec<Regex> = items.into_iter().collect();
        items.into_iter().rev().reduce(|acc, r| Regex::alt(r, acc))
    }

    /// The word `w` as a concatenation of terminals.
    pub fn word(w: &str) -> Regex {
        Regex::concat_all(w.chars().map(Regex::Char))
    }

    /// Returns the child of a desugared star, if this node is one.
    pub fn as_star(&self) -> Option<&Regex> {
        match self {
            Regex::Alt(a, b) if **a == Regex::Epsilon => match &**b {
                Regex::Plus(c) => Some(c),
                _ => None,
            },
            _ => None,
        }
    }

    /// All variable names occurring in bindings or references.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |r| match r {
            Regex::Ref(x) | Regex::Bind(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// Variables in order of their first binding, followed by never-bound
    /// variables in order of their first reference.
    pub fn variable_order(&self) -> Vec<String> {
        let mut bound = Vec::new();
        let mut referenced = Vec::new();
        self.walk(&mut |r| match r {
            Regex::Bind(x, _) if !bound.contains(x) => bound.push(x.clone()),
            Regex::Ref(x) if !referenced.contains(x) => referenced.push(x.clone()),
            _ => {}
        });
        for x in referenced {
            if !bound.contains(&x) {
                bound.push(x);
            }
        }
        bound
    }

    /// Terminal symbols occurring in the regex.
    pub fn terminals(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.walk(&mut |r| {
            if let Regex::Char(c) = r {
                out.insert(*c);
            }
        });
        out
    }

    /// Number of terminal and reference occurrences.
    pub fn occurrences(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |r| {
            if matches!(r, Regex::Char(_) | Regex::Ref(_)) {
                n += 1;
            }
        });
        n
    }

    /// True iff no `+` contains a reference or a binding.
    pub fn is_vstar_free(&self) -> bool {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Char(_) | Regex::Ref(_) => true,
            Regex::Concat(a, b) | Regex::Alt(a, b) => a.is_vstar_free() && b.is_vstar_free(),
            Regex::Bind(_, a) => a.is_vstar_free(),
            Regex::Plus(a) => a.variables().is_empty(),
        }
    }

    /// True iff the regex has no variables.
    pub fn is_proper(&self) -> bool {
        self.variables().is_empty()
    }

    /// Checks the side conditions that the parser enforces.
    pub fn validate(&self) -> Result<(), ParseErrorKind> {
        fn go(r: &Regex, root: bool) -> Result<(), ParseErrorKind> {
            match r {
                Regex::Empty if !root => Err(ParseErrorKind::EmptyNotAtRoot),
                Regex::Empty | Regex::Epsilon | Regex::Char(_) => Ok(()),
                Regex::Ref(x) => check_name(x),
                Regex::Concat(a, b) | Regex::Alt(a, b) => {
                    go(a, false)?;
                    go(b, false)
                }
                Regex::Plus(a) => go(a, false),
                Regex::Bind(x, a) => {
                    check_name(x)?;
                    if a.variables().contains(x) {
                        return Err(ParseErrorKind::Rebinding(x.clone()));
                    }
                    go(a, false)
                }
            }
        }
        go(self, true)
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Regex)) {
        f(self);
        match self {
            Regex::Concat(a, b) | Regex::Alt(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Regex::Plus(a) | Regex::Bind(_, a) => a.walk(f),
            _ => {}
        }
    }
}

/// True iff `s` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_name(x: &str) -> Result<(), ParseErrorKind> {
    if is_valid_name(x) {
        Ok(())
    } else {
        Err(ParseErrorKind::InvalidName(x.to_string()))
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl std::str::FromStr for Regex {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
