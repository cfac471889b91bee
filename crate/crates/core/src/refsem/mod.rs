//! Ref-word semantics: ref-regexes, dereferencing and bounded enumeration.

mod nfa;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Limits, Result};
use crate::syntax::{Alphabet, Regex};
use crate::tmfa::{compile_naive, enumerate_accepted};

pub use nfa::Nfa;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Terminal(char),
    VarRef(String),
    Open(String),
    Close(String),
}

/// Symbol of a ref-word, optionally marked with its occurrence number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefSymbol {
    pub kind: SymbolKind,
    pub mark: Option<u32>,
}

impl RefSymbol {
    pub fn terminal(c: char) -> RefSymbol {
        RefSymbol {
            kind: SymbolKind::Terminal(c),
            mark: None,
        }
    }

    pub fn var_ref(x: &str) -> RefSymbol {
        RefSymbol {
            kind: SymbolKind::VarRef(x.to_string()),
            mark: None,
        }
    }

    pub fn open(x: &str) -> RefSymbol {
        RefSymbol {
            kind: SymbolKind::Open(x.to_string()),
            mark: None,
        }
    }

    pub fn close(x: &str) -> RefSymbol {
        RefSymbol {
            kind: SymbolKind::Close(x.to_string()),
            mark: None,
        }
    }

    pub fn with_mark(mut self, mark: u32) -> RefSymbol {
        self.mark = Some(mark);
        self
    }

    pub fn unmarked(&self) -> RefSymbol {
        RefSymbol {
            kind: self.kind.clone(),
            mark: None,
        }
    }

    pub fn is_bracket(&self) -> bool {
        matches!(self.kind, SymbolKind::Open(_) | SymbolKind::Close(_))
    }
}

impl fmt::Display for RefSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SymbolKind::Terminal(c) => write!(f, "{c}")?,
            SymbolKind::VarRef(x) => write!(f, "&{x}")?,
            SymbolKind::Open(x) => write!(f, "[{x}")?,
            SymbolKind::Close(x) => write!(f, "]{x}")?,
        }
        if let Some(m) = self.mark {
            write!(f, "({m})")?;
        }
        Ok(())
    }
}

/// Sequence of ref symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefWord(pub Vec<RefSymbol>);

impl RefWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[RefSymbol] {
        &self.0
    }
}

impl fmt::Display for RefWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromIterator<RefSymbol> for RefWord {
    fn from_iter<T: IntoIterator<Item = RefSymbol>>(iter: T) -> Self {
        RefWord(iter.into_iter().collect())
    }
}

/// Proper regular expression over ref symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RefRegex {
    Empty,
    Epsilon,
    Sym(RefSymbol),
    Concat(Box<RefRegex>, Box<RefRegex>),
    Alt(Box<RefRegex>, Box<RefRegex>),
    Plus(Box<RefRegex>),
}

impl RefRegex {
    fn concat(a: RefRegex, b: RefRegex) -> RefRegex {
        RefRegex::Concat(Box::new(a), Box::new(b))
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            RefRegex::Empty | RefRegex::Epsilon => 0,
            RefRegex::Sym(_) => 1,
            RefRegex::Concat(a, b) | RefRegex::Alt(a, b) => a.size() + b.size(),
            RefRegex::Plus(a) => a.size(),
        }
    }

    /// Symbols in left-to-right order.
    pub fn symbols(&self) -> Vec<&RefSymbol> {
        fn go<'a>(r: &'a RefRegex, out: &mut Vec<&'a RefSymbol>) {
            match r {
                RefRegex::Empty | RefRegex::Epsilon => {}
                RefRegex::Sym(s) => out.push(s),
                RefRegex::Concat(a, b) | RefRegex::Alt(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                RefRegex::Plus(a) => go(a, out),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        match self {
            RefRegex::Empty => f.write_str("#"),
            RefRegex::Epsilon => f.write_str("()"),
            RefRegex::Sym(s) => write!(f, "{s}"),
            RefRegex::Plus(a) => {
                let star = matches!(&**a, RefRegex::Sym(_));
                if star {
                    a.write(f, 2)?;
                } else {
                    f.write_str("(")?;
                    a.write(f, 0)?;
                    f.write_str(")")?;
                }
                f.write_str("+")
            }
            RefRegex::Alt(a, b)
                if **a == RefRegex::Epsilon && matches!(&**b, RefRegex::Plus(_)) =>
            {
                let RefRegex::Plus(c) = &**b else {
                    unreachable!()
                };
                if matches!(&**c, RefRegex::Sym(_)) {
                    c.write(f, 2)?;
                } else {
                    f.write_str("(")?;
                    c.write(f, 0)?;
                    f.write_str(")")?;
                }
                f.write_str("*")
            }
            RefRegex::Concat(a, b) => {
                if ctx > 1 {
                    f.write_str("(")?;
                }
                a.write(f, 1)?;
                f.write_str(" ")?;
                b.write(f, 1)?;
                if ctx > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            RefRegex::Alt(a, b) => {
                if ctx > 0 {
                    f.write_str("(")?;
                }
                a.write(f, 0)?;
                f.write_str(" | ")?;
                b.write(f, 0)?;
                if ctx > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RefRegex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// The ref-regex: each `{x:β}` becomes `[x β ]x` and each `&x` becomes `x`.
/// With `marked`, occurrences are numbered from 1 left to right.
pub fn to_ref_regex(r: &Regex, marked: bool) -> RefRegex {
    fn go(r: &Regex, marked: bool, next: &mut u32) -> RefRegex {
        let mut sym = |s: RefSymbol| {
            if marked {
                *next += 1;
                RefRegex::Sym(s.with_mark(*next))
            } else {
                RefRegex::Sym(s)
            }
        };
        match r {
            Regex::Empty => RefRegex::Empty,
            Regex::Epsilon => RefRegex::Epsilon,
            Regex::Char(c) => sym(RefSymbol::terminal(*c)),
            Regex::Ref(x) => sym(RefSymbol::var_ref(x)),
            Regex::Concat(a, b) => {
                let a = go(a, marked, next);
                RefRegex::concat(a, go(b, marked, next))
            }
            Regex::Alt(a, b) => {
                let a = go(a, marked, next);
                RefRegex::Alt(Box::new(a), Box::new(go(b, marked, next)))
            }
            Regex::Plus(a) => RefRegex::Plus(Box::new(go(a, marked, next))),
            Regex::Bind(x, a) => {
                let open = sym(RefSymbol::open(x));
                let body = go(a, marked, next);
                let close = if marked {
                    *next += 1;
                    RefRegex::Sym(RefSymbol::close(x).with_mark(*next))
                } else {
                    RefRegex::Sym(RefSymbol::close(x))
                };
                RefRegex::concat(open, RefRegex::concat(body, close))
            }
        }
    }
    let mut next = 0;
    go(r, marked, &mut next)
}

/// The terminal word denoted by a ref-word.
///
/// A reference resolves to the content of the nearest completed `[x … ]x`
/// to its left, or to ε if there is none.
pub fn dereference(r: &RefWord) -> String {
    let mut out = String::new();
    let mut values: HashMap<&str, String> = HashMap::new();
    let mut open: HashMap<&str, usize> = HashMap::new();
    for s in &r.0 {
        match &s.kind {
            SymbolKind::Terminal(c) => out.push(*c),
            SymbolKind::VarRef(x) => {
                if let Some(v) = values.get(x.as_str()) {
                    out.push_str(v);
                }
            }
            SymbolKind::Open(x) => {
                open.insert(x, out.len());
            }
            SymbolKind::Close(x) => {
                if let Some(start) = open.remove(x.as_str()) {
                    values.insert(x, out[start..].to_string());
                }
            }
        }
    }
    out
}

/// `{ r ∈ R(α) : |r| ≤ max_len }`, unmarked.
pub fn enumerate_ref_words(r: &Regex, max_len: usize) -> Result<BTreeSet<RefWord>> {
    enumerate_ref_words_with(&to_ref_regex(r, false), max_len, &Limits::default())
}

/// Bounded enumeration of the words of a ref-regex, marks included.
pub fn enumerate_ref_words_with(
    rr: &RefRegex,
    max_len: usize,
    limits: &Limits,
) -> Result<BTreeSet<RefWord>> {
    let nfa = Nfa::thompson(rr);
    let mut out = BTreeSet::new();
    let mut seen: HashSet<(usize, Vec<RefSymbol>)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((nfa.start, Vec::new()));
    queue.push_back((nfa.start, Vec::new()));
    while let Some((q, word)) = queue.pop_front() {
        if q == nfa.accept {
            out.insert(RefWord(word.clone()));
            limits.check_configs(out.len())?;
        }
        for (label, to) in &nfa.edges[q] {
            let mut next = word.clone();
            if let Some(s) = label {
                if word.len() == max_len {
                    continue;
                }
                next.push(s.clone());
            }
            if seen.insert((*to, next.clone())) {
                limits.check_configs(seen.len())?;
                queue.push_back((*to, next));
            }
        }
    }
    Ok(out)
}

/// `L(α) ∩ Σ^{≤max_len}` over the alphabet of `r` extended by `alphabet`.
pub fn enumerate_language(
    r: &Regex,
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<BTreeSet<String>> {
    enumerate_accepted(&compile_naive(r, alphabet), max_len, &Limits::default())
}
