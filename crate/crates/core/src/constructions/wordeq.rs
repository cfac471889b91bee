use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::syntax::Regex;

/// Separator between the variable values in the reduction's words.
pub const SEPARATOR: char = '%';

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Item {
    Terminal(char),
    Var(String),
}

/// Word equation `lhs = rhs` over lowercase terminals and variables.
///
/// In the text form a variable is an uppercase letter followed by digits or
/// underscores, so `XY1` is the two variables `X` and `Y1`. Whitespace is
/// ignored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordEquation {
    pub lhs: Vec<Item>,
    pub rhs: Vec<Item>,
}

fn parse_side(s: &str) -> Result<Vec<Item>> {
    let mut items = Vec::new();
    let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(c) = chars.next() {
        if c.is_ascii_uppercase() {
            let mut name = c.to_string();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit() || **d == '_') {
                name.push(d);
                chars.next();
            }
            items.push(Item::Var(name));
        } else if c.is_ascii_lowercase() {
            items.push(Item::Terminal(c));
        } else {
            return Err(Error::InvalidEquation(format!("unexpected {c:?}")));
        }
    }
    if items.is_empty() {
        return Err(Error::InvalidEquation("empty side".into()));
    }
    Ok(items)
}

impl FromStr for WordEquation {
    type Err = Error;

    fn from_str(s: &str) -> Result<WordEquation> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidEquation("missing '='".into()))?;
        if rhs.contains('=') {
            return Err(Error::InvalidEquation("more than one '='".into()));
        }
        Ok(WordEquation {
            lhs: parse_side(lhs)?,
            rhs: parse_side(rhs)?,
        })
    }
}

impl fmt::Display for WordEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |items: &[Item]| -> String {
            items
                .iter()
                .map(|i| match i {
                    Item::Terminal(c) => c.to_string(),
                    Item::Var(x) => x.clone(),
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(f, "{} = {}", side(&self.lhs), side(&self.rhs))
    }
}

impl WordEquation {
    /// Variables in order of first occurrence, left side first.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.lhs
            .iter()
            .chain(&self.rhs)
            .filter_map(|i| match i {
                Item::Var(x) if seen.insert(x.clone()) => Some(x.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn terminals(&self) -> BTreeSet<char> {
        self.lhs
            .iter()
            .chain(&self.rhs)
            .filter_map(|i| match i {
                Item::Terminal(c) => Some(*c),
                Item::Var(_) => None,
            })
            .collect()
    }
}

/// Two deterministic vstar-free regexes over the equation's terminals and
/// `%` whose languages intersect iff the equation has a solution.
///
/// Both read `σ(X_1)%…σ(X_k)%`, binding each variable to an arbitrary word,
/// and then one side of the equation with variables replaced by references.
/// A common word is `σ(X_1)%…σ(X_k)%σ(lhs)` for a solution `σ`.
pub fn word_equation_to_drx(eq: &WordEquation) -> (Regex, Regex) {
    let sigma = Regex::alt_all(eq.terminals().into_iter().map(Regex::chr));
    let any = sigma.map_or(Regex::Epsilon, Regex::star);
    let prefix: Vec<Regex> = eq
        .variables()
        .into_iter()
        .flat_map(|x| [Regex::bind(x, any.clone()), Regex::chr(SEPARATOR)])
        .collect();
    let side = |items: &[Item]| {
        let body = items.iter().map(|i| match i {
            Item::Terminal(c) => Regex::chr(*c),
            Item::Var(x) => Regex::reference(x.clone()),
        });
        Regex::concat_all(prefix.iter().cloned().chain(body))
    };
    (side(&eq.lhs), side(&eq.rhs))
}
