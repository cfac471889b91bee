use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::refsem::{RefSymbol, RefWord, SymbolKind};
use crate::tmfa::{Actions, Instr};

/// The single instruction per variable equivalent to a bracket word.
/// Variables that are not mentioned map to `d`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NetAction(BTreeMap<String, Instr>);

impl NetAction {
    pub fn get(&self, x: &str) -> Instr {
        self.0.get(x).copied().unwrap_or(Instr::Keep)
    }

    /// Variables with a non-`d` action, by name.
    pub fn iter(&self) -> impl Iterator<Item = (&str, Instr)> {
        self.0.iter().map(|(x, &s)| (x.as_str(), s))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// The action of `self` followed by `next`.
    pub fn then(&self, next: &NetAction) -> NetAction {
        let mut out = self.0.clone();
        for (x, &s) in &next.0 {
            let composed = self.get(x).then(s);
            out.insert(x.clone(), composed);
        }
        NetAction(out)
    }

    /// Instruction vector over `vars`.
    pub fn to_actions(&self, vars: &[String]) -> Actions {
        vars.iter().map(|x| self.get(x)).collect()
    }

    pub fn from_actions(actions: &Actions, vars: &[String]) -> NetAction {
        NetAction(
            vars.iter()
                .zip(actions.as_slice())
                .filter(|(_, &s)| s != Instr::Keep)
                .map(|(x, &s)| (x.clone(), s))
                .collect(),
        )
    }
}

impl fmt::Display for NetAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, s)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}: {s}")?;
        }
        f.write_str("}")
    }
}

/// Net action of a bracket word: `o` if the rightmost bracket of `x` opens,
/// otherwise `r` if the word opens `x` somewhere and `c` if it never does.
pub fn net_action(nu: &RefWord) -> Result<NetAction> {
    let mut out = BTreeMap::new();
    let mut opened = BTreeMap::new();
    for s in nu.symbols() {
        match &s.kind {
            SymbolKind::Open(x) => {
                opened.insert(x.as_str(), true);
                out.insert(x.clone(), Instr::Open);
            }
            SymbolKind::Close(x) => {
                let s = if opened.contains_key(x.as_str()) {
                    Instr::Reset
                } else {
                    Instr::Close
                };
                out.insert(x.clone(), s);
            }
            _ => return Err(Error::Unsupported(format!("symbol {s} in a bracket word"))),
        }
    }
    Ok(NetAction(out))
}

/// Shortest bracket word with the given action, variables in the order of
/// `vars`. Variables missing from `vars` follow in name order.
pub fn gmin_of(action: &NetAction, vars: &[String]) -> RefWord {
    let mut order: Vec<&str> = vars.iter().map(String::as_str).collect();
    for (x, _) in action.iter() {
        if !order.contains(&x) {
            order.push(x);
        }
    }
    let mut out = Vec::new();
    for x in order {
        match action.get(x) {
            Instr::Keep => {}
            Instr::Open => out.push(RefSymbol::open(x)),
            Instr::Close => out.push(RefSymbol::close(x)),
            Instr::Reset => {
                out.push(RefSymbol::open(x));
                out.push(RefSymbol::close(x));
            }
        }
    }
    RefWord(out)
}

/// Minimal representation of a bracket word, variables in name order.
pub fn gmin(nu: &RefWord) -> Result<RefWord> {
    Ok(gmin_of(&net_action(&nu.unmarked())?, &[]))
}

impl RefWord {
    /// The same word without marks.
    pub fn unmarked(&self) -> RefWord {
        self.0.iter().map(RefSymbol::unmarked).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> RefWord {
        s.split_whitespace()
            .map(|t| {
                let (b, x) = t.split_at(1);
                if b == "[" {
                    RefSymbol::open(x)
                } else {
                    RefSymbol::close(x)
                }
            })
            .collect()
    }

    #[test]
    fn net_actions() {
        assert_eq!(
            net_action(&word("]x [x ]x [x")).unwrap().get("x"),
            Instr::Open
        );
        assert!(net_action(&word("")).unwrap().is_identity());
        assert_eq!(net_action(&word("[x ]x")).unwrap().get("x"), Instr::Reset);
        assert_eq!(net_action(&word("]x ]x")).unwrap().get("x"), Instr::Close);
        assert_eq!(net_action(&word("[x")).unwrap().get("y"), Instr::Keep);
        let bad = RefWord(vec![RefSymbol::terminal('a')]);
        assert!(net_action(&bad).is_err());
    }

    #[test]
    fn minimal_representations() {
        assert_eq!(gmin(&word("]x [x ]x [x")).unwrap(), word("[x"));
        assert_eq!(gmin(&word("[x ]x [y")).unwrap(), word("[x ]x [y"));
        assert_eq!(gmin(&word("")).unwrap(), word(""));
        let vars = ["y".to_string(), "x".to_string()];
        let a = net_action(&word("[x ]x [y")).unwrap();
        assert_eq!(gmin_of(&a, &vars), word("[y [x ]x"));
    }

    #[test]
    fn composition_matches_concatenation() {
        let words = ["", "[x", "]x", "[x ]x", "]x [x", "[y ]x", "]y [x ]y"];
        for a in words {
            for b in words {
                let ab = word(&format!("{a} {b}"));
                let composed = net_action(&word(a))
                    .unwrap()
                    .then(&net_action(&word(b)).unwrap());
                assert_eq!(net_action(&ab).unwrap(), composed, "{a} · {b}");
            }
        }
    }
}
