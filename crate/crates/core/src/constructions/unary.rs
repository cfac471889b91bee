use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::Regex;

/// DFA over `{a}` shaped as a chain of `chain` states followed by a cycle of
/// `cycle` states.
///
/// The word `a^i` ends in chain position `i` if `i < chain` and in cycle
/// position `(i - chain) mod cycle` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnaryDfa {
    pub chain: usize,
    pub cycle: usize,
    #[serde(default)]
    pub accept_chain: Vec<usize>,
    #[serde(default)]
    pub accept_cycle: Vec<usize>,
}

impl UnaryDfa {
    pub fn validate(&self) -> Result<()> {
        if self.cycle == 0 {
            return Err(Error::InvalidDfa(
                "the cycle needs at least one state".into(),
            ));
        }
        if let Some(p) = self.accept_chain.iter().find(|&&p| p >= self.chain) {
            return Err(Error::InvalidDfa(format!(
                "chain position {p} out of range"
            )));
        }
        if let Some(p) = self.accept_cycle.iter().find(|&&p| p >= self.cycle) {
            return Err(Error::InvalidDfa(format!(
                "cycle position {p} out of range"
            )));
        }
        Ok(())
    }

    /// Whether `a^i` is accepted.
    pub fn accepts(&self, i: usize) -> bool {
        if i < self.chain {
            self.accept_chain.contains(&i)
        } else {
            self.accept_cycle.contains(&((i - self.chain) % self.cycle))
        }
    }

    pub fn from_json(text: &str) -> Result<UnaryDfa> {
        let d: UnaryDfa =
            serde_json::from_str(text).map_err(|e| Error::InvalidDfa(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

fn a_pow(n: usize) -> Regex {
    Regex::concat_all(std::iter::repeat_n(Regex::chr('a'), n))
}

fn ref_pow(x: &str, n: usize) -> Regex {
    Regex::concat_all(std::iter::repeat_n(Regex::reference(x), n))
}

/// Differences between consecutive entries of `points`, starting from `from`.
fn gaps(from: usize, points: &[usize]) -> Vec<usize> {
    let mut prev = from;
    points
        .iter()
        .map(|&p| {
            let g = p - prev;
            prev = p;
            g
        })
        .collect()
}

/// Deterministic regex for the language of a unary DFA.
///
/// The accepted lengths up to the first accepted length `M` in the cycle
/// become the chain gaps `c_1..c_k`; the accepted offsets from `M` around
/// the cycle become the cycle gaps `b_1..b_ℓ`. The cycle is produced by
/// `({x_0:&x_ℓ}{x_ℓ:&x_{ℓ-1}}…{x_1:&x_0} &x_1^{b_1-2} &x_2^{b_2-1}…)+`,
/// where exactly one of `x_1..x_ℓ` holds `a` per iteration. This needs
/// `b_1 ≥ 2`, so the cycle is first unrolled into the chain until it holds.
/// If every cycle gap is 1 the cycle is `a*`; if no cycle state accepts the
/// language is finite and the chain ends with `a^{c_k}`.
pub fn unary_dfa_to_drx(d: &UnaryDfa) -> Result<Regex> {
    d.validate()?;
    let body = nonempty_part(d);
    Ok(match (body, d.accepts(0)) {
        (None, false) => Regex::Empty,
        (None, true) => Regex::Epsilon,
        (Some(r), false) => r,
        (Some(r), true) => Regex::alt(r, Regex::Epsilon),
    })
}

/// Regex for the accepted non-empty words, if there are any.
fn nonempty_part(d: &UnaryDfa) -> Option<Regex> {
    let start = d.chain.max(1);
    let first_cycle = (start..start + d.cycle).find(|&i| d.accepts(i));
    let Some(top) = first_cycle else {
        let chain: Vec<usize> = (1..d.chain).filter(|&i| d.accepts(i)).collect();
        if chain.is_empty() {
            return None;
        }
        let c = gaps(0, &chain);
        return Some(chain_regex(&c, a_pow(c[c.len() - 1])));
    };
    let chain: Vec<usize> = (1..=top).filter(|&i| d.accepts(i)).collect();
    let mut c = gaps(0, &chain);
    let offsets: Vec<usize> = (1..=d.cycle).filter(|&o| d.accepts(top + o)).collect();
    let mut b = gaps(0, &offsets);
    if b.iter().all(|&g| g == 1) {
        let last = a_pow(*c.last().expect("the chain ends at an accepted length"));
        return Some(chain_regex(
            &c,
            Regex::concat(last, Regex::star(Regex::chr('a'))),
        ));
    }
    while b[0] == 1 {
        c.push(1);
        b.rotate_left(1);
    }
    let l = b.len();
    let x = |i: usize| format!("x{i}");
    let mut shift = vec![Regex::bind(x(0), Regex::reference(x(l)))];
    shift.extend(
        (1..=l)
            .rev()
            .map(|i| Regex::bind(x(i), Regex::reference(x(i - 1)))),
    );
    let mut cont = vec![ref_pow(&x(1), b[0] - 2)];
    cont.extend((2..=l).map(|j| ref_pow(&x(j), b[j - 1] - 1)));
    let cycle = Regex::plus(Regex::concat(
        Regex::concat_all(shift),
        Regex::concat_all(cont),
    ));
    let ck = *c.last().expect("the chain ends at an accepted length");
    let last = Regex::concat_all([
        Regex::bind(x(l), Regex::chr('a')),
        a_pow(ck - 1),
        Regex::alt(Regex::Epsilon, cycle),
    ]);
    Some(chain_regex(&c, last))
}

/// `a^{c_1}(ε|a^{c_2}(ε|…(ε|last)))`, where `last` already covers `c_k`.
fn chain_regex(c: &[usize], last: Regex) -> Regex {
    let (_, init) = c.split_last().expect("at least one chain gap");
    init.iter().rev().fold(last, |acc, &ci| {
        Regex::concat(a_pow(ci), Regex::alt(Regex::Epsilon, acc))
    })
}
