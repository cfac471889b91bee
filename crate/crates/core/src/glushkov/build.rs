use std::collections::{BTreeMap, BTreeSet};

use super::check::{first_violation, Witness};
use super::net::{gmin_of, net_action};
use super::{Edge, MemoryOccurrenceGraph, Node, OccSymbol};
use crate::error::{Error, Limits, Result};
use crate::refsem::{to_ref_regex, RefRegex, RefWord, SymbolKind};
use crate::syntax::Regex;
use crate::tmfa::Actions;

/// Most variables for which the composition closure of a plus is computed.
const MAX_CLOSURE_VARIABLES: usize = 12;

/// Edges of a subgraph, split by whether they leave `src` and whether they
/// enter `snk`.
#[derive(Debug, Default, Clone)]
struct Sub {
    first: BTreeSet<(RefWord, u32)>,
    last: BTreeSet<(u32, RefWord)>,
    inner: BTreeSet<(u32, RefWord, u32)>,
    eps: BTreeSet<RefWord>,
}

impl Sub {
    fn size(&self) -> usize {
        self.first.len() + self.last.len() + self.inner.len() + self.eps.len()
    }

    fn triples(&self) -> Vec<(Node, &RefWord, Node)> {
        let mut out = Vec::with_capacity(self.size());
        out.extend(
            self.first
                .iter()
                .map(|(l, v)| (Node::Src, l, Node::Occ(*v))),
        );
        out.extend(self.eps.iter().map(|l| (Node::Src, l, Node::Snk)));
        out.extend(
            self.inner
                .iter()
                .map(|(u, l, v)| (Node::Occ(*u), l, Node::Occ(*v))),
        );
        out.extend(self.last.iter().map(|(u, l)| (Node::Occ(*u), l, Node::Snk)));
        out
    }
}

fn cat(a: &RefWord, b: &RefWord) -> RefWord {
    let mut out = a.clone();
    out.0.extend(b.0.iter().cloned());
    out
}

fn cat3(a: &RefWord, b: &RefWord, c: &RefWord) -> RefWord {
    cat(&cat(a, b), c)
}

pub(super) enum Aborted {
    Witness(Witness),
    Error(Error),
}

struct Builder<'a> {
    vars: Vec<String>,
    occurrences: BTreeMap<u32, OccSymbol>,
    limits: &'a Limits,
    record: bool,
    witness: Option<Witness>,
}

/// Memory occurrence graph of the marked version of `r`.
pub fn build_graph(r: &Regex) -> Result<MemoryOccurrenceGraph> {
    build_graph_with(r, &Limits::default())
}

pub fn build_graph_with(r: &Regex, limits: &Limits) -> Result<MemoryOccurrenceGraph> {
    let mut b = Builder::new(r, limits, false);
    let sub = b.build(&to_ref_regex(r, true))?;
    Ok(b.finish(sub))
}

/// Builds the graph and remembers the first subgraph that violates one of
/// the first three conditions, reported if a resource cap is hit later.
pub(super) fn build_checked(
    r: &Regex,
    limits: &Limits,
) -> std::result::Result<MemoryOccurrenceGraph, Aborted> {
    let mut b = Builder::new(r, limits, true);
    match b.build(&to_ref_regex(r, true)) {
        Ok(sub) => Ok(b.finish(sub)),
        Err(e @ Error::Limit { .. }) => match b.witness {
            Some(w) => Err(Aborted::Witness(w)),
            None => Err(Aborted::Error(e)),
        },
        Err(e) => Err(Aborted::Error(e)),
    }
}

impl<'a> Builder<'a> {
    fn new(r: &Regex, limits: &'a Limits, record: bool) -> Builder<'a> {
        Builder {
            vars: r.variable_order(),
            occurrences: BTreeMap::new(),
            limits,
            record,
            witness: None,
        }
    }

    fn finish(self, sub: Sub) -> MemoryOccurrenceGraph {
        let mut edges: Vec<Edge> = sub
            .triples()
            .into_iter()
            .map(|(from, label, to)| Edge {
                from,
                label: label.clone(),
                to,
            })
            .collect();
        edges.sort();
        MemoryOccurrenceGraph {
            variables: self.vars,
            occurrences: self.occurrences,
            edges,
        }
    }

    fn build(&mut self, r: &RefRegex) -> Result<Sub> {
        let sub = match r {
            RefRegex::Empty => Sub::default(),
            RefRegex::Epsilon => Sub {
                eps: [RefWord::default()].into(),
                ..Sub::default()
            },
            RefRegex::Sym(s) => {
                let mark = s.mark.expect("occurrences are marked");
                let symbol = match &s.kind {
                    SymbolKind::Terminal(c) => OccSymbol::Terminal(*c),
                    SymbolKind::VarRef(x) => OccSymbol::Ref(x.clone()),
                    SymbolKind::Open(_) | SymbolKind::Close(_) => {
                        return Ok(Sub {
                            eps: [RefWord(vec![s.clone()])].into(),
                            ..Sub::default()
                        })
                    }
                };
                self.occurrences.insert(mark, symbol);
                Sub {
                    first: [(RefWord::default(), mark)].into(),
                    last: [(mark, RefWord::default())].into(),
                    ..Sub::default()
                }
            }
            RefRegex::Alt(a, b) => {
                let mut x = self.build(a)?;
                let y = self.build(b)?;
                x.first.extend(y.first);
                x.last.extend(y.last);
                x.inner.extend(y.inner);
                x.eps.extend(y.eps);
                self.checked(x)?
            }
            RefRegex::Concat(a, b) => {
                let a = self.build(a)?;
                let b = self.build(b)?;
                let sub = self.concat(a, b)?;
                self.checked(sub)?
            }
            RefRegex::Plus(a) => {
                let a = self.build(a)?;
                let sub = self.plus(a)?;
                self.checked(sub)?
            }
        };
        Ok(sub)
    }

    fn checked(&mut self, sub: Sub) -> Result<Sub> {
        self.limits.check_edges(sub.size())?;
        if self.record && self.witness.is_none() {
            self.witness = first_violation(&self.occurrences, &sub.triples(), 3);
        }
        Ok(sub)
    }

    fn concat(&self, a: Sub, b: Sub) -> Result<Sub> {
        let mut out = Sub {
            first: a.first,
            last: b.last,
            inner: a.inner,
            eps: BTreeSet::new(),
        };
        out.inner.extend(b.inner);
        for e in &a.eps {
            for (f, v) in &b.first {
                out.first.insert((cat(e, f), *v));
            }
        }
        for (u, l) in &a.last {
            for (f, v) in &b.first {
                out.inner.insert((*u, cat(l, f), *v));
            }
            for e in &b.eps {
                out.last.insert((*u, cat(l, e)));
            }
            self.limits.check_edges(out.size())?;
        }
        for e1 in &a.eps {
            for e2 in &b.eps {
                out.eps.insert(cat(e1, e2));
            }
        }
        Ok(out)
    }

    fn plus(&self, a: Sub) -> Result<Sub> {
        if a.eps.iter().all(RefWord::is_empty) {
            let mut out = a;
            let loops: Vec<_> = out
                .last
                .iter()
                .flat_map(|(u, l)| out.first.iter().map(move |(f, v)| (*u, cat(l, f), *v)))
                .collect();
            out.inner.extend(loops);
            return Ok(out);
        }
        let closure = self.closure(&a.eps)?;
        let mut hats: BTreeSet<RefWord> = closure.iter().map(|c| gmin_of(c, &self.vars)).collect();
        hats.insert(RefWord::default());
        let mut eps: BTreeSet<RefWord> = closure.iter().map(|c| gmin_of(c, &self.vars)).collect();
        for e1 in &a.eps {
            eps.insert(e1.clone());
            for e2 in &a.eps {
                eps.insert(cat(e1, e2));
            }
        }
        let mut out = Sub {
            eps,
            inner: a.inner.clone(),
            ..Sub::default()
        };
        for h in &hats {
            for (f, v) in &a.first {
                out.first.insert((cat(h, f), *v));
            }
            for (u, l) in &a.last {
                out.last.insert((*u, cat(l, h)));
                for (f, v) in &a.first {
                    out.inner.insert((*u, cat3(l, h, f), *v));
                }
            }
            self.limits.check_edges(out.size())?;
        }
        Ok(out)
    }

    /// Net actions of all non-empty concatenations of `eps` labels.
    fn closure(&self, eps: &BTreeSet<RefWord>) -> Result<BTreeSet<super::NetAction>> {
        if self.vars.len() > MAX_CLOSURE_VARIABLES {
            return Err(Error::Limit {
                what: "variables in a plus closure",
                limit: MAX_CLOSURE_VARIABLES,
            });
        }
        let vars = &self.vars;
        let base: Vec<Actions> = eps
            .iter()
            .map(|l| {
                net_action(&l.unmarked())
                    .map(|n| n.to_actions(vars))
                    .expect("labels are bracket words")
            })
            .collect();
        let mut seen: BTreeSet<Actions> = base.iter().cloned().collect();
        let mut frontier: Vec<Actions> = seen.iter().cloned().collect();
        while let Some(c) = frontier.pop() {
            for n in &base {
                let next = c.then(n);
                if seen.insert(next.clone()) {
                    self.limits.check_edges(seen.len())?;
                    frontier.push(next);
                }
            }
        }
        Ok(seen
            .iter()
            .map(|a| super::NetAction::from_actions(a, vars))
            .collect())
    }
}
