use super::{Actions, Instr, Label, Tmfa};
use crate::refsem::{to_ref_regex, Nfa, SymbolKind};
use crate::syntax::{Alphabet, Regex};

/// Thompson automaton of the ref-regex read as a memory automaton with a
/// rejecting trap: brackets become ε-transitions opening or closing the
/// variable's memory and references become recalls.
///
/// The alphabet is the terminals of `r` together with `alphabet`; memories
/// follow `r.variable_order()`.
pub fn compile_naive(r: &Regex, alphabet: &Alphabet) -> Tmfa {
    let alphabet = Alphabet::infer(r).union(alphabet);
    let vars = r.variable_order();
    let k = vars.len();
    let index = |x: &str| {
        vars.iter()
            .position(|v| v == x)
            .expect("variable is indexed")
    };
    let nfa = Nfa::thompson(&to_ref_regex(r, false));
    let n = nfa.edges.len();
    let mut m = Tmfa::new(alphabet, k, n + 1);
    m.set_initial(nfa.start);
    m.set_final(nfa.accept, true);
    for (q, edges) in nfa.edges.iter().enumerate() {
        for (label, to) in edges {
            let (label, actions) = match label.as_ref().map(|s| &s.kind) {
                None => (Label::Eps, Actions::keep(k)),
                Some(SymbolKind::Terminal(c)) => (Label::Char(*c), Actions::keep(k)),
                Some(SymbolKind::Open(x)) => {
                    (Label::Eps, Actions::single(k, index(x), Instr::Open))
                }
                Some(SymbolKind::Close(x)) => {
                    (Label::Eps, Actions::single(k, index(x), Instr::Close))
                }
                Some(SymbolKind::VarRef(x)) => {
                    let i = index(x);
                    (Label::Recall(i), Actions::single(k, i, Instr::Close))
                }
            };
            m.add_transition(q, label, *to, actions)
                .expect("Thompson transitions are well formed");
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use crate::tmfa::{language_by_membership, member_oracle};

    fn compile(s: &str) -> Tmfa {
        compile_naive(&parse(s).unwrap(), &Alphabet::default())
    }

    #[test]
    fn single_terminal() {
        let m = compile("a");
        assert_eq!(m.num_states(), 3);
        let words = language_by_membership(&m, 3).unwrap();
        assert_eq!(words.into_iter().collect::<Vec<_>>(), ["a"]);
    }

    #[test]
    fn copy_language() {
        let m = compile("{x:(a|b)+}&x");
        assert_eq!(m.memories(), 1);
        assert!(member_oracle(&m, "abab").unwrap());
        assert!(!member_oracle(&m, "aba").unwrap());
        for w in language_by_membership(&m, 6).unwrap() {
            let (u, v) = w.split_at(w.len() / 2);
            assert_eq!(u, v);
        }
    }

    #[test]
    fn squares() {
        let m = compile("({x:&y}{y:&x a})*");
        let words = language_by_membership(&m, 16).unwrap();
        let lengths: Vec<usize> = words.iter().map(String::len).collect();
        assert_eq!(lengths, [0, 1, 4, 9, 16]);
    }

    #[test]
    fn extra_alphabet_symbols() {
        let m = compile_naive(&parse("a").unwrap(), &Alphabet::new("b".chars()));
        assert_eq!(m.alphabet().chars(), ['a', 'b']);
        assert!(!member_oracle(&m, "b").unwrap());
    }
}
