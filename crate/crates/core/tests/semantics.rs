mod common;

use std::collections::BTreeSet;

use common::{ab, backtrack_match, random_regexes, regex_strategy};
use drx::refsem::{dereference, enumerate_language, enumerate_ref_words, to_ref_regex};
use drx::tmfa::{
    acc_to_rej, compile_naive, is_deterministic, member_oracle, normalize, step, Configuration,
};
use drx::Tmfa;
use proptest::prelude::*;

/// Terminal words of the ref-words up to `ref_len`, cut to `max_len`.
fn dereferenced(r: &drx::Regex, ref_len: usize, max_len: usize) -> BTreeSet<String> {
    enumerate_ref_words(r, ref_len)
        .unwrap()
        .iter()
        .map(dereference)
        .filter(|w| w.chars().count() <= max_len)
        .collect()
}

/// Every configuration reachable on some prefix of `w`, checked as it is
/// found: deterministic automata have at most one successor, and memories
/// are spans of the consumed input.
fn walk_configurations(m: &Tmfa, w: &str) {
    let input: Vec<char> = w.chars().collect();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![Configuration::initial(m)];
    while let Some(c) = stack.pop() {
        if !seen.insert(c.clone()) {
            continue;
        }
        for mem in &c.memories {
            let (s, e) = mem.span(c.pos);
            assert!(s <= e && e <= c.pos, "memory {mem:?} at {}", c.pos);
        }
        let next = step(m, &c, &input);
        if is_deterministic(m) {
            assert!(next.len() <= 1, "{} successors on {w:?}", next.len());
        }
        stack.extend(next);
    }
}

#[test]
fn naive_automaton_matches_backtracking() {
    for r in random_regexes(11, 200, 8) {
        let m = compile_naive(&r, &ab());
        for w in ab().words_up_to(6) {
            assert_eq!(
                member_oracle(&m, &w).unwrap(),
                backtrack_match(&r, &w),
                "{r}: {w:?}"
            );
        }
    }
}

#[test]
fn dereferenced_ref_words_are_in_the_language() {
    for r in random_regexes(12, 120, 8) {
        let refs = enumerate_ref_words(&r, 10).unwrap();
        let words: Vec<String> = refs.iter().map(dereference).collect();
        let longest = words.iter().map(|w| w.chars().count()).max().unwrap_or(0);
        let language = enumerate_language(&r, &ab(), longest).unwrap();
        for w in words {
            assert!(language.contains(&w), "{r}: {w:?}");
        }
    }
}

#[test]
fn configurations_are_unique_and_spans() {
    for r in random_regexes(13, 80, 8) {
        let m = compile_naive(&r, &ab());
        for w in ab().words_up_to(5) {
            walk_configurations(&m, &w);
        }
        if let Ok(d) = drx::glushkov::compile_deterministic(&r, &ab()) {
            for w in ab().words_up_to(6) {
                walk_configurations(&d, &w);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn proper_regexes_denote_their_ref_language(r in regex_strategy(8)) {
        let proper = strip_variables(&r);
        let expected = dereferenced(&proper, 6, 6);
        prop_assert_eq!(enumerate_language(&proper, &ab(), 6).unwrap(), expected);
    }

    #[test]
    fn marks_are_consecutive(r in regex_strategy(12)) {
        let marks: Vec<u32> = to_ref_regex(&r, true).symbols().iter().map(|s| s.mark.unwrap()).collect();
        let expected: Vec<u32> = (1..=marks.len() as u32).collect();
        prop_assert_eq!(marks, expected);
    }

    #[test]
    fn normalize_and_acc_to_rej_keep_the_language(r in regex_strategy(8)) {
        let m = compile_naive(&r, &ab());
        let mut acc = m.clone();
        acc.set_trap_accepting(true);
        for m in [m, acc] {
            let n = normalize(&m).unwrap();
            let rej = acc_to_rej(&m).unwrap();
            prop_assert!(!rej.trap_accepting());
            for w in ab().words_up_to(6) {
                let expected = member_oracle(&m, &w).unwrap();
                prop_assert_eq!(member_oracle(&n, &w).unwrap(), expected, "normalize {}: {:?}", r, w);
                prop_assert_eq!(member_oracle(&rej, &w).unwrap(), expected, "acc_to_rej {}: {:?}", r, w);
            }
        }
    }
}

/// `r` with bindings replaced by their bodies and references by ε.
fn strip_variables(r: &drx::Regex) -> drx::Regex {
    use drx::Regex::*;
    match r {
        Ref(_) => Epsilon,
        Bind(_, a) => strip_variables(a),
        Concat(a, b) => drx::Regex::concat(strip_variables(a), strip_variables(b)),
        Alt(a, b) => drx::Regex::alt(strip_variables(a), strip_variables(b)),
        Plus(a) => drx::Regex::plus(strip_variables(a)),
        other => other.clone(),
    }
}
