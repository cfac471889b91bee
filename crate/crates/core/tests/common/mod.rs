//! Seeded random regexes and the corpus of deterministic ones shared by the
//! integration tests.
#![allow(dead_code)]

use drx::glushkov::compile_deterministic;
use drx::{Alphabet, Dtmfa, Regex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VARIABLES: [&str; 3] = ["x", "y", "z"];

pub fn ab() -> Alphabet {
    Alphabet::new("ab".chars())
}

/// Random regex over `{a, b}` with at most `max_occ` terminal and reference
/// occurrences and the variables `x`, `y`, `z`.
pub fn random_regex(rng: &mut ChaCha8Rng, max_occ: usize) -> Regex {
    let mut budget = rng.random_range(1..=max_occ);
    let r = grow(rng, &mut budget, 0, &[]);
    debug_assert!(r.validate().is_ok());
    r
}

fn leaf(rng: &mut ChaCha8Rng, budget: &mut usize, forbidden: &[&str]) -> Regex {
    if *budget == 0 {
        return Regex::Epsilon;
    }
    *budget -= 1;
    let allowed: Vec<&str> = VARIABLES
        .iter()
        .copied()
        .filter(|v| !forbidden.contains(v))
        .collect();
    if !allowed.is_empty() && rng.random_bool(0.35) {
        Regex::reference(allowed[rng.random_range(0..allowed.len())])
    } else if rng.random_bool(0.5) {
        Regex::chr('a')
    } else {
        Regex::chr('b')
    }
}

fn grow(rng: &mut ChaCha8Rng, budget: &mut usize, depth: usize, forbidden: &[&str]) -> Regex {
    if *budget <= 1 || depth > 5 {
        return leaf(rng, budget, forbidden);
    }
    match rng.random_range(0..10) {
        0..=2 => {
            let a = grow(rng, budget, depth + 1, forbidden);
            let b = grow(rng, budget, depth + 1, forbidden);
            Regex::concat(a, b)
        }
        3 | 4 => {
            let a = grow(rng, budget, depth + 1, forbidden);
            let b = if rng.random_bool(0.2) {
                Regex::Epsilon
            } else {
                grow(rng, budget, depth + 1, forbidden)
            };
            Regex::alt(a, b)
        }
        5 => Regex::plus(grow(rng, budget, depth + 1, forbidden)),
        6 => Regex::star(grow(rng, budget, depth + 1, forbidden)),
        _ => {
            let free: Vec<&str> = VARIABLES
                .iter()
                .copied()
                .filter(|v| !forbidden.contains(v))
                .collect();
            if free.is_empty() {
                return grow(rng, budget, depth + 1, forbidden);
            }
            let x = free[rng.random_range(0..free.len())];
            let mut inner = forbidden.to_vec();
            inner.push(x);
            let body = grow(rng, budget, depth + 1, &inner);
            let bound = Regex::bind(x, body);
            if rng.random_bool(0.6) {
                let rest = grow(rng, budget, depth + 1, forbidden);
                Regex::concat(bound, rest)
            } else {
                bound
            }
        }
    }
}

/// The first `n` random regexes from `seed` that compile deterministically,
/// paired with their automata over `{a, b}`.
pub fn deterministic_corpus(seed: u64, n: usize) -> Vec<(Regex, Dtmfa)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < n {
        attempts += 1;
        assert!(attempts < 200 * n + 10_000, "too few deterministic regexes");
        let r = random_regex(&mut rng, 10);
        if let Ok(m) = compile_deterministic(&r, &ab()) {
            out.push((r, m));
        }
    }
    out
}

/// Words over the automaton's alphabet up to `max_len`.
pub fn words(a: &Alphabet, max_len: usize) -> Vec<String> {
    a.words_up_to(max_len).collect()
}

/// `n` random regexes from `seed` with at most `max_occ` occurrences.
pub fn random_regexes(seed: u64, n: usize, max_occ: usize) -> Vec<Regex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_regex(&mut rng, max_occ)).collect()
}

/// Proptest strategy over random regexes, driven by a seed.
pub fn regex_strategy(max_occ: usize) -> impl proptest::strategy::Strategy<Value = Regex> {
    use proptest::prelude::*;
    any::<u64>().prop_map(move |seed| random_regex(&mut ChaCha8Rng::seed_from_u64(seed), max_occ))
}

type Env = std::collections::BTreeMap<String, String>;

/// Membership by backtracking over the regex itself, independent of any
/// automaton. Variables hold their last completed binding; unbound ones
/// and empty ones are both absent from the environment.
pub fn backtrack_match(r: &Regex, w: &str) -> bool {
    let input: Vec<char> = w.chars().collect();
    go(r, &input, 0, &Env::new(), &mut |p, _| p == input.len())
}

fn go(
    r: &Regex,
    w: &[char],
    pos: usize,
    env: &Env,
    k: &mut dyn FnMut(usize, &Env) -> bool,
) -> bool {
    match r {
        Regex::Empty => false,
        Regex::Epsilon => k(pos, env),
        Regex::Char(c) => w.get(pos) == Some(c) && k(pos + 1, env),
        Regex::Ref(x) => {
            let v: Vec<char> = env.get(x).map(|s| s.chars().collect()).unwrap_or_default();
            w[pos..].starts_with(&v) && k(pos + v.len(), env)
        }
        Regex::Concat(a, b) => go(a, w, pos, env, &mut |p, e| go(b, w, p, e, k)),
        Regex::Alt(a, b) => go(a, w, pos, env, k) || go(b, w, pos, env, k),
        Regex::Plus(a) => go(a, w, pos, env, &mut |p, e| {
            // An iteration that changes nothing can be skipped, and one that
            // reads nothing can only empty variables, so this terminates.
            k(p, e) || ((p, e) != (pos, env) && go(r, w, p, e, k))
        }),
        Regex::Bind(x, a) => go(a, w, pos, env, &mut |p, e| {
            let mut e = e.clone();
            if p > pos {
                e.insert(x.clone(), w[pos..p].iter().collect());
            } else {
                e.remove(x);
            }
            k(p, &e)
        }),
    }
}
