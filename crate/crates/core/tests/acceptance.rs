//! The acceptance suite: one PASS or FAIL line per criterion, exit status 1
//! if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{ab, deterministic_corpus, random_regexes, words};
use drx::constructions::{
    bounded_intersection, unary_dfa_to_drx, word_equation_to_drx, UnaryDfa, WordEquation,
};
use drx::dtmfa::{
    complement, complete, is_l_deterministic, l_determinize, match_direct, match_fast, preprocess,
    remove_epsilon,
};
use drx::glushkov::{check_regex, compile_deterministic, compile_glushkov};
use drx::refsem::enumerate_language;
use drx::tmfa::{acc_to_rej, compile_naive, is_deterministic, member_oracle, normalize};
use drx::{parse, Actions, Alphabet, Dtmfa, Instr, Label, Regex, Tmfa};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn regex(text: &str) -> Regex {
    parse(text).expect("fixture parses")
}

fn corpus() -> Vec<(Regex, Dtmfa)> {
    deterministic_corpus(2024, 200)
}

fn determinism_fixtures() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("({x:a}|a)", Some(1)),
        ("(a|&x)", Some(2)),
        ("({x:()}|())a", Some(3)),
        ("({x:()}|())", Some(4)),
        ("{x:(a|b)*}c&x", None),
        ("({x:&y}{y:&x a})*", None),
    ];
    for (text, expected) in cases {
        let got = check_regex(&regex(text))
            .map_err(|e| e.to_string())?
            .condition();
        ensure(got == expected, || {
            format!("{text}: expected {expected:?}, got {got:?}")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("6 fixtures in {elapsed:?}"))
}

fn glushkov_correctness() -> Outcome {
    let start = Instant::now();
    let corpus = corpus();
    let ws = words(&ab(), 8);
    for (r, m) in &corpus {
        let naive = compile_naive(r, &ab());
        for w in &ws {
            let expected = member_oracle(&naive, w).map_err(|e| e.to_string())?;
            let got = member_oracle(m, w).map_err(|e| e.to_string())?;
            ensure(got == expected, || {
                format!("{r} on {w:?}: compiled {got}, naive {expected}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} regexes x {} words in {elapsed:?}",
        corpus.len(),
        ws.len()
    ))
}

fn semantic_fixtures() -> Outcome {
    let unary = Alphabet::new(['a']);
    let powers = |ns: &[usize]| -> BTreeSet<String> { ns.iter().map(|&n| "a".repeat(n)).collect() };
    let squares =
        enumerate_language(&regex("({x:&y}{y:&x a})*"), &unary, 30).map_err(|e| e.to_string())?;
    ensure(squares == powers(&[0, 1, 4, 9, 16, 25]), || {
        format!("squares: {squares:?}")
    })?;

    let fib = regex("a{x0:b}{x1:a}({x2:&x1&x0}{x3:&x1&x0&x1}{x0:&x3&x2}{x1:&x3&x2&x3})*");
    let fibs = enumerate_language(&fib, &ab(), 25).map_err(|e| e.to_string())?;
    let expected: BTreeSet<String> = ["aba", "abaababaabaababaababa"].map(String::from).into();
    ensure(fibs == expected, || format!("Fibonacci: {fibs:?}"))?;

    let fours = enumerate_language(&regex("aa{x:aa}({y:&x&x}{x:&y&y})*"), &unary, 20)
        .map_err(|e| e.to_string())?;
    ensure(fours == powers(&[4, 16]), || {
        format!("powers of four: {fours:?}")
    })?;

    let composite = compile_naive(&regex("{x:aa+}(&x)+"), &unary);
    for i in 4..=12 {
        let is_composite = (2..i).any(|d| i % d == 0);
        let got = member_oracle(&composite, &"a".repeat(i)).map_err(|e| e.to_string())?;
        ensure(got == is_composite, || {
            format!("composites: a^{i} gave {got}")
        })?;
    }
    Ok("squares, Fibonacci, powers of four, composites".into())
}

fn complement_criterion() -> Outcome {
    let ws = words(&ab(), 8);
    for (r, m) in corpus().iter().take(50) {
        let c = complement(m).map_err(|e| e.to_string())?;
        for w in &ws {
            let inside = member_oracle(m, w).map_err(|e| e.to_string())?;
            let outside = member_oracle(&c, w).map_err(|e| e.to_string())?;
            ensure(inside != outside, || format!("{r} on {w:?}: both {inside}"))?;
        }
    }
    Ok(format!("50 automata x {} words", ws.len()))
}

fn transformation_soundness() -> Outcome {
    let ws = words(&ab(), 8);
    let corpus = corpus();
    for (r, m) in &corpus {
        let e = remove_epsilon(m);
        let eps = e
            .all_transitions()
            .filter(|(_, t)| t.label == Label::Eps)
            .count();
        ensure(eps == 0, || format!("{r}: {eps} ε-transitions left"))?;
        let outputs: [(&str, Tmfa); 4] = [
            ("normalize", normalize(m).map_err(|e| e.to_string())?),
            ("acc_to_rej", acc_to_rej(m).map_err(|e| e.to_string())?),
            ("remove_epsilon", e.into_inner()),
            ("complete", complete(m).into_inner()),
        ];
        for w in &ws {
            let expected = member_oracle(m, w).map_err(|e| e.to_string())?;
            for (name, out) in &outputs {
                let got = member_oracle(out, w).map_err(|e| e.to_string())?;
                ensure(got == expected, || format!("{name} of {r} on {w:?}: {got}"))?;
            }
        }
    }
    Ok(format!("4 transformations x {} automata", corpus.len()))
}

/// One memory: reach `config`, apply `chain` by ε-transitions, read `b`,
/// then recall the memory. The accepted words reveal the memory's
/// content and status after the chain.
fn instruction_probe(config: usize, chain: &[Instr]) -> Tmfa {
    let mut m = Tmfa::new(Alphabet::new("ab".chars()), 1, 2);
    let mut q = m.initial();
    let edge = |m: &mut Tmfa, q: &mut usize, label, instr| {
        let to = m.add_state();
        m.add_transition(*q, label, to, Actions::new(vec![instr]))
            .unwrap();
        *q = to;
    };
    match config {
        0 => {}
        1 => edge(&mut m, &mut q, Label::Eps, Instr::Open),
        2 => {
            edge(&mut m, &mut q, Label::Char('a'), Instr::Open);
            edge(&mut m, &mut q, Label::Eps, Instr::Close);
        }
        _ => edge(&mut m, &mut q, Label::Char('a'), Instr::Open),
    }
    for &s in chain {
        edge(&mut m, &mut q, Label::Eps, s);
    }
    edge(&mut m, &mut q, Label::Char('b'), Instr::Keep);
    edge(&mut m, &mut q, Label::Recall(0), Instr::Close);
    m.set_final(q, true);
    m
}

fn matching_engines() -> Outcome {
    let ws = words(&ab(), 10);
    let corpus = corpus();
    for (r, m) in &corpus {
        let table = preprocess(m);
        for w in &ws {
            let expected = member_oracle(m, w).map_err(|e| e.to_string())?;
            let direct = match_direct(m, w);
            let fast = match_fast(&table, w);
            ensure(direct == expected && fast == expected, || {
                format!("{r} on {w:?}: oracle {expected}, direct {direct}, fast {fast}")
            })?;
        }
    }
    let probe_words = words(&ab(), 5);
    let language = |m: &Tmfa| -> BTreeSet<&String> {
        probe_words
            .iter()
            .filter(|w| member_oracle(m, w).unwrap())
            .collect()
    };
    let mut triples = 0;
    for x in Instr::ALL {
        for y in Instr::ALL {
            for z in Instr::ALL {
                for config in 0..4 {
                    let sequential = language(&instruction_probe(config, &[x, y, z]));
                    let left = language(&instruction_probe(config, &[x.then(y).then(z)]));
                    let right = language(&instruction_probe(config, &[x.then(y.then(z))]));
                    ensure(sequential == left && sequential == right, || {
                        format!("{x}{y}{z} from configuration {config}: {sequential:?} {left:?} {right:?}")
                    })?;
                }
                triples += 1;
            }
        }
    }
    Ok(format!(
        "{} automata x {} words; {triples} instruction triples x 4 configurations",
        corpus.len(),
        ws.len()
    ))
}

fn unary_construction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let sigma = Alphabet::new(['a']);
    for _ in 0..100 {
        let chain = rng.random_range(0..=4);
        let cycle = rng.random_range(1..=5);
        let d = UnaryDfa {
            chain,
            cycle,
            accept_chain: (0..chain).filter(|_| rng.random_bool(0.5)).collect(),
            accept_cycle: (0..cycle).filter(|_| rng.random_bool(0.5)).collect(),
        };
        let r = unary_dfa_to_drx(&d).map_err(|e| e.to_string())?;
        let m = compile_deterministic(&r, &sigma).map_err(|e| format!("{r}: {e}"))?;
        for i in 0..=40 {
            let got = member_oracle(&m, &"a".repeat(i)).map_err(|e| e.to_string())?;
            ensure(got == d.accepts(i), || {
                format!("{d:?} as {r}: a^{i} gave {got}")
            })?;
        }
    }
    Ok("100 lollipops up to a^40".into())
}

fn l_determinism() -> Outcome {
    let sigma = Alphabet::new("abc".chars());
    let relaxed =
        compile_glushkov(&regex("{x:a+}{y:b+}c(&x|&y)"), &sigma).map_err(|e| e.to_string())?;
    let at = |l| is_l_deterministic(&relaxed, l).map_err(|e| e.to_string());
    ensure(!at(0)? && at(1)?, || {
        "relaxed example: wrong verdicts".into()
    })?;
    let d = l_determinize(&relaxed, 1).map_err(|e| e.to_string())?;
    ensure(is_deterministic(&d), || {
        "relaxed example: output not deterministic".into()
    })?;
    for w in sigma.words_up_to(10) {
        let expected = member_oracle(&relaxed, &w).map_err(|e| e.to_string())?;
        let got = member_oracle(&d, &w).map_err(|e| e.to_string())?;
        ensure(got == expected, || {
            format!("relaxed example on {w:?}: {got}")
        })?;
    }

    let corpus = corpus();
    for (r, m) in &corpus {
        let verdict = is_l_deterministic(m, 0).map_err(|e| e.to_string())?;
        ensure(verdict == is_deterministic(m), || {
            format!("{r}: 0-determinism {verdict}")
        })?;
    }
    for r in random_regexes(2025, 300, 10) {
        let m = compile_glushkov(&r, &ab()).map_err(|e| e.to_string())?;
        let verdict = is_l_deterministic(&m, 0).map_err(|e| e.to_string())?;
        ensure(verdict == is_deterministic(&m), || {
            format!("{r}: 0-determinism {verdict}")
        })?;
    }
    let ws = words(&ab(), 10);
    for (r, m) in corpus.iter().take(40) {
        let d = l_determinize(m, 1).map_err(|e| e.to_string())?;
        ensure(is_deterministic(&d), || {
            format!("{r}: output not deterministic")
        })?;
        for w in &ws {
            let expected = member_oracle(m, w).map_err(|e| e.to_string())?;
            let got = member_oracle(&d, w).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("{r} on {w:?}: {got}"))?;
        }
    }
    Ok("relaxed example, 500 zero-determinism checks, 41 determinizations".into())
}

fn word_equations() -> Outcome {
    let reduce = |text: &str| -> Result<(Vec<Tmfa>, [Regex; 2]), String> {
        let eq: WordEquation = text.parse().map_err(|e: drx::Error| e.to_string())?;
        let (l, r) = word_equation_to_drx(&eq);
        let sigma = Alphabet::new(eq.terminals().into_iter().chain(['%']));
        let mut ms = Vec::new();
        for side in [&l, &r] {
            ensure(side.is_vstar_free(), || format!("{side} is not vstar-free"))?;
            ms.push(
                compile_deterministic(side, &sigma)
                    .map_err(|e| format!("{side}: {e}"))?
                    .into_inner(),
            );
        }
        Ok((ms, [l, r]))
    };
    let (ms, _) = reduce("Xa = aX")?;
    let witness = bounded_intersection(&ms, 4).map_err(|e| e.to_string())?;
    ensure(witness.as_deref() == Some("%a"), || {
        format!("Xa = aX: {witness:?}")
    })?;
    for text in ["a = b", "ab = ba", "aa = a"] {
        let (ms, _) = reduce(text)?;
        for len in 0..=6 {
            let witness = bounded_intersection(&ms, len).map_err(|e| e.to_string())?;
            ensure(witness.is_none(), || {
                format!("{text} at {len}: {witness:?}")
            })?;
        }
    }
    Ok("\"%a\" found; 3 ground equations empty up to 6".into())
}

fn performance() -> Outcome {
    let m = compile_deterministic(&regex("{x:(a|b)*}c&x"), &Alphabet::default())
        .map_err(|e| e.to_string())?;
    let table = preprocess(&m);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let word = |half: usize, rng: &mut ChaCha8Rng| -> String {
        let w: String = (0..half)
            .map(|_| if rng.random_bool(0.5) { 'a' } else { 'b' })
            .collect();
        format!("{w}c{w}")
    };
    let time = |w: &str| -> Result<Duration, String> {
        // One untimed run first so page faults are not measured.
        match_fast(&table, w);
        let mut best = Duration::MAX;
        for _ in 0..5 {
            let start = Instant::now();
            let accepted = match_fast(&table, w);
            best = best.min(start.elapsed());
            ensure(accepted, || "word rejected".into())?;
        }
        Ok(best)
    };
    let short = word(100_000, &mut rng);
    let long = word(200_000, &mut rng);
    let (t1, t2) = (time(&short)?, time(&long)?);
    ensure(t1 < Duration::from_secs(1), || {
        format!("{} symbols took {t1:?}", short.len())
    })?;
    let ratio = t2.as_secs_f64() / t1.as_secs_f64();
    ensure(ratio <= 2.5, || {
        format!("doubling took {ratio:.2}x ({t1:?} to {t2:?})")
    })?;
    Ok(format!(
        "{} symbols in {t1:?}, doubled in {t2:?} ({ratio:.2}x)",
        short.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("determinism fixtures", determinism_fixtures),
        ("Glushkov correctness", glushkov_correctness),
        ("semantic fixtures", semantic_fixtures),
        ("complement", complement_criterion),
        ("transformation soundness", transformation_soundness),
        ("matching engines", matching_engines),
        ("unary construction", unary_construction),
        ("l-determinism", l_determinism),
        ("word-equation reduction", word_equations),
        ("performance sanity", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
