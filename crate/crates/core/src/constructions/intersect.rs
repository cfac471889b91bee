use crate::error::{Error, Limits, Result};
use crate::syntax::Alphabet;
use crate::tmfa::{enumerate_accepted, member_oracle_with, Tmfa};

/// Shortest word of length at most `max_len` accepted by every automaton,
/// first in length-lexicographic order among those.
pub fn bounded_intersection(ms: &[Tmfa], max_len: usize) -> Result<Option<String>> {
    bounded_intersection_with(ms, max_len, &Limits::default())
}

/// Bounded intersection search under explicit caps.
///
/// Candidates come from the runs of an automaton whose trap rejects, if
/// there is one, and otherwise from all words over the common alphabet. Each
/// candidate is then checked against every automaton.
pub fn bounded_intersection_with(
    ms: &[Tmfa],
    max_len: usize,
    limits: &Limits,
) -> Result<Option<String>> {
    let Some(first) = ms.first() else {
        return Err(Error::Unsupported("intersection of no automata".into()));
    };
    let mut candidates: Vec<String> = match ms.iter().find(|m| !m.trap_accepting()) {
        Some(m) => enumerate_accepted(m, max_len, limits)?
            .into_iter()
            .collect(),
        None => {
            let alphabet = ms
                .iter()
                .skip(1)
                .fold(first.alphabet().clone(), |a, m| a.union(m.alphabet()));
            words(&alphabet, max_len, limits)?
        }
    };
    candidates.sort_by(|u, v| {
        u.chars()
            .count()
            .cmp(&v.chars().count())
            .then_with(|| u.cmp(v))
    });
    for w in candidates {
        let mut all = true;
        for m in ms {
            if !member_oracle_with(m, &w, limits)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn words(alphabet: &Alphabet, max_len: usize, limits: &Limits) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for w in alphabet.words_up_to(max_len) {
        out.push(w);
        limits.check_configs(out.len())?;
    }
    Ok(out)
}
