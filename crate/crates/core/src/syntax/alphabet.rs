use std::collections::BTreeSet;
use std::fmt;

use super::Regex;

/// Ordered set of terminal symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(chars: impl IntoIterator<Item = char>) -> Alphabet {
        let set: BTreeSet<char> = chars.into_iter().collect();
        Alphabet(set.into_iter().collect())
    }

    /// The terminals occurring in `r`, sorted.
    pub fn infer(r: &Regex) -> Alphabet {
        Alphabet(r.terminals().into_iter().collect())
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// Position of `c` in the sorted order.
    pub fn index(&self, c: char) -> Option<usize> {
        self.0.binary_search(&c).ok()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// True iff every character of `w` is in the alphabet.
    pub fn accepts_word(&self, w: &str) -> bool {
        w.chars().all(|c| self.contains(c))
    }

    /// All words of length at most `max_len`, in length-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> WordsUpTo<'_> {
        WordsUpTo {
            alphabet: self,
            max_len,
            current: Some(Vec::new()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromIterator<char> for Alphabet {
    fn from_iter<T: IntoIterator<Item = char>>(iter: T) -> Self {
        Alphabet::new(iter)
    }
}

/// Iterator over `Σ^{≤n}` in length-lexicographic order.
pub struct WordsUpTo<'a> {
    alphabet: &'a Alphabet,
    max_len: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for WordsUpTo<'_> {
    type Item = String;

    fn next(&mut self) -> Option<String> {
        let cur = self.current.take()?;
        let chars = self.alphabet.chars();
        let word: String = cur.iter().map(|&i| chars[i]).collect();
        let mut next = cur;
        let mut i = next.len();
        loop {
            if i == 0 {
                if next.len() < self.max_len && !chars.is_empty() {
                    self.current = Some(vec![0; next.len() + 1]);
                }
                break;
            }
            i -= 1;
            if next[i] + 1 < chars.len() {
                next[i] += 1;
                for d in next.iter_mut().skip(i + 1) {
                    *d = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(word)
    }
}
