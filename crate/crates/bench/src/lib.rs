//! Workloads shared by the benchmarks.

use drx::{parse, Regex};

/// The copy language `{w c w}` over `{a, b}`.
pub const COPY: &str = "{x:(a|b)*}c&x";

/// A member of the copy language with `2 * half + 1` symbols.
pub fn copy_word(half: usize) -> String {
    let w: String = (0..half)
        .map(|i| if i % 3 == 0 { 'b' } else { 'a' })
        .collect();
    format!("{w}c{w}")
}

pub fn regex(text: &str) -> Regex {
    parse(text).expect("benchmark regexes are valid")
}
