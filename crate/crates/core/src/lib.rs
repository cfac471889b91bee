//! Deterministic regular expressions with back-references.
//!
//! Regexes with variable bindings `{x:β}` and references `&x` are parsed,
//! given a ref-word semantics and compiled into memory automata with a trap
//! state. A generalized Glushkov construction decides determinism and yields
//! deterministic automata that match in linear time.
//!
//! ```
//! use drx::dtmfa::{match_fast, preprocess};
//! use drx::glushkov::compile_deterministic;
//! use drx::{parse, Alphabet};
//!
//! let r = parse("{x:(a|b)*}c&x")?;
//! let m = compile_deterministic(&r, &Alphabet::infer(&r))?;
//! let table = preprocess(&m);
//! assert!(match_fast(&table, "abcab"));
//! assert!(!match_fast(&table, "abcba"));
//! # Ok::<(), drx::Error>(())
//! ```

pub mod constructions;
pub mod dtmfa;
pub mod error;
pub mod glushkov;
pub mod refsem;
pub mod syntax;
pub mod tmfa;

pub use dtmfa::Dtmfa;
pub use error::{Error, Limits, Result};
pub use syntax::{parse, Alphabet, Regex};
pub use tmfa::{Actions, Instr, Label, Tmfa};
