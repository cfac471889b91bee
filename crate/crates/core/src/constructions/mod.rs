//! Constructions built on the core: deterministic regexes for unary regular
//! languages, the reduction from word equations to intersection, and a
//! bounded intersection search.

mod intersect;
mod unary;
mod wordeq;

pub use intersect::{bounded_intersection, bounded_intersection_with};
pub use unary::{unary_dfa_to_drx, UnaryDfa};
pub use wordeq::{word_equation_to_drx, Item, WordEquation, SEPARATOR};
