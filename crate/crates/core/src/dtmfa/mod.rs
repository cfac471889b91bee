//! Deterministic automata: ε-removal, completion, complement, linear-time
//! matching, ℓ-determinism and its removal.

mod complete;
mod eps;
mod matching;
mod prefix;

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::tmfa::{is_deterministic, Tmfa};

pub use complete::{complement, complement_with, complete};
pub use eps::remove_epsilon;
pub use matching::{match_direct, match_fast, preprocess, End, MatchTable, RecallEntry, StateStep};
pub use prefix::{is_l_deterministic, is_l_deterministic_with, l_determinize, l_determinize_with};

/// An automaton checked to be deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dtmfa(Tmfa);

impl Dtmfa {
    pub fn new(m: Tmfa) -> Result<Dtmfa> {
        if is_deterministic(&m) {
            Ok(Dtmfa(m))
        } else {
            Err(Error::NotDeterministic)
        }
    }

    pub fn as_tmfa(&self) -> &Tmfa {
        &self.0
    }

    pub fn into_inner(self) -> Tmfa {
        self.0
    }
}

impl Deref for Dtmfa {
    type Target = Tmfa;

    fn deref(&self) -> &Tmfa {
        &self.0
    }
}

impl TryFrom<Tmfa> for Dtmfa {
    type Error = Error;

    fn try_from(m: Tmfa) -> Result<Dtmfa> {
        Dtmfa::new(m)
    }
}
