use thiserror::Error;

use crate::syntax::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{what} exceeded the limit of {limit}")]
    Limit { what: &'static str, limit: usize },
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("regex is not deterministic (condition {condition} at {node})")]
    NondeterministicRegex { condition: u8, node: String },
    #[error("automaton is not {0}-deterministic")]
    NotLDeterministic(usize),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid unary DFA: {0}")]
    InvalidDfa(String),
    #[error("invalid word equation: {0}")]
    InvalidEquation(String),
    #[error("terminal {0:?} is not in the alphabet")]
    OutsideAlphabet(char),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource caps shared by the search-based operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Constructed automaton states.
    pub states: usize,
    /// Explored configurations in searches.
    pub configs: usize,
    /// Edges of a memory occurrence graph.
    pub edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            states: 250_000,
            configs: 1_000_000,
            edges: 1_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_states(&self, n: usize) -> Result<()> {
        if n > self.states {
            return Err(Error::Limit {
                what: "state count",
                limit: self.states,
            });
        }
        Ok(())
    }

    pub(crate) fn check_edges(&self, n: usize) -> Result<()> {
        if n > self.edges {
            return Err(Error::Limit {
                what: "edge count",
                limit: self.edges,
            });
        }
        Ok(())
    }

    pub(crate) fn check_configs(&self, n: usize) -> Result<()> {
        if n > self.configs {
            return Err(Error::Limit {
                what: "configuration count",
                limit: self.configs,
            });
        }
        Ok(())
    }
}
