use thiserror::Error;

use crate::word::{Word, WordClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one state")]
    EmptyGraph,
    #[error("edge {index} references state {state}, but the graph has {states} states")]
    StateOutOfRange {
        index: usize,
        state: usize,
        states: usize,
    },
    #[error("state {0} out of range")]
    InvalidState(usize),
    #[error("every state must have out-degree exactly 2")]
    NotOutDegreeTwo,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("invalid letter {0:?}: words are over 'a' and 'b'")]
    InvalidLetter(char),
    #[error("word {word} is in class {class}, expected {expected}")]
    WrongWordClass {
        word: Word,
        class: WordClass,
        expected: &'static str,
    },
    #[error("the empty word is a reset word only for single-state graphs")]
    EmptyWord,
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("assignment covers {got} variables, instance has {expected}")]
    AssignmentSize { expected: usize, got: usize },
    #[error("clause {clause} references variable {var}, but the instance has {vars} variables")]
    VariableOutOfRange {
        clause: usize,
        var: usize,
        vars: usize,
    },
    #[error("variable {0} occurs in no clause")]
    UnusedVariable(usize),
    #[error("instance has no clauses")]
    NoClauses,
    #[error("assignment does not satisfy the instance")]
    UnsatisfyingAssignment,
    #[error("search space too large: {0}")]
    ResourceLimit(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the sink device for {0} is complete")]
    CompleteDevice(Word),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
