//! Road colorings with a prescribed reset word.
//!
//! Given a directed multigraph where every state has out-degree 2 and a binary
//! word `w`, decide whether the edges can be labeled with `a` and `b` so that `w`
//! sends every state to one common state.
//!
//! ```
//! use srcw::{deciders, Graph, Word};
//!
//! let g = Graph::from_targets(&[[1, 2], [2, 0], [0, 0]]).unwrap();
//! let w: Word = "abb".parse().unwrap();
//! let c = deciders::decide_abb_sc(&g).unwrap().unwrap();
//! assert!(c.to_automaton(&g).unwrap().is_reset_word(&w));
//! ```

pub mod automata;
pub mod deciders;
pub mod device;
pub mod dot;
pub mod error;
pub mod exec;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod twosat;
pub mod word;
pub mod wsat;

pub use automata::{brute_srcw, brute_srcw_with, Automaton, Coloring, EdgePair, PartialAutomaton};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Graph, StateSet};
pub use word::{classify, Letter, Word, WordClass};
pub use wsat::{Assignment, WSatInstance};
