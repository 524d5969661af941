//! Stallings 2-cores of subgroups of F: bouquets of generator diagrams,
//! folding, and deterministic acceptance.

mod automaton;
mod canonical;

pub use automaton::{
    bouquet, build_core, closure_member, fold_to_fixpoint, Cell, FoldEvent, FoldOrder, FoldTrace,
    Origin, Shared, Side, TwoAutomaton,
};
pub use canonical::{core_canonical, CanonicalCore, CellRecord};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("not folded: {0}")]
    NotFolded(String),
    #[error("{0} edge classes are not reachable from the base")]
    Disconnected(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
