//! Reduced diagrams over the Dunce hat, stored as pairs of binary trees.

mod dot;
mod pair;
mod tree;

pub use dot::diagram_to_dot;
pub use pair::{
    concat, concat_reduce, diagram_to_word, generator_diagram, reduce_dipoles, reduce_dipoles_with,
    word_to_diagram, TreePair,
};
pub use tree::BinTree;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("trees have {0} and {1} leaves")]
    LeafCount(usize, usize),
    #[error("leaf addresses do not form a tree")]
    NotATree,
}
