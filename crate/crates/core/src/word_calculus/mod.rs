//! Word arithmetic in F over the infinite generating set `{x_0, x_1, ...}`.

mod cosets;
mod normal_form;
mod rewrite;
mod word;

pub use cosets::{
    coset_minimize, coset_positivize, find_blocks, find_blocks_indices, is_block, is_minimal_block,
    skips, skips_indices, Block, CosetCertificate,
};
pub use normal_form::{group_op, normalize, normalize_with, parity_in_g, GroupOp, NormalForm};
pub use rewrite::{is_irreducible, redex, semi_normal_form, Rule, Strategy};
pub use word::{parse_word, Letter, Word};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("expected a positive normal form, got `{0}`")]
    NotPositive(String),
}
