//! Elements of F as exact dyadic PL homeomorphisms and as prefix maps.

mod dyadic;
mod fixed;
mod plmap;
mod prefix;

pub use dyadic::{is_dyadic, parse_rational, Dyadic};
pub use fixed::{components, fixed_set, Components, FixedPiece, FixedSet};
pub use plmap::{oplus, stabilizes, word_to_plmap, PlMap};
pub use prefix::{apply_prefix, BinaryPoint, PrefixMap};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("{0} is outside [0, 1]")]
    OutOfRange(String),
}
