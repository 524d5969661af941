//! Named subgroups of F: Jones' subgroup, G, the subgroup `psi^-1(F→)`,
//! and stabilizers of finite dyadic sets, with certifying witnesses.

mod chains;
mod jones;
mod stabilizer;
mod witness;

pub use chains::{augmentation_witness, g_witness, psi_inverse};
pub use jones::{
    classify_jones_extension, jones_core, jones_generators, jones_member, psi_map, savchuk_member,
    Extension,
};
pub use stabilizer::{parse_points, stabilizer_generators, stabilizer_member, Stabilizer};
pub use witness::{LeafTag, WitnessExpr};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word_calculus::{parity_in_g, CosetCertificate, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("`{0}` has odd length normal form, so it is not in G")]
    OddParity(String),
    #[error("`{0}` already lies in Jones' subgroup")]
    InJones(String),
    #[error("`{0}` is not a dyadic rational")]
    NotDyadic(String),
    #[error("point {0} is not in the open interval (0, 1)")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown subgroup `{0}` (expected jones, g, savchuk or stab:<points>)")]
    UnknownSubgroup(String),
    #[error("membership routes disagree on `{word}`: evaluation says {pl}, core says {core}")]
    RoutesDisagree { word: String, pl: bool, core: bool },
    #[error("witness check failed: {0}")]
    Witness(String),
}

#[derive(Clone, Debug)]
pub enum NamedSubgroup {
    Jones,
    G,
    SavchukH,
    Stabilizer(Box<Stabilizer>),
}

impl NamedSubgroup {
    pub fn member(&self, w: &Word) -> Result<bool, SubgroupError> {
        match self {
            NamedSubgroup::Jones => Ok(jones_member(w)),
            NamedSubgroup::G => Ok(parity_in_g(w)),
            NamedSubgroup::SavchukH => Ok(savchuk_member(w)),
            NamedSubgroup::Stabilizer(s) => s.member(w),
        }
    }
}

impl FromStr for NamedSubgroup {
    type Err = SubgroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "jones" => Ok(NamedSubgroup::Jones),
            "g" => Ok(NamedSubgroup::G),
            "savchuk" => Ok(NamedSubgroup::SavchukH),
            other => match other.strip_prefix("stab:") {
                Some(pts) => Ok(NamedSubgroup::Stabilizer(Box::new(Stabilizer::new(
                    &parse_points(pts)?,
                )?))),
                None => Err(SubgroupError::UnknownSubgroup(other.to_string())),
            },
        }
    }
}

impl fmt::Display for NamedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSubgroup::Jones => f.write_str("jones"),
            NamedSubgroup::G => f.write_str("g"),
            NamedSubgroup::SavchukH => f.write_str("savchuk"),
            NamedSubgroup::Stabilizer(s) => {
                let pts: Vec<String> = s.points().iter().map(|p| p.to_string()).collect();
                write!(f, "stab:{}", pts.join(","))
            }
        }
    }
}

/// A coset certificate is valid when it checks structurally, its
/// representative has no block, and both multipliers lie in Jones' subgroup.
pub fn verify_coset_certificate(cert: &CosetCertificate, input: &Word) -> bool {
    cert.check(input)
        && cert.is_block_free()
        && jones_member(&cert.left)
        && jones_member(&cert.right)
}
