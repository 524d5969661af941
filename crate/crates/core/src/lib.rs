//! Exact computation in R. Thompson's group F: normal forms, PL maps, tree
//! pairs, Stallings 2-cores and membership in several named subgroups.

pub mod bits;
pub mod dunce_diagrams;
pub mod pl_maps;
pub mod stallings_core;
pub mod subgroups;
pub mod word_calculus;
