//! Simplicial abelian groups and finite simplicial sets truncated at a level
//! `N`: the Dold-Kan correspondence in both directions, bar constructions,
//! symmetric powers and the Dold-Thom comparison.

mod abgroup;
mod identities;
mod sset;
mod sym;

pub use abgroup::{dold_kan_round_trip, from_chains, SimplicialAbGroup};
pub use identities::{identities, surjections, Identity, Op};
pub use sset::{bar_construction, FiniteSimplicialSet, SSET_SCHEMA_VERSION};
pub use sym::{dold_thom_check, multiset_count, sym_power, sym_power_chains, DoldThomReport};

use crate::chain::ChainError;
use crate::guard::SizeGuardExceeded;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("a simplicial object needs at least level 0")]
    Empty,
    #[error("wrong number of face or degeneracy maps at level {level}")]
    MapCount { level: usize },
    #[error("a face or degeneracy map at level {level} has the wrong shape")]
    MapShape { level: usize },
    #[error("simplicial identity {identity} fails at level {level} ({full})")]
    Identity {
        identity: String,
        full: String,
        level: usize,
    },
    #[error("basepoint is not preserved at level {level}")]
    Basepoint { level: usize },
    #[error("pi_{degree} needs level {} but the object stops at {top}", .degree + 1)]
    Unreliable { degree: usize, top: usize },
    #[error("complex reaches degree {degree}, beyond level {top}")]
    TooShort { degree: usize, top: usize },
    #[error("normalized chains of the Dold-Kan image differ from the input in degree {degree}")]
    RoundTrip { degree: usize },
    #[error("unsupported simplicial set schema version {0}")]
    SchemaVersion(u32),
    #[error("malformed simplicial set document: {0}")]
    Json(String),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
    #[error(transparent)]
    Chain(#[from] ChainError),
}
