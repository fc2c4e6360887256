//! Finite groups, abelianization, integral homology through normalized bar
//! chains, and the maps induced by inclusion and transfer.

mod bar;
mod catalog;
mod finite;

pub use bar::{
    bar_boundary, bar_chains, bar_rank, check_hom, corestriction_map, corestriction_with, decode, encode,
    group_homology, group_homology_range, h1_to_abelianization, homology_basis, induced_by_hom, push_forward,
    reduced_bar_chains, restriction_map, restriction_with, transfer_chain, verlagerung, Subgroup,
};
pub use catalog::{abelian_semidirect, by_name, catalog, cyclic, dihedral, metacyclic, CatalogEntry};
pub use finite::{Abelianization, FiniteGroup, Presentation, Word, GROUP_SCHEMA_VERSION};

use crate::abgroup::FgAbGroup;
use crate::chain::ChainError;
use crate::guard::SizeGuardExceeded;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("a table for order {order} needs order^2 entries, found {entries}")]
    TableShape { order: usize, entries: usize },
    #[error("table entry {entry} is not below the order {order}")]
    EntryOutOfRange { entry: usize, order: usize },
    #[error("element 0 is not a two-sided identity (fails at {element})")]
    NotIdentity { element: usize },
    #[error("row or column of element {element} is not a permutation")]
    NotLatin { element: usize },
    #[error("({a} {b}) {c} differs from {a} ({b} {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("relator {index} does not evaluate to the identity")]
    BadRelator { index: usize },
    #[error("presentation generators do not generate the group")]
    NotGenerating,
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("coset representatives must meet every left coset once, the identity first")]
    BadTransversal,
    #[error("index map is not a homomorphism")]
    NotAHomomorphism,
    #[error("unsupported group schema version {0}")]
    SchemaVersion(u32),
    #[error("malformed group document: {0}")]
    Json(String),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// `G / [G, G]` in canonical form.
pub fn abelianization(g: &FiniteGroup) -> FgAbGroup {
    g.abelianization_data().group
}
