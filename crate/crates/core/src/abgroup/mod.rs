//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod matrix;
pub mod scalar;
mod smith;
mod sparse;

pub use group::{
    abelian_from_table, cokernel_presentation, iso_test, profinite_complete, AbHom, Cokernel, FgAbGroup,
    FiniteAbelian, ProfiniteFgAb,
};
pub use matrix::IntMatrix;
pub use smith::{hnf, invariant_factors, kernel, rank, snf, KernelBasis, SmithForm};
pub use sparse::{SparseColumn, SparseIntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbGroupError {
    #[error("matrix shape {found:?} does not match generator counts {expected:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("image of generator {generator} is not killed by its order")]
    NotAHomomorphism { generator: usize },
    #[error("homomorphisms are not composable")]
    NotComposable,
}
