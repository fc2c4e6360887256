//! Imaginary quadratic fields: reduced forms and composition, class groups,
//! units, ideals in Hermite form, residue rings and ray class groups.

mod classgroup;
mod field;
mod forms;
mod ideal;
mod ray;

pub use classgroup::{class_group, prime_ideal_class, unit_group, IdealClassGroup, PrimeClass};
pub use field::{fundamental_discriminants, is_fundamental, is_prime, kronecker, primes_below, Elem, ImagQuadField};
pub use forms::{class_number_enumerated, compose_forms, reduced_forms, QuadForm};
pub use ideal::Ideal;
pub use ray::{ray_class_group, residue_units, units_congruent_to_one, RayClassGroup, ResidueUnits};

use crate::guard::SizeGuardExceeded;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumberFieldError {
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("form {form} does not have discriminant {expected}")]
    DiscriminantMismatch { form: QuadForm, expected: i64 },
    #[error("the zero ideal is not allowed")]
    ZeroIdeal,
    #[error("ideal basis is not in Hermite form")]
    NotHermite,
    #[error("lattice is not stable under the ring of integers")]
    NotAnIdeal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(transparent)]
    SizeGuard(#[from] SizeGuardExceeded),
}
