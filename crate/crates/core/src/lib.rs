//! Desk-scale derived class field theory: derived abelianization of finite
//! groups, Dold-Kan and Dold-Thom machinery, class and ray class groups of
//! imaginary quadratic fields, Kummer cohomology, and checks tying them
//! together.

pub mod abgroup;
pub mod cft;
pub mod chain;
pub mod derivedab;
pub mod grouphomology;
pub mod guard;
pub mod json_int;
pub mod numberfield;
pub mod simplicial;
pub mod suite;
