//! Laurent polynomials over `Z[Z^r]`, matrices, based chain complexes and their
//! torsion in the fraction field modulo `± x^m`.

mod complex;
mod matrix;
mod poly;
mod random;
mod torsion;
mod univariate;

pub use complex::{BasedChainComplex, ChainMap};
pub use matrix::LaurentMatrix;
pub use poly::LaurentPoly;
pub(crate) use poly::bigint_json;
pub use random::{random_acyclic, random_acyclic_with, random_poly, RandomAcyclic, RandomComplexParams};
pub use torsion::{
    laplace_identity_check, torsion, torsion_from_contraction, torsion_to_polytope,
    OrientationCharacter, TorsionClass,
};
pub use univariate::gcd_univariate;
