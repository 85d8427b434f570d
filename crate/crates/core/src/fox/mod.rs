//! Free groups, Fox derivatives, presentations and their abelianization.

mod abelian;
mod newton;
mod presentation;
mod ring;
mod wirtinger;
mod word;

pub use abelian::{abelianize, abelianize_matrix, relation_matrix, AbelianizationData};
pub use newton::{
    abelianized_jacobian, generator_minus_one, newton_polytope, one_relator_polytope,
    one_relator_polytope_swapped,
};
pub use presentation::Presentation;
pub use ring::{fox_derivative, fundamental_identity_check, GroupRingElement, RingDisplay};
pub use wirtinger::{simplify, wirtinger_presentation, Crossing};
pub use word::{FreeWord, Letter, WordDisplay};
