//! Exact computation of the universal L²-torsion of finite based free chain
//! complexes over Laurent polynomial rings `Z[Z^r]`, the polytope group it maps
//! to, and the Fox-calculus pipeline from group presentations to Thurston-norm
//! data.

pub mod error;
pub mod fox;
pub mod invariants;
pub mod laurent;
pub mod polytope;

pub use error::{Error, Result};
pub use fox::{
    abelianize, fox_derivative, fundamental_identity_check, newton_polytope, one_relator_polytope,
    AbelianizationData, Crossing, FreeWord, GroupRingElement, Letter, Presentation,
};
pub use invariants::{
    duality_check, knot_record, l2_torsion_polytope, presentation_complex, thurston_data,
    universal_torsion_commutative, DualityCheck, PresentationComplex, ThurstonData,
};
pub use laurent::{
    laplace_identity_check, random_acyclic, torsion, torsion_to_polytope, BasedChainComplex,
    ChainMap, LaurentMatrix, LaurentPoly, OrientationCharacter, TorsionClass,
};
pub use polytope::{
    dual_polytope, seminorm_unit_ball, Covector, IntegralPolytope, LatticeHom, LatticeVector,
    PolytopeClass, PolytopeGroupElement, RationalPolytope,
};
