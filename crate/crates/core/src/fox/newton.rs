use super::{abelianize, fox_derivative, AbelianizationData, FreeWord, GroupRingElement, Presentation};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polytope::{IntegralPolytope, PolytopeClass, PolytopeGroupElement};

/// Hull of `pr(supp u)`, after coefficients that collide under `pr` are merged.
pub fn newton_polytope(u: &GroupRingElement, ab: &AbelianizationData) -> Result<IntegralPolytope> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    let image = u.abelianize(&ab.projection)?;
    if image.is_zero() {
        return Err(Error::CommutativeImageInsufficient(
            "the element vanishes in the free abelian quotient".into(),
        ));
    }
    image.newton_polytope()
}

/// `g - 1` for a generator `g`, as an element of `Z[F]`.
pub fn generator_minus_one(g: usize) -> GroupRingElement {
    &GroupRingElement::from_word(FreeWord::generator(g)) - &GroupRingElement::one()
}

/// `[P(∂R/∂x)] - [P(y - 1)]` for `⟨x, y | R⟩`.
pub fn one_relator_polytope(p: &Presentation) -> Result<PolytopeClass> {
    one_relator_polytope_wrt(p, 0)
}

/// The same class with the roles of the generators exchanged: `[P(∂R/∂y)] - [P(x - 1)]`.
pub fn one_relator_polytope_swapped(p: &Presentation) -> Result<PolytopeClass> {
    one_relator_polytope_wrt(p, 1)
}

fn one_relator_polytope_wrt(p: &Presentation, wrt: usize) -> Result<PolytopeClass> {
    if p.generator_count() != 2 || p.relators().len() != 1 {
        return Err(Error::DegenerateRelator(format!(
            "expected two generators and one relator, got {} and {}",
            p.generator_count(),
            p.relators().len()
        )));
    }
    let r = p.relators()[0].cyclically_reduced();
    for g in 0..2 {
        if !r.letters().iter().any(|l| l.generator == g) {
            return Err(Error::DegenerateRelator(format!(
                "relator does not involve generator {}",
                p.names()[g]
            )));
        }
    }
    let ab = abelianize(p)?;
    if ab.free_rank == 0 {
        return Err(Error::CommutativeImageInsufficient("the abelianization is finite".into()));
    }
    let d = fox_derivative(&p.relators()[0], wrt, 2)?;
    let pos = newton_polytope(&d, &ab)?;
    let other = 1 - wrt;
    let neg = newton_polytope(&generator_minus_one(other), &ab).map_err(|_| {
        Error::CommutativeImageInsufficient(format!(
            "generator {} maps to zero in the free abelian quotient",
            p.names()[other]
        ))
    })?;
    Ok(PolytopeGroupElement::new(pos, neg)?.canonical_class())
}

/// The abelianized Fox Jacobian: entry `(j, i)` is `pr(∂R_j/∂x_i)`.
pub fn abelianized_jacobian(p: &Presentation, ab: &AbelianizationData) -> Result<Vec<Vec<LaurentPoly>>> {
    p.relators()
        .iter()
        .map(|r| {
            (0..p.generator_count())
                .map(|i| fox_derivative(r, i, p.generator_count())?.abelianize(&ab.projection))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::LatticeVector;

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    fn interval_class(m: i64, n: i64) -> PolytopeClass {
        PolytopeGroupElement::from_polytope(IntegralPolytope::interval(m, n)).canonical_class()
    }

    #[test]
    fn commutator_newton_polytopes() {
        let p = pres("gens: x y\nrel: x y X Y");
        let ab = abelianize(&p).unwrap();
        let d = fox_derivative(&p.relators()[0], 0, 2).unwrap();
        let seg = IntegralPolytope::hull([LatticeVector::new([0, 0]), LatticeVector::new([0, 1])]).unwrap();
        assert_eq!(newton_polytope(&d, &ab).unwrap(), seg);
        assert_eq!(newton_polytope(&generator_minus_one(1), &ab).unwrap(), seg);
        assert!(one_relator_polytope(&p).unwrap().is_zero());
        assert!(one_relator_polytope_swapped(&p).unwrap().is_zero());
    }

    #[test]
    fn trefoil_class() {
        let p = pres("gens: x y\nrel: x y x Y X Y");
        let ab = abelianize(&p).unwrap();
        let d = fox_derivative(&p.relators()[0], 0, 2).unwrap();
        assert_eq!(newton_polytope(&d, &ab).unwrap(), IntegralPolytope::interval(0, 2));
        assert_eq!(one_relator_polytope(&p).unwrap(), interval_class(0, 1));
        assert_eq!(one_relator_polytope_swapped(&p).unwrap(), interval_class(0, 1));
    }

    #[test]
    fn torus_knot_class() {
        let p = pres("gens: x y\nrel: x^2 y^-3");
        assert_eq!(one_relator_polytope(&p).unwrap(), interval_class(0, 1));
        let q = pres("gens: x y\nrel: x^2 y^-5");
        assert_eq!(one_relator_polytope(&q).unwrap(), interval_class(0, 3));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            one_relator_polytope(&pres("gens: x y\nrel: x^3")),
            Err(Error::DegenerateRelator(_))
        ));
        assert!(matches!(
            one_relator_polytope(&pres("gens: x y z\nrel: x y")),
            Err(Error::DegenerateRelator(_))
        ));
        assert!(matches!(
            one_relator_polytope(&pres("gens: x y\nrel: x y X Y\nrel: x")),
            Err(Error::DegenerateRelator(_))
        ));
        assert!(matches!(
            newton_polytope(&GroupRingElement::zero(), &abelianize(&pres("gens: x")).unwrap()),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn cancellation_before_hull() {
        // x y X Y - 1 abelianizes to zero in Z^2
        let p = pres("gens: x y\nrel: x y X Y");
        let ab = abelianize(&p).unwrap();
        let u = &GroupRingElement::from_word(p.relators()[0].clone()) - &GroupRingElement::one();
        assert!(matches!(
            newton_polytope(&u, &ab),
            Err(Error::CommutativeImageInsufficient(_))
        ));
    }
}
