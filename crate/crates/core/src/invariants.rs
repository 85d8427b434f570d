//! From a presentation to torsion, polytope and candidate Thurston-norm data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fox::{
    abelianize, abelianized_jacobian, fox_derivative, generator_minus_one, one_relator_polytope,
    AbelianizationData, FreeWord, GroupRingElement, Presentation,
};
use crate::laurent::{bigint_json, torsion, BasedChainComplex, LaurentMatrix, LaurentPoly, TorsionClass};
use crate::polytope::{Covector, PolytopeClass};

/// The cellular chain complex of the presentation 2-complex, pushed to `Z[H_1(G)_f]`.
#[derive(Debug, Clone)]
pub struct PresentationComplex {
    pub presentation: Presentation,
    pub ab: AbelianizationData,
    /// Degrees 2, 1, 0: relators, generators, one vertex.
    pub complex: BasedChainComplex,
}

pub fn presentation_complex(p: &Presentation) -> Result<PresentationComplex> {
    let ab = abelianize(p)?;
    let r = ab.free_rank;
    if r == 0 {
        return Err(Error::Unsupported(
            "the abelianization has free rank zero, so there are no Laurent variables".into(),
        ));
    }
    let k = p.generator_count();
    let m = p.relators().len();
    let d1 = LaurentMatrix::from_rows(
        r,
        (0..k)
            .map(|i| {
                let x_minus_1 = generator_minus_one(i).abelianize(&ab.projection)?;
                Ok(vec![x_minus_1])
            })
            .collect::<Result<_>>()?,
    )?;
    let mut dims = BTreeMap::from([(0, 1), (1, k)]);
    let mut diffs = BTreeMap::from([(1, d1)]);
    if m > 0 {
        dims.insert(2, m);
        diffs.insert(2, LaurentMatrix::from_rows(r, abelianized_jacobian(p, &ab)?)?);
    }
    let complex = BasedChainComplex::new(r, dims, diffs)?;
    Ok(PresentationComplex {
        presentation: p.clone(),
        ab,
        complex,
    })
}

/// Torsion of the presentation complex over the free abelian quotient.
pub fn universal_torsion_commutative(p: &Presentation) -> Result<TorsionClass> {
    let pc = presentation_complex(p)?;
    match torsion(&pc.complex) {
        Err(Error::NotAcyclic(why)) => {
            let d2 = pc.complex.differential(2);
            let dead = (0..d2.rows()).find(|&j| d2.row(j).iter().all(LaurentPoly::is_zero));
            match dead {
                Some(j) => Err(Error::CommutativeImageInsufficient(format!(
                    "every Fox derivative of relator {j} vanishes in the free abelian quotient"
                ))),
                None => Err(Error::NotAcyclic(why)),
            }
        }
        other => other,
    }
}

/// Closed form for `⟨x, y | R⟩`: the class of `pr(y - 1) / pr(∂R/∂x)`.
pub fn one_relator_torsion(p: &Presentation) -> Result<TorsionClass> {
    if p.generator_count() != 2 || p.relators().len() != 1 {
        return Err(Error::DegenerateRelator(
            "expected two generators and one relator".into(),
        ));
    }
    let ab = abelianize(p)?;
    if ab.free_rank == 0 {
        return Err(Error::CommutativeImageInsufficient("the abelianization is finite".into()));
    }
    let dx = fox_derivative(&p.relators()[0], 0, 2)?.abelianize(&ab.projection)?;
    let y1 = generator_minus_one(1).abelianize(&ab.projection)?;
    if dx.is_zero() || y1.is_zero() {
        return Err(Error::CommutativeImageInsufficient(
            "a term of the closed formula vanishes in the free abelian quotient".into(),
        ));
    }
    TorsionClass::new(y1, dx)
}

/// `P = ℙ(-ρ)`, the torsion polytope class.
pub fn l2_torsion_polytope(p: &Presentation) -> Result<PolytopeClass> {
    Ok(universal_torsion_commutative(p)?.polytope_of_negative())
}

/// Candidate Thurston data `x(φ) = 2·sn_P(φ)` and the doubled class `2P`.
#[derive(Debug, Clone)]
pub struct ThurstonData {
    pub polytope_class: PolytopeClass,
    pub dual_polytope_class: PolytopeClass,
    /// Whether `*(2P) = 2P`.
    pub star_invariant: bool,
}

impl ThurstonData {
    pub fn rank(&self) -> usize {
        self.polytope_class.rank()
    }

    pub fn seminorm(&self, phi: &Covector) -> Result<BigRational> {
        Ok(self.polytope_class.seminorm(phi)? * BigRational::from_integer(2.into()))
    }
}

pub fn thurston_data(p: &Presentation) -> Result<ThurstonData> {
    let polytope_class = l2_torsion_polytope(p)?;
    let dual_polytope_class = polytope_class.scale(2);
    let star_invariant = dual_polytope_class.star() == dual_polytope_class;
    Ok(ThurstonData {
        polytope_class,
        dual_polytope_class,
        star_invariant,
    })
}

/// Polytope-level shadow of duality: `*(ℙ(ρ)) = ℙ(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityCheck {
    /// False for free groups, which present no closed-up 3-manifold with torus boundary.
    pub applicable: bool,
    pub holds: bool,
}

pub fn duality_check(p: &Presentation) -> Result<DualityCheck> {
    let q = universal_torsion_commutative(p)?.polytope();
    Ok(DualityCheck {
        applicable: !p.relators().is_empty(),
        holds: q.star() == q,
    })
}

/// A rational as a bare integer when integral, otherwise `{"den": d, "num": n}`.
pub fn rational_json(q: &BigRational) -> Value {
    if q.denom().is_one() {
        bigint_json(q.numer())
    } else {
        json!({ "den": bigint_json(q.denom()), "num": bigint_json(q.numer()) })
    }
}

/// The unit covectors `e_1, ..., e_r`.
pub fn basis_covectors(rank: usize) -> Vec<Covector> {
    (0..rank)
        .map(|i| Covector((0..rank).map(|j| i64::from(i == j)).collect()))
        .collect()
}

/// `{checks, polytope_class, presentation, seminorm_samples, torsion}`.
pub fn knot_record(p: &Presentation) -> Result<Value> {
    let rho = universal_torsion_commutative(p)?;
    let data = thurston_data(p)?;
    let pipeline = if p.generator_count() == 2 && p.relators().len() == 1 {
        json!(one_relator_polytope(p)? == data.polytope_class)
    } else {
        Value::Null
    };
    let duality = duality_check(p)?;
    let samples = basis_covectors(data.rank())
        .into_iter()
        .map(|phi| Ok(json!({ "phi": phi.0, "x": rational_json(&data.seminorm(&phi)?) })))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "checks": {
            "duality": if duality.applicable { json!(duality.holds) } else { Value::Null },
            "pipeline": pipeline,
        },
        "polytope_class": data.polytope_class.to_json(),
        "presentation": p.to_text(),
        "seminorm_samples": samples,
        "torsion": rho.to_json(),
    }))
}

/// The group ring element `R - 1` of a relator, handy for diagnostics.
pub fn relator_minus_one(r: &FreeWord) -> GroupRingElement {
    &GroupRingElement::from_word(r.clone()) - &GroupRingElement::one()
}

/// `deg Δ` of a rank-one class, the span of its numerator minus that of its denominator.
pub fn degree_span(t: &TorsionClass) -> Option<i64> {
    if t.rank() != 1 {
        return None;
    }
    let span = |p: &LaurentPoly| p.lex_max_term().unwrap().0[0] - p.lex_min_term().unwrap().0[0];
    Some(span(t.numerator()) - span(t.denominator()))
}

/// Integer helper for building rationals in callers.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
