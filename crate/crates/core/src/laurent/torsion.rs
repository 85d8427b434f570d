use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde_json::{json, Value};

use super::{gcd_univariate, BasedChainComplex, LaurentMatrix, LaurentPoly};
use crate::error::{check_rank, Error, Result};
use crate::polytope::{PolytopeClass, PolytopeGroupElement};

/// A unit of the fraction field of `Z[Z^r]` modulo `± x^m`, stored as `num / den`.
///
/// Both parts are normalized (lex-smallest exponent at the origin with positive
/// coefficient) and common integer content is removed. In rank one the common
/// polynomial gcd is removed as well, so the stored pair is canonical; in higher
/// rank only exact divisibility is simplified. Equality always cross-multiplies.
#[derive(Debug, Clone)]
pub struct TorsionClass {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl TorsionClass {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        check_rank(num.rank(), den.rank())?;
        if num.is_zero() || den.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn trivial(rank: usize) -> Self {
        TorsionClass {
            num: LaurentPoly::one(rank),
            den: LaurentPoly::one(rank),
        }
    }

    /// The class of a single nonzero polynomial.
    pub fn of(p: LaurentPoly) -> Result<Self> {
        let rank = p.rank();
        Self::new(p, LaurentPoly::one(rank))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        let g = num.content().gcd(&den.content());
        let mut num = num.div_scalar(&g).expect("content divides");
        let mut den = den.div_scalar(&g).expect("content divides");
        if num.rank() == 1 {
            let g = gcd_univariate(&num, &den);
            if !g.is_one() {
                num = num.exact_div(&g).expect("gcd divides");
                den = den.exact_div(&g).expect("gcd divides");
            }
        } else if let Some(q) = num.exact_div(&den) {
            num = q;
            den = LaurentPoly::one(den.rank());
        } else if let Some(q) = den.exact_div(&num) {
            den = q;
            num = LaurentPoly::one(num.rank());
        }
        TorsionClass {
            num: num.normalized(),
            den: den.normalized(),
        }
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_trivial(&self) -> bool {
        self.num.associated(&self.den)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank(), other.rank())?;
        Ok(Self::reduced(
            self.num.try_mul(&other.num)?,
            self.den.try_mul(&other.den)?,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inverse())
    }

    pub fn inverse(&self) -> Self {
        TorsionClass {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let k = u32::try_from(n.unsigned_abs()).expect("exponent fits in u32");
        Self::reduced(base.num.pow(k), base.den.pow(k))
    }

    /// The involution: bar applied to numerator and denominator.
    pub fn star(&self) -> Self {
        self.star_with(&OrientationCharacter::Trivial)
    }

    /// The involution twisted by an orientation character.
    pub fn star_with(&self, w: &OrientationCharacter) -> Self {
        Self::reduced(w.bar(&self.num), w.bar(&self.den))
    }

    /// `ℙ`: `[N(num)] - [N(den)]` as a canonical polytope class.
    pub fn polytope(&self) -> PolytopeClass {
        let pos = self.num.newton_polytope().expect("nonzero numerator");
        let neg = self.den.newton_polytope().expect("nonzero denominator");
        PolytopeGroupElement::new(pos, neg)
            .expect("same rank")
            .canonical_class()
    }

    /// `ℙ` of the negative (the inverse, multiplicatively): `[N(den)] - [N(num)]`.
    pub fn polytope_of_negative(&self) -> PolytopeClass {
        self.inverse().polytope()
    }

    /// JSON form `{"den": poly, "num": poly}`.
    pub fn to_json(&self) -> Value {
        json!({ "den": self.den.to_json(), "num": self.num.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let part = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Json(format!("torsion class needs \"{k}\"")))
                .and_then(LaurentPoly::from_json)
        };
        Self::new(part("num")?, part("den")?)
    }
}

impl PartialEq for TorsionClass {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank()
            && (&self.num * &other.den).associated(&(&other.num * &self.den))
    }
}

impl Eq for TorsionClass {}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// An orientation character `w: Z^r -> {±1}`, given by its parity on each basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum OrientationCharacter {
    #[default]
    Trivial,
    /// `w(e_i) = -1` exactly when `flips[i]` is set.
    Flips(Vec<bool>),
}

impl OrientationCharacter {
    /// `Σ r_g g ↦ Σ r_g w(g) g⁻¹`.
    pub fn bar(&self, p: &LaurentPoly) -> LaurentPoly {
        match self {
            OrientationCharacter::Trivial => p.bar(),
            OrientationCharacter::Flips(flips) => {
                let mut out = LaurentPoly::zero(p.rank());
                for (e, c) in p.terms() {
                    let odd = e
                        .iter()
                        .zip(flips)
                        .filter(|&(x, &f)| f && x.rem_euclid(2) == 1)
                        .count()
                        % 2
                        == 1;
                    let neg: Vec<i64> = e.iter().map(|x| -x).collect();
                    out.add_term(neg, if odd { -c.clone() } else { c.clone() });
                }
                out
            }
        }
    }
}

/// Universal torsion with the weak chain contraction `(γ, u) = (c*, Δ)`:
/// `det((Δc + c*)_odd) / det(Δ_odd)`.
pub fn torsion(c: &BasedChainComplex) -> Result<TorsionClass> {
    let defects = c.acyclicity_defects()?;
    if !defects.is_empty() {
        let list: Vec<String> = defects
            .iter()
            .map(|(n, b)| format!("degree {n} has rational Betti number {b}"))
            .collect();
        return Err(Error::NotAcyclic(list.join(", ")));
    }
    let degrees: Vec<i64> = c.degrees().collect();
    let gamma: BTreeMap<i64, LaurentMatrix> = degrees
        .iter()
        .map(|&n| (n, c.differential(n + 1).star()))
        .collect();
    let u: BTreeMap<i64, LaurentMatrix> = degrees.iter().map(|&n| (n, c.laplacian(n))).collect();
    torsion_from_contraction(c, &gamma, &u).map_err(|e| match e {
        Error::ZeroElement => Error::Internal("vanishing determinant on an acyclic complex".into()),
        e => e,
    })
}

/// `det((uc + γ)_odd) / det(u_odd)` for a weak chain contraction `(γ, u)`:
/// `γ_n: C_n -> C_{n+1}`, `u` a chain map with `u_n = c_n γ_{n-1} + γ_n c_{n+1}`
/// and every `det(u_n)` nonzero. Missing entries are zero.
pub fn torsion_from_contraction(
    c: &BasedChainComplex,
    gamma: &BTreeMap<i64, LaurentMatrix>,
    u: &BTreeMap<i64, LaurentMatrix>,
) -> Result<TorsionClass> {
    let rank = c.rank();
    let degrees: Vec<i64> = c.degrees().collect();
    let g = |n: i64| {
        gamma
            .get(&n)
            .cloned()
            .unwrap_or_else(|| LaurentMatrix::zeros(rank, c.dim(n), c.dim(n + 1)))
    };
    let um = |n: i64| {
        u.get(&n)
            .cloned()
            .unwrap_or_else(|| LaurentMatrix::zeros(rank, c.dim(n), c.dim(n)))
    };
    for &n in &degrees {
        if g(n).shape() != (c.dim(n), c.dim(n + 1)) || um(n).shape() != (c.dim(n), c.dim(n)) {
            return Err(Error::Shape(format!("contraction has wrong shape in degree {n}")));
        }
        let homotopy = c
            .differential(n)
            .try_mul(&g(n - 1))?
            .try_add(&g(n).try_mul(&c.differential(n + 1))?)?;
        if homotopy != um(n) {
            return Err(Error::Shape(format!("γc + cγ differs from u in degree {n}")));
        }
        if c.differential(n).try_mul(&um(n - 1))? != um(n).try_mul(&c.differential(n))? {
            return Err(Error::NotAChainMap(format!("u does not commute with c in degree {n}")));
        }
    }

    let odd: Vec<i64> = degrees.iter().copied().filter(|n| n.rem_euclid(2) == 1).collect();
    let even: Vec<i64> = degrees.iter().copied().filter(|n| n.rem_euclid(2) == 0).collect();
    let offsets = |list: &[i64]| {
        let mut at = BTreeMap::new();
        let mut total = 0;
        for &n in list {
            at.insert(n, total);
            total += c.dim(n);
        }
        (at, total)
    };
    let (row_at, rows) = offsets(&odd);
    let (col_at, cols) = offsets(&even);
    if rows != cols {
        return Err(Error::NotAcyclic(format!(
            "odd part has rank {rows} but even part has rank {cols}"
        )));
    }
    let mut block = LaurentMatrix::zeros(rank, rows, cols);
    let mut den = LaurentPoly::one(rank);
    for &o in &odd {
        let r0 = row_at[&o];
        if let Some(&c0) = col_at.get(&(o - 1)) {
            block.put_block(r0, c0, &c.differential(o).try_mul(&um(o - 1))?);
        }
        if let Some(&c0) = col_at.get(&(o + 1)) {
            block.put_block(r0, c0, &g(o));
        }
        den = den.try_mul(&um(o).det()?)?;
    }
    let num = block.det()?;
    TorsionClass::new(num, den)
}

/// The Laplace identity `ρ·ρ* = Π_n det(Δ_n)^{-(-1)^n n}` in the class group.
pub fn laplace_identity_check(c: &BasedChainComplex) -> Result<bool> {
    let rho = torsion(c)?;
    let lhs = rho.try_mul(&rho.star())?;
    let mut rhs = TorsionClass::trivial(c.rank());
    for n in c.degrees().collect::<Vec<_>>() {
        if n == 0 {
            continue;
        }
        let exponent = if n.rem_euclid(2) == 0 { -n } else { n };
        let d = TorsionClass::of(c.laplacian(n).det()?)?;
        rhs = rhs.try_mul(&d.pow(exponent))?;
    }
    Ok(lhs == rhs)
}

/// Both polytope images of a torsion class: `(ℙ(t), ℙ(-t))`.
pub fn torsion_to_polytope(t: &TorsionClass) -> (PolytopeClass, PolytopeClass) {
    (t.polytope(), t.polytope_of_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::ChainMap;
    use crate::polytope::IntegralPolytope;

    fn t(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::univariate(low, c)
    }

    fn class(num: LaurentPoly, den: LaurentPoly) -> TorsionClass {
        TorsionClass::new(num, den).unwrap()
    }

    #[test]
    fn circle() {
        let c = BasedChainComplex::elementary(t(0, &[-1, 1]), 1);
        assert_eq!(torsion(&c).unwrap(), TorsionClass::of(t(0, &[-1, 1])).unwrap());
        assert!(laplace_identity_check(&c).unwrap());
    }

    #[test]
    fn plus_minus_identity_is_trivial() {
        for s in [1, -1] {
            let c = BasedChainComplex::elementary(LaurentPoly::constant(1, s), 1);
            assert!(torsion(&c).unwrap().is_trivial());
        }
    }

    #[test]
    fn sum_multiplies() {
        let a = BasedChainComplex::elementary(t(0, &[-1, 1]), 1);
        let b = BasedChainComplex::elementary(t(0, &[-2, 1]), 1);
        let s = a.direct_sum(&b).unwrap();
        let want = TorsionClass::of(t(0, &[2, -3, 1])).unwrap();
        assert_eq!(torsion(&s).unwrap(), want);
    }

    #[test]
    fn suspension_inverts() {
        let c = BasedChainComplex::elementary(t(0, &[-1, 1]), 1);
        let rho = torsion(&c.suspension()).unwrap();
        assert_eq!(rho, TorsionClass::of(t(0, &[-1, 1])).unwrap().inverse());
    }

    #[test]
    fn cone_of_identity_is_trivial() {
        let c = BasedChainComplex::elementary(t(0, &[-1, 1]), 1);
        let cone = ChainMap::identity(&c).cone();
        assert!(torsion(&cone).unwrap().is_trivial());
        assert!(laplace_identity_check(&cone).unwrap());
    }

    #[test]
    fn non_acyclic_is_rejected() {
        let c = BasedChainComplex::elementary(LaurentPoly::zero(1), 1);
        assert!(matches!(torsion(&c), Err(Error::NotAcyclic(_))));
        let lonely = BasedChainComplex::from_parts_unchecked(
            1,
            BTreeMap::from([(0, 1)]),
            BTreeMap::new(),
        );
        assert!(matches!(torsion(&lonely), Err(Error::NotAcyclic(_))));
    }

    #[test]
    fn star_examples() {
        let a = TorsionClass::of(t(0, &[-1, 1])).unwrap();
        assert_eq!(a.star(), a);
        let b = TorsionClass::of(t(0, &[-2, 1])).unwrap();
        assert_eq!(b.star(), TorsionClass::of(t(0, &[1, -2])).unwrap());
        assert_ne!(b.star(), b);
        assert_eq!(b.star().star(), b);
    }

    #[test]
    fn rank_one_reduction_is_canonical() {
        let num = t(0, &[1, -1, 1]).try_mul(&t(0, &[-1, 1])).unwrap();
        let den = t(3, &[-1, 1]).try_mul(&t(0, &[2])).unwrap();
        let c = class(num, den);
        assert_eq!(c.numerator(), &t(0, &[1, -1, 1]));
        assert_eq!(c.denominator(), &t(0, &[2]));
    }

    #[test]
    fn polytope_images() {
        let z1 = TorsionClass::of(t(0, &[-1, 1])).unwrap();
        let (p, q) = torsion_to_polytope(&z1);
        let unit = PolytopeGroupElement::from_polytope(IntegralPolytope::interval(0, 1))
            .canonical_class();
        assert_eq!(p, unit);
        assert_eq!(q, unit.negate());
        assert!(TorsionClass::trivial(2).polytope().is_zero());
        let trefoil = class(t(0, &[1, -1, 1]), t(0, &[-1, 1]));
        assert_eq!(trefoil.polytope(), unit);
    }

    #[test]
    fn classical_contraction_agrees() {
        // el(A) with A invertible over Z[t^±1]; classical contraction γ = A⁻¹, u = id
        let one = LaurentPoly::one(1);
        let x = t(1, &[1]);
        let a = LaurentMatrix::from_rows(
            1,
            vec![vec![x.clone(), one.clone()], vec![LaurentPoly::zero(1), x.clone()]],
        )
        .unwrap();
        let xi = t(-1, &[1]);
        let a_inv = LaurentMatrix::from_rows(
            1,
            vec![vec![xi.clone(), -&t(-2, &[1])], vec![LaurentPoly::zero(1), xi]],
        )
        .unwrap();
        let c = BasedChainComplex::elementary_matrix(a, 1).unwrap();
        let gamma = BTreeMap::from([(0, a_inv)]);
        let u = BTreeMap::from([
            (0, LaurentMatrix::identity(1, 2)),
            (1, LaurentMatrix::identity(1, 2)),
        ]);
        let classical = torsion_from_contraction(&c, &gamma, &u).unwrap();
        assert!(classical.is_trivial());
        assert_eq!(torsion(&c).unwrap(), classical);
    }

    #[test]
    fn twisted_bar() {
        let w = OrientationCharacter::Flips(vec![true]);
        let p = t(0, &[1, 1]);
        assert_eq!(w.bar(&p), t(-1, &[-1, 1]));
        assert_eq!(w.bar(&w.bar(&p)), p);
        assert_eq!(OrientationCharacter::Trivial.bar(&p), p.bar());
    }

    #[test]
    fn json_round_trip() {
        let c = class(t(0, &[1, -1, 1]), t(0, &[-1, 1]));
        assert_eq!(TorsionClass::from_json(&c.to_json()).unwrap(), c);
    }
}
