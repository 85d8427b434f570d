//! Integral polytopes in `R ⊗ Z^r` and the Grothendieck group they generate
//! under Minkowski sum.
//!
//! Polytopes are kept in vertex form with exact integer coordinates; the
//! vertex list is always the set of extreme points, sorted lexicographically.
//! Group elements are formal differences compared by the cross-sum rule,
//! and [`PolytopeClass`] is the quotient by lattice translations.

mod dual;
mod hull;
mod lattice;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{check_rank, Error, Result};

pub use dual::{dual_polytope, seminorm_unit_ball, RationalPolytope};
pub use hull::{extreme_points, extreme_points_lp, in_convex_hull};
pub use lattice::{Covector, LatticeHom, LatticeVector};

/// Convex hull of finitely many lattice points, stored by its extreme points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegralPolytope {
    rank: usize,
    vertices: Vec<LatticeVector>,
}

impl IntegralPolytope {
    /// Convex hull of `points`; the result keeps only extreme points.
    pub fn hull<I>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticeVector>,
    {
        let pts: Vec<LatticeVector> = points.into_iter().collect();
        let first = pts.first().ok_or(Error::EmptyPointSet)?;
        let rank = first.rank();
        for p in &pts {
            check_rank(rank, p.rank())?;
        }
        Ok(IntegralPolytope {
            rank,
            vertices: extreme_points(&pts),
        })
    }

    /// Convex hull of an explicit rank; fails on an empty set.
    pub fn hull_of_rank(rank: usize, points: &[LatticeVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for p in points {
            check_rank(rank, p.rank())?;
        }
        Ok(IntegralPolytope {
            rank,
            vertices: extreme_points(points),
        })
    }

    pub fn point(v: LatticeVector) -> Self {
        IntegralPolytope {
            rank: v.rank(),
            vertices: vec![v],
        }
    }

    /// The neutral element `{0}`.
    pub fn origin(rank: usize) -> Self {
        Self::point(LatticeVector::zero(rank))
    }

    /// The rank one interval `[m, n]`.
    pub fn interval(m: i64, n: i64) -> Self {
        let (lo, hi) = if m <= n { (m, n) } else { (n, m) };
        let vertices = if lo == hi {
            vec![LatticeVector::new(vec![lo])]
        } else {
            vec![LatticeVector::new(vec![lo]), LatticeVector::new(vec![hi])]
        };
        IntegralPolytope { rank: 1, vertices }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Lexicographically smallest vertex.
    pub fn lex_min(&self) -> &LatticeVector {
        &self.vertices[0]
    }

    pub fn translate(&self, by: &LatticeVector) -> Self {
        IntegralPolytope {
            rank: self.rank,
            vertices: self.vertices.iter().map(|v| v + by).collect(),
        }
    }

    /// `-P`.
    pub fn negate(&self) -> Self {
        let mut vertices: Vec<LatticeVector> = self.vertices.iter().map(|v| -v).collect();
        vertices.sort();
        IntegralPolytope {
            rank: self.rank,
            vertices,
        }
    }

    /// Dilation by a non-negative integer, equal to the `k`-fold Minkowski sum.
    pub fn dilate(&self, k: u32) -> Self {
        if k == 0 {
            return Self::origin(self.rank);
        }
        let k = i64::from(k);
        IntegralPolytope {
            rank: self.rank,
            vertices: self
                .vertices
                .iter()
                .map(|v| LatticeVector(v.0.iter().map(|c| c * k).collect()))
                .collect(),
        }
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for p in &self.vertices {
            for q in &other.vertices {
                sums.push(p + q);
            }
        }
        Ok(IntegralPolytope {
            rank: self.rank,
            vertices: extreme_points(&sums),
        })
    }

    /// Image under a lattice homomorphism, re-hulled.
    pub fn push_forward(&self, f: &LatticeHom) -> Result<Self> {
        check_rank(f.source_rank(), self.rank)?;
        let imgs = self
            .vertices
            .iter()
            .map(|v| f.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegralPolytope {
            rank: f.target_rank(),
            vertices: extreme_points(&imgs),
        })
    }

    /// `max φ - min φ` over the vertices.
    pub fn width(&self, phi: &Covector) -> Result<i64> {
        check_rank(self.rank, phi.rank())?;
        let vals = self.vertices.iter().map(|v| phi.eval(v));
        let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        Ok(hi - lo)
    }

    /// `½ sup { φ(p0) - φ(p1) | p0, p1 ∈ P }`.
    pub fn seminorm(&self, phi: &Covector) -> Result<BigRational> {
        Ok(BigRational::new(BigInt::from(self.width(phi)?), BigInt::from(2)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "vertices": self.vertices.iter().map(|v| json!(v.0)).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("polytope needs an integer \"rank\"".into()))?
            as usize;
        let verts = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("polytope needs a \"vertices\" array".into()))?;
        let mut pts = Vec::with_capacity(verts.len());
        for p in verts {
            let coords = p
                .as_array()
                .ok_or_else(|| Error::Json("vertex must be an array".into()))?
                .iter()
                .map(|c| {
                    c.as_i64()
                        .ok_or_else(|| Error::Json("vertex coordinates must be integers".into()))
                })
                .collect::<Result<Vec<i64>>>()?;
            pts.push(LatticeVector(coords));
        }
        Self::hull_of_rank(rank, &pts)
    }
}

impl fmt::Display for IntegralPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hull{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A formal difference `[pos] - [neg]` in the Grothendieck group of integral polytopes.
///
/// Equality is the cross-sum rule `pos₀ + neg₁ = pos₁ + neg₀`; no normal form is
/// chosen for the pair itself.
#[derive(Debug, Clone)]
pub struct PolytopeGroupElement {
    pos: IntegralPolytope,
    neg: IntegralPolytope,
}

impl PolytopeGroupElement {
    pub fn new(pos: IntegralPolytope, neg: IntegralPolytope) -> Result<Self> {
        check_rank(pos.rank, neg.rank)?;
        Ok(PolytopeGroupElement { pos, neg })
    }

    /// `[P] - [{0}]`.
    pub fn from_polytope(p: IntegralPolytope) -> Self {
        let neg = IntegralPolytope::origin(p.rank);
        PolytopeGroupElement { pos: p, neg }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_polytope(IntegralPolytope::origin(rank))
    }

    pub fn rank(&self) -> usize {
        self.pos.rank
    }

    pub fn pos(&self) -> &IntegralPolytope {
        &self.pos
    }

    pub fn neg(&self) -> &IntegralPolytope {
        &self.neg
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(PolytopeGroupElement {
            pos: self.pos.minkowski_sum(&other.pos)?,
            neg: self.neg.minkowski_sum(&other.neg)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    /// Cross-sum equality test.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        let lhs = self.pos.minkowski_sum(&other.neg)?;
        let rhs = other.pos.minkowski_sum(&self.neg)?;
        Ok(lhs == rhs)
    }

    /// Integer multiple; negative multiples swap the two sides.
    pub fn scale(&self, k: i64) -> Self {
        let m = k.unsigned_abs() as u32;
        let (pos, neg) = (self.pos.dilate(m), self.neg.dilate(m));
        if k >= 0 {
            PolytopeGroupElement { pos, neg }
        } else {
            PolytopeGroupElement { pos: neg, neg: pos }
        }
    }

    /// The involution induced by `P ↦ -P`.
    pub fn star(&self) -> Self {
        PolytopeGroupElement {
            pos: self.pos.negate(),
            neg: self.neg.negate(),
        }
    }

    pub fn push_forward(&self, f: &LatticeHom) -> Result<Self> {
        Ok(PolytopeGroupElement {
            pos: self.pos.push_forward(f)?,
            neg: self.neg.push_forward(f)?,
        })
    }

    /// `φ ↦ ‖φ‖_pos - ‖φ‖_neg`.
    pub fn seminorm(&self, phi: &Covector) -> Result<BigRational> {
        Ok(self.pos.seminorm(phi)? - self.neg.seminorm(phi)?)
    }

    /// Image under `P_Z(Z) ≅ Z²`, `[[m, n]] ↦ (n - m, m)`, as `(length, offset)`.
    pub fn rank1_iso(&self) -> Result<(i64, i64)> {
        check_rank(1, self.rank())?;
        let coords = |p: &IntegralPolytope| {
            let lo = p.vertices[0].0[0];
            let hi = p.vertices[p.vertices.len() - 1].0[0];
            (hi - lo, lo)
        };
        let (lp, op) = coords(&self.pos);
        let (ln, on) = coords(&self.neg);
        Ok((lp - ln, op - on))
    }

    /// Canonical representative modulo translations.
    pub fn canonical_class(&self) -> PolytopeClass {
        let pos = self.pos.translate(&-self.pos.lex_min());
        let neg = self.neg.translate(&-self.neg.lex_min());
        PolytopeClass {
            element: PolytopeGroupElement { pos, neg },
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "neg": self.neg.to_json(), "pos": self.pos.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let pos = v
            .get("pos")
            .ok_or_else(|| Error::Json("missing \"pos\"".into()))?;
        let neg = v
            .get("neg")
            .ok_or_else(|| Error::Json("missing \"neg\"".into()))?;
        Self::new(
            IntegralPolytope::from_json(pos)?,
            IntegralPolytope::from_json(neg)?,
        )
    }
}

impl PartialEq for PolytopeGroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other).unwrap_or(false)
    }
}

impl Eq for PolytopeGroupElement {}

impl Add for &PolytopeGroupElement {
    type Output = PolytopeGroupElement;
    fn add(self, rhs: &PolytopeGroupElement) -> PolytopeGroupElement {
        self.try_add(rhs).expect("rank mismatch in polytope group addition")
    }
}

impl Sub for &PolytopeGroupElement {
    type Output = PolytopeGroupElement;
    fn sub(self, rhs: &PolytopeGroupElement) -> PolytopeGroupElement {
        self.try_sub(rhs).expect("rank mismatch in polytope group subtraction")
    }
}

impl Neg for &PolytopeGroupElement {
    type Output = PolytopeGroupElement;
    fn neg(self) -> PolytopeGroupElement {
        PolytopeGroupElement {
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }
}

impl fmt::Display for PolytopeGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] - [{}]", self.pos, self.neg)
    }
}

/// An element of the Whitehead quotient `P_Z(H) / H`, stored with both polytopes
/// translated so that their lexicographically smallest vertex is the origin.
///
/// The lexicographic order refers to the stored coordinate order, so canonical
/// forms depend on the chosen basis of the lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeClass {
    element: PolytopeGroupElement,
}

impl PolytopeClass {
    pub fn zero(rank: usize) -> Self {
        PolytopeGroupElement::zero(rank).canonical_class()
    }

    pub fn element(&self) -> &PolytopeGroupElement {
        &self.element
    }

    pub fn rank(&self) -> usize {
        self.element.rank()
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.rank())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(self.element.try_add(&other.element)?.canonical_class())
    }

    pub fn negate(&self) -> Self {
        (-&self.element).canonical_class()
    }

    pub fn scale(&self, k: i64) -> Self {
        self.element.scale(k).canonical_class()
    }

    pub fn star(&self) -> Self {
        self.element.star().canonical_class()
    }

    pub fn seminorm(&self, phi: &Covector) -> Result<BigRational> {
        self.element.seminorm(phi)
    }

    /// Under `P_Z^Wh(Z) ≅ Z`, `[[m, n]] ↦ n - m`.
    pub fn rank1_length(&self) -> Result<i64> {
        Ok(self.element.rank1_iso()?.0)
    }

    pub fn to_json(&self) -> Value {
        self.element.to_json()
    }

    /// Reads any `{"neg", "pos"}` pair and takes its class.
    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(PolytopeGroupElement::from_json(v)?.canonical_class())
    }
}

impl fmt::Display for PolytopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.element.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    fn poly(pts: &[&[i64]]) -> IntegralPolytope {
        IntegralPolytope::hull(pts.iter().map(|p| lv(p))).unwrap()
    }

    fn iv(m: i64, n: i64) -> IntegralPolytope {
        IntegralPolytope::interval(m, n)
    }

    fn diff(p: IntegralPolytope, q: IntegralPolytope) -> PolytopeGroupElement {
        PolytopeGroupElement::new(p, q).unwrap()
    }

    fn half(n: i64) -> BigRational {
        BigRational::new(n.into(), 2.into())
    }

    #[test]
    fn hull_examples() {
        assert_eq!(poly(&[&[0], &[1], &[2]]).vertices(), &[lv(&[0]), lv(&[2])]);
        assert_eq!(poly(&[&[0, 0]]).vertices(), &[lv(&[0, 0])]);
        assert_eq!(
            IntegralPolytope::hull(Vec::<LatticeVector>::new()),
            Err(Error::EmptyPointSet)
        );
        assert!(matches!(
            IntegralPolytope::hull(vec![lv(&[0]), lv(&[0, 1])]),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(iv(0, 1).minkowski_sum(&iv(2, 3)).unwrap(), iv(2, 4));
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(
            sq.minkowski_sum(&IntegralPolytope::origin(2)).unwrap(),
            sq
        );
        let seg = poly(&[&[0, 0], &[1, 1]]);
        let hex = poly(&[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]);
        assert_eq!(sq.minkowski_sum(&seg).unwrap(), hex);
        assert_eq!(hex.vertices().len(), 6);
        assert!(sq.minkowski_sum(&iv(0, 1)).is_err());
    }

    #[test]
    fn group_equality_and_addition() {
        let o = IntegralPolytope::origin(1);
        assert_eq!(diff(iv(0, 1), iv(0, 1)), diff(o.clone(), o.clone()));
        assert_eq!(diff(iv(0, 2), iv(0, 1)), diff(iv(1, 3), iv(1, 2)));
        assert_ne!(diff(iv(0, 2), iv(0, 1)), diff(iv(0, 2), o.clone()));
        let a = diff(iv(0, 1), o.clone());
        assert_eq!(&a + &a, diff(iv(0, 2), o.clone()));
        assert!(diff(iv(0, 1), o).try_eq(&PolytopeGroupElement::zero(2)).is_err());
    }

    #[test]
    fn star_examples() {
        let o = IntegralPolytope::origin(1);
        assert_eq!(diff(iv(0, 1), o.clone()).star(), diff(iv(-1, 0), o));
        let diamond = poly(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]);
        let d = PolytopeGroupElement::from_polytope(diamond.clone());
        assert_eq!(d.star().pos(), &diamond);
        let a = diff(poly(&[&[0, 0], &[2, 1], &[1, 3]]), poly(&[&[1, 1], &[0, 2]]));
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn canonical_class_examples() {
        let c = PolytopeGroupElement::from_polytope(iv(3, 7)).canonical_class();
        assert_eq!(c.element().pos(), &iv(0, 4));
        assert_eq!(c.rank1_length().unwrap(), 4);
        let s = diff(poly(&[&[2, 3]]), poly(&[&[5, 7]])).canonical_class();
        assert!(s.is_zero());
        let t = PolytopeGroupElement::from_polytope(poly(&[&[1, 1], &[2, 3], &[1, 4]]))
            .canonical_class();
        assert_eq!(t.element().pos(), &poly(&[&[0, 0], &[1, 2], &[0, 3]]));
    }

    #[test]
    fn push_forward_examples() {
        let sq = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let proj = LatticeHom::new(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(sq.push_forward(&proj).unwrap(), iv(0, 1));
        let zero = LatticeHom::zero(2, 1);
        assert_eq!(sq.push_forward(&zero).unwrap(), IntegralPolytope::origin(1));
        let sum = LatticeHom::new(2, vec![vec![1, 1]]).unwrap();
        assert_eq!(sq.push_forward(&sum).unwrap(), iv(0, 2));
        assert!(iv(0, 1).push_forward(&sum).is_err());
    }

    #[test]
    fn seminorm_examples() {
        let pt = PolytopeGroupElement::from_polytope(poly(&[&[3, -2]]));
        assert!(pt.seminorm(&Covector::new(vec![5, 7])).unwrap().is_zero());
        let a = PolytopeGroupElement::from_polytope(iv(0, 2));
        assert_eq!(a.seminorm(&Covector::new(vec![1])).unwrap(), half(2));
        let sq = PolytopeGroupElement::from_polytope(poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(sq.seminorm(&Covector::new(vec![1, 1])).unwrap(), half(2));
        assert!(sq.seminorm(&Covector::new(vec![1])).is_err());
    }

    #[test]
    fn rank1_iso_examples() {
        let o = IntegralPolytope::origin(1);
        assert_eq!(diff(iv(0, 3), o.clone()).rank1_iso().unwrap(), (3, 0));
        assert_eq!(diff(iv(2, 5), iv(1, 1)).rank1_iso().unwrap(), (3, 1));
        assert_eq!(diff(o.clone(), o).rank1_iso().unwrap(), (0, 0));
        assert!(PolytopeGroupElement::zero(2).rank1_iso().is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = diff(poly(&[&[0, 0], &[2, 1], &[1, 3]]), poly(&[&[1, 1], &[0, 2]]));
        let back = PolytopeGroupElement::from_json(&a.to_json()).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.pos(), a.pos());
        assert_eq!(
            serde_json::to_string(&iv(0, 2).to_json()).unwrap(),
            r#"{"rank":1,"vertices":[[0],[2]]}"#
        );
    }
}
