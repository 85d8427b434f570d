use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{check_rank, Error, Result};
use crate::polytope::{IntegralPolytope, LatticeVector};

/// An element of `Z[Z^r] = Z[x_1^±1, ..., x_r^±1]`.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, 1)
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn monomial(exponent: Vec<i64>, c: impl Into<BigInt>) -> Self {
        let rank = exponent.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        LaurentPoly { rank, terms }
    }

    /// The variable `x_i`.
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            check_rank(rank, e.len())?;
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    /// Univariate polynomial `Σ coeffs[k] t^(low + k)`.
    pub fn univariate(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(1);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![low + k as i64], BigInt::from(c));
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// `± x^m`, the units of `Z[Z^r]`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn lex_min_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next()
    }

    pub fn lex_max_term(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.rank), |acc, _| &acc * self)
    }

    /// Multiplication by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// The involution `Σ r_g g ↦ Σ r_g g⁻¹` (trivial orientation character).
    pub fn bar(&self) -> Self {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `c`; `None` unless all are divisible.
    pub fn div_scalar(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(LaurentPoly {
            rank: self.rank,
            terms,
        })
    }

    /// Representative of the class modulo `± x^m`: lex-smallest exponent moved to
    /// the origin and its coefficient made positive.
    pub fn normalized(&self) -> Self {
        let Some((e, c)) = self.lex_min_term() else {
            return self.clone();
        };
        let shift: Vec<i64> = e.iter().map(|x| -x).collect();
        let p = self.shift(&shift);
        if c.is_negative() {
            -&p
        } else {
            p
        }
    }

    /// Whether `self = ± x^m · other` for some monomial.
    pub fn associated(&self, other: &Self) -> bool {
        self.rank == other.rank && self.normalized() == other.normalized()
    }

    /// Exact quotient `self / divisor` in `Z[Z^r]`, or `None` if it does not exist.
    ///
    /// Lex-leading terms are cancelled one at a time; every quotient exponent of an
    /// exact division lies in the box between the coordinate-wise extremes, which
    /// bounds the loop.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.rank != divisor.rank {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank));
        }
        let (lo_a, hi_a) = self.exponent_box();
        let (lo_b, hi_b) = divisor.exponent_box();
        let lo: Vec<i64> = lo_a.iter().zip(&lo_b).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = hi_a.iter().zip(&hi_b).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return None;
        }
        let (lead_e, lead_c) = divisor.lex_max_term().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.rank);
        while let Some((e, c)) = rem.lex_max_term() {
            let (q, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            let qe: Vec<i64> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe
                .iter()
                .zip(lo.iter().zip(&hi))
                .any(|(x, (l, h))| x < l || x > h)
            {
                return None;
            }
            for (de, dc) in &divisor.terms {
                let te: Vec<i64> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(dc * &q));
            }
            quot.add_term(qe, q);
        }
        Some(quot)
    }

    /// Coordinate-wise minimum and maximum exponents. Panics on zero.
    pub fn exponent_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.rank];
        let mut hi = vec![i64::MIN; self.rank];
        for e in self.terms.keys() {
            for k in 0..self.rank {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        (lo, hi)
    }

    /// Newton polytope: hull of the exponent vectors with nonzero coefficient.
    pub fn newton_polytope(&self) -> Result<IntegralPolytope> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let pts: Vec<LatticeVector> = self.terms.keys().map(|e| LatticeVector(e.clone())).collect();
        IntegralPolytope::hull_of_rank(self.rank, &pts)
    }

    /// Substitutes `x_i ↦ x^{columns[i]}`, a ring map `Z[Z^r] -> Z[Z^s]`.
    pub fn substitute(&self, target_rank: usize, images: &[Vec<i64>]) -> Result<Self> {
        check_rank(self.rank, images.len())?;
        let mut out = Self::zero(target_rank);
        for (e, c) in &self.terms {
            let mut t = vec![0i64; target_rank];
            for (k, &ek) in e.iter().enumerate() {
                check_rank(target_rank, images[k].len())?;
                for (tj, ij) in t.iter_mut().zip(&images[k]) {
                    *tj += ek * ij;
                }
            }
            out.add_term(t, c.clone());
        }
        Ok(out)
    }

    /// JSON form `{"rank": r, "terms": [[[e...], c], ...]}`, terms in lex order.
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| json!([e, bigint_json(c)]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("polynomial needs an integer \"rank\"".into()))?
            as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("polynomial needs a \"terms\" array".into()))?;
        Self::from_json_terms(rank, terms)
    }

    pub(crate) fn from_json_terms(rank: usize, terms: &[Value]) -> Result<Self> {
        let mut p = Self::zero(rank);
        for t in terms {
            let pair = t
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Json("term must be [exponents, coefficient]".into()))?;
            let e = pair[0]
                .as_array()
                .ok_or_else(|| Error::Json("exponent must be an array".into()))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Json("exponents must be integers".into()))
                })
                .collect::<Result<Vec<i64>>>()?;
            check_rank(rank, e.len())?;
            p.add_term(e, bigint_from_json(&pair[1])?);
        }
        Ok(p)
    }
}

pub(crate) fn bigint_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse::<BigInt>().ok())
        .ok_or_else(|| Error::Json(format!("not an integer: {v}")))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("rank mismatch in Laurent addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("rank mismatch in Laurent subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("rank mismatch in Laurent multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn var_name(rank: usize, k: usize) -> String {
    match rank {
        1 => "t".to_string(),
        2 | 3 => ["x", "y", "z"][k].to_string(),
        _ => format!("x{}", k + 1),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| {
                    if x == 1 {
                        var_name(self.rank, k)
                    } else {
                        format!("{}^{}", var_name(self.rank, k), x)
                    }
                })
                .collect();
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::univariate(low, c)
    }

    #[test]
    fn bar_examples() {
        let z_minus_1 = t(0, &[-1, 1]);
        assert_eq!(z_minus_1.bar(), t(-1, &[1, -1]));
        assert_eq!(z_minus_1.bar().bar(), z_minus_1);
    }

    #[test]
    fn product_with_bar() {
        let p = t(0, &[-1, 1]);
        assert_eq!(&p * &p.bar(), t(-1, &[-1, 2, -1]));
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert!(matches!(a.try_add(&b), Err(Error::RankMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn exact_division() {
        let a = t(0, &[-1, 0, 1]); // t² - 1
        let b = t(0, &[-1, 1]);
        assert_eq!(a.exact_div(&b), Some(t(0, &[1, 1])));
        assert_eq!(t(0, &[1, 0, 1]).exact_div(&b), None);
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        let one = LaurentPoly::one(2);
        let p = &(&x - &one) * &(&(&y * &y) + &x.bar());
        assert_eq!(p.exact_div(&(&x - &one)), Some(&(&y * &y) + &x.bar()));
        assert_eq!(p.exact_div(&(&y - &one)), None);
    }

    #[test]
    fn normalization() {
        let p = t(3, &[-2, 0, 1]);
        assert_eq!(p.normalized(), t(0, &[2, 0, -1]));
        assert!(t(0, &[-1, 1]).associated(&t(-1, &[1, -1])));
        assert!(!t(0, &[-1, 1]).associated(&t(0, &[-2, 1])));
    }

    #[test]
    fn newton_polytope_of_univariate() {
        let p = t(-1, &[1, 0, 3]);
        assert_eq!(p.newton_polytope().unwrap(), IntegralPolytope::interval(-1, 1));
        assert_eq!(LaurentPoly::zero(1).newton_polytope(), Err(Error::ZeroElement));
    }

    #[test]
    fn display() {
        assert_eq!(t(-1, &[-1, 2, -1]).to_string(), "-t + 2 - t^-1");
        let x = LaurentPoly::var(2, 0);
        let y = LaurentPoly::var(2, 1);
        assert_eq!((&(&x * &y) - &LaurentPoly::constant(2, 3)).to_string(), "x*y - 3");
    }

    #[test]
    fn json_round_trip() {
        let p = t(-2, &[5, 0, -7]);
        let v = p.to_json();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"rank":1,"terms":[[[-2],5],[[0],-7]]}"#);
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p);
    }
}
