use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{FreeWord, Letter};
use crate::error::{Error, Result};
use crate::laurent::{bigint_json, LaurentPoly};
use crate::polytope::LatticeHom;

/// An element of the integral group ring of a free group.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut g = Self::zero();
        g.add_term(w, BigInt::one());
        g
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (FreeWord, C)>,
        C: Into<BigInt>,
    {
        let mut g = Self::zero();
        for (w, c) in terms {
            g.add_term(w, c.into());
        }
        g
    }

    fn add_term(&mut self, w: FreeWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<FreeWord, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &FreeWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Left multiplication by a group element.
    pub fn left_mul_word(&self, w: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (u, c) in &self.terms {
            out.add_term(w * u, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (u, d) in &self.terms {
            out.add_term(u.clone(), d * c);
        }
        out
    }

    /// Image in `Z[Z^r]` under `x_i ↦ pr(x_i)`, with coefficients merged.
    pub fn abelianize(&self, pr: &LatticeHom) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(pr.target_rank());
        for (w, c) in &self.terms {
            if let Some(g) = w.max_generator() {
                if g >= pr.source_rank() {
                    return Err(Error::GeneratorOutOfRange {
                        index: g,
                        count: pr.source_rank(),
                    });
                }
            }
            let sums = crate::polytope::LatticeVector(w.exponent_sums(pr.source_rank()));
            out.add_term(pr.apply(&sums)?.0, c.clone());
        }
        Ok(out)
    }

    /// `[[word, coeff], ...]` in word order, words spelled with `names`.
    pub fn to_json(&self, names: &[String]) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!([w.display_with(names).to_string(), bigint_json(c)]))
                .collect(),
        )
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> RingDisplay<'a> {
        RingDisplay { elem: self, names }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

pub struct RingDisplay<'a> {
    elem: &'a GroupRingElement,
    names: &'a [String],
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.elem.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word = w.display_with(self.names).to_string();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{mag}·{word}")?;
            }
        }
        Ok(())
    }
}

/// `∂w/∂x_i` in `Z[F]`: a letter `x_i` at position `k` contributes the prefix
/// before it, a letter `x_i⁻¹` contributes minus the prefix through it.
pub fn fox_derivative(w: &FreeWord, i: usize, generator_count: usize) -> Result<GroupRingElement> {
    if i >= generator_count {
        return Err(Error::GeneratorOutOfRange {
            index: i,
            count: generator_count,
        });
    }
    if let Some(g) = w.max_generator() {
        if g >= generator_count {
            return Err(Error::GeneratorOutOfRange {
                index: g,
                count: generator_count,
            });
        }
    }
    let mut out = GroupRingElement::zero();
    for (k, l) in w.letters().iter().enumerate() {
        if l.generator != i {
            continue;
        }
        if l.exponent > 0 {
            out.add_term(w.prefix(k), BigInt::one());
        } else {
            out.add_term(w.prefix(k + 1), BigInt::from(-1));
        }
    }
    Ok(out)
}

/// `Σ_i ∂w/∂x_i · (x_i - 1) = w - 1` in `Z[F]`.
pub fn fundamental_identity_check(w: &FreeWord, generator_count: usize) -> bool {
    let mut lhs = GroupRingElement::zero();
    for i in 0..generator_count {
        let Ok(d) = fox_derivative(w, i, generator_count) else {
            return false;
        };
        let xi_minus_1 = &GroupRingElement::from_word(FreeWord::reduce([Letter::new(i, 1)]))
            - &GroupRingElement::one();
        lhs = &lhs + &(&d * &xi_minus_1);
    }
    let rhs = &GroupRingElement::from_word(w.clone()) - &GroupRingElement::one();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &[(usize, i64)]) -> FreeWord {
        FreeWord::from_powers(s)
    }

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn generator_derivatives() {
        let x = FreeWord::generator(0);
        assert_eq!(fox_derivative(&x, 0, 2).unwrap(), GroupRingElement::one());
        assert!(fox_derivative(&x, 1, 2).unwrap().is_zero());
        let xi = x.inverse();
        assert_eq!(
            fox_derivative(&xi, 0, 2).unwrap(),
            GroupRingElement::from_terms([(xi.clone(), -1)])
        );
        assert!(matches!(
            fox_derivative(&x, 2, 2),
            Err(Error::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn commutator() {
        let r = word(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let d = fox_derivative(&r, 0, 2).unwrap();
        let want = GroupRingElement::from_terms([
            (FreeWord::identity(), 1),
            (word(&[(0, 1), (1, 1), (0, -1)]), -1),
        ]);
        assert_eq!(d, want);
        assert_eq!(d.display_with(&names()).to_string(), "1 - x y X");
        let pr = LatticeHom::identity(2);
        let one_minus_y = LaurentPoly::from_terms(2, [(vec![0, 0], 1), (vec![0, 1], -1)]).unwrap();
        assert_eq!(d.abelianize(&pr).unwrap(), one_minus_y);
        assert!(fundamental_identity_check(&r, 2));
    }

    #[test]
    fn trefoil_derivative() {
        let r = word(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)]);
        let d = fox_derivative(&r, 0, 2).unwrap();
        let want = GroupRingElement::from_terms([
            (FreeWord::identity(), 1),
            (word(&[(0, 1), (1, 1)]), 1),
            (word(&[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1)]), -1),
        ]);
        assert_eq!(d, want);
        assert!(fundamental_identity_check(&r, 2));
        assert!(fundamental_identity_check(&FreeWord::generator(0), 1));
    }

    #[test]
    fn ring_arithmetic() {
        let x = GroupRingElement::from_word(FreeWord::generator(0));
        let xi = GroupRingElement::from_word(FreeWord::generator(0).inverse());
        assert_eq!(&x * &xi, GroupRingElement::one());
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &x).coeff(&FreeWord::generator(0)), BigInt::from(2));
    }

    #[test]
    fn json_is_ordered() {
        let r = word(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
        let d = fox_derivative(&r, 0, 2).unwrap();
        assert_eq!(d.to_json(&names()).to_string(), r#"[["1",1],["x y X",-1]]"#);
    }
}
