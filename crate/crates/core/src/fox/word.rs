use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter {
            generator,
            exponent,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

/// A freely reduced word in the free group on numbered generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord {
            letters: vec![Letter::new(i, 1)],
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    /// Reduces `letters` after checking every generator index against `generator_count`.
    pub fn checked(letters: Vec<Letter>, generator_count: usize) -> Result<Self> {
        for l in &letters {
            if l.generator >= generator_count {
                return Err(Error::GeneratorOutOfRange {
                    index: l.generator,
                    count: generator_count,
                });
            }
        }
        Ok(Self::reduce(letters))
    }

    /// Builds `x_{i1}^{e1} x_{i2}^{e2} ...` from (generator, integer power) pairs.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Self::reduce(powers.iter().flat_map(|&(g, e)| {
            let l = Letter::new(g, if e >= 0 { 1 } else { -1 });
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last() == Some(&l.inverse()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        FreeWord { letters }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        (0..n.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.mul(&base))
    }

    /// Exponent sum of each generator, i.e. the image in `Z^generator_count`.
    pub fn exponent_sums(&self, generator_count: usize) -> Vec<i64> {
        let mut sums = vec![0i64; generator_count];
        for l in &self.letters {
            sums[l.generator] += i64::from(l.exponent);
        }
        sums
    }

    /// Prefix of the first `n` letters; prefixes of reduced words are reduced.
    pub fn prefix(&self, n: usize) -> Self {
        FreeWord {
            letters: self.letters[..n].to_vec(),
        }
    }

    /// Cyclic rotation moving the first `k` letters to the end, then reduced.
    pub fn rotate(&self, k: usize) -> Self {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut v = self.letters[k..].to_vec();
        v.extend_from_slice(&self.letters[..k]);
        Self::reduce(v)
    }

    /// Cyclic reduction: strips letters cancelling across the ends.
    pub fn cyclically_reduced(&self) -> Self {
        let mut l = self.letters.as_slice();
        while l.len() >= 2 && l[0] == l[l.len() - 1].inverse() {
            l = &l[1..l.len() - 1];
        }
        FreeWord { letters: l.to_vec() }
    }

    /// Formats with the given generator names, inverse letters in upper case.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;
    fn mul(self, rhs: &FreeWord) -> FreeWord {
        FreeWord::mul(self, rhs)
    }
}

pub struct WordDisplay<'a> {
    word: &'a FreeWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self
                .names
                .get(l.generator)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l.generator));
            if l.exponent > 0 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{}", name.to_uppercase())?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.exponent < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: Letter = Letter {
        generator: 0,
        exponent: 1,
    };
    const Y: Letter = Letter {
        generator: 1,
        exponent: 1,
    };
    const XI: Letter = Letter {
        generator: 0,
        exponent: -1,
    };
    const YI: Letter = Letter {
        generator: 1,
        exponent: -1,
    };

    #[test]
    fn reduce_cancels() {
        assert!(FreeWord::reduce([X, XI]).is_empty());
        assert_eq!(FreeWord::reduce([X, Y, YI, X]), FreeWord::reduce([X, X]));
    }

    #[test]
    fn mul_and_inverse() {
        let xy = FreeWord::reduce([X, Y]);
        let yix = FreeWord::reduce([YI, X]);
        assert_eq!(&xy * &yix, FreeWord::reduce([X, X]));
        let w = FreeWord::reduce([X, Y, XI]);
        assert_eq!(w.inverse(), FreeWord::reduce([X, YI, XI]));
        assert!((&w * &w.inverse()).is_empty());
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            FreeWord::checked(vec![Letter::new(2, 1)], 2),
            Err(Error::GeneratorOutOfRange { index: 2, count: 2 })
        );
    }

    #[test]
    fn powers_and_sums() {
        let w = FreeWord::from_powers(&[(0, 2), (1, -3)]);
        assert_eq!(w.len(), 5);
        assert_eq!(w.exponent_sums(2), vec![2, -3]);
        assert_eq!(FreeWord::generator(1).pow(-2), FreeWord::reduce([YI, YI]));
    }

    #[test]
    fn cyclic_operations() {
        let w = FreeWord::reduce([X, Y, XI, YI]);
        assert_eq!(w.rotate(1), FreeWord::reduce([Y, XI, YI, X]));
        let c = FreeWord::reduce([Y, X, Y, XI, YI]);
        assert_eq!(c.cyclically_reduced(), FreeWord::reduce([Y]));
        let d = FreeWord::reduce([Y, X, Y, X, YI]);
        assert_eq!(d.cyclically_reduced(), FreeWord::reduce([X, Y, X]));
    }

    #[test]
    fn display() {
        let names = vec!["x".to_string(), "y".to_string()];
        let w = FreeWord::reduce([X, Y, XI, YI]);
        assert_eq!(w.display_with(&names).to_string(), "x y X Y");
        assert_eq!(FreeWord::identity().display_with(&names).to_string(), "1");
    }
}
