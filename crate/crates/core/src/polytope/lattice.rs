use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{check_rank, Error, Result};

/// A point of the lattice `Z^r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        LatticeVector(coords.into())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An integral linear form on `Z^r`, paired with lattice vectors by the dot product.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Covector(pub Vec<i64>);

impl Covector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Covector(coords.into())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, v: &LatticeVector) -> i64 {
        debug_assert_eq!(self.rank(), v.rank());
        self.0.iter().zip(&v.0).map(|(a, b)| a * b).sum()
    }
}

impl Neg for &Covector {
    type Output = Covector;
    fn neg(self) -> Covector {
        Covector(self.0.iter().map(|a| -a).collect())
    }
}

/// A homomorphism `Z^source -> Z^target`, stored as a `target x source` integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeHom {
    source: usize,
    target: usize,
    rows: Vec<Vec<i64>>,
}

impl LatticeHom {
    pub fn new(source: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        for row in &rows {
            check_rank(source, row.len())?;
        }
        Ok(LatticeHom {
            source,
            target: rows.len(),
            rows,
        })
    }

    pub fn identity(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeHom {
            source: rank,
            target: rank,
            rows,
        }
    }

    pub fn zero(source: usize, target: usize) -> Self {
        LatticeHom {
            source,
            target,
            rows: vec![vec![0; source]; target],
        }
    }

    pub fn source_rank(&self) -> usize {
        self.source
    }

    pub fn target_rank(&self) -> usize {
        self.target
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Image of the `j`-th standard basis vector.
    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        check_rank(self.source, v.rank())?;
        Ok(LatticeVector(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn compose(&self, inner: &LatticeHom) -> Result<LatticeHom> {
        if inner.target != self.source {
            return Err(Error::RankMismatch {
                expected: self.source,
                found: inner.target,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..inner.source)
                    .map(|j| (0..self.source).map(|k| r[k] * inner.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        Ok(LatticeHom {
            source: inner.source,
            target: self.target,
            rows,
        })
    }
}
