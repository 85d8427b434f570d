use std::fmt;
use std::ops::{Add, Mul};

use serde_json::{json, Value};

use super::LaurentPoly;
use crate::error::{check_rank, Error, Result};

/// Dense matrix over `Z[Z^r]`. A `m x n` matrix `A` represents the right
/// multiplication map `Z[Z^r]^m -> Z[Z^r]^n`, `x ↦ x·A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rank: usize,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rank: usize, rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rank,
            rows,
            cols,
            data: vec![LaurentPoly::zero(rank); rows * cols],
        }
    }

    pub fn identity(rank: usize, n: usize) -> Self {
        let mut m = Self::zeros(rank, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(rank));
        }
        m
    }

    pub fn scalar(p: LaurentPoly) -> Self {
        LaurentMatrix {
            rank: p.rank(),
            rows: 1,
            cols: 1,
            data: vec![p],
        }
    }

    pub fn from_rows(rank: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape(format!(
                    "ragged matrix: row of length {} where {c} expected",
                    row.len()
                )));
            }
            for p in row {
                check_rank(rank, p.rank())?;
                data.push(p);
            }
        }
        Ok(LaurentMatrix {
            rank,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Empty matrix with a prescribed shape where one side is zero.
    pub fn empty(rank: usize, rows: usize, cols: usize) -> Self {
        Self::zeros(rank, rows, cols)
    }

    pub fn rank_of_ring(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rank, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(LaurentMatrix {
            rank: self.rank,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LaurentMatrix {
            rank: self.rank,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.rank, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `A*`: transpose with the involution applied entrywise.
    pub fn star(&self) -> Self {
        let mut out = Self::zeros(self.rank, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).bar());
            }
        }
        out
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Self::zeros(a.rank, a.rows + b.rows, a.cols + b.cols);
        m.put_block(0, 0, a);
        m.put_block(a.rows, a.cols, b);
        m
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rank, self.rows, self.cols);
        for (new, &old) in perm.iter().enumerate() {
            for j in 0..self.cols {
                out.set(new, j, self.get(old, j).clone());
            }
        }
        out
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }

    pub fn scale_row(&self, i: usize, by: &LaurentPoly) -> Self {
        let mut out = self.clone();
        for j in 0..self.cols {
            out.set(i, j, self.get(i, j) * by);
        }
        out
    }

    pub fn scale_col(&self, j: usize, by: &LaurentPoly) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, j, self.get(i, j) * by);
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division is exact
    /// because intermediate entries are minors of the input.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one(self.rank));
        }
        let mut m: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one(self.rank);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(LaurentPoly::zero(self.rank));
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = exact(&num, &prev)?;
                }
                m[i][k] = LaurentPoly::zero(self.rank);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    /// Rank over the fraction field, by fraction-free row echelon reduction.
    pub fn field_rank(&self) -> Result<usize> {
        let mut m: Vec<Vec<LaurentPoly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut r = 0;
        let mut prev = LaurentPoly::one(self.rank);
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(p, r);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                    m[i][j] = exact(&num, &prev)?;
                }
                m[i][c] = LaurentPoly::zero(self.rank);
            }
            prev = m[r][c].clone();
            r += 1;
        }
        Ok(r)
    }

    /// Rows of entries in the JSON term-list encoding.
    pub fn to_json(&self) -> Value {
        json!((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|p| p.to_json()["terms"].clone())
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>())
    }

    pub fn from_json(rank: usize, rows: usize, cols: usize, v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Json("matrix must be an array of rows".into()))?;
        if arr.len() != rows {
            return Err(Error::Shape(format!(
                "matrix has {} rows where {rows} expected",
                arr.len()
            )));
        }
        let mut out = Self::zeros(rank, rows, cols);
        for (i, row) in arr.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Json("matrix row must be an array".into()))?;
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "matrix row has {} entries where {cols} expected",
                    row.len()
                )));
            }
            for (j, entry) in row.iter().enumerate() {
                let terms = entry
                    .as_array()
                    .ok_or_else(|| Error::Json("entry must be a term list".into()))?;
                out.set(i, j, LaurentPoly::from_json_terms(rank, terms)?);
            }
        }
        Ok(out)
    }
}

fn exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
    num.exact_div(den)
        .ok_or_else(|| Error::Internal(format!("inexact Bareiss division of {num} by {den}")))
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        self.try_mul(rhs).expect("shape mismatch in matrix product")
    }
}

impl Add for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn add(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        self.try_add(rhs).expect("shape mismatch in matrix sum")
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
