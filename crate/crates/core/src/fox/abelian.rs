//! Abelianization through the Smith normal form of the exponent-sum matrix.

use serde_json::{json, Value};

use super::Presentation;
use crate::error::{Error, Result};
use crate::polytope::LatticeHom;

/// `H_1(G) ≅ Z^r ⊕ (torsion)`, with the projection of the generators onto the free part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianizationData {
    pub free_rank: usize,
    /// `Z^{generators} -> Z^r`, in Hermite normal form.
    pub projection: LatticeHom,
    /// Invariant factors greater than one.
    pub torsion_invariants: Vec<i64>,
}

impl AbelianizationData {
    /// Image of generator `i` in `Z^r`.
    pub fn image(&self, i: usize) -> Vec<i64> {
        self.projection.column(i).0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "free_rank": self.free_rank,
            "projection": self.projection.rows(),
            "torsion_invariants": self.torsion_invariants,
        })
    }
}

/// Exponent-sum matrix, one row per relator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators()
        .iter()
        .map(|r| r.exponent_sums(p.generator_count()))
        .collect()
}

pub fn abelianize(p: &Presentation) -> Result<AbelianizationData> {
    abelianize_matrix(&relation_matrix(p), p.generator_count())
}

/// Abelianization of `Z^k / rowspace(m)`.
pub fn abelianize_matrix(m: &[Vec<i64>], k: usize) -> Result<AbelianizationData> {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    for r in &a {
        if r.len() != k {
            return Err(Error::Shape(format!("relation row of length {} for {k} generators", r.len())));
        }
    }
    // column operations are recorded in v, so that rowspace(m)·v is diagonal
    let mut v: Vec<Vec<i128>> = (0..k)
        .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
        .collect();
    let rows = a.len();
    let mut s = 0;
    while s < rows.min(k) {
        // the smallest entry becomes the pivot, so its size strictly decreases
        while let Some((pi, pj)) = min_nonzero(&a, s) {
            a.swap(s, pi);
            swap_cols(&mut a, s, pj);
            swap_cols(&mut v, s, pj);
            let mut clean = true;
            for i in s + 1..rows {
                let q = a[i][s].div_euclid(a[s][s]);
                if q != 0 {
                    let pivot_row = a[s].clone();
                    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= q * p;
                    }
                }
                clean &= a[i][s] == 0;
            }
            for j in s + 1..k {
                let q = a[s][j].div_euclid(a[s][s]);
                if q != 0 {
                    col_axpy(&mut a, j, s, -q);
                    col_axpy(&mut v, j, s, -q);
                }
                clean &= a[s][j] == 0;
            }
            if !clean {
                continue;
            }
            let d = a[s][s];
            match (s + 1..rows).find(|&i| (s + 1..k).any(|j| a[i][j] % d != 0)) {
                Some(i) => {
                    let row = a[i].clone();
                    for (x, y) in a[s].iter_mut().zip(&row) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[s][s] == 0 {
            break;
        }
        s += 1;
    }
    let torsion_invariants: Vec<i64> = (0..s)
        .map(|i| a[i][i].abs())
        .filter(|&d| d > 1)
        .map(|d| i64::try_from(d).map_err(|_| Error::Internal("invariant factor overflow".into())))
        .collect::<Result<_>>()?;
    let free_rank = k - s;
    let mut proj: Vec<Vec<i128>> = (0..free_rank)
        .map(|j| (0..k).map(|g| v[g][s + j]).collect())
        .collect();
    hermite_rows(&mut proj);
    let rows = proj
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Internal("projection overflow".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AbelianizationData {
        free_rank,
        projection: LatticeHom::new(k, rows)?,
        torsion_invariants,
    })
}

fn min_nonzero(a: &[Vec<i128>], s: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(s) {
        for (j, &x) in row.iter().enumerate().skip(s) {
            if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<i128>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

// column j += c · column s
fn col_axpy(a: &mut [Vec<i128>], j: usize, s: usize, c: i128) {
    for row in a.iter_mut() {
        row[j] += c * row[s];
    }
}

/// Row-style Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Rows are assumed independent.
fn hermite_rows(m: &mut [Vec<i128>]) {
    let rows = m.len();
    if rows == 0 {
        return;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r..
        while let Some(p) = (r..rows)
            .filter(|&i| m[i][c] != 0)
            .min_by_key(|&i| m[i][c].abs())
        {
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                let q = m[i][c].div_euclid(m[r][c]);
                if q != 0 {
                    let pivot = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= q * y;
                    }
                }
                done &= m[i][c] == 0;
            }
            if done {
                break;
            }
        }
        if m[r][c] == 0 {
            continue;
        }
        if m[r][c] < 0 {
            m[r].iter_mut().for_each(|x| *x = -*x);
        }
        for i in 0..r {
            let q = m[i][c].div_euclid(m[r][c]);
            if q != 0 {
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(m: &[Vec<i64>], k: usize) -> AbelianizationData {
        abelianize_matrix(m, k).unwrap()
    }

    #[test]
    fn commutator_is_free_of_rank_two() {
        let a = ab(&[vec![0, 0]], 2);
        assert_eq!(a.free_rank, 2);
        assert_eq!(a.projection, LatticeHom::identity(2));
        assert!(a.torsion_invariants.is_empty());
    }

    #[test]
    fn torus_knot_projection() {
        let a = ab(&[vec![2, -3]], 2);
        assert_eq!(a.free_rank, 1);
        assert_eq!(a.projection.rows(), &[vec![3, 2]]);
        let t = ab(&[vec![1, -1]], 2);
        assert_eq!(t.projection.rows(), &[vec![1, 1]]);
    }

    #[test]
    fn torsion_factors() {
        let a = ab(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(a.free_rank, 0);
        assert_eq!(a.torsion_invariants, vec![6]);
        let b = ab(&[vec![4, 6]], 2);
        assert_eq!(b.free_rank, 1);
        assert_eq!(b.torsion_invariants, vec![2]);
        assert_eq!(b.projection.rows(), &[vec![3, -2]]);
    }

    #[test]
    fn projection_kills_relations() {
        let m = vec![vec![1, 2, -3, 0], vec![0, 4, 2, -2]];
        let a = ab(&m, 4);
        assert_eq!(a.free_rank, 2);
        for row in &m {
            let img = a.projection.apply(&crate::polytope::LatticeVector(row.clone())).unwrap();
            assert!(img.is_zero());
        }
    }

    #[test]
    fn no_relations() {
        let a = ab(&[], 1);
        assert_eq!(a.free_rank, 1);
        assert_eq!(a.projection, LatticeHom::identity(1));
    }
}
