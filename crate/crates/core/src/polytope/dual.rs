//! Polytope duality `X* = { φ | φ(v) <= 1 for all v ∈ X }` at rank at most 3.
//!
//! Facets are enumerated exhaustively: every `r`-subset of points spans a
//! candidate hyperplane, kept when all points lie on one side. A facet
//! `a·x <= b` with `b > 0` contributes the dual vertex `a / b`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Covector, IntegralPolytope};
use crate::error::{check_rank, Error, Result};

/// A polytope with exact rational vertex coordinates, stored by its extreme points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPolytope {
    rank: usize,
    vertices: Vec<Vec<BigRational>>,
}

impl RationalPolytope {
    /// Builds from points already known to be the extreme points.
    fn from_vertices(rank: usize, vertices: BTreeSet<Vec<BigRational>>) -> Self {
        RationalPolytope {
            rank,
            vertices: vertices.into_iter().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        let vs: BTreeSet<Vec<BigRational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|c| c * by).collect())
            .collect();
        Self::from_vertices(self.rank, vs)
    }

    /// `½ (max φ - min φ)` over the vertices.
    pub fn seminorm(&self, phi: &[BigRational]) -> Result<BigRational> {
        check_rank(self.rank, phi.len())?;
        let vals: Vec<BigRational> = self
            .vertices
            .iter()
            .map(|v| dot(v, phi))
            .collect();
        let hi = vals.iter().max().cloned().unwrap_or_else(BigRational::zero);
        let lo = vals.iter().min().cloned().unwrap_or_else(BigRational::zero);
        Ok((hi - lo) / BigRational::from_integer(BigInt::from(2)))
    }

    pub fn seminorm_int(&self, phi: &Covector) -> Result<BigRational> {
        let phi: Vec<BigRational> = phi.0.iter().map(|&c| int(c)).collect();
        self.seminorm(&phi)
    }
}

impl From<&IntegralPolytope> for RationalPolytope {
    fn from(p: &IntegralPolytope) -> Self {
        RationalPolytope {
            rank: p.rank(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.0.iter().map(|&c| int(c)).collect())
                .collect(),
        }
    }
}

impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hull{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, c) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dual of the convex hull of `points`. The points need not be extreme.
pub fn dual_of_points(rank: usize, points: &[Vec<BigRational>]) -> Result<RationalPolytope> {
    if rank == 0 || rank > 3 {
        return Err(Error::UnsupportedRank(rank));
    }
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in points {
        check_rank(rank, p.len())?;
    }
    let pts: Vec<Vec<BigRational>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if affine_dimension(&pts) < rank {
        return Err(Error::UnboundedDual);
    }

    let mut dual_vertices = BTreeSet::new();
    for subset in combinations(pts.len(), rank) {
        let rows: Vec<Vec<BigRational>> = subset
            .iter()
            .map(|&i| {
                let mut row = pts[i].clone();
                row.push(-BigRational::one());
                row
            })
            .collect();
        let null = nullspace(rows, rank + 1);
        if null.len() != 1 {
            continue;
        }
        let mut normal = null.into_iter().next().unwrap();
        let mut offset = normal.pop().unwrap();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let side: Vec<BigRational> = pts.iter().map(|p| dot(&normal, p) - &offset).collect();
        let all_le = side.iter().all(|s| !s.is_positive());
        let all_ge = side.iter().all(|s| !s.is_negative());
        if !all_le && !all_ge {
            continue;
        }
        if !all_le {
            normal.iter_mut().for_each(|c| *c = -c.clone());
            offset = -offset;
        }
        if !offset.is_positive() {
            return Err(Error::UnboundedDual);
        }
        dual_vertices.insert(normal.iter().map(|c| c / &offset).collect::<Vec<_>>());
    }
    Ok(RationalPolytope::from_vertices(rank, dual_vertices))
}

/// `X*` for a polytope `X` with the origin in its interior.
pub fn dual_polytope<P>(x: P) -> Result<RationalPolytope>
where
    P: Into<RationalPolytope>,
{
    let x: RationalPolytope = x.into();
    dual_of_points(x.rank, &x.vertices)
}

impl From<IntegralPolytope> for RationalPolytope {
    fn from(p: IntegralPolytope) -> Self {
        RationalPolytope::from(&p)
    }
}

/// Unit ball `{ φ | ‖φ‖_X <= 1 }` of the seminorm of `X`, a polytope in the dual space.
///
/// `‖φ‖_X <= 1` iff `φ(p - q) <= 2` for all vertices `p, q`, so the ball is the
/// dual of `½ (X + (-X))`. It is bounded only when `X` is full-dimensional.
pub fn seminorm_unit_ball(x: &IntegralPolytope) -> Result<RationalPolytope> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut pts = Vec::new();
    for p in x.vertices() {
        for q in x.vertices() {
            pts.push(
                p.0.iter()
                    .zip(&q.0)
                    .map(|(a, b)| int(a - b) * &half)
                    .collect::<Vec<_>>(),
            );
        }
    }
    dual_of_points(x.rank(), &pts)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn affine_dimension(pts: &[Vec<BigRational>]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let base = &pts[0];
    let rows: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let width = base.len();
    width - nullspace_dim(rows, width)
}

fn nullspace_dim(rows: Vec<Vec<BigRational>>, width: usize) -> usize {
    let (_, pivots) = rref(rows, width);
    width - pivots.len()
}

fn rref(mut rows: Vec<Vec<BigRational>>, width: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &piv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

/// Basis of `{ x | rows · x = 0 }`.
fn nullspace(rows: Vec<Vec<BigRational>>, width: usize) -> Vec<Vec<BigRational>> {
    let (red, pivots) = rref(rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); width];
            x[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = -red[i][f].clone();
            }
            x
        })
        .collect()
}
