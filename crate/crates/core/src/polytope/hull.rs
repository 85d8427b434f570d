//! Exact extreme-point extraction for finite lattice point sets.
//!
//! Rank 1 and rank 2 use direct exact methods (min/max, monotone chain);
//! higher ranks test each point for membership in the hull of the others
//! with a phase-one simplex over the rationals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::LatticeVector;

/// Returns the extreme points of `points`, sorted lexicographically.
/// All points are assumed to share one rank.
pub fn extreme_points(points: &[LatticeVector]) -> Vec<LatticeVector> {
    let unique: Vec<LatticeVector> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if unique.len() <= 2 {
        return unique;
    }
    match unique[0].rank() {
        0 => unique,
        1 => vec![unique[0].clone(), unique[unique.len() - 1].clone()],
        2 => monotone_chain(&unique),
        _ => extreme_points_lp(&unique),
    }
}

/// Extreme points by linear-programming membership tests, valid in every rank.
pub fn extreme_points_lp(points: &[LatticeVector]) -> Vec<LatticeVector> {
    let unique: Vec<LatticeVector> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if unique.len() <= 2 {
        return unique;
    }
    let n = unique.len();
    (0..n)
        .filter(|&i| {
            // lexicographic extremes are always vertices
            if i == 0 || i == n - 1 {
                return true;
            }
            let others: Vec<&LatticeVector> = unique
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p)
                .collect();
            !in_convex_hull(&unique[i], &others)
        })
        .map(|i| unique[i].clone())
        .collect()
}

fn cross(o: &LatticeVector, a: &LatticeVector, b: &LatticeVector) -> i128 {
    let (ox, oy) = (o.0[0] as i128, o.0[1] as i128);
    (a.0[0] as i128 - ox) * (b.0[1] as i128 - oy) - (a.0[1] as i128 - oy) * (b.0[0] as i128 - ox)
}

// input sorted and deduplicated; collinear points are dropped
fn monotone_chain(sorted: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut hull: Vec<LatticeVector> = Vec::with_capacity(2 * sorted.len());
    for p in sorted {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p.clone());
    }
    let lower_len = hull.len() + 1;
    for p in sorted.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0
        {
            hull.pop();
        }
        hull.push(p.clone());
    }
    hull.pop();
    hull.into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Whether `target` is a convex combination of `points`.
pub fn in_convex_hull(target: &LatticeVector, points: &[&LatticeVector]) -> bool {
    if points.is_empty() {
        return false;
    }
    let r = target.rank();
    let mut a = Vec::with_capacity(r + 1);
    let mut b = Vec::with_capacity(r + 1);
    for k in 0..r {
        a.push(points.iter().map(|p| rat(p.0[k])).collect::<Vec<_>>());
        b.push(rat(target.0[k]));
    }
    a.push(vec![rat(1); points.len()]);
    b.push(rat(1));
    phase_one_feasible(a, b)
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Decides feasibility of `A x = b, x >= 0` exactly (Bland's rule, so no cycling).
pub(crate) fn phase_one_feasible(a: Vec<Vec<BigRational>>, b: Vec<BigRational>) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    let rhs = n + m;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.into_iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t = vec![BigRational::zero(); width];
        for (j, v) in row.into_iter().enumerate() {
            t[j] = if flip { -v } else { v };
        }
        t[n + i] = rat(1);
        t[rhs] = if flip { -bi } else { bi };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // objective: minimise the sum of artificials, stored as reduced costs
    let mut cost = vec![BigRational::zero(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][rhs] / &tab[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &tab[l][rhs] / &tab[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let Some(p) = leave else { break };
        let piv = tab[p][enter].clone();
        for v in tab[p].iter_mut() {
            *v /= &piv;
        }
        let prow = tab[p].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == p || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (v, pv) in cost.iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
        }
        basis[p] = enter;
    }
    cost[rhs].is_zero()
}
