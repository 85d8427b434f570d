//! Fixtures shared by the benchmarks.

use polytorsion::laurent::{random_acyclic_with, RandomComplexParams};
use polytorsion::{BasedChainComplex, IntegralPolytope, LatticeVector, LaurentMatrix, LaurentPoly, Presentation};

pub const KNOTS: [(&str, &str); 4] = [
    ("trefoil", include_str!("../../../corpus/trefoil.pres")),
    ("figure_eight", include_str!("../../../corpus/figure_eight.pres")),
    ("torus_2_5", include_str!("../../../corpus/torus_2_5.pres")),
    ("torus_2_5_wirtinger", include_str!("../../../corpus/torus_2_5_wirtinger.pres")),
];

pub fn knot(text: &str) -> Presentation {
    Presentation::parse(text).expect("corpus presentation")
}

/// An `n x n` univariate matrix with entries `(i + 1) t^j - (j + 1) t^{-i}`.
pub fn dense_matrix(n: usize) -> LaurentMatrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (i, j) = (i as i64, j as i64);
                    &LaurentPoly::monomial(vec![j], i + 1) - &LaurentPoly::monomial(vec![-i], j + 1)
                })
                .collect()
        })
        .collect();
    LaurentMatrix::from_rows(1, rows).expect("square matrix")
}

/// Lattice points on a circle of radius `r`, rounded, in rank 2.
pub fn round_polygon(r: i64, points: usize) -> IntegralPolytope {
    let pts: Vec<LatticeVector> = (0..points)
        .map(|k| {
            let a = k as f64 * std::f64::consts::TAU / points as f64;
            let r = r as f64;
            LatticeVector(vec![(r * a.cos()).round() as i64, (r * a.sin()).round() as i64])
        })
        .collect();
    IntegralPolytope::hull_of_rank(2, &pts).expect("rank-2 points")
}

pub fn acyclic(pieces: usize, seed: u64) -> BasedChainComplex {
    let params = RandomComplexParams {
        pieces,
        ..RandomComplexParams::default()
    };
    random_acyclic_with(1, seed, &params).complex
}
