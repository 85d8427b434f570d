//! Random L²-acyclic complexes with torsion known by construction.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{BasedChainComplex, ChainMap, LaurentMatrix, LaurentPoly, TorsionClass};

/// Knobs for [`random_acyclic_with`].
#[derive(Debug, Clone)]
pub struct RandomComplexParams {
    /// Elementary pieces to combine; zero yields `el(1)`.
    pub pieces: usize,
    /// Terms per random polynomial, at least one.
    pub max_terms: usize,
    pub max_exponent: i64,
    pub max_coeff: i64,
    /// Elementary pieces sit in degrees `1..=max_degree`.
    pub max_degree: i64,
    /// Elementary basis changes applied at the end.
    pub basis_changes: usize,
    /// Whether pieces may be glued by cones of null-homotopic maps.
    pub cones: bool,
}

impl Default for RandomComplexParams {
    fn default() -> Self {
        RandomComplexParams {
            pieces: 3,
            max_terms: 3,
            max_exponent: 2,
            max_coeff: 3,
            max_degree: 2,
            basis_changes: 2,
            cones: true,
        }
    }
}

/// A generated complex and the torsion predicted by bookkeeping.
#[derive(Debug, Clone)]
pub struct RandomAcyclic {
    pub complex: BasedChainComplex,
    pub expected: TorsionClass,
}

/// [`random_acyclic_with`] using default parameters.
pub fn random_acyclic(rank: usize, seed: u64) -> RandomAcyclic {
    random_acyclic_with(rank, seed, &RandomComplexParams::default())
}

/// Builds an acyclic complex from elementary pieces `el(p)`, direct sums,
/// suspensions, cones of null-homotopic maps and unimodular basis changes.
/// The same seed always produces the same complex.
pub fn random_acyclic_with(rank: usize, seed: u64, params: &RandomComplexParams) -> RandomAcyclic {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if params.pieces == 0 {
        return RandomAcyclic {
            complex: BasedChainComplex::elementary(LaurentPoly::one(rank), 1),
            expected: TorsionClass::trivial(rank),
        };
    }
    let (mut complex, mut expected) = random_piece(&mut rng, rank, params);
    for _ in 1..params.pieces {
        let (piece, rho) = random_piece(&mut rng, rank, params);
        match rng.gen_range(0..if params.cones { 4 } else { 2 }) {
            0 | 1 => {
                complex = complex.direct_sum(&piece).expect("same rank");
                expected = expected.try_mul(&rho).expect("same rank");
            }
            2 => {
                // cone(f: piece -> complex) has torsion ρ(complex) / ρ(piece)
                let f = random_null_homotopic(&mut rng, piece, complex, params);
                complex = f.cone();
                expected = expected.try_div(&rho).expect("same rank");
            }
            _ => {
                let f = random_null_homotopic(&mut rng, complex, piece, params);
                complex = f.cone();
                expected = rho.try_div(&expected).expect("same rank");
            }
        }
    }
    for _ in 0..params.basis_changes {
        complex = random_basis_change(&mut rng, &complex, params);
    }
    RandomAcyclic { complex, expected }
}

/// A nonzero polynomial with up to `max_terms` terms.
pub fn random_poly<R: Rng>(rng: &mut R, rank: usize, params: &RandomComplexParams) -> LaurentPoly {
    loop {
        let p = random_poly_maybe_zero(rng, rank, params);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_poly_maybe_zero<R: Rng>(
    rng: &mut R,
    rank: usize,
    params: &RandomComplexParams,
) -> LaurentPoly {
    let mut p = LaurentPoly::zero(rank);
    let m = params.max_exponent.max(0);
    let cmax = params.max_coeff.max(1);
    for _ in 0..rng.gen_range(1..=params.max_terms.max(1)) {
        let e: Vec<i64> = (0..rank).map(|_| rng.gen_range(-m..=m)).collect();
        let mut c = rng.gen_range(-cmax..=cmax);
        if c == 0 {
            c = 1;
        }
        p.add_term(e, c.into());
    }
    p
}

fn random_piece<R: Rng>(
    rng: &mut R,
    rank: usize,
    params: &RandomComplexParams,
) -> (BasedChainComplex, TorsionClass) {
    let p = random_poly(rng, rank, params);
    let degree = rng.gen_range(1..=params.max_degree.max(1));
    let el = BasedChainComplex::elementary(p.clone(), degree);
    let rho = TorsionClass::of(p).expect("nonzero");
    // el(p) in degree n has torsion p^{(-1)^{n+1}}
    if degree.rem_euclid(2) == 1 {
        (el, rho)
    } else {
        (el, rho.inverse())
    }
}

fn random_matrix<R: Rng>(
    rng: &mut R,
    rank: usize,
    rows: usize,
    cols: usize,
    params: &RandomComplexParams,
) -> LaurentMatrix {
    let mut m = LaurentMatrix::zeros(rank, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.5) {
                m.set(i, j, random_poly_maybe_zero(rng, rank, params));
            }
        }
    }
    m
}

fn random_null_homotopic<R: Rng>(
    rng: &mut R,
    source: BasedChainComplex,
    target: BasedChainComplex,
    params: &RandomComplexParams,
) -> ChainMap {
    let rank = source.rank();
    let mut h = BTreeMap::new();
    for n in source.degrees().collect::<Vec<_>>() {
        let (r, c) = (source.dim(n), target.dim(n + 1));
        if r > 0 && c > 0 {
            h.insert(n, random_matrix(rng, rank, r, c, params));
        }
    }
    ChainMap::null_homotopic(source, target, &h).expect("null-homotopic maps are chain maps")
}

/// `P = I + a E_ij` (or a signed monomial rescaling) in a random degree.
fn random_basis_change<R: Rng>(
    rng: &mut R,
    c: &BasedChainComplex,
    params: &RandomComplexParams,
) -> BasedChainComplex {
    let rank = c.rank();
    let degrees: Vec<i64> = c.degrees().collect();
    let n = degrees[rng.gen_range(0..degrees.len())];
    let d = c.dim(n);
    let mut p = LaurentMatrix::identity(rank, d);
    let mut p_inv = LaurentMatrix::identity(rank, d);
    if d >= 2 && rng.gen_bool(0.7) {
        let i = rng.gen_range(0..d);
        let mut j = rng.gen_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        let a = random_poly(rng, rank, params);
        p.set(i, j, a.clone());
        p_inv.set(i, j, -&a);
    } else {
        let i = rng.gen_range(0..d);
        let m = params.max_exponent.max(0);
        let e: Vec<i64> = (0..rank).map(|_| rng.gen_range(-m..=m)).collect();
        let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let inv: Vec<i64> = e.iter().map(|x| -x).collect();
        p.set(i, i, LaurentPoly::monomial(e, s));
        p_inv.set(i, i, LaurentPoly::monomial(inv, s));
    }
    c.change_basis(n, &p, &p_inv).expect("square basis change")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::torsion;

    #[test]
    fn degenerate_request_is_el_one() {
        let params = RandomComplexParams {
            pieces: 0,
            ..Default::default()
        };
        let r = random_acyclic_with(1, 7, &params);
        assert_eq!(r.complex, BasedChainComplex::elementary(LaurentPoly::one(1), 1));
        assert!(r.expected.is_trivial());
    }

    #[test]
    fn reproducible() {
        assert_eq!(random_acyclic(2, 11).complex, random_acyclic(2, 11).complex);
    }

    #[test]
    fn bookkeeping_matches() {
        for seed in 0..20 {
            let r = random_acyclic(1, seed);
            assert!(r.complex.is_valid(), "seed {seed}");
            assert_eq!(torsion(&r.complex).unwrap(), r.expected, "seed {seed}");
        }
    }
}
