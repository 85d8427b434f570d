use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polytorsion::fox::{one_relator_polytope, FreeWord, Letter};
use polytorsion::laurent::{random_acyclic, random_acyclic_with, random_poly, RandomComplexParams};
use polytorsion::{
    abelianize, fox_derivative, fundamental_identity_check, laplace_identity_check, torsion,
    BasedChainComplex, ChainMap, Covector, GroupRingElement, IntegralPolytope, LatticeVector,
    LaurentMatrix, LaurentPoly, PolytopeGroupElement, Presentation,
};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(500)
}

fn polytope(rank: usize) -> impl Strategy<Value = IntegralPolytope> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, rank), 1..6).prop_map(move |pts| {
        let pts: Vec<LatticeVector> = pts.into_iter().map(LatticeVector).collect();
        IntegralPolytope::hull_of_rank(rank, &pts).unwrap()
    })
}

fn polytopes_with_covector(n: usize) -> impl Strategy<Value = (Vec<IntegralPolytope>, Covector)> {
    (1usize..=3).prop_flat_map(move |rank| {
        (
            prop::collection::vec(polytope(rank), n),
            prop::collection::vec(-5i64..=5, rank).prop_map(Covector),
        )
    })
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0..gens, prop::bool::ANY), 0..=max_len).prop_map(|ls| {
        FreeWord::reduce(
            ls.into_iter()
                .map(|(g, pos)| Letter::new(g, if pos { 1 } else { -1 })),
        )
    })
}

fn relator() -> impl Strategy<Value = FreeWord> {
    word(2, 10).prop_filter("relator must be nontrivial", |w| !w.is_empty())
}

fn null_homotopy(
    source: &BasedChainComplex,
    target: &BasedChainComplex,
    seed: u64,
) -> BTreeMap<i64, LaurentMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = RandomComplexParams::default();
    source
        .degrees()
        .map(|n| {
            let mut h = LaurentMatrix::zeros(1, source.dim(n), target.dim(n + 1));
            for i in 0..h.rows() {
                for j in 0..h.cols() {
                    h.set(i, j, random_poly(&mut rng, 1, &params));
                }
            }
            (n, h)
        })
        .collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn radstrom_cancellation((ps, _) in polytopes_with_covector(3)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        let cancelled = a.minkowski_sum(c).unwrap() == b.minkowski_sum(c).unwrap();
        prop_assert_eq!(cancelled, a == b);
        let x = PolytopeGroupElement::new(a.minkowski_sum(c).unwrap(), c.clone()).unwrap();
        prop_assert_eq!(x, PolytopeGroupElement::from_polytope(a.clone()));
    }

    #[test]
    fn seminorm_is_additive((ps, phi) in polytopes_with_covector(2)) {
        let sum = ps[0].minkowski_sum(&ps[1]).unwrap();
        prop_assert_eq!(
            sum.seminorm(&phi).unwrap(),
            ps[0].seminorm(&phi).unwrap() + ps[1].seminorm(&phi).unwrap()
        );
    }

    #[test]
    fn seminorm_ignores_star((ps, phi) in polytopes_with_covector(2)) {
        let a = PolytopeGroupElement::new(ps[0].clone(), ps[1].clone()).unwrap();
        prop_assert_eq!(a.star().seminorm(&phi).unwrap(), a.seminorm(&phi).unwrap());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn fox_product_rule(u in word(3, 8), v in word(3, 8), i in 0usize..3) {
        let lhs = fox_derivative(&u.mul(&v), i, 3).unwrap();
        let rhs = &fox_derivative(&u, i, 3).unwrap()
            + &fox_derivative(&v, i, 3).unwrap().left_mul_word(&u);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fox_fundamental_identity(w in word(3, 12)) {
        prop_assert!(fundamental_identity_check(&w, 3));
    }

    #[test]
    fn abelianization_kills_relators(rels in prop::collection::vec(relator(), 1..3)) {
        let p = Presentation::with_default_names(2, rels).unwrap();
        let ab = abelianize(&p).unwrap();
        for r in p.relators() {
            let image = ab.projection.apply(&LatticeVector(r.exponent_sums(2))).unwrap();
            prop_assert!(image.is_zero());
            if ab.free_rank > 0 {
                let g = GroupRingElement::from_word(r.clone()).abelianize(&ab.projection).unwrap();
                prop_assert!(g.is_one());
            }
        }
    }

    #[test]
    fn one_relator_polytope_is_presentation_invariant(r in relator(), by in 0usize..10) {
        let p = Presentation::with_default_names(2, vec![r]).unwrap();
        if let Ok(class) = one_relator_polytope(&p) {
            let len = p.relators()[0].len();
            prop_assert_eq!(&one_relator_polytope(&p.rotate_relator(0, by % len)).unwrap(), &class);
            prop_assert_eq!(&one_relator_polytope(&p.invert_relator(0)).unwrap(), &class);
        }
    }

    #[test]
    fn random_complexes_match_bookkeeping(seed in any::<u64>()) {
        let r = random_acyclic(1, seed);
        prop_assert!(r.complex.is_valid());
        prop_assert_eq!(torsion(&r.complex).unwrap(), r.expected);
    }

    #[test]
    fn suspension_inverts(seed in any::<u64>()) {
        let c = random_acyclic(1, seed).complex;
        let rho = torsion(&c).unwrap();
        prop_assert_eq!(torsion(&c.suspension()).unwrap(), rho.inverse());
    }

    #[test]
    fn laplace_identity(seed in any::<u64>()) {
        let c = random_acyclic(1, seed).complex;
        prop_assert!(laplace_identity_check(&c).unwrap());
    }

    #[test]
    fn cone_depends_only_on_homotopy_class(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let params = RandomComplexParams { pieces: 2, cones: false, ..Default::default() };
        let c = random_acyclic_with(1, s1, &params).complex;
        let d = random_acyclic_with(1, s2, &params).complex;
        let h = null_homotopy(&c, &d, s3);
        let f = ChainMap::null_homotopic(c.clone(), d.clone(), &h).unwrap();
        let zero = ChainMap::null_homotopic(c.clone(), d.clone(), &BTreeMap::new()).unwrap();
        let rho = torsion(&f.cone()).unwrap();
        prop_assert_eq!(&rho, &torsion(&zero.cone()).unwrap());
        prop_assert_eq!(rho, torsion(&d).unwrap().try_div(&torsion(&c).unwrap()).unwrap());
    }

    #[test]
    fn polytope_map_commutes_with_star(seed in any::<u64>(), rank in 1usize..=2) {
        let rho = random_acyclic(rank, seed).expected;
        prop_assert_eq!(rho.star().polytope(), rho.polytope().star());
        prop_assert_eq!(rho.star().star(), rho);
    }
}

#[test]
fn elementary_sign_alternates() {
    let p = LaurentPoly::univariate(0, &[2, -1, 3]);
    for degree in -2i64..=3 {
        let rho = torsion(&BasedChainComplex::elementary(p.clone(), degree)).unwrap();
        let want = polytorsion::TorsionClass::of(p.clone()).unwrap();
        let want = if degree.rem_euclid(2) == 1 { want } else { want.inverse() };
        assert_eq!(rho, want, "degree {degree}");
    }
}
