//! Gcd in `Z[t^±1]` by the primitive pseudo-remainder sequence.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LaurentPoly;

// coefficient list, constant term first, no trailing zeros
type Dense = Vec<BigInt>;

fn to_dense(p: &LaurentPoly) -> Dense {
    let Some((lo, _)) = p.lex_min_term() else {
        return Vec::new();
    };
    let lo = lo[0];
    let hi = p.lex_max_term().unwrap().0[0];
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        v[(e[0] - lo) as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[BigInt]) -> LaurentPoly {
    let mut p = LaurentPoly::zero(1);
    for (k, c) in v.iter().enumerate() {
        p.add_term(vec![k as i64], c.clone());
    }
    p
}

fn trim(v: &mut Dense) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Dense {
    let c = content(v);
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|x| x / &c).collect()
}

// lc(b)^(deg a - deg b + 1) * a mod b
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut r: Dense = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &lr * bk;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor of two rank one Laurent polynomials, normalized
/// modulo `± t^n`. Returns zero only if both inputs are zero.
pub fn gcd_univariate(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert!(a.rank() == 1 && b.rank() == 1, "univariate gcd needs rank one");
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let da = to_dense(a);
    let db = to_dense(b);
    let c = content(&da).gcd(&content(&db));
    let (mut x, mut y) = (primitive(&da), primitive(&db));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let mut g = primitive(&x);
    if g.last().is_some_and(Signed::is_negative) {
        g.iter_mut().for_each(|v| *v = -v.clone());
    }
    from_dense(&g).scale(&c).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::univariate(low, c)
    }

    #[test]
    fn torus_knot_factors() {
        // 1 + t³ and 1 + t² + t⁴ share t² - t + 1
        let g = gcd_univariate(&t(0, &[1, 0, 0, 1]), &t(0, &[1, 0, 1, 0, 1]));
        assert_eq!(g, t(0, &[1, -1, 1]));
    }

    #[test]
    fn coprime_and_content() {
        assert_eq!(gcd_univariate(&t(0, &[-1, 1]), &t(0, &[-2, 1])), t(0, &[1]));
        assert_eq!(gcd_univariate(&t(0, &[4, 6]), &t(3, &[6, 9])), t(0, &[2, 3]));
    }

    #[test]
    fn monomials_are_units() {
        assert_eq!(gcd_univariate(&t(5, &[1]), &t(0, &[3, 1])), t(0, &[1]));
        assert_eq!(gcd_univariate(&t(-2, &[-1, 1]), &LaurentPoly::zero(1)), t(0, &[1, -1]));
    }
}
