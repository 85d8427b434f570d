//! Wirtinger presentations from crossing lists, and Tietze simplification.

use super::presentation::default_names;
use super::{FreeWord, Letter, Presentation};
use crate::error::{Error, Result};

/// A crossing of an oriented knot diagram with arcs numbered `0..n` along the
/// orientation: under-arc `under` ends here and arc `under + 1 (mod n)` begins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// One generator per arc and the relator `x_o^s x_i x_o^{-s} x_{i+1}^{-1}` per
/// crossing; one relator is dropped, then the result is simplified.
pub fn wirtinger_presentation(crossings: &[Crossing]) -> Result<Presentation> {
    let n = crossings.len();
    if n == 0 {
        return Err(Error::Unsupported("a diagram needs at least one crossing".into()));
    }
    let mut relators = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for c in crossings {
        for arc in [c.over, c.under] {
            if arc >= n {
                return Err(Error::GeneratorOutOfRange { index: arc, count: n });
            }
        }
        if c.sign != 1 && c.sign != -1 {
            return Err(Error::Unsupported(format!("crossing sign {} is not ±1", c.sign)));
        }
        if std::mem::replace(&mut seen[c.under], true) {
            return Err(Error::Unsupported(format!("arc {} ends at two crossings", c.under)));
        }
        let s = c.sign;
        relators.push(FreeWord::reduce([
            Letter::new(c.over, s),
            Letter::new(c.under, 1),
            Letter::new(c.over, -s),
            Letter::new((c.under + 1) % n, -1),
        ]));
    }
    relators.pop();
    relators.retain(|r| !r.is_empty());
    Ok(simplify(&Presentation::new(default_names(n), relators)?))
}

/// Tietze eliminations: while some relator contains a generator exactly once,
/// solve for it, substitute everywhere and drop both. Shortest relators first.
pub fn simplify(p: &Presentation) -> Presentation {
    let mut names = p.names().to_vec();
    let mut relators: Vec<FreeWord> = p.relators().iter().map(FreeWord::cyclically_reduced).collect();
    loop {
        let mut order: Vec<usize> = (0..relators.len()).collect();
        order.sort_by_key(|&k| (relators[k].len(), k));
        let found = order.into_iter().find_map(|k| {
            let r = &relators[k];
            (0..names.len())
                .find(|&g| r.letters().iter().filter(|l| l.generator == g).count() == 1)
                .map(|g| (k, g))
        });
        let Some((k, g)) = found else { break };
        if names.len() == 1 {
            break;
        }
        let r = relators.remove(k);
        let pos = r.letters().iter().position(|l| l.generator == g).unwrap();
        let before = FreeWord::reduce(r.letters()[..pos].iter().copied());
        let after = FreeWord::reduce(r.letters()[pos + 1..].iter().copied());
        // r = A g^e B = 1  gives  g = (A⁻¹ B⁻¹)^e
        let image = if r.letters()[pos].exponent > 0 {
            &before.inverse() * &after.inverse()
        } else {
            &after * &before
        };
        relators = relators
            .iter()
            .map(|w| substitute(w, g, &image).cyclically_reduced())
            .filter(|w| !w.is_empty())
            .collect();
        names.remove(g);
    }
    Presentation::new(names, relators).expect("elimination keeps indices in range")
}

/// Replaces generator `g` by `image` and renumbers the generators above it.
fn substitute(w: &FreeWord, g: usize, image: &FreeWord) -> FreeWord {
    let shift = |l: Letter| Letter::new(if l.generator > g { l.generator - 1 } else { l.generator }, l.exponent);
    let image_inv = image.inverse();
    let mut letters = Vec::new();
    for &l in w.letters() {
        if l.generator == g {
            let src = if l.exponent > 0 { image } else { &image_inv };
            letters.extend(src.letters().iter().map(|&m| shift(m)));
        } else {
            letters.push(shift(l));
        }
    }
    FreeWord::reduce(letters)
}
