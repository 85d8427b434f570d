use std::fmt;

use super::{wirtinger_presentation, Crossing, FreeWord, Letter};
use crate::error::{Error, Result};

/// A finite group presentation with named generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    /// Checks indices and rejects relators that reduce to the empty word.
    pub fn new(names: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        for (k, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::DegenerateRelator(format!("relator {k} is trivial")));
            }
            if let Some(g) = r.max_generator() {
                if g >= names.len() {
                    return Err(Error::GeneratorOutOfRange {
                        index: g,
                        count: names.len(),
                    });
                }
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Generators named `x, y, z, w` when there are at most four, `x0, x1, ...` otherwise.
    pub fn with_default_names(generator_count: usize, relators: Vec<FreeWord>) -> Result<Self> {
        Self::new(default_names(generator_count), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn deficiency(&self) -> i64 {
        self.names.len() as i64 - self.relators.len() as i64
    }

    /// Replaces relator `k` by a cyclic rotation of itself.
    pub fn rotate_relator(&self, k: usize, by: usize) -> Self {
        let mut p = self.clone();
        p.relators[k] = p.relators[k].rotate(by);
        p
    }

    /// Replaces relator `k` by its inverse.
    pub fn invert_relator(&self, k: usize) -> Self {
        let mut p = self.clone();
        p.relators[k] = p.relators[k].inverse();
        p
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # comment
    /// gens: x y
    /// rel: x y X Y
    /// ```
    ///
    /// Upper case spells the inverse, `x^3` and `X^2` are powers, and words over
    /// one-letter names may be written without spaces. A file may instead list
    /// `crossing: over under sign` lines, which yield a simplified Wirtinger
    /// presentation.
    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut rel_lines: Vec<(usize, usize, &str)> = Vec::new();
        let mut crossings: Vec<Crossing> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some(colon) = line.find(':') else {
                let col = line.len() - line.trim_start().len() + 1;
                return Err(parse_error(line_no, col, "expected `gens:`, `rel:` or `crossing:`"));
            };
            let key = line[..colon].trim();
            let body = &line[colon + 1..];
            let body_col = colon + 2;
            match key {
                "gens" => {
                    if names.is_some() {
                        return Err(parse_error(line_no, 1, "duplicate `gens:` line"));
                    }
                    let mut list = Vec::new();
                    for (col, tok) in tokens(body, body_col) {
                        if !is_name(tok) {
                            return Err(parse_error(
                                line_no,
                                col,
                                &format!("generator name {tok:?} must start with a lower-case letter"),
                            ));
                        }
                        if list.iter().any(|n: &String| n == tok) {
                            return Err(parse_error(line_no, col, &format!("duplicate generator {tok:?}")));
                        }
                        list.push(tok.to_string());
                    }
                    if list.is_empty() {
                        return Err(parse_error(line_no, body_col, "no generators given"));
                    }
                    names = Some(list);
                }
                "rel" => rel_lines.push((line_no, body_col, body)),
                "crossing" => crossings.push(parse_crossing(line_no, body_col, body)?),
                _ => {
                    let col = line.len() - line.trim_start().len() + 1;
                    return Err(parse_error(line_no, col, &format!("unknown key {key:?}")));
                }
            }
        }
        if !crossings.is_empty() {
            if names.is_some() || !rel_lines.is_empty() {
                return Err(parse_error(1, 1, "a file lists either crossings or gens/rel lines"));
            }
            return wirtinger_presentation(&crossings);
        }
        let names = names.ok_or_else(|| parse_error(1, 1, "missing `gens:` line"))?;
        let mut relators = Vec::new();
        for (line_no, col, body) in rel_lines {
            relators.push(parse_word(&names, body, line_no, col)?);
        }
        Self::new(names, relators)
    }

    /// Parses from `--gens` and `--rel` style strings.
    pub fn from_strings(gens: &str, rels: &[String]) -> Result<Self> {
        let mut text = format!("gens: {gens}\n");
        for r in rels {
            text.push_str(&format!("rel: {r}\n"));
        }
        Self::parse(&text)
    }

    /// The text format, which [`parse`](Self::parse) reads back.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {}", r.display_with(&self.names))?;
        }
        Ok(())
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    const SHORT: [&str; 4] = ["x", "y", "z", "w"];
    if n <= SHORT.len() {
        SHORT[..n].iter().map(|s| s.to_string()).collect()
    } else {
        (0..n).map(|i| format!("x{i}")).collect()
    }
}

fn parse_error(line: usize, column: usize, message: &str) -> Error {
    Error::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

fn is_name(tok: &str) -> bool {
    let mut chars = tok.chars();
    chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(body: &str, first_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((first_col + s, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((first_col + s, &body[s..]));
    }
    out
}

fn parse_word(names: &[String], body: &str, line: usize, first_col: usize) -> Result<FreeWord> {
    let single_letters = names.iter().all(|n| n.len() == 1);
    let mut letters: Vec<Letter> = Vec::new();
    let toks = tokens(body, first_col);
    if toks.len() == 1 && toks[0].1 == "1" {
        return Err(Error::DegenerateRelator(format!("line {line}: empty relator")));
    }
    for (col, tok) in toks {
        let (base, power) = match tok.split_once('^') {
            Some((b, p)) => {
                let e: i64 = p.parse().map_err(|_| {
                    parse_error(line, col + b.len() + 1, &format!("bad exponent {p:?}"))
                })?;
                (b, e)
            }
            None => (tok, 1),
        };
        if let Some((g, sign)) = lookup(names, base) {
            push_power(&mut letters, g, sign * power);
        } else if single_letters && power == 1 {
            for (k, ch) in base.char_indices() {
                let mut buf = [0u8; 4];
                let (g, sign) = lookup(names, ch.encode_utf8(&mut buf)).ok_or_else(|| {
                    parse_error(line, col + k, &format!("unknown generator {:?}", ch.to_string()))
                })?;
                push_power(&mut letters, g, sign);
            }
        } else {
            return Err(parse_error(line, col, &format!("unknown generator {base:?}")));
        }
    }
    let w = FreeWord::reduce(letters);
    if w.is_empty() {
        return Err(Error::DegenerateRelator(format!(
            "line {line}: relator reduces to the empty word"
        )));
    }
    Ok(w)
}

fn lookup(names: &[String], tok: &str) -> Option<(usize, i64)> {
    if let Some(g) = names.iter().position(|n| n == tok) {
        return Some((g, 1));
    }
    let lower = tok.to_ascii_lowercase();
    if tok.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
        if let Some(g) = names.iter().position(|n| *n == lower) {
            return Some((g, -1));
        }
    }
    None
}

fn push_power(letters: &mut Vec<Letter>, g: usize, e: i64) {
    let l = Letter::new(g, if e >= 0 { 1 } else { -1 });
    letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
}

fn parse_crossing(line: usize, first_col: usize, body: &str) -> Result<Crossing> {
    let toks = tokens(body, first_col);
    if toks.len() != 3 {
        return Err(parse_error(line, first_col, "a crossing is `over under sign`"));
    }
    let arc = |(col, t): (usize, &str)| -> Result<usize> {
        t.parse()
            .map_err(|_| parse_error(line, col, &format!("arc {t:?} is not a non-negative integer")))
    };
    let sign = match toks[2].1 {
        "+" | "+1" | "1" => 1,
        "-" | "-1" => -1,
        other => {
            return Err(parse_error(line, toks[2].0, &format!("sign {other:?} is not + or -")));
        }
    };
    Ok(Crossing {
        over: arc(toks[0])?,
        under: arc(toks[1])?,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_commutator() {
        let p = Presentation::parse("gens: x y\nrel: x y X Y\n").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators()[0], FreeWord::from_powers(&[(0, 1), (1, 1), (0, -1), (1, -1)]));
        assert_eq!(p.deficiency(), 1);
    }

    #[test]
    fn powers_and_compact_words() {
        let a = Presentation::parse("gens: a b\nrel: a^2 b^-3").unwrap();
        let b = Presentation::parse("gens: a b   # torus knot\nrel: aaBBB\n").unwrap();
        let c = Presentation::parse("gens: a b\nrel: a a B^3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn free_group_on_one_generator() {
        let p = Presentation::parse("gens: x\n").unwrap();
        assert!(p.relators().is_empty());
    }

    #[test]
    fn round_trip() {
        let p = Presentation::parse("gens: x y\nrel: x y x Y X Y\n").unwrap();
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn errors_carry_positions() {
        let e = Presentation::parse("gens: x y\nrel: x q\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 8,
                message: "unknown generator \"q\"".into()
            }
        );
        assert!(matches!(
            Presentation::parse("rel: x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: x y\nfoo: x\n"),
            Err(Error::Parse { line: 2, column: 1, .. })
        ));
        assert!(matches!(
            Presentation::parse("gens: x y\nrel: x^z\n"),
            Err(Error::Parse { line: 2, column: 8, .. })
        ));
    }

    #[test]
    fn trivial_relators_are_rejected() {
        assert!(matches!(
            Presentation::parse("gens: x y\nrel: x X\n"),
            Err(Error::DegenerateRelator(_))
        ));
        assert!(matches!(
            Presentation::parse("gens: x y\nrel: 1\n"),
            Err(Error::DegenerateRelator(_))
        ));
    }

    #[test]
    fn crossings_give_wirtinger() {
        let p = Presentation::parse("crossing: 2 0 +\ncrossing: 0 1 +\ncrossing: 1 2 +\n").unwrap();
        assert_eq!(p.deficiency(), 1);
    }
}
