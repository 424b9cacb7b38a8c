//! Reader for the expanded polynomial grammar shared by every input surface.
//!
//! A polynomial is a sum of terms joined by `+`/`-`. Each term is an optional
//! coefficient (integer or `p/q`) followed by variable powers, optionally
//! separated by `*`: `3/2*x^2*y`, `-x y^3`, `7`. Parentheses are rejected.

use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected character `{found}` at offset {offset}")]
    Unexpected { found: char, offset: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(char),
    #[error("missing exponent after `^` at offset {0}")]
    MissingExponent(usize),
    #[error("zero denominator at offset {0}")]
    ZeroDenominator(usize),
    #[error("empty term at offset {0}")]
    EmptyTerm(usize),
}

/// Parses `input` into a map from exponent vectors (one entry per variable in
/// `vars`) to nonzero coefficients.
pub fn parse_terms(input: &str, vars: &[char]) -> Result<BTreeMap<Vec<u32>, Q>, ParseError> {
    let chars: Vec<(usize, char)> = input
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    if chars.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    let mut pos = 0;
    let mut first = true;
    while pos < chars.len() {
        let start = chars[pos].0;
        let mut negative = false;
        match chars[pos].1 {
            '+' => pos += 1,
            '-' => {
                negative = true;
                pos += 1
            }
            c if !first => {
                return Err(ParseError::Unexpected {
                    found: c,
                    offset: chars[pos].0,
                })
            }
            _ => {}
        }
        first = false;
        let (coef, exps, next) = parse_term(&chars, pos, vars, start)?;
        pos = next;
        let coef = if negative { -coef } else { coef };
        let entry = out.entry(exps).or_insert_with(Q::zero);
        *entry += coef;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn parse_term(
    chars: &[(usize, char)],
    mut pos: usize,
    vars: &[char],
    start: usize,
) -> Result<(Q, Vec<u32>, usize), ParseError> {
    let mut coef = Q::one();
    let mut exps = vec![0u32; vars.len()];
    let mut saw_anything = false;

    if let Some(n) = read_digits(chars, &mut pos) {
        let mut value = Q::from_integer(n);
        if pos < chars.len() && chars[pos].1 == '/' {
            let slash = chars[pos].0;
            pos += 1;
            let d = read_digits(chars, &mut pos).ok_or(ParseError::Unexpected {
                found: '/',
                offset: slash,
            })?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator(slash));
            }
            value /= Q::from_integer(d);
        }
        coef = value;
        saw_anything = true;
    }

    while pos < chars.len() {
        let (offset, c) = chars[pos];
        if c == '+' || c == '-' {
            break;
        }
        if c == '*' {
            // joins a factor to a following variable
            let next_is_var = chars.get(pos + 1).is_some_and(|(_, n)| n.is_ascii_alphabetic());
            if !saw_anything || !next_is_var {
                return Err(ParseError::Unexpected { found: c, offset });
            }
            pos += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(ParseError::Unexpected { found: c, offset });
        }
        let idx = vars
            .iter()
            .position(|v| *v == c)
            .ok_or(ParseError::UnknownVariable(c))?;
        pos += 1;
        let mut power = 1u32;
        if pos < chars.len() && chars[pos].1 == '^' {
            let caret = chars[pos].0;
            pos += 1;
            let e = read_digits(chars, &mut pos).ok_or(ParseError::MissingExponent(caret))?;
            power = u32::try_from(&e).map_err(|_| ParseError::MissingExponent(caret))?;
        }
        exps[idx] += power;
        saw_anything = true;
    }
    if !saw_anything {
        return Err(ParseError::EmptyTerm(start));
    }
    Ok((coef, exps, pos))
}

fn read_digits(chars: &[(usize, char)], pos: &mut usize) -> Option<BigInt> {
    let begin = *pos;
    while *pos < chars.len() && chars[*pos].1.is_ascii_digit() {
        *pos += 1;
    }
    if *pos == begin {
        return None;
    }
    let s: String = chars[begin..*pos].iter().map(|(_, c)| *c).collect();
    BigInt::from_str(&s).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn reads_expanded_terms() {
        let t = parse_terms("y^2 - x^3", &['x', 'y']).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[&vec![0, 2]], q(1));
        assert_eq!(t[&vec![3, 0]], q(-1));

        let t = parse_terms("x^2*y + x*y^2", &['x', 'y']).unwrap();
        assert_eq!(t[&vec![2, 1]], q(1));
        assert_eq!(t[&vec![1, 2]], q(1));

        let t = parse_terms("-3/4 x y - 1/4*y*y + 2", &['x', 'y']).unwrap();
        assert_eq!(t[&vec![1, 1]], frac(-3, 4));
        assert_eq!(t[&vec![0, 2]], frac(-1, 4));
        assert_eq!(t[&vec![0, 0]], q(2));
    }

    #[test]
    fn cancels_and_rejects() {
        let t = parse_terms("x - x", &['x', 'y']).unwrap();
        assert!(t.is_empty());
        assert!(parse_terms("x*y*(x+y)", &['x', 'y']).is_err());
        assert!(parse_terms("x^", &['x', 'y']).is_err());
        for bad in ["*x", "x*", "x**y", "y^2 +* x", "2*", "x*3"] {
            assert!(parse_terms(bad, &['x', 'y']).is_err(), "{bad}");
        }
        assert!(parse_terms("z", &['x', 'y']).is_err());
        assert!(parse_terms("", &['x', 'y']).is_err());
        assert!(parse_terms("x + + y", &['x', 'y']).is_err());
        assert!(parse_terms("1/0 x", &['x']).is_err());
    }
}
