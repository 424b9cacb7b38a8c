use super::parse::{parse_terms, ParseError};
use super::univariate::{push_term, UniPoly};
use crate::rational::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Sparse polynomial in `x, y` over ℚ. Keys are `(i, j)` for `x^i y^j`;
/// stored coefficients are never zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Q)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(terms: &[((u32, u32), i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(k, c)| (k, crate::rational::q(c))))
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    /// Total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// Lowest total degree of a nonzero term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).min()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn homogeneous_part(&self, deg: u32) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, j), _)| i + j == deg)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * Q::from_integer(i.into()))),
        )
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * Q::from_integer(j.into()))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let one = Self::monomial(Q::one(), 0, 0);
        (0..k).fold(one, |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// `f(a x + b y, c x + d y)`.
    pub fn linear_substitute(&self, a: &Q, b: &Q, c: &Q, d: &Q) -> Self {
        let u = Self::from_terms([((1, 0), a.clone()), ((0, 1), b.clone())]);
        let v = Self::from_terms([((1, 0), c.clone()), ((0, 1), d.clone())]);
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let upow: Vec<Self> = std::iter::successors(Some(Self::monomial(Q::one(), 0, 0)), |p| Some(p * &u))
            .take(max_i as usize + 1)
            .collect();
        let vpow: Vec<Self> = std::iter::successors(Some(Self::monomial(Q::one(), 0, 0)), |p| Some(p * &v))
            .take(max_j as usize + 1)
            .collect();
        let mut out = Self::zero();
        for (&(i, j), coef) in &self.terms {
            let t = (&upow[i as usize] * &vpow[j as usize]).scale(coef);
            out = &out + &t;
        }
        out
    }

    /// View as a polynomial in `y` with coefficients in ℚ[x], ascending in `y`.
    pub fn as_poly_in_y(&self) -> Vec<UniPoly> {
        let dy = match self.degree_in_y() {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut cols: Vec<Vec<Q>> = vec![Vec::new(); dy + 1];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, Q::zero());
            }
            col[i as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_poly_in_y(coeffs: &[UniPoly]) -> Self {
        let mut out = Self::zero();
        for (j, cx) in coeffs.iter().enumerate() {
            for (i, c) in cx.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        out
    }
}

impl FromStr for BivariatePoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = parse_terms(s, &['x', 'y'])?;
        Ok(Self::from_terms(
            terms.into_iter().map(|(e, c)| ((e[0], e[1]), c)),
        ))
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // descending total degree, then descending power of x
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut out = String::new();
        for k in keys {
            push_term(&mut out, &self.terms[&k], &[('x', k.0), ('y', k.1)]);
        }
        f.write_str(&out)
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms.iter().map(|(k, c)| (*k, -c.clone())))
    }
}
