//! Arithmetic in towers `ℚ ⊂ A_1 ⊂ … ⊂ A_n`, `A_k = A_{k-1}[t_k] / (m_k)`,
//! with every `m_k` monic and square-free.
//!
//! Such an algebra is a finite product of number fields, so each element
//! stands for a Galois-stable family of points at once. Arithmetic proceeds
//! as if over a field; when an inversion meets a zero divisor the offending
//! modulus factors and the computation reports a [`Split`], after which the
//! caller reruns on both factors. The count of geometric points represented
//! by a tower is the product of the modulus degrees.

use crate::poly::push_term;
use crate::rational::{format_q, Q};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Alg {
    Rat(Q),
    /// Reduced residue `Σ c_i t^i` with exactly `deg m_k` coefficients.
    Ext(Vec<Alg>),
}

/// The modulus of `level` factors as `factors.0 * factors.1`.
#[derive(Clone, Debug)]
pub(crate) struct Split {
    pub level: usize,
    pub factors: (Vec<Alg>, Vec<Alg>),
}

pub(crate) type Res<T> = Result<T, Split>;

#[derive(Clone, Debug, Default)]
pub(crate) struct Tower {
    /// `moduli[k]` is a monic polynomial over level `k` defining level `k + 1`.
    moduli: Vec<Vec<Alg>>,
}

impl Alg {
    pub fn is_zero(&self) -> bool {
        match self {
            Alg::Rat(q) => q.is_zero(),
            Alg::Ext(v) => v.iter().all(Alg::is_zero),
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Alg::Rat(q) => Some(q),
            Alg::Ext(_) => None,
        }
    }

    pub fn add(&self, other: &Alg) -> Alg {
        match (self, other) {
            (Alg::Rat(a), Alg::Rat(b)) => Alg::Rat(a + b),
            (Alg::Ext(a), Alg::Ext(b)) => Alg::Ext(a.iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            _ => panic!("mixed tower levels"),
        }
    }

    pub fn neg(&self) -> Alg {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &Alg) -> Alg {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Alg {
        match self {
            Alg::Rat(a) => Alg::Rat(a * c),
            Alg::Ext(v) => Alg::Ext(v.iter().map(|x| x.scale(c)).collect()),
        }
    }

    fn render(&self, level: usize) -> String {
        match self {
            Alg::Rat(q) => format_q(q),
            Alg::Ext(v) => {
                let var = format!("a{level}");
                let mut parts = Vec::new();
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let c_str = c.render(level - 1);
                    let c_str = if matches!(c, Alg::Ext(_)) { format!("({c_str})") } else { c_str };
                    parts.push(match i {
                        0 => c_str,
                        1 => format!("{c_str}*{var}"),
                        _ => format!("{c_str}*{var}^{i}"),
                    });
                }
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }
}

impl Tower {
    pub fn top(&self) -> usize {
        self.moduli.len()
    }

    fn deg(&self, level: usize) -> usize {
        self.moduli[level - 1].len() - 1
    }

    /// Number of geometric points a residue over this tower stands for.
    pub fn degree(&self) -> usize {
        self.moduli.iter().map(|m| m.len() - 1).product()
    }

    pub fn zero(&self, level: usize) -> Alg {
        self.constant(level, Q::zero())
    }

    pub fn one(&self, level: usize) -> Alg {
        self.constant(level, Q::one())
    }

    /// The rational `c` as an element of `level`.
    pub fn constant(&self, level: usize, c: Q) -> Alg {
        if level == 0 {
            return Alg::Rat(c);
        }
        let mut v = vec![self.zero(level - 1); self.deg(level)];
        v[0] = self.constant(level - 1, c);
        Alg::Ext(v)
    }

    /// Embeds an element of `level - 1` as a constant at `level`.
    pub fn lift(&self, level: usize, a: Alg) -> Alg {
        let mut v = vec![self.zero(level - 1); self.deg(level)];
        v[0] = a;
        Alg::Ext(v)
    }

    /// The class of `t_level`.
    pub fn generator(&self, level: usize) -> Alg {
        let mut v = vec![self.zero(level - 1); self.deg(level)];
        if v.len() > 1 {
            v[1] = self.one(level - 1);
            Alg::Ext(v)
        } else {
            // linear modulus t + c: t = -c
            Alg::Ext(vec![self.moduli[level - 1][0].neg()])
        }
    }

    /// Adjoins a root of the monic square-free `modulus` over the top level.
    pub fn extend(&self, modulus: Vec<Alg>) -> Tower {
        let mut t = self.clone();
        t.moduli.push(modulus);
        t
    }

    pub fn mul(&self, level: usize, a: &Alg, b: &Alg) -> Alg {
        match (a, b) {
            (Alg::Rat(x), Alg::Rat(y)) => Alg::Rat(x * y),
            (Alg::Ext(va), Alg::Ext(vb)) => {
                let prod = self.poly_mul(level - 1, va, vb);
                self.reduce_vec(level, prod)
            }
            _ => panic!("mixed tower levels"),
        }
    }

    pub fn pow(&self, level: usize, a: &Alg, k: u32) -> Alg {
        (0..k).fold(self.one(level), |acc, _| self.mul(level, &acc, a))
    }

    /// Reduces a polynomial over `level - 1` modulo `m_level`.
    fn reduce_vec(&self, level: usize, mut v: Vec<Alg>) -> Alg {
        let m = &self.moduli[level - 1];
        let n = m.len() - 1;
        let below = level - 1;
        let mut k = v.len();
        while k > n {
            k -= 1;
            let c = v[k].clone();
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate() {
                let t = self.mul(below, &c, mj);
                v[k - n + j] = v[k - n + j].sub(&t);
            }
        }
        v.truncate(n);
        while v.len() < n {
            v.push(self.zero(below));
        }
        Alg::Ext(v)
    }

    /// Rewrites an element reduced for an older version of this tower.
    fn rereduce(&self, level: usize, a: &Alg) -> Alg {
        match a {
            Alg::Rat(_) => a.clone(),
            Alg::Ext(v) => {
                let comps = v.iter().map(|c| self.rereduce(level - 1, c)).collect();
                self.reduce_vec(level, comps)
            }
        }
    }

    pub fn inv(&self, level: usize, a: &Alg) -> Res<Alg> {
        match a {
            Alg::Rat(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Ok(Alg::Rat(q.recip()))
            }
            Alg::Ext(v) => {
                assert!(!a.is_zero(), "inverse of zero");
                let below = level - 1;
                let m = self.moduli[level - 1].clone();
                let mut r0 = m.clone();
                let mut r1 = self.trim(below, v.clone())?;
                let mut s0: Vec<Alg> = Vec::new();
                let mut s1 = vec![self.one(below)];
                while !r1.is_empty() {
                    let (q, r) = self.poly_divrem(below, &r0, &r1)?;
                    let s2 = self.poly_sub(below, &s0, &self.poly_mul(below, &q, &s1));
                    r0 = std::mem::replace(&mut r1, self.trim(below, r)?);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                if r0.len() == 1 {
                    let c = self.inv(below, &r0[0])?;
                    let s = self.poly_scale(below, &s0, &c);
                    Ok(self.reduce_vec(level, s))
                } else {
                    let g = self.poly_monic(below, &r0)?;
                    let h = self.poly_exact_div(below, &m, &g)?;
                    Err(Split { level, factors: (g, h) })
                }
            }
        }
    }

    /// Zero test valid at every point of the tower; ambiguous elements split.
    pub fn is_zero_checked(&self, level: usize, a: &Alg) -> Res<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        if level == 0 {
            return Ok(false);
        }
        self.inv(level, a).map(|_| false)
    }

    pub fn apply_split(&self, split: &Split) -> [Tower; 2] {
        let make = |factor: &Vec<Alg>| {
            let mut t = Tower { moduli: self.moduli[..split.level - 1].to_vec() };
            t.moduli.push(factor.clone());
            for k in split.level..self.moduli.len() {
                let m: Vec<Alg> = self.moduli[k].iter().map(|c| t.rereduce(k, c)).collect();
                t.moduli.push(m);
            }
            t
        };
        [make(&split.factors.0), make(&split.factors.1)]
    }

    /// Re-reduces an element of the pre-split tower at `level`.
    pub fn transport(&self, level: usize, a: &Alg) -> Alg {
        self.rereduce(level, a)
    }

    // -- polynomials over a level: dense, ascending coefficients --

    /// Drops structurally zero leading coefficients; the new leading
    /// coefficient is checked to be a unit.
    pub fn trim(&self, level: usize, mut p: Vec<Alg>) -> Res<Vec<Alg>> {
        while let Some(last) = p.last() {
            if self.is_zero_checked(level, last)? {
                p.pop();
            } else {
                break;
            }
        }
        Ok(p)
    }

    pub fn poly_mul(&self, level: usize, a: &[Alg], b: &[Alg]) -> Vec<Alg> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(level); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&self.mul(level, x, y));
            }
        }
        out
    }

    pub fn poly_sub(&self, level: usize, a: &[Alg], b: &[Alg]) -> Vec<Alg> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(|| self.zero(level));
                let y = b.get(i).cloned().unwrap_or_else(|| self.zero(level));
                x.sub(&y)
            })
            .collect()
    }

    pub fn poly_scale(&self, level: usize, a: &[Alg], c: &Alg) -> Vec<Alg> {
        a.iter().map(|x| self.mul(level, x, c)).collect()
    }

    pub fn poly_monic(&self, level: usize, a: &[Alg]) -> Res<Vec<Alg>> {
        let a = self.trim(level, a.to_vec())?;
        let inv = self.inv(level, a.last().expect("monic of zero"))?;
        Ok(self.poly_scale(level, &a, &inv))
    }

    /// Division by a trimmed divisor with unit leading coefficient.
    pub fn poly_divrem(&self, level: usize, a: &[Alg], b: &[Alg]) -> Res<(Vec<Alg>, Vec<Alg>)> {
        let b = self.trim(level, b.to_vec())?;
        let n = b.len() - 1;
        let lc_inv = self.inv(level, &b[n])?;
        let mut rem = a.to_vec();
        if rem.len() <= n {
            return Ok((Vec::new(), rem));
        }
        let mut quot = vec![self.zero(level); rem.len() - n];
        for k in (0..quot.len()).rev() {
            let c = self.mul(level, &rem[k + n], &lc_inv);
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&self.mul(level, &c, bj));
            }
            quot[k] = c;
        }
        rem.truncate(n);
        Ok((quot, rem))
    }

    pub fn poly_exact_div(&self, level: usize, a: &[Alg], b: &[Alg]) -> Res<Vec<Alg>> {
        let (q, r) = self.poly_divrem(level, a, b)?;
        debug_assert!(r.iter().all(Alg::is_zero), "inexact division in tower");
        self.trim(level, q)
    }

    pub fn poly_gcd(&self, level: usize, a: &[Alg], b: &[Alg]) -> Res<Vec<Alg>> {
        let mut a = self.trim(level, a.to_vec())?;
        let mut b = self.trim(level, b.to_vec())?;
        while !b.is_empty() {
            let (_, r) = self.poly_divrem(level, &a, &b)?;
            a = std::mem::replace(&mut b, self.trim(level, r)?);
        }
        if a.is_empty() {
            return Ok(a);
        }
        self.poly_monic(level, &a)
    }

    pub fn poly_derivative(&self, a: &[Alg]) -> Vec<Alg> {
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Q::from_integer(i.into())))
            .collect()
    }

    /// Square-free decomposition over `level`: monic parts with multiplicities.
    pub fn square_free(&self, level: usize, f: &[Alg]) -> Res<Vec<(Vec<Alg>, u32)>> {
        let f = self.poly_monic(level, f)?;
        let mut out = Vec::new();
        if f.len() <= 1 {
            return Ok(out);
        }
        let df = self.trim(level, self.poly_derivative(&f))?;
        let a0 = self.poly_gcd(level, &f, &df)?;
        let mut b = self.poly_exact_div(level, &f, &a0)?;
        let c = self.poly_exact_div(level, &df, &a0)?;
        let mut d = self.trim(level, self.poly_sub(level, &c, &self.poly_derivative(&b)))?;
        let mut m = 1;
        while b.len() > 1 {
            let a = self.poly_gcd(level, &b, &d)?;
            if a.len() > 1 {
                out.push((a.clone(), m));
            }
            b = self.poly_exact_div(level, &b, &a)?;
            let c = self.poly_exact_div(level, &d, &a)?;
            d = self.trim(level, self.poly_sub(level, &c, &self.poly_derivative(&b)))?;
            m += 1;
        }
        Ok(out)
    }

    /// Renders `c * x^i * y^j` into a running sum.
    pub fn push_term(&self, out: &mut String, level: usize, c: &Alg, i: u32, j: u32) {
        match c {
            Alg::Rat(q) => push_term(out, q, &[('x', i), ('y', j)]),
            Alg::Ext(_) => {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push('(');
                out.push_str(&c.render(level));
                out.push(')');
                for (v, e) in [('x', i), ('y', j)] {
                    match e {
                        0 => {}
                        1 => out.push_str(&format!("*{v}")),
                        _ => out.push_str(&format!("*{v}^{e}")),
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rat(v: i64) -> Alg {
        Alg::Rat(q(v))
    }

    #[test]
    fn sqrt_two_arithmetic() {
        let t = Tower::default().extend(vec![rat(-2), rat(0), rat(1)]);
        let a = t.generator(1);
        assert_eq!(t.mul(1, &a, &a), t.constant(1, q(2)));
        // 1/(1 + a) = (a - 1)
        let one_plus = t.one(1).add(&a);
        let inv = t.inv(1, &one_plus).unwrap();
        assert_eq!(inv, a.sub(&t.one(1)));
        assert!(!t.is_zero_checked(1, &a).unwrap());
        assert_eq!(t.degree(), 2);
    }

    #[test]
    fn zero_divisors_split() {
        // t^2 - t = t (t - 1): the element t vanishes at one point only
        let t = Tower::default().extend(vec![rat(0), rat(-1), rat(1)]);
        let a = t.generator(1);
        let split = t.is_zero_checked(1, &a).unwrap_err();
        let [left, right] = t.apply_split(&split);
        assert_eq!(left.degree() + right.degree(), 2);
        let on_left = left.transport(1, &a);
        let on_right = right.transport(1, &a);
        let zeros = [on_left.is_zero(), on_right.is_zero()];
        assert!(zeros.contains(&true) && zeros.contains(&false));
    }

    #[test]
    fn two_level_tower() {
        // sqrt(2), then sqrt(a1)
        let t1 = Tower::default().extend(vec![rat(-2), rat(0), rat(1)]);
        let a1 = t1.generator(1);
        let t2 = t1.extend(vec![a1.neg(), t1.zero(1), t1.one(1)]);
        let a2 = t2.generator(2);
        let sq = t2.mul(2, &a2, &a2);
        assert_eq!(sq, t2.lift(2, a1.clone()));
        let fourth = t2.mul(2, &sq, &sq);
        assert_eq!(fourth, t2.constant(2, q(2)));
        assert_eq!(t2.degree(), 4);
        let inv = t2.inv(2, &a2).unwrap();
        assert_eq!(t2.mul(2, &inv, &a2), t2.one(2));
    }

    #[test]
    fn square_free_over_extension() {
        // over Q(sqrt 2): (t - a)^2 (t + a) = t^3 - a t^2 - 2 t + 2a
        let t = Tower::default().extend(vec![rat(-2), rat(0), rat(1)]);
        let a = t.generator(1);
        let c = |v: i64| t.constant(1, q(v));
        let f = vec![a.scale(&q(2)), c(-2), a.neg(), c(1)];
        let parts = t.square_free(1, &f).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![a.clone(), c(1)]);
        assert_eq!(parts[1].0, vec![a.neg(), c(1)]);
        assert_eq!(parts[1].1, 2);
    }
}
