//! Square-free decomposition and factorization over ℚ.

use super::univariate::UniPoly;
use crate::rational::{common_denominator, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Yun's algorithm: returns `(q_m, m)` with `p = lc * Π q_m^m`, every `q_m`
/// monic, square-free, pairwise coprime and nonconstant.
pub fn square_free_decomposition(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let mut c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut m = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), m));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        m += 1;
    }
    out
}

/// Integer primitive associate of `p` with positive leading coefficient.
pub fn primitive_integer(p: &UniPoly) -> Vec<BigInt> {
    let den = common_denominator(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            small.push(i.clone());
            let other = &n / &i;
            if other != i {
                large.push(other);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct rational roots in increasing order.
pub fn rational_roots(p: &UniPoly) -> Vec<Q> {
    let mut roots = Vec::new();
    if p.is_constant() {
        return roots;
    }
    let mut ints = primitive_integer(p);
    // strip the factor x^k
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        roots.push(Q::zero());
        ints.drain(..zeros);
    }
    if ints.len() > 1 {
        let lead = ints.last().unwrap().clone();
        let tail = ints[0].clone();
        let reduced = UniPoly::new(ints.iter().cloned().map(Q::from_integer).collect());
        for num in positive_divisors(&tail) {
            for den in positive_divisors(&lead) {
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for cand in [Q::new(num.clone(), den.clone()), Q::new(-num.clone(), den.clone())] {
                    if reduced.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Upper bound on divisor combinations tried per candidate factor degree.
pub const KRONECKER_COMBINATION_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("factorization search exceeded {KRONECKER_COMBINATION_CAP} combinations")]
pub struct FactorizationTooLarge;

/// Complete factorization into monic irreducibles over ℚ, with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>, FactorizationTooLarge> {
    let mut out = Vec::new();
    for (part, m) in square_free_decomposition(p) {
        for irr in factor_square_free(&part)? {
            out.push((irr, m));
        }
    }
    out.sort_by(|a, b| factor_order(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

pub(crate) fn factor_order(a: &UniPoly, b: &UniPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Factors a square-free polynomial into monic irreducibles.
pub fn factor_square_free(p: &UniPoly) -> Result<Vec<UniPoly>, FactorizationTooLarge> {
    let mut out = Vec::new();
    let mut rest = p.monic();
    for r in rational_roots(&rest) {
        let lin = UniPoly::linear_root(&r);
        rest = rest.exact_div(&lin);
        out.push(lin);
    }
    let mut stack = vec![rest];
    while let Some(f) = stack.pop() {
        let n = match f.degree() {
            Some(n) if n >= 1 => n,
            _ => continue,
        };
        // no rational roots remain, so degrees 2 and 3 are irreducible
        if n <= 3 {
            out.push(f);
            continue;
        }
        match kronecker_split(&f)? {
            Some(g) => {
                let h = f.exact_div(&g);
                stack.push(g.monic());
                stack.push(h.monic());
            }
            None => out.push(f),
        }
    }
    out.sort_by(factor_order);
    Ok(out)
}

/// Searches a nontrivial factor of degree 2..=n/2 by Kronecker's method.
fn kronecker_split(f: &UniPoly) -> Result<Option<UniPoly>, FactorizationTooLarge> {
    let n = f.degree().unwrap();
    let ints = primitive_integer(f);
    let fz = UniPoly::new(ints.into_iter().map(Q::from_integer).collect());

    // evaluation points with few divisors first
    let mut samples: Vec<(BigInt, BigInt, usize)> = (-12i64..=12)
        .filter_map(|x| {
            let xv = BigInt::from(x);
            let v = fz.eval(&Q::from_integer(xv.clone())).to_integer();
            if v.is_zero() {
                None
            } else {
                let nd = positive_divisors(&v).len();
                Some((xv, v, nd))
            }
        })
        .collect();
    samples.sort_by_key(|s| s.2);

    for k in 2..=n / 2 {
        if samples.len() < k + 1 {
            break;
        }
        let pts = &samples[..=k];
        let xs: Vec<Q> = pts.iter().map(|s| Q::from_integer(s.0.clone())).collect();
        let divs: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let pos = positive_divisors(&s.1);
                if i == 0 {
                    pos
                } else {
                    pos.iter().flat_map(|d| [d.clone(), -d.clone()]).collect()
                }
            })
            .collect();
        let total: usize = divs.iter().map(Vec::len).try_fold(1usize, |acc, l| acc.checked_mul(l)).unwrap_or(usize::MAX);
        if total > KRONECKER_COMBINATION_CAP {
            return Err(FactorizationTooLarge);
        }
        let mut idx = vec![0usize; k + 1];
        loop {
            let ys: Vec<Q> = idx
                .iter()
                .zip(&divs)
                .map(|(&i, d)| Q::from_integer(d[i].clone()))
                .collect();
            let g = interpolate(&xs, &ys);
            if g.degree() == Some(k)
                && g.coeffs().iter().all(|c| c.is_integer())
                && g.divides(&fz)
            {
                return Ok(Some(g));
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos > k {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < divs[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > k {
                break;
            }
        }
    }
    Ok(None)
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = UniPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = (xi - xj).recip();
            basis = &basis * &UniPoly::new(vec![-xj * &denom, denom]);
        }
        acc = &acc + &basis;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn expand(parts: &[(UniPoly, u32)]) -> UniPoly {
        parts
            .iter()
            .fold(UniPoly::one(), |acc, (p, m)| &acc * &p.pow(*m))
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (x-1)^2 (x+2)
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        let sf = square_free_decomposition(&p);
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (UniPoly::from_ints(&[2, 1]), 1));
        assert_eq!(sf[1], (UniPoly::from_ints(&[-1, 1]), 2));
        assert_eq!(expand(&sf), p);

        // (x^2-1)^2 -> one part, multiplicity 2
        let p = UniPoly::from_ints(&[1, 0, -2, 0, 1]);
        let sf = square_free_decomposition(&p);
        assert_eq!(sf, vec![(UniPoly::from_ints(&[-1, 0, 1]), 2)]);
    }

    #[test]
    fn roots_of_scaled_polynomials() {
        // 6x^2 - x - 1 = (2x-1)(3x+1)
        let p = UniPoly::from_ints(&[-1, -1, 6]);
        assert_eq!(rational_roots(&p), vec![frac(-1, 3), frac(1, 2)]);
        assert_eq!(rational_roots(&UniPoly::from_ints(&[-2, 0, 1])), Vec::<Q>::new());
        assert_eq!(rational_roots(&UniPoly::from_ints(&[0, 0, 1])), vec![q(0)]);
    }

    #[test]
    fn kronecker_finds_quadratic_factors() {
        // (x^2-2)(x^2-3)(x^2+x+1)
        let a = UniPoly::from_ints(&[-2, 0, 1]);
        let b = UniPoly::from_ints(&[-3, 0, 1]);
        let c = UniPoly::from_ints(&[1, 1, 1]);
        let p = &(&a * &b) * &c;
        let fs = factor_square_free(&p).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&a) && fs.contains(&b) && fs.contains(&c));
        // x^4 + 1 is irreducible over Q
        let p = UniPoly::from_ints(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_square_free(&p).unwrap(), vec![p]);
    }

    #[test]
    fn full_factorization() {
        // (x-1)^2 (x^2-2)^3 x
        let p = &(&UniPoly::from_ints(&[-1, 1]).pow(2) * &UniPoly::from_ints(&[-2, 0, 1]).pow(3))
            * &UniPoly::from_ints(&[0, 1]);
        let fs = factor(&p).unwrap();
        assert_eq!(expand(&fs), p);
        assert_eq!(fs.len(), 3);
    }
}
