//! Exact GCD in ℚ[x, y] through primitive pseudo-remainder sequences in `y`.

use super::bivariate::BivariatePoly;
use super::univariate::UniPoly;

type PolyInY = Vec<UniPoly>;

fn trim(mut p: PolyInY) -> PolyInY {
    while p.last().is_some_and(UniPoly::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &PolyInY) -> UniPoly {
    p.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(p: &PolyInY) -> PolyInY {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|a| a.exact_div(&c)).collect()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y`.
fn pseudo_rem(a: &PolyInY, b: &PolyInY) -> PolyInY {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        r = r.iter().map(|c| c * lb).collect();
        for (j, bc) in b.iter().enumerate() {
            let t = bc * &lr;
            r[j + shift] = &r[j + shift] - &t;
        }
        r = trim(r);
    }
    r
}

fn mul_scalar(p: &PolyInY, c: &UniPoly) -> PolyInY {
    trim(p.iter().map(|a| a * c).collect())
}

/// Greatest common divisor, normalized so that its leading coefficient in
/// `y` (then in `x`) is one. Returns zero only if both inputs vanish.
pub fn bivariate_gcd(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    let pa = trim(a.as_poly_in_y());
    let pb = trim(b.as_poly_in_y());
    if pa.is_empty() {
        return normalize(&pb);
    }
    if pb.is_empty() {
        return normalize(&pa);
    }
    let cont = content(&pa).gcd(&content(&pb));
    let mut u = primitive_part(&pa);
    let mut v = primitive_part(&pb);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        if v.len() == 1 {
            // constant in y: primitive gcd is trivial
            u = vec![UniPoly::one()];
            break;
        }
        let r = pseudo_rem(&u, &v);
        u = v;
        v = primitive_part(&r);
    }
    let g = mul_scalar(&primitive_part(&u), &cont);
    normalize(&g)
}

fn normalize(p: &PolyInY) -> BivariatePoly {
    match p.last() {
        None => BivariatePoly::zero(),
        Some(lc) => {
            let inv = lc.leading().expect("nonzero leading coefficient").recip();
            BivariatePoly::from_poly_in_y(&p.iter().map(|c| c.scale(&inv)).collect::<Vec<_>>())
        }
    }
}

/// GCD of `f` and both partial derivatives.
pub fn singular_common_factor(f: &BivariatePoly) -> BivariatePoly {
    let g = bivariate_gcd(f, &f.dx());
    bivariate_gcd(&g, &f.dy())
}
