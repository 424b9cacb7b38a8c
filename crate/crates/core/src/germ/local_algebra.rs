//! Dimension of `ℚ[x,y]_(x,y) / I` by truncation at degree `D`.
//!
//! The ideal `I + m^D` is spanned, inside the space of polynomials of degree
//! `< D`, by the truncations of `x^a y^b g` over the generators `g`. Equality
//! of the quotient dimensions at `D` and `D + 1` forces `m^D ⊂ I` locally
//! (Nakayama), so the value is then the local quotient dimension.

use crate::poly::BivariatePoly;
use crate::rational::Q;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

/// Largest truncation degree tried before declaring the quotient infinite.
pub const TRUNCATION_CAP: u32 = 64;

fn monomial_index(i: u32, j: u32) -> usize {
    let k = (i + j) as usize;
    k * (k + 1) / 2 + j as usize
}

/// `dim ℚ[x,y] / (I + m^d)` for the ideal generated by `gens`.
pub fn truncated_quotient_dim(gens: &[BivariatePoly], d: u32) -> usize {
    let total = (d as usize) * (d as usize + 1) / 2;
    let mut basis: HashMap<usize, BTreeMap<usize, Q>> = HashMap::new();

    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord >= d {
            continue;
        }
        for s in 0..(d - ord) {
            for a in 0..=s {
                let b = s - a;
                let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                for (&(i, j), c) in g.terms() {
                    if i + j + s < d {
                        row.insert(monomial_index(i + a, j + b), c.clone());
                    }
                }
                insert_row(&mut basis, row);
            }
        }
    }
    total - basis.len()
}

fn insert_row(basis: &mut HashMap<usize, BTreeMap<usize, Q>>, mut row: BTreeMap<usize, Q>) {
    while let Some((&lead, lc)) = row.iter().next() {
        match basis.get(&lead) {
            Some(pivot_row) => {
                let factor = lc.clone();
                for (k, v) in pivot_row {
                    let e = row.entry(*k).or_insert_with(Q::zero);
                    *e -= &factor * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
            None => {
                let inv = lc.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                basis.insert(lead, row);
                return;
            }
        }
    }
}

/// Local quotient dimension with the doubling schedule: start at twice the
/// degree of `f`, stop when `D` and `D + 1` agree. `None` if the cap is hit.
pub fn stable_quotient_dim(gens: &[BivariatePoly], f: &BivariatePoly) -> Option<(usize, u32)> {
    let mut d = (2 * f.degree().unwrap_or(1)).clamp(2, TRUNCATION_CAP);
    loop {
        let here = truncated_quotient_dim(gens, d);
        let next = truncated_quotient_dim(gens, d + 1);
        if here == next {
            return Some((here, d));
        }
        if d >= TRUNCATION_CAP {
            return None;
        }
        d = (2 * d).min(TRUNCATION_CAP);
    }
}
