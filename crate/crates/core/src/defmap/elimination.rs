//! Exact rank and linear solving.
//!
//! Two independent rank computations: Gaussian elimination over ℚ and
//! fraction-free Bareiss elimination over ℤ after clearing denominators.

use crate::rational::{common_denominator, Q};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn column_count(m: &[Vec<Q>]) -> usize {
    m.first().map_or(0, Vec::len)
}

/// Reduced row echelon form. Pivot in each column: the entry of largest
/// absolute value, earliest row on ties. Returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let cols = column_count(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for r in row..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            if best.is_none_or(|b| m[r][col].abs() > m[b][col].abs()) {
                best = Some(r);
            }
        }
        let Some(p) = best else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (v, pv) in other.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank by Gaussian elimination over ℚ.
pub fn rank_rational(m: &[Vec<Q>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by scaling each row by the lcm of its denominators.
pub fn rank_bareiss(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let den = Q::from_integer(common_denominator(row));
            row.iter().map(|v| (v * &den).to_integer()).collect()
        })
        .collect();
    let rows = a.len();
    let cols = column_count(m);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A solution of `m ξ = t` with free variables set to zero, if one exists.
pub fn solve(m: &[Vec<Q>], t: &[Q]) -> Option<Vec<Q>> {
    let cols = column_count(m);
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .zip(t)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut xi = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        xi[c] = aug[r][cols].clone();
    }
    Some(xi)
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}
