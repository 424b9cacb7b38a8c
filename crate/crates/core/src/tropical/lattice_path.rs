//! Mikhalkin's lattice paths in the triangle `conv{(0,0), (d,0), (0,d)}`.
//!
//! Lattice points are ordered by `λ(i, j) = i - j / P`. A λ-increasing path
//! from `(0, d)` to `(d, 0)` is compressed towards the two boundary paths:
//! at the first left turn towards the hypotenuse (`μ+`), at the first right
//! turn towards the legs (`μ-`). Cutting off the corner triangle multiplies
//! by its normalized area; replacing the corner by the opposite vertex of
//! the parallelogram adds a branch with factor one. Every branch that reaches
//! both boundary paths is one dual subdivision.

use crate::rational::Q;
use std::collections::BTreeMap;

/// Denominator of the slope of λ. Larger than every lattice coordinate that
/// occurs for the supported degrees, so λ is injective on lattice points.
pub const LAMBDA_DENOMINATOR: i64 = 10_007;

pub type Lattice = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Triangle,
    Parallelogram,
}

/// A cell of the dual subdivision, vertices in counterclockwise order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub kind: CellKind,
    pub vertices: Vec<Lattice>,
}

impl Cell {
    /// Twice the Euclidean area.
    pub fn normalized_area(&self) -> i64 {
        let n = self.vertices.len();
        let twice: i64 = (0..n)
            .map(|k| {
                let (a, b) = (self.vertices[k], self.vertices[(k + 1) % n]);
                a.0 * b.1 - a.1 * b.0
            })
            .sum();
        twice.abs()
    }
}

/// One dual subdivision produced from a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    pub path: Vec<Lattice>,
    pub cells: Vec<Cell>,
    /// Heights of the lifted vertices, keyed by lattice point.
    pub heights: BTreeMap<Lattice, Q>,
    pub multiplicity: u64,
}

pub fn lambda_key(a: Lattice) -> i64 {
    a.0 * LAMBDA_DENOMINATOR - a.1
}

/// Lattice points of the degree-`d` triangle in increasing λ order.
pub fn lattice_points(d: i64) -> Vec<Lattice> {
    let mut pts: Vec<Lattice> = (0..=d).flat_map(|i| (0..=d - i).map(move |j| (i, j))).collect();
    pts.sort_by_key(|&a| lambda_key(a));
    pts
}

pub fn in_triangle(d: i64, a: Lattice) -> bool {
    a.0 >= 0 && a.1 >= 0 && a.0 + a.1 <= d
}

/// All λ-increasing paths from `(0, d)` to `(d, 0)` with `steps` steps, in
/// lexicographic order of their λ-ranks.
pub fn paths(d: i64, steps: usize) -> Vec<Vec<Lattice>> {
    let pts = lattice_points(d);
    let inner = &pts[1..pts.len() - 1];
    let mut out = Vec::new();
    if steps == 0 || steps - 1 > inner.len() {
        return out;
    }
    let mut chosen = Vec::with_capacity(steps - 1);
    choose(inner, 0, steps - 1, &mut chosen, &mut |sel| {
        let mut p = Vec::with_capacity(steps + 1);
        p.push(pts[0]);
        p.extend(sel.iter().copied());
        p.push(*pts.last().unwrap());
        out.push(p);
    });
    out
}

fn choose(items: &[Lattice], start: usize, k: usize, chosen: &mut Vec<Lattice>, emit: &mut impl FnMut(&[Lattice])) {
    if chosen.len() == k {
        emit(chosen);
        return;
    }
    let need = k - chosen.len();
    for i in start..=items.len() - need {
        chosen.push(items[i]);
        choose(items, i + 1, k, chosen, emit);
        chosen.pop();
    }
}

/// Boundary path along the hypotenuse.
pub fn alpha_plus(d: i64) -> Vec<Lattice> {
    (0..=d).map(|i| (i, d - i)).collect()
}

/// Boundary path down the left leg and along the bottom leg.
pub fn alpha_minus(d: i64) -> Vec<Lattice> {
    (0..=d).rev().map(|j| (0, j)).chain((1..=d).map(|i| (i, 0))).collect()
}

fn cross(o: Lattice, a: Lattice, b: Lattice) -> i64 {
    (a.0 - o.0) * (b.1 - a.1) - (a.1 - o.1) * (b.0 - a.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Towards the hypotenuse, compressing left turns.
    Plus,
    /// Towards the legs, compressing right turns.
    Minus,
}

/// Partial compression result: cells cut off, new vertex heights, multiplicity.
#[derive(Debug, Clone, Default)]
struct Branch {
    cells: Vec<Cell>,
    heights: Vec<(Lattice, Q)>,
    multiplicity: u64,
}

fn ccw(mut v: Vec<Lattice>) -> Vec<Lattice> {
    let n = v.len();
    let twice: i64 = (0..n).map(|k| v[k].0 * v[(k + 1) % n].1 - v[k].1 * v[(k + 1) % n].0).sum();
    if twice < 0 {
        v.reverse();
    }
    // start at the smallest vertex for a canonical form
    let start = (0..n).min_by_key(|&k| v[k]).unwrap();
    v.rotate_left(start);
    v
}

fn compress(
    d: i64,
    path: &[Lattice],
    heights: &BTreeMap<Lattice, Q>,
    side: Side,
    out: &mut Vec<Branch>,
    acc: &mut Branch,
) {
    let target = match side {
        Side::Plus => alpha_plus(d),
        Side::Minus => alpha_minus(d),
    };
    if path == target.as_slice() {
        out.push(acc.clone());
        return;
    }
    let turn = (1..path.len() - 1).find(|&j| {
        let c = cross(path[j - 1], path[j], path[j + 1]);
        match side {
            Side::Plus => c > 0,
            Side::Minus => c < 0,
        }
    });
    let Some(j) = turn else { return };
    let (prev, here, next) = (path[j - 1], path[j], path[j + 1]);
    let area = cross(prev, here, next).unsigned_abs();

    // cut off the triangle
    let mut shorter = path.to_vec();
    shorter.remove(j);
    acc.cells.push(Cell { kind: CellKind::Triangle, vertices: ccw(vec![prev, here, next]) });
    let saved = acc.multiplicity;
    acc.multiplicity *= area;
    compress(d, &shorter, heights, side, out, acc);
    acc.multiplicity = saved;
    acc.cells.pop();

    // flip across the parallelogram
    let opposite = (prev.0 + next.0 - here.0, prev.1 + next.1 - here.1);
    if in_triangle(d, opposite)
        && lambda_key(prev) < lambda_key(opposite)
        && lambda_key(opposite) < lambda_key(next)
    {
        let h = height(heights, acc, prev) + height(heights, acc, next) - height(heights, acc, here);
        let mut flipped = path.to_vec();
        flipped[j] = opposite;
        acc.cells.push(Cell { kind: CellKind::Parallelogram, vertices: ccw(vec![prev, here, next, opposite]) });
        acc.heights.push((opposite, h));
        compress(d, &flipped, heights, side, out, acc);
        acc.heights.pop();
        acc.cells.pop();
    }
}

fn height(base: &BTreeMap<Lattice, Q>, acc: &Branch, a: Lattice) -> Q {
    acc.heights
        .iter()
        .rev()
        .find(|(p, _)| *p == a)
        .map(|(_, h)| h.clone())
        .or_else(|| base.get(&a).cloned())
        .expect("height of a path vertex")
}

/// Heights of the path vertices forced by passing through `points`:
/// `c(a_0) = 0`, `c(a_k) = c(a_{k-1}) + <a_{k-1} - a_k, p_k>`.
pub fn path_heights(path: &[Lattice], points: &[[Q; 2]]) -> BTreeMap<Lattice, Q> {
    let mut out = BTreeMap::new();
    let mut c = Q::default();
    out.insert(path[0], c.clone());
    for k in 1..path.len() {
        let (a, b) = (path[k - 1], path[k]);
        let p = &points[k - 1];
        c += &p[0] * Q::from_integer((a.0 - b.0).into()) + &p[1] * Q::from_integer((a.1 - b.1).into());
        out.insert(b, c.clone());
    }
    out
}

/// All subdivisions generated by `path`, with their multiplicities.
pub fn subdivisions(d: i64, path: &[Lattice], points: &[[Q; 2]]) -> Vec<Subdivision> {
    let base = path_heights(path, points);
    let mut plus = Vec::new();
    compress(d, path, &base, Side::Plus, &mut plus, &mut Branch { multiplicity: 1, ..Branch::default() });
    if plus.is_empty() {
        return Vec::new();
    }
    let mut minus = Vec::new();
    compress(d, path, &base, Side::Minus, &mut minus, &mut Branch { multiplicity: 1, ..Branch::default() });
    let mut out = Vec::new();
    for p in &plus {
        for m in &minus {
            let mut heights = base.clone();
            heights.extend(p.heights.iter().cloned());
            heights.extend(m.heights.iter().cloned());
            let mut cells: Vec<Cell> = p.cells.iter().chain(&m.cells).cloned().collect();
            cells.sort();
            out.push(Subdivision {
                path: path.to_vec(),
                cells,
                heights,
                multiplicity: p.multiplicity * m.multiplicity,
            });
        }
    }
    out
}

/// `μ(γ) = μ+(γ) μ-(γ)` without building subdivisions.
pub fn path_multiplicity(d: i64, path: &[Lattice]) -> u64 {
    side_multiplicity(d, path, Side::Plus) * side_multiplicity(d, path, Side::Minus)
}

fn side_multiplicity(d: i64, path: &[Lattice], side: Side) -> u64 {
    let target = match side {
        Side::Plus => alpha_plus(d),
        Side::Minus => alpha_minus(d),
    };
    if path == target.as_slice() {
        return 1;
    }
    let turn = (1..path.len() - 1).find(|&j| {
        let c = cross(path[j - 1], path[j], path[j + 1]);
        match side {
            Side::Plus => c > 0,
            Side::Minus => c < 0,
        }
    });
    let Some(j) = turn else { return 0 };
    let (prev, here, next) = (path[j - 1], path[j], path[j + 1]);
    let mut shorter = path.to_vec();
    shorter.remove(j);
    let mut total = cross(prev, here, next).unsigned_abs() * side_multiplicity(d, &shorter, side);
    let opposite = (prev.0 + next.0 - here.0, prev.1 + next.1 - here.1);
    if in_triangle(d, opposite)
        && lambda_key(prev) < lambda_key(opposite)
        && lambda_key(opposite) < lambda_key(next)
    {
        let mut flipped = path.to_vec();
        flipped[j] = opposite;
        total += side_multiplicity(d, &flipped, side);
    }
    total
}
