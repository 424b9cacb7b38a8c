//! Tropical curve dual to a lifted subdivision, with the checks that make the
//! point configuration generic for it.
//!
//! Max convention: the curve is the corner locus of
//! `F(x) = max_a (c_a + <a, x>)` over the vertices `a` of the subdivision.

use super::curve::{primitive, Direction, Edge, Ray, TropicalCurve};
use super::lattice_path::{Cell, CellKind, Lattice, Subdivision};
use crate::rational::Q;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("configuration is not generic for this subdivision: {0}")]
pub struct NonGeneric(pub String);

fn qi(v: i64) -> Q {
    Q::from_integer(v.into())
}

fn term(heights: &BTreeMap<Lattice, Q>, a: Lattice, x: &[Q; 2]) -> Q {
    &heights[&a] + &x[0] * qi(a.0) + &x[1] * qi(a.1)
}

/// Point where the three lifted vertices tie.
fn dual_point(heights: &BTreeMap<Lattice, Q>, v: &[Lattice]) -> [Q; 2] {
    let (a, b, c) = (v[0], v[1], v[2]);
    // <b - a, x> = c_a - c_b, <c - a, x> = c_a - c_c
    let (m11, m12, r1) = (qi(b.0 - a.0), qi(b.1 - a.1), &heights[&a] - &heights[&b]);
    let (m21, m22, r2) = (qi(c.0 - a.0), qi(c.1 - a.1), &heights[&a] - &heights[&c]);
    let det = &m11 * &m22 - &m12 * &m21;
    [(&r1 * &m22 - &m12 * &r2) / &det, (&m11 * &r2 - &r1 * &m21) / &det]
}

/// The terms of `tied` agree at `x` and strictly exceed every other term.
fn attains_max_exactly(heights: &BTreeMap<Lattice, Q>, tied: &[Lattice], x: &[Q; 2]) -> Result<(), String> {
    let top = term(heights, tied[0], x);
    for &a in &tied[1..] {
        if term(heights, a, x) != top {
            return Err(format!("cell {tied:?} is not flat"));
        }
    }
    for &b in heights.keys() {
        if !tied.contains(&b) && term(heights, b, x) >= top {
            return Err(format!("vertex {b:?} reaches the maximum at the dual point of {tied:?}"));
        }
    }
    Ok(())
}

fn segment(a: Lattice, b: Lattice) -> (Lattice, Lattice) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn outward_normal(d: i64, s: (Lattice, Lattice)) -> Option<Direction> {
    let (a, b) = s;
    if a.0 == 0 && b.0 == 0 {
        Some([-1, 0])
    } else if a.1 == 0 && b.1 == 0 {
        Some([0, -1])
    } else if a.0 + a.1 == d && b.0 + b.1 == d {
        Some([1, 1])
    } else {
        None
    }
}

/// Builds the curve and verifies it: regular lifting, tiling of the
/// triangle, each marked point on the edge dual to its path segment.
pub fn build_curve(d: i64, sub: &Subdivision, points: &[[Q; 2]]) -> Result<TropicalCurve, NonGeneric> {
    let heights = &sub.heights;
    let cells = &sub.cells;

    let total_area: i64 = cells.iter().map(Cell::normalized_area).sum();
    if total_area != d * d {
        return Err(NonGeneric(format!("cells cover area {total_area}, expected {}", d * d)));
    }

    let duals: Vec<[Q; 2]> = cells.iter().map(|c| dual_point(heights, &c.vertices)).collect();
    for (c, x) in cells.iter().zip(&duals) {
        attains_max_exactly(heights, &c.vertices, x).map_err(NonGeneric)?;
    }
    for k in 1..sub.path.len() {
        attains_max_exactly(heights, &[sub.path[k - 1], sub.path[k]], &points[k - 1])
            .map_err(|e| NonGeneric(format!("marked point {k}: {e}")))?;
    }

    // cells on each side of every subdivision edge
    let mut sides: BTreeMap<(Lattice, Lattice), Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let n = c.vertices.len();
        for k in 0..n {
            sides.entry(segment(c.vertices[k], c.vertices[(k + 1) % n])).or_default().push(i);
        }
    }
    for (s, owners) in &sides {
        let ok = match owners.len() {
            1 => outward_normal(d, *s).is_some(),
            2 => true,
            _ => false,
        };
        if !ok {
            return Err(NonGeneric(format!("edge {s:?} has {} adjacent cells", owners.len())));
        }
    }

    // curve vertices are the triangles, in order of position
    let mut triangles: Vec<usize> = (0..cells.len()).filter(|&i| cells[i].kind == CellKind::Triangle).collect();
    triangles.sort_by(|&a, &b| duals[a].cmp(&duals[b]));
    let vertex_of: BTreeMap<usize, usize> = triangles.iter().enumerate().map(|(v, &c)| (c, v)).collect();

    let opposite_side = |cell: usize, s: (Lattice, Lattice)| -> (Lattice, Lattice) {
        let v = &cells[cell].vertices;
        let k = (0..4).find(|&k| segment(v[k], v[(k + 1) % 4]) == s).expect("side of parallelogram");
        segment(v[(k + 2) % 4], v[(k + 3) % 4])
    };

    let mut edges = Vec::new();
    let mut rays = Vec::new();
    let mut seen: BTreeSet<(Lattice, Lattice)> = BTreeSet::new();
    for &t in &triangles {
        let tv = &cells[t].vertices;
        for k in 0..3 {
            let start = segment(tv[k], tv[(k + 1) % 3]);
            if seen.contains(&start) {
                continue;
            }
            seen.insert(start);
            let (dir_seg, weight) = primitive([start.1 .0 - start.0 .0, start.1 .1 - start.0 .1]);
            let (mut s, mut here) = (start, t);
            loop {
                let next = sides[&s].iter().copied().find(|&c| c != here);
                match next {
                    None => {
                        let dir = outward_normal(d, s).expect("boundary edge");
                        rays.push(Ray { v: vertex_of[&t], dir, weight: weight as u64 });
                        break;
                    }
                    Some(c) if cells[c].kind == CellKind::Triangle => {
                        seen.insert(s);
                        let (a, b) = (vertex_of[&t], vertex_of[&c]);
                        let (a, b) = if a < b { (a, b) } else { (b, a) };
                        let (pa, pb) = (&duals[triangles[a]], &duals[triangles[b]]);
                        let delta = [&pb[0] - &pa[0], &pb[1] - &pa[1]];
                        // the dual edge is orthogonal to the subdivision edge
                        let normal = [dir_seg[1], -dir_seg[0]];
                        let length = if normal[0] != 0 {
                            &delta[0] / qi(normal[0])
                        } else {
                            &delta[1] / qi(normal[1])
                        };
                        let (dir, length) = if length < Q::zero() {
                            ([-normal[0], -normal[1]], -length)
                        } else {
                            (normal, length)
                        };
                        if length.is_zero() || (0..2).any(|i| delta[i] != &length * qi(dir[i])) {
                            return Err(NonGeneric(format!("degenerate dual edge across {s:?}")));
                        }
                        edges.push(Edge { v: [a, b], dir, weight: weight as u64, length });
                        break;
                    }
                    Some(c) => {
                        // straight through the crossing
                        seen.insert(s);
                        s = opposite_side(c, s);
                        here = c;
                        seen.insert(s);
                    }
                }
            }
        }
    }
    edges.sort_by_key(|e| (e.v, e.dir));
    rays.sort_by_key(|r| (r.v, r.dir));
    Ok(TropicalCurve {
        vertices: triangles.iter().map(|&c| duals[c].clone()).collect(),
        edges,
        rays,
    })
}
