//! Plane tropical curves as weighted rational graphs.

use crate::rational::{serde_q, Q};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub type Direction = [i64; 2];

/// Bounded edge from `v[0]` to `v[1]`: `vertices[v[1]] - vertices[v[0]] = length * dir`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub v: [usize; 2],
    pub dir: Direction,
    pub weight: u64,
    #[serde(with = "serde_q")]
    pub length: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub v: usize,
    pub dir: Direction,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TropicalCurve {
    #[serde(with = "serde_q::points")]
    pub vertices: Vec<[Q; 2]>,
    pub edges: Vec<Edge>,
    pub rays: Vec<Ray>,
}

pub fn is_primitive(dir: Direction) -> bool {
    dir[0].gcd(&dir[1]) == 1
}

pub fn primitive(v: Direction) -> (Direction, i64) {
    let g = v[0].gcd(&v[1]);
    if g == 0 {
        return (v, 0);
    }
    ([v[0] / g, v[1] / g], g)
}

impl TropicalCurve {
    /// The standard tropical line with vertex at the origin.
    pub fn line() -> Self {
        TropicalCurve {
            vertices: vec![[Q::zero(), Q::zero()]],
            edges: Vec::new(),
            rays: [[-1, 0], [0, -1], [1, 1]].into_iter().map(|dir| Ray { v: 0, dir, weight: 1 }).collect(),
        }
    }

    /// Edges and rays leaving each vertex, as `(weight, direction)`; a loop
    /// contributes both of its ends.
    pub fn outgoing(&self) -> Vec<Vec<(u64, Direction)>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            out[e.v[0]].push((e.weight, e.dir));
            out[e.v[1]].push((e.weight, [-e.dir[0], -e.dir[1]]));
        }
        for r in &self.rays {
            out[r.v].push((r.weight, r.dir));
        }
        out
    }

    pub fn valences(&self) -> Vec<usize> {
        self.outgoing().iter().map(Vec::len).collect()
    }

    pub fn is_trivalent(&self) -> bool {
        self.valences().iter().all(|&v| v == 3)
    }

    /// Ray directions with weight, sorted.
    pub fn ray_profile(&self) -> Vec<(Direction, u64)> {
        let mut out: Vec<_> = self.rays.iter().map(|r| (r.dir, r.weight)).collect();
        out.sort();
        out
    }

    /// Degree if the rays are `d` copies each of `(-1,0)`, `(0,-1)`, `(1,1)`
    /// counted with weight.
    pub fn degree(&self) -> Option<u64> {
        let mut totals = [0u64; 3];
        for r in &self.rays {
            let slot = match r.dir {
                [-1, 0] => 0,
                [0, -1] => 1,
                [1, 1] => 2,
                _ => return None,
            };
            totals[slot] += r.weight;
        }
        (totals[0] == totals[1] && totals[1] == totals[2]).then_some(totals[0])
    }

    /// `E_b - V + 1`: the genus for connected curves, `1 - χ` in general.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + 1
    }

    /// Edge geometry agrees with the vertex positions and every direction is primitive.
    pub fn is_consistent(&self) -> bool {
        self.edges.iter().all(|e| {
            let [a, b] = e.v;
            a < self.vertices.len()
                && b < self.vertices.len()
                && is_primitive(e.dir)
                && e.length > Q::zero()
                && (0..2).all(|k| &self.vertices[b][k] - &self.vertices[a][k] == &e.length * Q::from_integer(e.dir[k].into()))
        }) && self.rays.iter().all(|r| r.v < self.vertices.len() && is_primitive(r.dir))
    }
}

/// Exact balancing at every vertex.
pub fn check_balancing(c: &TropicalCurve) -> bool {
    c.outgoing().iter().all(|dirs| {
        let sum = dirs.iter().fold([0i128, 0i128], |acc, &(w, d)| {
            [acc[0] + w as i128 * d[0] as i128, acc[1] + w as i128 * d[1] as i128]
        });
        sum == [0, 0]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_balances() {
        let line = TropicalCurve::line();
        assert!(check_balancing(&line));
        assert_eq!(line.degree(), Some(1));
        assert!(line.is_trivalent());
        let mut bent = line.clone();
        bent.rays[2].dir = [1, 0];
        assert!(!check_balancing(&bent));
        let mut double = line;
        for r in &mut double.rays {
            r.weight = 2;
        }
        assert!(check_balancing(&double));
        assert_eq!(double.degree(), Some(2));
    }

    #[test]
    fn json_round_trip() {
        let line = TropicalCurve::line();
        let s = serde_json::to_string(&line).unwrap();
        assert_eq!(serde_json::from_str::<TropicalCurve>(&s).unwrap(), line);
    }
}
