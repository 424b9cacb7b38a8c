//! Embedded resolution by point blow-ups.
//!
//! Every visited point is moved to the origin of its chart, with the newest
//! exceptional divisor always `{x = 0}`. Points of the exceptional line are
//! the roots of the tangent cone: rational roots are translated directly,
//! the remaining square-free parts are adjoined as algebraic extensions so a
//! single recursion handles a whole set of conjugate points.

use super::algebraic::{Alg, Res, Split, Tower};
use super::GermError;
use crate::poly::{factor, BivariatePoly, UniPoly};
use crate::rational::Q;
use std::collections::BTreeMap;

/// Deepest chain of blow-ups before giving up.
pub const RESOLUTION_DEPTH_CAP: usize = 64;

/// A blown-up infinitely near point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupNode {
    pub parent: Option<usize>,
    pub multiplicity: u32,
    /// Number of conjugate points this node stands for.
    pub weight: usize,
    /// Strict transform in the local chart, algebraic constants as `a1, a2, …`.
    pub strict_transform: String,
}

/// A smooth point of the strict transform, transverse to the exceptional divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupLeaf {
    pub parent: Option<usize>,
    pub weight: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlowupTree {
    pub nodes: Vec<BlowupNode>,
    pub leaves: Vec<BlowupLeaf>,
}

impl BlowupTree {
    /// `Σ m (m - 1) / 2` over infinitely near points, counted with weight.
    pub fn delta(&self) -> u64 {
        self.nodes
            .iter()
            .map(|n| n.weight as u64 * (n.multiplicity as u64 * (n.multiplicity as u64).saturating_sub(1) / 2))
            .sum()
    }

    /// Points of the normalization over the origin.
    pub fn branches(&self) -> u64 {
        if self.nodes.is_empty() {
            1
        } else {
            self.leaves.iter().map(|l| l.weight as u64).sum()
        }
    }

    /// Multiplicities in visiting order (parents before children).
    pub fn multiplicities(&self) -> Vec<u32> {
        self.nodes.iter().map(|n| n.multiplicity).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

type APoly = BTreeMap<(u32, u32), Alg>;

struct Point {
    tower: Tower,
    f: APoly,
}

enum Step {
    Leaf,
    Blowup { multiplicity: u32, rendered: String, children: Vec<Point> },
}

pub(crate) fn resolve_rational(f: &BivariatePoly) -> Result<BlowupTree, GermError> {
    let poly: APoly = f.terms().map(|(k, c)| (*k, Alg::Rat(c.clone()))).collect();
    let mut tree = BlowupTree::default();
    visit(&mut tree, Point { tower: Tower::default(), f: poly }, None, false, 0)?;
    Ok(tree)
}

fn visit(
    tree: &mut BlowupTree,
    point: Point,
    parent: Option<usize>,
    on_exceptional: bool,
    depth: usize,
) -> Result<(), GermError> {
    if depth > RESOLUTION_DEPTH_CAP {
        return Err(GermError::ResolutionDepthExceeded(RESOLUTION_DEPTH_CAP));
    }
    match step(&point, on_exceptional) {
        Err(split) => {
            for branch in split_point(&point, &split) {
                visit(tree, branch, parent, on_exceptional, depth)?;
            }
            Ok(())
        }
        Ok(Step::Leaf) => {
            tree.leaves.push(BlowupLeaf { parent, weight: point.tower.degree() });
            Ok(())
        }
        Ok(Step::Blowup { multiplicity, rendered, children }) => {
            let id = tree.nodes.len();
            tree.nodes.push(BlowupNode {
                parent,
                multiplicity,
                weight: point.tower.degree(),
                strict_transform: rendered,
            });
            for child in children {
                visit(tree, child, Some(id), true, depth + 1)?;
            }
            Ok(())
        }
    }
}

fn split_point(point: &Point, split: &Split) -> Vec<Point> {
    let level = point.tower.top();
    point
        .tower
        .apply_split(split)
        .into_iter()
        .map(|tower| {
            let f = point
                .f
                .iter()
                .map(|(k, c)| (*k, tower.transport(level, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            Point { tower, f }
        })
        .collect()
}

fn render(tower: &Tower, f: &APoly) -> String {
    let level = tower.top();
    let mut keys: Vec<_> = f.keys().copied().collect();
    keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
    let mut out = String::new();
    for k in keys {
        tower.push_term(&mut out, level, &f[&k], k.0, k.1);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn step(point: &Point, on_exceptional: bool) -> Res<Step> {
    let tower = &point.tower;
    let level = tower.top();
    let f = &point.f;

    let m = multiplicity(tower, f)?;
    assert!(m >= 1, "resolution reached a point off the curve");

    if m == 1 {
        let b = f.get(&(0, 1)).cloned().unwrap_or_else(|| tower.zero(level));
        // smooth: leaf unless tangent to the exceptional line {x = 0}
        if !on_exceptional || !tower.is_zero_checked(level, &b)? {
            return Ok(Step::Leaf);
        }
    }

    // tangent cone as a polynomial in t = y/x
    let cone: Vec<Alg> = (0..=m)
        .map(|j| f.get(&(m - j, j)).cloned().unwrap_or_else(|| tower.zero(level)))
        .collect();
    let cone = tower.trim(level, cone)?;
    let finite_degree = cone.len() as u32 - 1;
    let at_infinity = m - finite_degree;

    // chart y = x t, divided by x^m
    let chart: APoly = f.iter().map(|(&(i, j), c)| ((i + j - m, j), c.clone())).collect();

    let mut children = Vec::new();
    if finite_degree > 0 {
        if level == 0 {
            let cone_q = UniPoly::new(
                cone.iter().map(|c| c.as_rational().cloned().unwrap()).collect(),
            );
            for (part, _) in factor::square_free_decomposition(&cone_q) {
                let mut rest = part.clone();
                for r in factor::rational_roots(&part) {
                    rest = rest.exact_div(&UniPoly::linear_root(&r));
                    children.push(Point {
                        tower: tower.clone(),
                        f: translate(tower, level, &chart, &Alg::Rat(r)),
                    });
                }
                if !rest.is_constant() {
                    let modulus = rest.coeffs().iter().cloned().map(Alg::Rat).collect();
                    children.push(extension_child(tower, &chart, modulus));
                }
            }
        } else {
            for (part, _) in tower.square_free(level, &cone)? {
                if part.len() == 2 {
                    let alpha = part[0].neg();
                    children.push(Point {
                        tower: tower.clone(),
                        f: translate(tower, level, &chart, &alpha),
                    });
                } else {
                    children.push(extension_child(tower, &chart, part));
                }
            }
        }
    }
    if at_infinity > 0 {
        // chart x = y s, coordinates (u, v) = (y, s), divided by u^m
        let chart_b: APoly = f.iter().map(|(&(i, j), c)| ((i + j - m, i), c.clone())).collect();
        children.push(Point { tower: tower.clone(), f: chart_b });
    }

    Ok(Step::Blowup { multiplicity: m, rendered: render(tower, f), children })
}

fn extension_child(tower: &Tower, chart: &APoly, modulus: Vec<Alg>) -> Point {
    let ext = tower.extend(modulus);
    let level = ext.top();
    let lifted: APoly = chart
        .iter()
        .map(|(k, c)| (*k, ext.lift(level, c.clone())))
        .collect();
    let alpha = ext.generator(level);
    let f = translate(&ext, level, &lifted, &alpha);
    Point { tower: ext, f }
}

fn multiplicity(tower: &Tower, f: &APoly) -> Res<u32> {
    let level = tower.top();
    let mut by_degree: Vec<(u32, &Alg)> = f.iter().map(|(&(i, j), c)| (i + j, c)).collect();
    by_degree.sort_by_key(|(d, _)| *d);
    for (d, c) in by_degree {
        if !tower.is_zero_checked(level, c)? {
            return Ok(d);
        }
    }
    panic!("multiplicity of the zero polynomial")
}

/// `g(x, t) = f(x, t + alpha)`.
fn translate(tower: &Tower, level: usize, f: &APoly, alpha: &Alg) -> APoly {
    let max_j = f.keys().map(|k| k.1).max().unwrap_or(0);
    let powers: Vec<Alg> = (0..=max_j).map(|k| tower.pow(level, alpha, k)).collect();
    let mut out: APoly = BTreeMap::new();
    for (&(i, j), c) in f {
        let mut binom = Q::from_integer(1.into());
        for k in 0..=j {
            // C(j, k) alpha^(j-k) t^k
            let term = tower.mul(level, c, &powers[(j - k) as usize]).scale(&binom);
            let slot = out.entry((i, k)).or_insert_with(|| tower.zero(level));
            *slot = slot.add(&term);
            binom = binom * Q::from_integer((j - k).into()) / Q::from_integer((k + 1).into());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> BlowupTree {
        resolve_rational(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn cusp_needs_a_bookkeeping_blowup() {
        let t = tree("y^2 - x^3");
        assert_eq!(t.multiplicities(), vec![2, 1]);
        assert_eq!(t.leaves.len(), 1);
        assert_eq!(t.delta(), 1);
        assert_eq!(t.branches(), 1);
    }

    #[test]
    fn tacnode_chain() {
        let t = tree("y^2 - x^4");
        assert_eq!(t.multiplicities(), vec![2, 2]);
        assert_eq!(t.delta(), 2);
        assert_eq!(t.branches(), 2);
    }

    #[test]
    fn smooth_germ_has_empty_tree() {
        let t = tree("y - x^2");
        assert!(t.is_empty());
        assert_eq!(t.branches(), 1);
        assert_eq!(t.delta(), 0);
    }

    #[test]
    fn ordinary_triple_point() {
        let t = tree("x^2*y + x*y^2");
        assert_eq!(t.multiplicities(), vec![3]);
        assert_eq!(t.branches(), 3);
        assert_eq!(t.delta(), 3);
    }

    #[test]
    fn conjugate_tangents() {
        // node with tangents y = ±sqrt(2) x
        let t = tree("y^2 - 2x^2");
        assert_eq!(t.delta(), 1);
        assert_eq!(t.branches(), 2);
        // (y^2 - 2x^2 - x^3)(y^2 - 2x^2 + x^3): two nodes meeting with
        // intersection number 6 along conjugate irrational tangents
        let t = tree("y^4 - 4x^2*y^2 + 4x^4 - x^6");
        assert_eq!(t.multiplicities()[0], 4);
        assert!(t.nodes.iter().any(|n| n.weight == 2 && n.multiplicity == 2));
        assert_eq!(t.delta(), 1 + 1 + 6);
        assert_eq!(t.branches(), 4);
    }
}
