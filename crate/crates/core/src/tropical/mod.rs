//! Plane tropical curves: Severi degrees by lattice paths and by floor
//! diagrams, explicit curves through a fixed generic configuration, and the
//! edge contractions that model nodes colliding into cusps.
//!
//! The marked points are `p_k = K^k (1, -1/P)` for `k = 1, …, n`, on a line
//! of slope `-1/P` with rapidly growing gaps (`P` = [`LAMBDA_DENOMINATOR`],
//! `K` = [`POINT_SPACING`]). Every curve is rebuilt from its subdivision and
//! checked against these points exactly.

mod construction;
mod curve;
mod floor;
mod lattice_path;

pub use construction::{build_curve, NonGeneric};
pub use curve::{check_balancing, is_primitive, primitive, Direction, Edge, Ray, TropicalCurve};
pub use floor::floor_count;
pub use lattice_path::{
    alpha_minus, alpha_plus, lattice_points, path_multiplicity, paths, subdivisions, Cell, CellKind, Lattice,
    Subdivision, LAMBDA_DENOMINATOR,
};

use crate::exec::Exec;
use crate::rational::{format_q, serde_q, Q};
use num_traits::Zero;
use serde::Serialize;

/// Largest supported degree.
pub const MAX_DEGREE: u32 = 4;

/// Ratio between consecutive marked points along the line.
pub const POINT_SPACING: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("valuation {0} is negative")]
    NonPositiveValuation(String),
    #[error(transparent)]
    NonGeneric(#[from] NonGeneric),
}

/// `dim |O(d)| = d(d+3)/2`.
pub fn linear_system_dim(d: u32) -> u32 {
    d * (d + 3) / 2
}

/// Number of marked points for `δ`-nodal curves of degree `d`: `dim |O(d)| - δ`,
/// or zero when `δ` exceeds the dimension (no such curves exist).
pub fn point_count(d: u32, delta: u32) -> Result<u32, TropicalError> {
    if d == 0 || d > MAX_DEGREE {
        return Err(TropicalError::OutOfRange(format!("degree {d} outside 1..={MAX_DEGREE}")));
    }
    Ok(linear_system_dim(d).saturating_sub(delta))
}

pub fn marked_points(n: usize) -> Vec<[Q; 2]> {
    let spacing = Q::from_integer(POINT_SPACING.into());
    let slope = Q::new((-1).into(), LAMBDA_DENOMINATOR.into());
    let mut t = Q::from_integer(1.into());
    (0..n)
        .map(|_| {
            t *= &spacing;
            [t.clone(), &t * &slope]
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveRecord {
    pub multiplicity: u64,
    pub path: Vec<[i64; 2]>,
    pub curve: TropicalCurve,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub d: u32,
    pub delta: u32,
    #[serde(with = "serde_q::points")]
    pub points: Vec<[Q; 2]>,
    pub total: u64,
    pub per_type: Vec<CurveRecord>,
}

/// Product over trivalent vertices of `|det(w1 u1, w2 u2)|`.
pub fn curve_multiplicity(c: &TropicalCurve) -> u64 {
    c.outgoing()
        .iter()
        .map(|dirs| match dirs.as_slice() {
            [(w1, u1), (w2, u2), ..] => {
                let det = u1[0] as i128 * u2[1] as i128 - u1[1] as i128 * u2[0] as i128;
                (*w1 as i128 * *w2 as i128 * det).unsigned_abs() as u64
            }
            _ => 0,
        })
        .product()
}

/// All tropical curves of degree `d` with `δ` nodes through the marked
/// points, one record per dual subdivision, in canonical order.
pub fn enumerate_curves(d: u32, delta: u32, exec: Exec) -> Result<EnumerationResult, TropicalError> {
    let n = point_count(d, delta)? as usize;
    let points = marked_points(n);
    let di = i64::from(d);
    let all_paths = paths(di, n);
    let per_path = exec.map(&all_paths, |path| -> Result<Vec<CurveRecord>, TropicalError> {
        subdivisions(di, path, &points)
            .into_iter()
            .map(|sub| {
                let curve = build_curve(di, &sub, &points)?;
                if curve_multiplicity(&curve) != sub.multiplicity {
                    return Err(NonGeneric(format!("vertex multiplicities disagree with the cells of {path:?}")).into());
                }
                Ok(CurveRecord {
                    multiplicity: sub.multiplicity,
                    path: sub.path.iter().map(|&(i, j)| [i, j]).collect(),
                    curve,
                })
            })
            .collect()
    });
    let mut per_type = Vec::new();
    for records in per_path {
        per_type.extend(records?);
    }
    per_type.sort_by(|a, b| (&a.path, &a.curve.vertices).cmp(&(&b.path, &b.curve.vertices)));
    let total = per_type.iter().map(|r| r.multiplicity).sum();
    Ok(EnumerationResult { d, delta, points, total, per_type })
}

/// Severi degree `N(d, δ)` by lattice paths. Reducible curves are counted.
pub fn severi_degree(d: u32, delta: u32, exec: Exec) -> Result<u64, TropicalError> {
    enumerate_curves(d, delta, exec).map(|r| r.total)
}

/// Severi degree `N(d, δ)` by floor diagrams.
pub fn severi_degree_floor(d: u32, delta: u32) -> Result<u64, TropicalError> {
    point_count(d, delta)?;
    Ok(floor_count(d, delta))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub curve: TropicalCurve,
    pub valences: Vec<usize>,
    /// Valences of the vertices obtained by merging two or more vertices.
    pub merged_valences: Vec<usize>,
    pub balanced: bool,
}

fn check_edge_set(c: &TropicalCurve, edges: &[usize]) -> Result<(), TropicalError> {
    let mut seen = vec![false; c.edges.len()];
    for &e in edges {
        if e >= c.edges.len() {
            return Err(TropicalError::InvalidEdge(format!("e{e} does not exist (curve has {} bounded edges)", c.edges.len())));
        }
        if std::mem::replace(&mut seen[e], true) {
            return Err(TropicalError::InvalidEdge(format!("e{e} listed twice")));
        }
    }
    Ok(())
}

/// Sets the given edges' lengths to zero and identifies their endpoints.
/// Merged vertices keep the position of their lowest-numbered member;
/// remaining edges keep their lengths.
pub fn contract_edges(c: &TropicalCurve, edges: &[usize]) -> Result<Contraction, TropicalError> {
    check_edge_set(c, edges)?;
    let n = c.vertices.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for &e in edges {
        let [a, b] = c.edges[e].v;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    // new index per class, ordered by the smallest member
    let mut index = vec![usize::MAX; n];
    let mut class_size = Vec::new();
    let mut vertices = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = vertices.len();
            vertices.push(c.vertices[v].clone());
            class_size.push(0);
        }
        index[v] = index[r];
        class_size[index[v]] += 1;
    }
    let contracted: Vec<bool> = (0..c.edges.len()).map(|e| edges.contains(&e)).collect();
    let new_edges = c
        .edges
        .iter()
        .zip(&contracted)
        .filter(|(_, &gone)| !gone)
        .map(|(e, _)| Edge { v: [index[e.v[0]], index[e.v[1]]], ..e.clone() })
        .collect();
    let rays = c.rays.iter().map(|r| Ray { v: index[r.v], ..r.clone() }).collect();
    let curve = TropicalCurve { vertices, edges: new_edges, rays };
    let valences = curve.valences();
    let merged_valences = valences.iter().zip(&class_size).filter(|(_, &s)| s > 1).map(|(&v, _)| v).collect();
    Ok(Contraction { balanced: check_balancing(&curve), curve, valences, merged_valences })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspSignature {
    /// Number of edge lengths vanishing simultaneously.
    pub codimension: usize,
    /// At least two lengths vanish at once.
    pub cusp_candidate: bool,
    /// Valences of all vertices after contraction, in vertex order.
    pub valence_profile: Vec<usize>,
    pub merged_valences: Vec<usize>,
    /// Some merged vertex has valence exactly four.
    pub valence_four: bool,
    pub warning: Option<String>,
}

pub fn cusp_signature(c: &TropicalCurve, vanishing: &[usize]) -> Result<CuspSignature, TropicalError> {
    if vanishing.is_empty() {
        return Err(TropicalError::InvalidEdge("no vanishing edges given".into()));
    }
    let contraction = contract_edges(c, vanishing)?;
    let codimension = vanishing.len();
    let warning = (codimension >= 3)
        .then(|| format!("{codimension} lengths vanish at once: boundary of codimension above a cusp"));
    Ok(CuspSignature {
        codimension,
        cusp_candidate: codimension >= 2,
        valence_four: contraction.merged_valences.contains(&4),
        valence_profile: contraction.valences,
        merged_valences: contraction.merged_valences,
        warning,
    })
}

/// Length of the edge produced by smoothing a node `xy = t` with
/// `val(t) = val_t`; a unit (`val_t = 0`) leaves the node unsmoothed.
pub fn node_edge_length(val_t: &Q) -> Result<Q, TropicalError> {
    if *val_t < Q::zero() {
        return Err(TropicalError::NonPositiveValuation(format_q(val_t)));
    }
    Ok(val_t.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    #[test]
    fn line_through_two_points() {
        let r = enumerate_curves(1, 0, Exec::Sequential).unwrap();
        assert_eq!(r.total, 1);
        let c = &r.per_type[0].curve;
        assert_eq!(c.vertices.len(), 1);
        assert_eq!(c.degree(), Some(1));
        assert!(check_balancing(c));
    }

    #[test]
    fn conics() {
        assert_eq!(severi_degree(2, 0, Exec::Sequential), Ok(1));
        let r = enumerate_curves(2, 1, Exec::Sequential).unwrap();
        assert_eq!(r.total, 3);
        assert_eq!(r.per_type.len(), 3);
        for rec in &r.per_type {
            assert_eq!(rec.curve.vertices.len(), 2);
            assert_eq!(rec.curve.genus(), -1);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(severi_degree(5, 0, Exec::Sequential), Err(TropicalError::OutOfRange(_))));
        assert!(matches!(severi_degree(0, 0, Exec::Sequential), Err(TropicalError::OutOfRange(_))));
        assert_eq!(severi_degree_floor(2, 6), Ok(0));
        assert_eq!(severi_degree(1, 3, Exec::Sequential), Ok(0));
    }

    #[test]
    fn contraction_valences() {
        let r = enumerate_curves(2, 0, Exec::Sequential).unwrap();
        let c = &r.per_type[0].curve;
        assert_eq!(c.edges.len(), 3);
        let one = contract_edges(c, &[0]).unwrap();
        assert_eq!(one.merged_valences, vec![4]);
        assert!(one.balanced);
        assert_eq!(one.curve.ray_profile(), c.ray_profile());
        // a path of two edges through three trivalent vertices
        let (e0, e1) = path_of_two(c);
        let two = contract_edges(c, &[e0, e1]).unwrap();
        assert_eq!(two.merged_valences, vec![5]);
        assert!(two.balanced);
        let none = contract_edges(c, &[]).unwrap();
        assert_eq!(&none.curve, c);
        assert!(matches!(contract_edges(c, &[7]), Err(TropicalError::InvalidEdge(_))));
    }

    fn path_of_two(c: &TropicalCurve) -> (usize, usize) {
        for i in 0..c.edges.len() {
            for j in i + 1..c.edges.len() {
                let [a, b] = c.edges[i].v;
                let [x, y] = c.edges[j].v;
                if a == x || a == y || b == x || b == y {
                    return (i, j);
                }
            }
        }
        panic!("no adjacent edges")
    }

    #[test]
    fn cusp_signatures() {
        let r = enumerate_curves(2, 0, Exec::Sequential).unwrap();
        let c = &r.per_type[0].curve;
        let (e0, e1) = path_of_two(c);
        let s = cusp_signature(c, &[e0, e1]).unwrap();
        assert_eq!((s.codimension, s.cusp_candidate), (2, true));
        assert!(s.warning.is_none());
        let s = cusp_signature(c, &[0]).unwrap();
        assert_eq!((s.codimension, s.cusp_candidate, s.valence_four), (1, false, true));
        let s = cusp_signature(c, &[0, 1, 2]).unwrap();
        assert!(s.cusp_candidate && s.warning.is_some());
        assert!(cusp_signature(c, &[]).is_err());
    }

    #[test]
    fn node_lengths() {
        assert_eq!(node_edge_length(&q(3)), Ok(q(3)));
        assert_eq!(node_edge_length(&q(0)), Ok(q(0)));
        assert_eq!(node_edge_length(&frac(1, 2)), Ok(frac(1, 2)));
        assert!(matches!(node_edge_length(&q(-1)), Err(TropicalError::NonPositiveValuation(_))));
    }
}
