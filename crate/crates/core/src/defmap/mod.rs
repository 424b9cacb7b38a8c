//! Linear model of the global-to-local map `H^0(N) → ⊕_p T^{1,es}_p`.
//!
//! Rows are indexed by singular points (one row per equisingular direction),
//! columns by a basis of the global sections. The number of singularities
//! that can be preserved is the rank of this matrix.

mod elimination;

pub use elimination::{mat_vec, rank_bareiss, rank_rational, rref, solve};

use crate::rational::{serde_q, Q};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingularityKind {
    #[serde(rename = "node_surface")]
    CurveNodeOnSurface,
    #[serde(rename = "cusp_surface")]
    CuspOnSurface,
    #[serde(rename = "node_threefold")]
    CurveNodeInThreefold,
    #[serde(rename = "odp_surface")]
    SurfaceODP,
}

impl SingularityKind {
    pub const ALL: [SingularityKind; 4] = [
        SingularityKind::CurveNodeOnSurface,
        SingularityKind::CuspOnSurface,
        SingularityKind::CurveNodeInThreefold,
        SingularityKind::SurfaceODP,
    ];

    /// `(dim T^1, dim T^{1,es})`.
    pub fn dims(self) -> (u32, u32) {
        match self {
            SingularityKind::CuspOnSurface => (2, 1),
            SingularityKind::CurveNodeOnSurface
            | SingularityKind::CurveNodeInThreefold
            | SingularityKind::SurfaceODP => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SingularityKind::CurveNodeOnSurface => "node_surface",
            SingularityKind::CuspOnSurface => "cusp_surface",
            SingularityKind::CurveNodeInThreefold => "node_threefold",
            SingularityKind::SurfaceODP => "odp_surface",
        }
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SingularityBudget {
    pub kind: SingularityKind,
    pub t1_dim: u32,
    pub es_dim: u32,
}

impl SingularityBudget {
    pub fn of(kind: SingularityKind) -> Self {
        let (t1_dim, es_dim) = kind.dims();
        SingularityBudget { kind, t1_dim, es_dim }
    }

    /// A budget with explicit dimensions, e.g. to model a larger
    /// equisingular space. Both dimensions must be positive.
    pub fn custom(kind: SingularityKind, t1_dim: u32, es_dim: u32) -> Result<Self, DefmapError> {
        if t1_dim == 0 || es_dim == 0 {
            return Err(DefmapError::InvalidBudget);
        }
        Ok(SingularityBudget { kind, t1_dim, es_dim })
    }
}

/// Budget as written in a spec file: a kind name, or an object with
/// explicit dimensions.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum BudgetEntry {
    Kind(SingularityKind),
    Custom { kind: SingularityKind, t1_dim: u32, es_dim: u32 },
}

impl BudgetEntry {
    pub fn budget(&self) -> Result<SingularityBudget, DefmapError> {
        match *self {
            BudgetEntry::Kind(k) => Ok(SingularityBudget::of(k)),
            BudgetEntry::Custom { kind, t1_dim, es_dim } => SingularityBudget::custom(kind, t1_dim, es_dim),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct DeformationMapSpec {
    pub budgets: Vec<BudgetEntry>,
    #[serde(with = "serde_q::matrix")]
    pub matrix: Vec<Vec<Q>>,
    /// Number of global sections; needed only when the matrix has no rows.
    #[serde(default)]
    pub columns: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DefmapError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("budget dimensions must be positive")]
    InvalidBudget,
    #[error("budget {0} has an equisingular space of dimension {1}, expected 1")]
    UnsupportedBudget(SingularityKind, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationMap {
    matrix: Vec<Vec<Q>>,
    columns: usize,
    budgets: Vec<SingularityBudget>,
}

impl DeformationMap {
    pub fn new(matrix: Vec<Vec<Q>>, budgets: Vec<SingularityBudget>) -> Result<Self, DefmapError> {
        let columns = matrix.first().map_or(0, Vec::len);
        Self::with_columns(matrix, columns, budgets)
    }

    pub fn with_columns(
        matrix: Vec<Vec<Q>>,
        columns: usize,
        budgets: Vec<SingularityBudget>,
    ) -> Result<Self, DefmapError> {
        let expected_rows: u32 = budgets.iter().map(|b| b.es_dim).sum();
        if matrix.len() != expected_rows as usize {
            return Err(DefmapError::ShapeMismatch(format!(
                "{} rows but the budgets require {expected_rows}",
                matrix.len()
            )));
        }
        if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != columns) {
            return Err(DefmapError::ShapeMismatch(format!(
                "row {i} has {} entries, expected {columns}",
                row.len()
            )));
        }
        Ok(DeformationMap { matrix, columns, budgets })
    }

    pub fn from_spec(spec: &DeformationMapSpec) -> Result<Self, DefmapError> {
        let budgets = spec.budgets.iter().map(BudgetEntry::budget).collect::<Result<_, _>>()?;
        let columns = match (spec.matrix.first(), spec.columns) {
            (Some(row), Some(c)) if row.len() != c => {
                return Err(DefmapError::ShapeMismatch(format!(
                    "declared {c} columns but rows have {}",
                    row.len()
                )))
            }
            (Some(row), _) => row.len(),
            (None, c) => c.unwrap_or(0),
        };
        Self::with_columns(spec.matrix.clone(), columns, budgets)
    }

    /// Square identity with one node budget per row.
    pub fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::default() }).collect())
            .collect();
        let budgets = vec![SingularityBudget::of(SingularityKind::CurveNodeOnSurface); n];
        DeformationMap { matrix, columns: n, budgets }
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn budgets(&self) -> &[SingularityBudget] {
        &self.budgets
    }

    pub fn scaled(&self, c: &Q) -> Self {
        DeformationMap {
            matrix: self.matrix.iter().map(|r| r.iter().map(|v| v * c).collect()).collect(),
            columns: self.columns,
            budgets: self.budgets.clone(),
        }
    }
}

/// Rank of the map over ℚ.
pub fn image_dimension(m: &DeformationMap) -> usize {
    rank_rational(m.matrix())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Realizable(Vec<Q>),
    Unrealizable,
}

/// Finds global sections `ξ` with `M ξ = target`.
pub fn realizable(m: &DeformationMap, target: &[Q]) -> Result<Realization, DefmapError> {
    if target.len() != m.rows() {
        return Err(DefmapError::ShapeMismatch(format!(
            "target has {} entries, the map has {} rows",
            target.len(),
            m.rows()
        )));
    }
    if m.rows() == 0 {
        return Ok(Realization::Realizable(vec![Q::default(); m.columns()]));
    }
    match solve(m.matrix(), target) {
        Some(xi) => {
            assert_eq!(mat_vec(m.matrix(), &xi), target, "solution failed exact verification");
            Ok(Realization::Realizable(xi))
        }
        None => Ok(Realization::Unrealizable),
    }
}

/// Maximal number of singularities preserved, i.e. the image dimension.
/// Only defined when every budget contributes a single row.
pub fn max_singular_count(m: &DeformationMap) -> Result<usize, DefmapError> {
    if let Some(b) = m.budgets().iter().find(|b| b.es_dim != 1) {
        return Err(DefmapError::UnsupportedBudget(b.kind, b.es_dim));
    }
    Ok(image_dimension(m))
}

/// Conditions imposed on the ambient linear system: `Σ dim T^1`.
pub fn codim_budget(budgets: &[SingularityBudget]) -> u64 {
    budgets.iter().map(|b| b.t1_dim as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()
    }

    fn nodes(n: usize) -> Vec<SingularityBudget> {
        vec![SingularityBudget::of(SingularityKind::CurveNodeOnSurface); n]
    }

    #[test]
    fn budget_table() {
        assert_eq!(SingularityKind::CuspOnSurface.dims(), (2, 1));
        assert_eq!(SingularityKind::SurfaceODP.dims(), (1, 1));
        let cusps = vec![SingularityBudget::of(SingularityKind::CuspOnSurface); 2];
        assert_eq!(codim_budget(&cusps), 4);
        assert_eq!(codim_budget(&[]), 0);
        assert_eq!(codim_budget(&[SingularityBudget::of(SingularityKind::SurfaceODP); 3]), 3);
    }

    #[test]
    fn image_dimensions() {
        assert_eq!(image_dimension(&DeformationMap::identity(3)), 3);
        let z = DeformationMap::new(vec![vec![q(0); 6]; 4], nodes(4)).unwrap();
        assert_eq!(image_dimension(&z), 0);
        let m = DeformationMap::new(ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]), nodes(3)).unwrap();
        assert_eq!(image_dimension(&m), 2);
    }

    #[test]
    fn realizability() {
        let id = DeformationMap::identity(3);
        assert_eq!(
            realizable(&id, &[q(1), q(0), q(1)]),
            Ok(Realization::Realizable(vec![q(1), q(0), q(1)]))
        );
        let m = DeformationMap::new(ints(&[&[1, 0], &[1, 0]]), nodes(2)).unwrap();
        assert!(matches!(realizable(&m, &[q(1), q(1)]), Ok(Realization::Realizable(_))));
        assert_eq!(realizable(&m, &[q(1), q(0)]), Ok(Realization::Unrealizable));
        let z = DeformationMap::new(vec![vec![q(0); 2]; 2], nodes(2)).unwrap();
        assert_eq!(realizable(&z, &[q(0), q(1)]), Ok(Realization::Unrealizable));
        assert!(matches!(realizable(&m, &[q(1)]), Err(DefmapError::ShapeMismatch(_))));
    }

    #[test]
    fn singular_counts() {
        assert_eq!(max_singular_count(&DeformationMap::identity(4)), Ok(4));
        let m = DeformationMap::new(ints(&[&[1, 2], &[0, 0]]), nodes(2)).unwrap();
        assert_eq!(max_singular_count(&m), Ok(1));
        let wide = SingularityBudget::custom(SingularityKind::CuspOnSurface, 2, 2).unwrap();
        let m = DeformationMap::new(ints(&[&[1, 0], &[0, 1]]), vec![wide]).unwrap();
        assert_eq!(
            max_singular_count(&m),
            Err(DefmapError::UnsupportedBudget(SingularityKind::CuspOnSurface, 2))
        );
    }

    #[test]
    fn shape_checks() {
        assert!(matches!(
            DeformationMap::new(ints(&[&[1, 0]]), nodes(2)),
            Err(DefmapError::ShapeMismatch(_))
        ));
        assert!(matches!(
            DeformationMap::new(ints(&[&[1, 0], &[1]]), nodes(2)),
            Err(DefmapError::ShapeMismatch(_))
        ));
        assert_eq!(SingularityBudget::custom(SingularityKind::SurfaceODP, 0, 1), Err(DefmapError::InvalidBudget));
    }

    #[test]
    fn spec_parsing() {
        let spec: DeformationMapSpec = serde_json::from_str(
            r#"{"budgets": ["cusp_surface", {"kind": "odp_surface", "t1_dim": 1, "es_dim": 1}],
                "matrix": [["1/2", 0], [1, "-3"]]}"#,
        )
        .unwrap();
        let m = DeformationMap::from_spec(&spec).unwrap();
        assert_eq!(m.budgets()[0].kind, SingularityKind::CuspOnSurface);
        assert_eq!(image_dimension(&m), 2);
    }
}
