//! Local invariants of isolated plane curve germs `f(x, y) = 0` at the origin.
//!
//! Two independent pipelines: the Milnor and Tjurina numbers come from
//! truncated quotients of the polynomial ring, the δ-invariant and branch
//! count from the tree of infinitely near points. Milnor's formula
//! `μ = 2δ − r + 1` ties the two together.

mod algebraic;
mod local_algebra;
mod resolve;

pub use local_algebra::{truncated_quotient_dim, TRUNCATION_CAP};
pub use resolve::{BlowupLeaf, BlowupNode, BlowupTree, RESOLUTION_DEPTH_CAP};

use crate::poly::{singular_common_factor, BivariatePoly};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("the zero polynomial defines no germ")]
    ZeroPolynomial,
    #[error("the curve does not pass through the origin")]
    NotAtOrigin,
    #[error("the singularity at the origin is not isolated")]
    NonIsolated,
    #[error("resolution did not finish within {0} blow-ups")]
    ResolutionDepthExceeded(usize),
}

/// Simple-singularity label, assigned only where `(m, μ, r)` determines the type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdeLabel {
    Smooth,
    A(u32),
    D(u32),
    Other,
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::Smooth => f.write_str("Smooth"),
            AdeLabel::A(k) => write!(f, "A{k}"),
            AdeLabel::D(k) => write!(f, "D{k}"),
            AdeLabel::Other => f.write_str("Other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermReport {
    pub multiplicity: u32,
    pub milnor: u64,
    pub tjurina: u64,
    pub delta: u64,
    pub branches: u64,
    pub ade: AdeLabel,
}

pub fn multiplicity(f: &BivariatePoly) -> Result<u32, GermError> {
    f.order().ok_or(GermError::ZeroPolynomial)
}

fn check_germ(f: &BivariatePoly) -> Result<(), GermError> {
    if f.is_zero() {
        return Err(GermError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(GermError::NotAtOrigin);
    }
    // a repeated component through the origin
    let g = singular_common_factor(f);
    if g.degree().unwrap_or(0) > 0 && g.constant_term().is_zero() {
        return Err(GermError::NonIsolated);
    }
    Ok(())
}

/// `dim O / (f_x, f_y)`.
pub fn milnor_number(f: &BivariatePoly) -> Result<u64, GermError> {
    check_germ(f)?;
    local_dimension(&[f.dx(), f.dy()], f)
}

/// `dim O / (f, f_x, f_y)`.
pub fn tjurina_number(f: &BivariatePoly) -> Result<u64, GermError> {
    check_germ(f)?;
    local_dimension(&[f.clone(), f.dx(), f.dy()], f)
}

fn local_dimension(gens: &[BivariatePoly], f: &BivariatePoly) -> Result<u64, GermError> {
    local_algebra::stable_quotient_dim(gens, f)
        .map(|(dim, _)| dim as u64)
        .ok_or(GermError::NonIsolated)
}

pub fn resolve(f: &BivariatePoly) -> Result<BlowupTree, GermError> {
    check_germ(f)?;
    resolve::resolve_rational(f)
}

pub fn delta_invariant(f: &BivariatePoly) -> Result<u64, GermError> {
    resolve(f).map(|t| t.delta())
}

pub fn branch_count(f: &BivariatePoly) -> Result<u64, GermError> {
    resolve(f).map(|t| t.branches())
}

/// Finite lookup on `(m, μ, r)`.
///
/// Every double point is `A_μ`. Among triple points with `μ ≤ 9` only
/// `D_7`/`E_7` share their data, and `E_6`, `E_8` have a single branch,
/// so `D_k` is assigned for `k ∈ {4, 5, 6, 8, 9}` with the matching branch
/// count. Everything else is `Other`.
pub fn ade_label(m: u32, mu: u64, r: u64) -> AdeLabel {
    match m {
        0 | 1 => AdeLabel::Smooth,
        2 => {
            let expected_r = if mu % 2 == 1 { 2 } else { 1 };
            if mu >= 1 && r == expected_r {
                AdeLabel::A(mu as u32)
            } else {
                AdeLabel::Other
            }
        }
        3 => {
            let expected_r = if mu.is_multiple_of(2) { 3 } else { 2 };
            if (4..=9).contains(&mu) && mu != 7 && r == expected_r {
                AdeLabel::D(mu as u32)
            } else {
                AdeLabel::Other
            }
        }
        _ => AdeLabel::Other,
    }
}

pub fn classify(f: &BivariatePoly) -> Result<GermReport, GermError> {
    check_germ(f)?;
    let m = multiplicity(f)?;
    let milnor = milnor_number(f)?;
    let tjurina = tjurina_number(f)?;
    let tree = resolve::resolve_rational(f)?;
    let (delta, branches) = (tree.delta(), tree.branches());
    Ok(GermReport {
        multiplicity: m,
        milnor,
        tjurina,
        delta,
        branches,
        ade: ade_label(m, milnor, branches),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariatePoly {
        s.parse().unwrap()
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&p("y^2 - x^3")), Ok(2));
        assert_eq!(multiplicity(&p("x")), Ok(1));
        assert_eq!(multiplicity(&p("x^2*y + x*y^2")), Ok(3));
        assert_eq!(multiplicity(&BivariatePoly::zero()), Err(GermError::ZeroPolynomial));
    }

    #[test]
    fn milnor_and_tjurina() {
        assert_eq!(milnor_number(&p("y^2 - x^2")), Ok(1));
        assert_eq!(milnor_number(&p("y^2 - x^3")), Ok(2));
        assert_eq!(milnor_number(&p("y^2 - x^4")), Ok(3));
        assert_eq!(tjurina_number(&p("y^2 - x^2")), Ok(1));
        assert_eq!(tjurina_number(&p("y^2 - x^3")), Ok(2));
        assert_eq!(tjurina_number(&p("y^2 - x^5")), Ok(4));
    }

    #[test]
    fn tjurina_below_milnor_for_non_quasihomogeneous() {
        // x^5 + y^5 + x^2 y^2 (T_{2,5,5}): μ = 11, τ = 10
        let f = p("x^5 + y^5 + x^2*y^2");
        let mu = milnor_number(&f).unwrap();
        let tau = tjurina_number(&f).unwrap();
        assert!(tau < mu, "tau {tau} mu {mu}");
    }

    #[test]
    fn deltas_and_branches() {
        assert_eq!(delta_invariant(&p("y^2 - x^2")), Ok(1));
        assert_eq!(delta_invariant(&p("y^2 - x^3")), Ok(1));
        assert_eq!(delta_invariant(&p("y^2 - x^4")), Ok(2));
        assert_eq!(delta_invariant(&p("x^2*y + x*y^2")), Ok(3));
        assert_eq!(branch_count(&p("y^2 - x^2")), Ok(2));
        assert_eq!(branch_count(&p("y^2 - x^3")), Ok(1));
        assert_eq!(branch_count(&p("x^2*y + x*y^2")), Ok(3));
    }

    #[test]
    fn classification_table() {
        let r = classify(&p("y^2 - x^2")).unwrap();
        assert_eq!((r.multiplicity, r.milnor, r.tjurina, r.delta, r.branches), (2, 1, 1, 1, 2));
        assert_eq!(r.ade, AdeLabel::A(1));
        let r = classify(&p("y^2 - x^3")).unwrap();
        assert_eq!((r.multiplicity, r.milnor, r.tjurina, r.delta, r.branches), (2, 2, 2, 1, 1));
        assert_eq!(r.ade, AdeLabel::A(2));
        let r = classify(&p("y^2 - x^4")).unwrap();
        assert_eq!((r.multiplicity, r.milnor, r.tjurina, r.delta, r.branches), (2, 3, 3, 2, 2));
        assert_eq!(r.ade, AdeLabel::A(3));
        assert_eq!(classify(&p("x^2*y + x*y^2")).unwrap().ade, AdeLabel::D(4));
        assert_eq!(classify(&p("x^2*y + y^4")).unwrap().ade, AdeLabel::D(5));
        assert_eq!(classify(&p("y - x^2")).unwrap().ade, AdeLabel::Smooth);
        // E6 shares nothing with the D series but is outside the label set
        assert_eq!(classify(&p("y^3 + x^4")).unwrap().ade, AdeLabel::Other);
    }

    #[test]
    fn error_paths() {
        assert_eq!(classify(&p("x^2*y^2")), Err(GermError::NonIsolated));
        assert_eq!(milnor_number(&p("y^2")), Err(GermError::NonIsolated));
        assert_eq!(classify(&p("1 + x")), Err(GermError::NotAtOrigin));
        // repeated component away from the origin is fine
        let f = &p("y^2 - 2y + 1") * &p("y^2 - x^3");
        assert_eq!(classify(&f).unwrap().ade, AdeLabel::A(2));
    }

    #[test]
    fn ade_table_edges() {
        assert_eq!(ade_label(3, 7, 2), AdeLabel::Other);
        assert_eq!(ade_label(3, 8, 3), AdeLabel::D(8));
        assert_eq!(ade_label(3, 8, 1), AdeLabel::Other);
        assert_eq!(ade_label(3, 10, 3), AdeLabel::Other);
        assert_eq!(ade_label(4, 9, 4), AdeLabel::Other);
    }
}
