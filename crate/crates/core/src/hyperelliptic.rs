//! Singular fibers of `y^2 = p(x)` and the discriminant of the cusp's versal
//! family `y^2 = x^3 + a x + b`.
//!
//! A root of `p` of multiplicity `m >= 2` gives an `A_{m-1}` point of the
//! fiber with `δ = ⌈(m - 1)/2⌉`. Roots are never approximated: irrational
//! repeated roots are reported through their irreducible factor over ℚ.

use crate::exec::Exec;
use crate::poly::factor::{self, FactorizationTooLarge};
use crate::poly::{parse_univariate, ParseError, UniPoly};
use crate::rational::{format_q, q, serde_q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error(transparent)]
    Factorization(#[from] FactorizationTooLarge),
    #[error("fiber at s = {0} is constant")]
    DegenerateFiber(String),
    #[error("coefficient {index}: {source}")]
    Coefficient { index: usize, source: ParseError },
    #[error("stratification disagrees with the fiber at t = {0}")]
    AssertionFailure(String),
}

/// A monic polynomial of degree at least one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicUnivariate(UniPoly);

impl MonicUnivariate {
    pub fn new(p: UniPoly) -> Result<Self, FamilyError> {
        match p.degree() {
            None | Some(0) => Err(FamilyError::ConstantPolynomial),
            _ if !p.leading().is_some_and(One::is_one) => Err(FamilyError::NotMonic),
            _ => Ok(MonicUnivariate(p)),
        }
    }

    /// Divides by the leading coefficient.
    pub fn normalized(p: &UniPoly) -> Result<Self, FamilyError> {
        Self::new(p.monic())
    }

    pub fn poly(&self) -> &UniPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap_or(0)
    }
}

/// Where a singular point of the fiber sits on the `x`-line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RootLocation {
    Rational(#[serde(with = "serde_q")] Q),
    /// All roots of an irreducible factor of degree `> 1`, e.g. `x^2 - 2`.
    Factor { factor: String, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub location: RootLocation,
    pub root_multiplicity: u32,
    pub label: String,
}

/// Number of singular points (counted over ℚ̄) with a given root multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub multiplicity: u32,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberClassification {
    pub multiplicity_profile: Vec<ProfileEntry>,
    pub singular_points: Vec<SingularPoint>,
    pub total_delta: u64,
    pub smooth: bool,
}

impl FiberClassification {
    /// Compact profile such as `2A1`, `A1+A2` or `smooth`.
    pub fn profile_label(&self) -> String {
        if self.smooth {
            return "smooth".to_string();
        }
        self.multiplicity_profile
            .iter()
            .map(|e| {
                let a = format!("A{}", e.multiplicity - 1);
                if e.count == 1 {
                    a
                } else {
                    format!("{}{a}", e.count)
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Sum of the Milnor numbers `m - 1` of the singular points.
    pub fn total_milnor(&self) -> u64 {
        self.multiplicity_profile
            .iter()
            .map(|e| e.count as u64 * (e.multiplicity as u64 - 1))
            .sum()
    }
}

pub fn classify_fiber(p: &MonicUnivariate) -> Result<FiberClassification, FamilyError> {
    let mut points = Vec::new();
    let mut profile = Vec::new();
    let mut total_delta = 0;
    for (part, m) in factor::square_free_decomposition(p.poly()) {
        if m < 2 {
            continue;
        }
        let label = format!("A{}", m - 1);
        let mut count = 0;
        for irr in factor::factor_square_free(&part)? {
            let e = irr.degree().unwrap_or(0);
            count += e;
            let location = if e == 1 {
                RootLocation::Rational(-irr.coeff(0))
            } else {
                RootLocation::Factor { factor: irr.display_in('x'), degree: e }
            };
            points.push(SingularPoint { location, root_multiplicity: m, label: label.clone() });
        }
        total_delta += count as u64 * (m as u64 / 2);
        profile.push(ProfileEntry { multiplicity: m, count });
    }
    Ok(FiberClassification {
        smooth: profile.is_empty(),
        multiplicity_profile: profile,
        singular_points: points,
        total_delta,
    })
}

/// `Δ = -(4a^3 + 27b^2)`.
pub fn cubic_discriminant(a: &Q, b: &Q) -> Q {
    -(q(4) * a * a * a + q(27) * b * b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CubicLabel {
    Smooth,
    OneNode,
    Cusp,
}

impl fmt::Display for CubicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicLabel::Smooth => "Smooth",
            CubicLabel::OneNode => "OneNode",
            CubicLabel::Cusp => "Cusp",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicStratum {
    pub label: CubicLabel,
    #[serde(with = "serde_q")]
    pub discriminant: Q,
}

pub fn stratify_cubic(a: &Q, b: &Q) -> CubicStratum {
    let discriminant = cubic_discriminant(a, b);
    let label = if !discriminant.is_zero() {
        CubicLabel::Smooth
    } else if a.is_zero() && b.is_zero() {
        CubicLabel::Cusp
    } else {
        CubicLabel::OneNode
    };
    CubicStratum { label, discriminant }
}

/// `x^3 + a x + b`.
pub fn versal_cubic(a: &Q, b: &Q) -> MonicUnivariate {
    MonicUnivariate(UniPoly::new(vec![b.clone(), a.clone(), Q::zero(), Q::one()]))
}

/// Label the fiber classification assigns to `x^3 + a x + b`.
pub fn cubic_label_from_fiber(a: &Q, b: &Q) -> Result<CubicLabel, FamilyError> {
    let fiber = classify_fiber(&versal_cubic(a, b))?;
    let label = match fiber.multiplicity_profile.as_slice() {
        [] => CubicLabel::Smooth,
        [ProfileEntry { multiplicity: 2, count: 1 }] => CubicLabel::OneNode,
        [ProfileEntry { multiplicity: 3, count: 1 }] => CubicLabel::Cusp,
        other => unreachable!("a cubic cannot have profile {other:?}"),
    };
    Ok(label)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscriminantSample {
    #[serde(with = "serde_q")]
    pub t: Q,
    #[serde(with = "serde_q")]
    pub a: Q,
    #[serde(with = "serde_q")]
    pub b: Q,
    pub label: CubicLabel,
    #[serde(with = "serde_q")]
    pub discriminant: Q,
}

/// Stratifies `(a, b) = (-3t^2, 2t^3)`, the parametrized discriminant curve.
/// Every `t ≠ 0` must give `OneNode` and `t = 0` the cusp.
pub fn scan_discriminant(ts: &[Q], exec: Exec) -> Result<Vec<DiscriminantSample>, FamilyError> {
    let samples = exec.map(ts, |t| {
        let a = q(-3) * t * t;
        let b = q(2) * t * t * t;
        let s = stratify_cubic(&a, &b);
        DiscriminantSample { t: t.clone(), a, b, label: s.label, discriminant: s.discriminant }
    });
    for s in &samples {
        let expected = if s.t.is_zero() { CubicLabel::Cusp } else { CubicLabel::OneNode };
        if s.label != expected {
            return Err(FamilyError::AssertionFailure(format_q(&s.t)));
        }
    }
    Ok(samples)
}

/// `n` equally spaced rationals from `lo` to `hi` inclusive.
pub fn rational_grid(lo: &Q, hi: &Q, n: usize) -> Vec<Q> {
    if n == 1 {
        return vec![lo.clone()];
    }
    let step = (hi - lo) / Q::from_integer((n - 1).into());
    (0..n).map(|i| lo + &step * Q::from_integer(i.into())).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GridReport {
    pub points: usize,
    pub smooth: usize,
    pub one_node: usize,
    pub cusp: usize,
    /// `(a, b)` where the two labels differ.
    pub disagreements: Vec<(Q, Q)>,
}

/// Compares `stratify_cubic` with `classify_fiber` on the square grid
/// `values × values`.
pub fn cubic_grid_agreement(values: &[Q], exec: Exec) -> Result<GridReport, FamilyError> {
    let pairs: Vec<(Q, Q)> = values
        .iter()
        .flat_map(|a| values.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let results = exec.map(&pairs, |(a, b)| {
        cubic_label_from_fiber(a, b).map(|fiber| (stratify_cubic(a, b).label, fiber))
    });
    let mut report = GridReport { points: pairs.len(), ..GridReport::default() };
    for ((a, b), r) in pairs.into_iter().zip(results) {
        let (label, fiber) = r?;
        match label {
            CubicLabel::Smooth => report.smooth += 1,
            CubicLabel::OneNode => report.one_node += 1,
            CubicLabel::Cusp => report.cusp += 1,
        }
        if label != fiber {
            report.disagreements.push((a, b));
        }
    }
    Ok(report)
}

/// `p_s(x) = Σ coeffs[i](s) x^i`, coefficients polynomial in `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub coeffs: Vec<UniPoly>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct FamilySpec {
    pub coeffs: Vec<String>,
}

impl Family {
    pub fn from_spec(spec: &FamilySpec) -> Result<Self, FamilyError> {
        let coeffs = spec
            .coeffs
            .iter()
            .enumerate()
            .map(|(index, c)| {
                parse_univariate(c, 's').map_err(|source| FamilyError::Coefficient { index, source })
            })
            .collect::<Result<_, _>>()?;
        Ok(Family { coeffs })
    }

    /// The fiber at `s`, scaled to be monic.
    pub fn fiber(&self, s: &Q) -> Result<MonicUnivariate, FamilyError> {
        let p = UniPoly::new(self.coeffs.iter().map(|c| c.eval(s)).collect());
        MonicUnivariate::normalized(&p).map_err(|_| FamilyError::DegenerateFiber(format_q(s)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSample {
    #[serde(with = "serde_q")]
    pub s: Q,
    pub delta: u64,
    pub profile: String,
    pub fiber: FiberClassification,
}

/// A change of multiplicity profile between consecutive samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transition {
    #[serde(with = "serde_q")]
    pub from_s: Q,
    #[serde(with = "serde_q")]
    pub to_s: Q,
    pub from_profile: String,
    pub to_profile: String,
    pub from_delta: u64,
    pub to_delta: u64,
    /// `δ(limit) >= δ(nearby)`, the limit being the side with the larger
    /// total Milnor number (the later sample on ties).
    pub delta_semicontinuous: bool,
    /// `δ(limit) > δ(nearby)`; reported, not an error.
    pub delta_jump: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathReport {
    pub samples: Vec<PathSample>,
    pub equigeneric: bool,
    pub transitions: Vec<Transition>,
}

pub fn equigeneric_path_check(family: &Family, samples: &[Q], exec: Exec) -> Result<PathReport, FamilyError> {
    let fibers = exec.map(samples, |s| family.fiber(s).and_then(|p| classify_fiber(&p)));
    let mut out = Vec::with_capacity(samples.len());
    for (s, fiber) in samples.iter().zip(fibers) {
        let fiber = fiber?;
        out.push(PathSample { s: s.clone(), delta: fiber.total_delta, profile: fiber.profile_label(), fiber });
    }
    let equigeneric = out.windows(2).all(|w| w[0].delta == w[1].delta);
    let transitions = out
        .windows(2)
        .filter(|w| w[0].fiber.multiplicity_profile != w[1].fiber.multiplicity_profile)
        .map(|w| {
            let (before, after) = (&w[0], &w[1]);
            let (limit, nearby) = if before.fiber.total_milnor() > after.fiber.total_milnor() {
                (before, after)
            } else {
                (after, before)
            };
            Transition {
                from_s: before.s.clone(),
                to_s: after.s.clone(),
                from_profile: before.profile.clone(),
                to_profile: after.profile.clone(),
                from_delta: before.delta,
                to_delta: after.delta,
                delta_semicontinuous: limit.delta >= nearby.delta,
                delta_jump: limit.delta > nearby.delta,
            }
        })
        .collect();
    Ok(PathReport { samples: out, equigeneric, transitions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn monic(coeffs: &[i64]) -> MonicUnivariate {
        MonicUnivariate::new(UniPoly::from_ints(coeffs)).unwrap()
    }

    #[test]
    fn fibers() {
        let f = classify_fiber(&monic(&[0, 0, 0, 1])).unwrap();
        assert_eq!(f.total_delta, 1);
        assert_eq!(f.profile_label(), "A2");
        assert_eq!(f.singular_points[0].location, RootLocation::Rational(q(0)));

        // (x^2 - 1)^2
        let f = classify_fiber(&monic(&[1, 0, -2, 0, 1])).unwrap();
        assert_eq!(f.total_delta, 2);
        assert_eq!(f.profile_label(), "2A1");

        // x^3 - 3x + 2 = (x - 1)^2 (x + 2)
        let f = classify_fiber(&monic(&[2, -3, 0, 1])).unwrap();
        assert_eq!(f.singular_points.len(), 1);
        assert_eq!(f.singular_points[0].location, RootLocation::Rational(q(1)));
        assert_eq!(f.singular_points[0].label, "A1");

        let f = classify_fiber(&monic(&[-2, 0, 1])).unwrap();
        assert!(f.smooth);
        assert_eq!(f.total_delta, 0);
    }

    #[test]
    fn irrational_repeated_roots_keep_their_factor() {
        // (x^2 - 2)^3
        let f = classify_fiber(&monic(&[-8, 0, 12, 0, -6, 0, 1])).unwrap();
        assert_eq!(f.multiplicity_profile, vec![ProfileEntry { multiplicity: 3, count: 2 }]);
        assert_eq!(f.total_delta, 2);
        assert_eq!(
            f.singular_points[0].location,
            RootLocation::Factor { factor: "x^2 - 2".into(), degree: 2 }
        );
    }

    #[test]
    fn monic_validation() {
        assert_eq!(MonicUnivariate::new(UniPoly::from_ints(&[1])), Err(FamilyError::ConstantPolynomial));
        assert_eq!(MonicUnivariate::new(UniPoly::from_ints(&[1, 2])), Err(FamilyError::NotMonic));
    }

    #[test]
    fn discriminant_values() {
        assert_eq!(cubic_discriminant(&q(0), &q(0)), q(0));
        assert_eq!(cubic_discriminant(&q(-3), &q(2)), q(0));
        assert_eq!(cubic_discriminant(&q(1), &q(1)), q(-31));
        assert_eq!(stratify_cubic(&q(0), &q(0)).label, CubicLabel::Cusp);
        assert_eq!(stratify_cubic(&q(-3), &q(2)).label, CubicLabel::OneNode);
        assert_eq!(stratify_cubic(&q(1), &q(1)).label, CubicLabel::Smooth);
    }

    #[test]
    fn discriminant_scan() {
        let ts = vec![q(0), q(1), frac(1, 2), q(-3)];
        let out = scan_discriminant(&ts, Exec::Sequential).unwrap();
        assert_eq!(out[0].label, CubicLabel::Cusp);
        assert_eq!((out[2].a.clone(), out[2].b.clone()), (frac(-3, 4), frac(1, 4)));
        assert!(out[1..].iter().all(|s| s.label == CubicLabel::OneNode));
    }

    #[test]
    fn collision_paths() {
        let spec = FamilySpec { coeffs: vec!["2s^3".into(), "-3s^2".into(), "0".into(), "1".into()] };
        let family = Family::from_spec(&spec).unwrap();
        let report = equigeneric_path_check(&family, &[q(1), frac(1, 2), q(0)], Exec::Sequential).unwrap();
        assert!(report.equigeneric);
        assert_eq!(report.transitions.len(), 1);
        let t = &report.transitions[0];
        assert_eq!((t.from_profile.as_str(), t.to_profile.as_str()), ("A1", "A2"));
        assert_eq!(t.to_s, q(0));
        assert!(t.delta_semicontinuous && !t.delta_jump);

        // (x^2 - s)^2
        let spec = FamilySpec { coeffs: vec!["s^2".into(), "0".into(), "-2s".into(), "0".into(), "1".into()] };
        let report =
            equigeneric_path_check(&Family::from_spec(&spec).unwrap(), &[q(1), q(0)], Exec::Sequential).unwrap();
        assert!(report.equigeneric);
        assert_eq!(report.transitions[0].from_profile, "2A1");
        assert_eq!(report.transitions[0].to_profile, "A3");
    }

    #[test]
    fn degenerate_fibers_are_errors() {
        let spec = FamilySpec { coeffs: vec!["1".into(), "s".into()] };
        let family = Family::from_spec(&spec).unwrap();
        assert_eq!(family.fiber(&q(0)), Err(FamilyError::DegenerateFiber("0".into())));
        assert!(family.fiber(&q(2)).is_ok());
    }
}
