//! Dimension counts for Severi-type strata `V_{δ,κ}(|L|)` on ℙ², K3 and
//! Hirzebruch surfaces.
//!
//! On the Hirzebruch surface `F_n` the class `L = aE + bF` is written in the
//! basis of the negative section `E` and the fiber `F`, with `E^2 = -n`,
//! `E·F = 1`, `F^2 = 0` and canonical class `K = -2E - (n + 2)F`.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceSpec {
    P2 { d: i64 },
    K3 { g: i64 },
    Hirzebruch { n: i64, a: i64, b: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct StrataQuery {
    pub delta: i64,
    pub kappa: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("invalid surface: {0}")]
    InvalidSpec(String),
    #[error("node and cusp counts must be nonnegative")]
    NegativeCount,
}

impl SurfaceSpec {
    pub fn validate(&self) -> Result<(), StrataError> {
        let bad = |m: &str| Err(StrataError::InvalidSpec(m.to_string()));
        match *self {
            SurfaceSpec::P2 { d } if d < 1 => bad("P2 requires d >= 1"),
            SurfaceSpec::K3 { g } if g < 2 => bad("K3 requires g >= 2"),
            SurfaceSpec::Hirzebruch { n, .. } if n < 0 => bad("Hirzebruch requires n >= 0"),
            SurfaceSpec::Hirzebruch { a, .. } if a < 1 => bad("Hirzebruch requires a >= 1"),
            _ => Ok(()),
        }
    }

    /// The positivity hypothesis `b ≫ 0` is only heuristic: flags `b < a n`.
    pub fn positivity_warning(&self) -> Option<String> {
        match *self {
            SurfaceSpec::Hirzebruch { n, a, b } if b < a * n => {
                Some(format!("b = {b} is below a*n = {}; the class may not be sufficiently positive", a * n))
            }
            _ => None,
        }
    }
}

impl StrataQuery {
    fn validate(&self) -> Result<(), StrataError> {
        if self.delta < 0 || self.kappa < 0 {
            return Err(StrataError::NegativeCount);
        }
        Ok(())
    }
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Intersection product on `F_n` of `x1 E + y1 F` and `x2 E + y2 F`.
pub fn hirzebruch_intersection(n: i64, (x1, y1): (i64, i64), (x2, y2): (i64, i64)) -> i64 {
    -n * x1 * x2 + x1 * y2 + y1 * x2
}

pub fn linear_system_dim(s: &SurfaceSpec) -> Result<i64, StrataError> {
    s.validate()?;
    Ok(match *s {
        SurfaceSpec::P2 { d } => binom2(d + 2) - 1,
        SurfaceSpec::K3 { g } => g,
        SurfaceSpec::Hirzebruch { n, a, b } => (a + 1) * (b + 1) - a * (a + 1) * n / 2 - 1,
    })
}

pub fn arithmetic_genus(s: &SurfaceSpec) -> Result<i64, StrataError> {
    s.validate()?;
    Ok(match *s {
        SurfaceSpec::P2 { d } => binom2(d - 1),
        SurfaceSpec::K3 { g } => g,
        SurfaceSpec::Hirzebruch { n, a, b } => {
            let l = (a, b);
            let l_plus_k = (a - 2, b - n - 2);
            // L·(L + K) is always even
            hirzebruch_intersection(n, l, l_plus_k) / 2 + 1
        }
    })
}

pub fn conditions_imposed(q: &StrataQuery) -> i64 {
    q.delta + 2 * q.kappa
}

/// `dim |L| - δ - 2κ`; negative values mean the stratum is expected empty.
pub fn expected_dim(s: &SurfaceSpec, q: &StrataQuery) -> Result<i64, StrataError> {
    q.validate()?;
    Ok(linear_system_dim(s)? - conditions_imposed(q))
}

/// Which of the two cusp bounds is smaller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BindingBound {
    Dimension,
    Genus,
    Both,
}

impl BindingBound {
    pub fn as_str(self) -> &'static str {
        match self {
            BindingBound::Dimension => "dimension",
            BindingBound::Genus => "genus",
            BindingBound::Both => "both",
        }
    }
}

/// `min(⌊dim |L| / 2⌋, p_a)` together with the bound attaining it.
pub fn max_cusps_with_bound(s: &SurfaceSpec) -> Result<(i64, BindingBound), StrataError> {
    let by_dim = linear_system_dim(s)?.div_euclid(2);
    let by_genus = arithmetic_genus(s)?;
    Ok(match by_dim.cmp(&by_genus) {
        std::cmp::Ordering::Less => (by_dim, BindingBound::Dimension),
        std::cmp::Ordering::Greater => (by_genus, BindingBound::Genus),
        std::cmp::Ordering::Equal => (by_dim, BindingBound::Both),
    })
}

pub fn max_cusps(s: &SurfaceSpec) -> Result<i64, StrataError> {
    max_cusps_with_bound(s).map(|(k, _)| k)
}

pub fn nonempty_expected(s: &SurfaceSpec, q: &StrataQuery) -> Result<bool, StrataError> {
    Ok(expected_dim(s, q)? >= 0 && q.kappa <= max_cusps(s)? && q.delta + q.kappa <= arithmetic_genus(s)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrataReport {
    pub dim: i64,
    pub genus: i64,
    pub expdim: i64,
    pub max_cusps: i64,
    pub nonempty_expected: bool,
    pub binding_bound: BindingBound,
}

pub fn report(s: &SurfaceSpec, q: &StrataQuery) -> Result<StrataReport, StrataError> {
    let (max_cusps, binding_bound) = max_cusps_with_bound(s)?;
    Ok(StrataReport {
        dim: linear_system_dim(s)?,
        genus: arithmetic_genus(s)?,
        expdim: expected_dim(s, q)?,
        max_cusps,
        nonempty_expected: nonempty_expected(s, q)?,
        binding_bound,
    })
}
