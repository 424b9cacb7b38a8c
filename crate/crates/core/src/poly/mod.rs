//! Exact polynomial arithmetic over ℚ.

mod bivariate;
pub mod factor;
mod gcd;
mod parse;
mod univariate;

pub use bivariate::BivariatePoly;
pub use gcd::{bivariate_gcd, singular_common_factor};
pub use parse::{parse_terms, ParseError};
pub use univariate::UniPoly;
pub(crate) use univariate::push_term;

/// Parses a polynomial in the single variable `var`.
pub fn parse_univariate(s: &str, var: char) -> Result<UniPoly, ParseError> {
    let terms = parse_terms(s, &[var])?;
    let deg = terms.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![crate::rational::Q::default(); deg + 1];
    for (e, c) in terms {
        coeffs[e[0] as usize] = c;
    }
    Ok(UniPoly::new(coeffs))
}
