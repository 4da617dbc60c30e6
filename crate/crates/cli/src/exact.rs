//! Rendering and parsing of exact rationals.

use anyhow::{anyhow, Context, Result};
use sharedcache::Rational;

/// Always `p/q`, including integers (`0/1`).
pub fn to_exact(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a plain integer.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i128 = num.parse().with_context(|| format!("bad numerator in {s:?}"))?;
    let den: i128 = den.parse().with_context(|| format!("bad denominator in {s:?}"))?;
    if den == 0 {
        return Err(anyhow!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Decimal with 12 significant digits.
pub fn to_decimal(r: Rational) -> String {
    let v = *r.numer() as f64 / *r.denom() as f64;
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}
