use std::fmt;

use crate::base_ring::Scalar;

/// Writes `c₁·m₁ + c₂·m₂ - …`, dropping unit coefficients and printing `0` for no terms.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(String, Scalar)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (mono, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}·{mono}")?;
        }
    }
    Ok(())
}
