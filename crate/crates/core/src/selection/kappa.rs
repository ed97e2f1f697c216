use crate::error::{Error, Result};
use crate::model::SupportSet;

/// Cohen's kappa between two supports over the same `p` columns, treating
/// each column as a binary include/exclude rating.
///
/// Two empty supports, or two full supports, score -1: those are the
/// degenerate "select nothing" and "select everything" regimes.
pub fn cohens_kappa(a1: &SupportSet, a2: &SupportSet) -> Result<f64> {
    if a1.p() != a2.p() {
        return Err(Error::DimensionMismatch {
            expected: a1.p(),
            found: a2.p(),
        });
    }
    let p = a1.p();
    if p == 0 {
        return Err(Error::InvalidInput("kappa needs p >= 1".into()));
    }
    if (a1.is_empty() && a2.is_empty()) || (a1.is_full() && a2.is_full()) {
        return Ok(-1.0);
    }
    let pf = p as f64;
    let (s1, s2) = (a1.len() as f64, a2.len() as f64);
    let both = a1.intersection_len(a2) as f64;
    let neither = pf - s1 - s2 + both;
    let observed = (both + neither) / pf;
    let expected = (s1 * s2 + (pf - s1) * (pf - s2)) / (pf * pf);
    // 1 - expected vanishes only in the two degenerate cases handled above.
    Ok((observed - expected) / (1.0 - expected))
}
