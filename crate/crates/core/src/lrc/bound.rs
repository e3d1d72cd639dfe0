use super::LrcError;
use crate::numtheory::ceil_div;

/// `n - k + 1 - (⌈k/r⌉ - 1)(δ - 1)`, the largest distance an (r, δ)-LRC
/// with these parameters can have.
///
/// `r > k` is accepted: the bound then collapses to `n - k + 1`.
pub fn singleton_bound(n: usize, k: usize, r: usize, delta: usize) -> Result<i64, LrcError> {
    if k == 0 || k > n {
        return Err(LrcError::InvalidParams(format!(
            "need 1 ≤ k ≤ n, got k = {k}, n = {n}"
        )));
    }
    if r == 0 {
        return Err(LrcError::InvalidParams("need r ≥ 1".into()));
    }
    if delta < 2 {
        return Err(LrcError::InvalidParams("need δ ≥ 2".into()));
    }
    let groups = ceil_div(k as u64, r as u64) as i64;
    Ok(n as i64 - k as i64 + 1 - (groups - 1) * (delta as i64 - 1))
}
