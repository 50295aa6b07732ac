//! Brute-force `f(n, k, l)` through the general-purpose decision procedure,
//! sharing no code with the branch-and-bound engine.

use crate::error::{Error, Result};
use crate::family::{Family, GroundSet, SubsetMask};
use crate::sperner::is_l_trace_k_sperner;

/// Largest `n` the oracle accepts.
pub const ORACLE_MAX_N: usize = 4;

/// Exact `f(n, k, l)` for `n <= 4`.
///
/// For `n <= 3` every one of the `2^(2^n)` subfamilies is tested. At `n = 4`
/// the property is hereditary, so the valid families are exactly those
/// reachable by adding sets in increasing order through valid families; the
/// oracle walks that tree instead of all `2^16` subsets.
pub fn f_exact_oracle(n: usize, k: usize, l: usize) -> Result<usize> {
    if n == 0 || n > ORACLE_MAX_N {
        return Err(Error::Capacity(format!(
            "oracle enumeration supports 1 <= n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let ground = GroundSet::new(n)?;
    if n <= 3 {
        let size = ground.power_set_size();
        let mut best = 0;
        for pick in 0u64..1 << size {
            let fam = Family::new(
                ground,
                (0..size as u32).filter(|&m| pick >> m & 1 == 1).map(SubsetMask),
            )?;
            if fam.len() > best && is_l_trace_k_sperner(&fam, l, k)?.holds {
                best = fam.len();
            }
        }
        return Ok(best);
    }
    if l > n {
        return Err(Error::InvalidArgument(format!("l = {l} exceeds n = {n}")));
    }
    fn walk(fam: &Family, next: u32, top: u32, k: usize, l: usize, best: &mut usize) {
        *best = (*best).max(fam.len());
        for m in next..top {
            let grown = fam.with_set(SubsetMask(m)).expect("inside [n]");
            if is_l_trace_k_sperner(&grown, l, k).expect("l <= n").holds {
                walk(&grown, m + 1, top, k, l, best);
            }
        }
    }
    let mut best = 0;
    walk(&Family::empty(ground), 0, 1 << n, k, l, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_points() {
        assert_eq!(f_exact_oracle(3, 1, 3).unwrap(), 3);
        assert_eq!(f_exact_oracle(3, 2, 3).unwrap(), 6);
        assert_eq!(f_exact_oracle(2, 1, 1).unwrap(), 1);
        assert_eq!(f_exact_oracle(2, 1, 2).unwrap(), 2);
    }

    #[test]
    fn refuses_large_n() {
        assert!(matches!(f_exact_oracle(5, 1, 1), Err(Error::Capacity(_))));
    }
}
