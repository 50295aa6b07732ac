//! Binomial machinery and the closed-form layered constructions.

use num::{BigUint, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::family::{Family, GroundSet};

/// `C(n, k)` as an exact integer (zero when `k > n`).
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "{n}! overflows u64");
    (1..=n as u64).product()
}

/// `n!` as an exact integer.
pub fn factorial_big(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Row `n` of Pascal's triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialTable {
    n: usize,
    row: Vec<BigUint>,
}

impl BinomialTable {
    pub fn new(n: usize) -> Self {
        let mut row = Vec::with_capacity(n + 1);
        let mut cur = BigUint::one();
        row.push(cur.clone());
        for i in 0..n {
            cur = cur * BigUint::from(n - i) / BigUint::from(i + 1);
            row.push(cur.clone());
        }
        BinomialTable { n, row }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self) -> &[BigUint] {
        &self.row
    }

    pub fn get(&self, i: usize) -> BigUint {
        self.row.get(i).cloned().unwrap_or_default()
    }
}

/// Sum of the `m` largest binomial coefficients of order `n`,
/// `Σ_{i=1}^{m} C(n, ⌊(n-m)/2⌋ + i)`.
///
/// `sigma(n, 0) = 0`; `m > n + 1` is rejected.
pub fn sigma(n: usize, m: usize) -> Result<BigUint> {
    if n == 0 {
        return invalid("sigma needs n >= 1");
    }
    if m > n + 1 {
        return invalid(format!("sigma({n}, {m}): m exceeds n + 1"));
    }
    let base = (n as i64 - m as i64).div_euclid(2);
    Ok((1..=m as i64)
        .map(|i| binomial(n, (base + i) as usize))
        .sum())
}

/// Sets of every size in `lo..=hi`.
fn band(n: usize, lo: usize, hi: usize) -> Result<Family> {
    Ok(Family::layers(GroundSet::new(n)?, lo, hi))
}

fn check_trace_params(n: usize, k: usize, l: usize) -> Result<()> {
    if l == 0 || l >= k || k > n {
        return invalid(format!("need 1 <= l < k <= n, got n={n}, k={k}, l={l}"));
    }
    Ok(())
}

/// The `k - l` consecutive middle layers starting at `⌊(n-(k-l))/2⌋ + 1`.
pub fn build_g0(n: usize, k: usize, l: usize) -> Result<Family> {
    check_trace_params(n, k, l)?;
    let d = k - l;
    let lo = (n - d) / 2 + 1;
    band(n, lo, lo + d - 1)
}

/// The band one layer below [`build_g0`]; only defined when `n - (k-l)` is even.
pub fn build_g0_prime(n: usize, k: usize, l: usize) -> Result<Family> {
    check_trace_params(n, k, l)?;
    let d = k - l;
    if (n - d) % 2 != 0 {
        return invalid(format!(
            "G0' only defined in the even case; n - (k - l) = {} is odd",
            n - d
        ));
    }
    let lo = (n - d) / 2;
    band(n, lo, lo + d - 1)
}

/// Which of the two extremal k-Sperner bands to build.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErdosVariant {
    /// Sizes `⌊(n-k)/2⌋ + 1 ..= ⌊(n-k)/2⌋ + k`; always extremal.
    Upper,
    /// Sizes `⌊(n-k)/2⌋ ..= ⌊(n-k)/2⌋ + k - 1`; extremal when `n + k` is even.
    Lower,
}

/// `k` consecutive middle layers of `2^[n]`, of total size `sigma(n, k)`.
pub fn build_erdos_extremal(n: usize, k: usize, variant: ErdosVariant) -> Result<Family> {
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n={n}, k={k}"));
    }
    let base = (n - k) / 2;
    match variant {
        ErdosVariant::Upper => band(n, base + 1, base + k),
        ErdosVariant::Lower => {
            if (n + k) % 2 != 0 {
                return invalid(format!(
                    "lower Erdős band is extremal only when n + k is even (n + k = {})",
                    n + k
                ));
            }
            band(n, base, base + k - 1)
        }
    }
}

/// Every pair of members differs in size by less than `d`.
pub fn pairwise_size_gap_below(fam: &Family, d: usize) -> bool {
    match fam.size_range() {
        None => true,
        Some((lo, hi)) => hi - lo < d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sperner::is_l_trace_k_sperner;

    /// Sort-and-take-top-m, independent of the closed form.
    fn sigma_oracle(n: usize, m: usize) -> BigUint {
        let mut row: Vec<BigUint> = (0..=n).map(|i| binomial(n, i)).collect();
        row.sort_by(|a, b| b.cmp(a));
        row.into_iter().take(m).sum()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(4, 1).unwrap(), BigUint::from(6u32));
        assert_eq!(sigma(4, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(sigma(5, 2).unwrap(), BigUint::from(20u32));
        assert_eq!(sigma(4, 0).unwrap(), BigUint::zero());
        for n in 1..=10 {
            assert_eq!(sigma(n, n + 1).unwrap(), BigUint::one() << n);
        }
        assert!(sigma(4, 6).is_err());
    }

    #[test]
    fn sigma_matches_top_m_oracle() {
        for n in 1..=15 {
            for m in 1..=n + 1 {
                assert_eq!(sigma(n, m).unwrap(), sigma_oracle(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn binomial_table_invariants() {
        for n in 0..=20 {
            let t = BinomialTable::new(n);
            let total: BigUint = t.row().iter().sum();
            assert_eq!(total, BigUint::one() << n);
            for i in 0..=n {
                assert_eq!(t.get(i), t.get(n - i));
                assert_eq!(t.get(i), binomial(n, i));
            }
        }
    }

    #[test]
    fn g0_examples() {
        let g = build_g0(4, 2, 1).unwrap();
        assert_eq!(g, Family::layers(GroundSet::new(4).unwrap(), 2, 2));
        assert_eq!(g.len(), 6);

        let g = build_g0(5, 3, 1).unwrap();
        assert_eq!(g, Family::layers(GroundSet::new(5).unwrap(), 2, 3));
        assert_eq!(g.len(), 20);

        let g = build_g0(6, 2, 1).unwrap();
        assert_eq!(g, Family::layers(GroundSet::new(6).unwrap(), 3, 3));
        assert_eq!(g.len(), 20);

        assert!(build_g0(4, 2, 2).is_err());
        assert!(build_g0(4, 2, 3).is_err());
    }

    #[test]
    fn g0_prime_examples() {
        let g = build_g0_prime(5, 2, 1).unwrap();
        assert_eq!(g, Family::layers(GroundSet::new(5).unwrap(), 2, 2));
        assert_eq!(g.len(), 10);

        let g = build_g0_prime(4, 3, 1).unwrap();
        assert_eq!(g, Family::layers(GroundSet::new(4).unwrap(), 1, 2));
        assert_eq!(g.len(), 10);

        let err = build_g0_prime(4, 2, 1).unwrap_err();
        assert!(err.to_string().contains("even case"));
    }

    #[test]
    fn erdos_examples() {
        let f = build_erdos_extremal(4, 2, ErdosVariant::Upper).unwrap();
        assert_eq!(f, Family::layers(GroundSet::new(4).unwrap(), 2, 3));
        assert_eq!(f.len(), 10);

        let f = build_erdos_extremal(3, 1, ErdosVariant::Upper).unwrap();
        assert_eq!(f, Family::layers(GroundSet::new(3).unwrap(), 2, 2));
        assert_eq!(f.len(), 3);

        let f = build_erdos_extremal(3, 3, ErdosVariant::Upper).unwrap();
        assert_eq!(f.len(), 7);

        let f = build_erdos_extremal(4, 2, ErdosVariant::Lower).unwrap();
        assert_eq!(f, Family::layers(GroundSet::new(4).unwrap(), 1, 2));
        assert!(build_erdos_extremal(4, 1, ErdosVariant::Lower).is_err());
    }

    #[test]
    fn size_gap_examples() {
        let g4 = GroundSet::new(4).unwrap();
        assert!(pairwise_size_gap_below(&Family::layers(g4, 2, 2), 1));
        let ends = Family::new(g4, [g4.full(), crate::family::SubsetMask::EMPTY]).unwrap();
        assert!(!pairwise_size_gap_below(&ends, 4));
        assert!(pairwise_size_gap_below(&build_g0(5, 3, 1).unwrap(), 2));
        assert!(pairwise_size_gap_below(&Family::empty(g4), 1));
    }

    #[test]
    fn construction_sizes_and_layers() {
        for n in 1..=12 {
            for k in 2..=n {
                for l in 1..k {
                    let target = sigma(n, k - l).unwrap();
                    let g = build_g0(n, k, l).unwrap();
                    assert_eq!(BigUint::from(g.len()), target);
                    let (lo, hi) = g.size_range().unwrap();
                    assert_eq!(g, Family::layers(g.ground(), lo, hi));
                    if let Ok(gp) = build_g0_prime(n, k, l) {
                        assert_eq!(BigUint::from(gp.len()), target);
                        let (lo, hi) = gp.size_range().unwrap();
                        assert_eq!(gp, Family::layers(gp.ground(), lo, hi));
                    }
                }
            }
        }
    }

    #[test]
    fn small_banded_constructions_are_trace_sperner() {
        for n in 2..=6 {
            for k in 2..=n.min(4) {
                for l in 1..k {
                    let g = build_g0(n, k, l).unwrap();
                    assert!(is_l_trace_k_sperner(&g, n - l, k).unwrap().holds);
                }
            }
        }
    }
}
