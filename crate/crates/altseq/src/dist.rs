//! Exact counts b_{n,k} = #{w in S_n : as(w) = k}.
//!
//! The production path is a rank-based dynamic program over prefixes; the
//! oracle enumerates all n! permutations. Counts are arbitrary-precision
//! integers so that all later moment arithmetic stays exact.

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, Zero};

use crate::error::Error;
use crate::perm::{as_linear, for_each_permutation, Convention, Sign};

/// Default upper bound on n for the dynamic program (memory-bound).
pub const DEFAULT_N_MAX: usize = 300;

/// Cap for the enumeration oracle.
pub const BRUTE_FORCE_N_MAX: usize = 10;

/// Exact law of the statistic on S_n: counts[k-1] permutations with value k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    n: usize,
    convention: Convention,
    counts: Vec<BigUint>,
}

impl DistributionTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Counts indexed by k-1, k = 1..=n.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> &BigUint {
        &self.counts[k - 1]
    }

    /// Sum of all counts; equals n! for a correct table.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// P(X_n = k) as an exact rational.
    pub fn probability(&self, k: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.counts[k - 1].clone()),
            BigInt::from(self.total()),
        )
    }

    /// Test-only corruption hook used to prove the verification harness
    /// actually fails on bad data.
    #[doc(hidden)]
    pub fn corrupt_for_test(&mut self) {
        self.counts[0] += 1u32;
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u32).map(BigUint::from).product()
}

/// Oracle: enumerate all n! permutations and tally the statistic.
pub fn distribution_bruteforce(n: usize, c: Convention) -> Result<DistributionTable, Error> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    if n > BRUTE_FORCE_N_MAX {
        return Err(Error::ResourceLimit {
            n,
            limit: BRUTE_FORCE_N_MAX,
        });
    }
    let mut counts = vec![BigUint::zero(); n];
    for_each_permutation(n, |w| {
        let k = as_linear(w, c) as usize;
        counts[k - 1] += 1u32;
    })?;
    Ok(DistributionTable {
        n,
        convention: c,
        counts,
    })
}

/// Dynamic program producing the exact table for one n. See
/// [`distribution_dp_family`] for the underlying recursion; a single pass
/// computes every prefix length, so prefer the family call when several n
/// are needed.
pub fn distribution_dp(n: usize, c: Convention) -> Result<DistributionTable, Error> {
    distribution_dp_limited(n, c, DEFAULT_N_MAX)
}

pub fn distribution_dp_limited(
    n: usize,
    c: Convention,
    limit: usize,
) -> Result<DistributionTable, Error> {
    Ok(distribution_dp_family_limited(n, c, limit)?.pop().unwrap())
}

/// Tables for every length 1..=n in one pass.
pub fn distribution_dp_family(n: usize, c: Convention) -> Result<Vec<DistributionTable>, Error> {
    distribution_dp_family_limited(n, c, DEFAULT_N_MAX)
}

/// The DP runs over prefixes of a permutation read left to right, with state
/// (rank of last element within the prefix, last comparison sign, current
/// statistic value). Appending an element of new rank r' gives an ascent iff
/// r' exceeds the old last rank; the statistic increments on each sign
/// change, seeded by whether the first sign matches the convention. The sum
/// over old ranks is aggregated with prefix/suffix sums so the total number
/// of big-integer additions is O(n^3).
pub fn distribution_dp_family_limited(
    n: usize,
    c: Convention,
    limit: usize,
) -> Result<Vec<DistributionTable>, Error> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    if n > limit {
        return Err(Error::ResourceLimit { n, limit });
    }
    let mut tables = Vec::with_capacity(n);
    tables.push(DistributionTable {
        n: 1,
        convention: c,
        counts: vec![BigUint::one()],
    });
    if n == 1 {
        return Ok(tables);
    }

    let start = c.start_sign();
    let bump = |sign: Sign| -> usize {
        if sign == start {
            1
        } else {
            0
        }
    };

    // cnt[s][l-1][k-1] for prefix length i; s: 0 = Ascent, 1 = Descent.
    // Seed i = 2 from the single length-1 prefix.
    let mut size = 2usize;
    let mut cnt: [Vec<Vec<BigUint>>; 2] = [
        vec![vec![BigUint::zero(); 2]; 2],
        vec![vec![BigUint::zero(); 2]; 2],
    ];
    // New rank 2: ascent, last rank 2. New rank 1: descent, last rank 1.
    cnt[0][1][bump(Sign::Ascent)] = BigUint::one();
    cnt[1][0][bump(Sign::Descent)] = BigUint::one();
    tables.push(marginal(&cnt, size, c));

    while size < n {
        let i = size;
        // Prefix sums over rank for ascents, suffix sums for descents,
        // per statistic value k.
        // pre[l][k-1] = sum_{l' <= l} cnt[0][l'-1][k-1], l = 0..=i.
        let mut pre = vec![vec![BigUint::zero(); i]; i + 1];
        for l in 1..=i {
            for k in 0..i {
                pre[l][k] = &pre[l - 1][k] + &cnt[0][l - 1][k];
            }
        }
        // suf[l][k-1] = sum_{l' >= l} cnt[1][l'-1][k-1], l = 1..=i+1.
        let mut suf = vec![vec![BigUint::zero(); i]; i + 2];
        for l in (1..=i).rev() {
            for k in 0..i {
                suf[l][k] = &suf[l + 1][k] + &cnt[1][l - 1][k];
            }
        }
        // Also need the opposite-sign sums for the k-increment terms.
        let mut pre_d = vec![vec![BigUint::zero(); i]; i + 1];
        for l in 1..=i {
            for k in 0..i {
                pre_d[l][k] = &pre_d[l - 1][k] + &cnt[1][l - 1][k];
            }
        }
        let mut suf_a = vec![vec![BigUint::zero(); i]; i + 2];
        for l in (1..=i).rev() {
            for k in 0..i {
                suf_a[l][k] = &suf_a[l + 1][k] + &cnt[0][l - 1][k];
            }
        }

        let mut next: [Vec<Vec<BigUint>>; 2] = [
            vec![vec![BigUint::zero(); i + 1]; i + 1],
            vec![vec![BigUint::zero(); i + 1]; i + 1],
        ];
        for r in 1..=i + 1 {
            for k in 1..=i + 1 {
                // Ascent into rank r: old rank <= r-1. Same sign keeps k,
                // a descent-to-ascent change contributes at k-1.
                let lo = r.min(i + 1) - 1; // old ranks 1..=r-1, capped at i
                let lo = lo.min(i);
                let mut a = if k <= i { pre[lo][k - 1].clone() } else { BigUint::zero() };
                if k >= 2 && k - 1 <= i {
                    a += &pre_d[lo][k - 2];
                }
                next[0][r - 1][k - 1] = a;

                // Descent into rank r: old rank >= r.
                let hi = r.min(i + 1);
                let mut d = if hi <= i && k <= i {
                    suf[hi][k - 1].clone()
                } else {
                    BigUint::zero()
                };
                if hi <= i && k >= 2 && k - 1 <= i {
                    d += &suf_a[hi][k - 2];
                }
                next[1][r - 1][k - 1] = d;
            }
        }
        cnt = next;
        size += 1;
        tables.push(marginal(&cnt, size, c));
    }
    Ok(tables)
}

fn marginal(cnt: &[Vec<Vec<BigUint>>; 2], n: usize, c: Convention) -> DistributionTable {
    let mut counts = vec![BigUint::zero(); n];
    for s in 0..2 {
        for l in 0..n {
            for k in 0..n {
                counts[k] += &cnt[s][l][k];
            }
        }
    }
    DistributionTable {
        n,
        convention: c,
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts_u64(t: &DistributionTable) -> Vec<u64> {
        t.counts().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn bruteforce_small_tables() {
        let c = Convention::DescentFirst;
        assert_eq!(counts_u64(&distribution_bruteforce(1, c).unwrap()), vec![1]);
        assert_eq!(counts_u64(&distribution_bruteforce(3, c).unwrap()), vec![1, 3, 2]);
        assert_eq!(counts_u64(&distribution_bruteforce(4, c).unwrap()), vec![1, 7, 11, 5]);
    }

    #[test]
    fn bruteforce_guard() {
        assert!(distribution_bruteforce(11, Convention::DescentFirst).is_err());
        assert!(distribution_bruteforce(0, Convention::DescentFirst).is_err());
    }

    #[test]
    fn dp_small_tables() {
        let c = Convention::DescentFirst;
        assert_eq!(counts_u64(&distribution_dp(2, c).unwrap()), vec![1, 1]);
        assert_eq!(counts_u64(&distribution_dp(4, c).unwrap()), vec![1, 7, 11, 5]);
    }

    #[test]
    fn dp_matches_bruteforce() {
        for c in [Convention::DescentFirst, Convention::AscentFirst] {
            let family = distribution_dp_family(8, c).unwrap();
            for n in 1..=8 {
                assert_eq!(
                    family[n - 1].counts(),
                    distribution_bruteforce(n, c).unwrap().counts(),
                    "n = {n}, {c:?}"
                );
            }
        }
    }

    #[test]
    fn counts_sum_to_factorial() {
        let family = distribution_dp_family(30, Convention::DescentFirst).unwrap();
        for t in &family {
            assert_eq!(t.total(), factorial(t.n()));
        }
    }

    #[test]
    fn boundary_counts() {
        let family = distribution_dp_family(20, Convention::DescentFirst).unwrap();
        for t in &family {
            assert_eq!(t.count(1), &BigUint::one());
            assert!(t.count(t.n()) > &BigUint::zero());
        }
    }

    #[test]
    fn conventions_agree_elementwise() {
        let a = distribution_dp_family(12, Convention::DescentFirst).unwrap();
        let b = distribution_dp_family(12, Convention::AscentFirst).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.counts(), y.counts());
        }
    }

    #[test]
    fn dp_resource_limit() {
        assert!(matches!(
            distribution_dp_limited(301, Convention::DescentFirst, 300),
            Err(Error::ResourceLimit { n: 301, limit: 300 })
        ));
    }
}
