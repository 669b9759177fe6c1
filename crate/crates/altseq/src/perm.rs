//! Permutations, the alternating-subsequence statistic, and seeded sampling.
//!
//! Two evaluators are provided for the statistic: [`as_bruteforce`] searches
//! all subsequences (the definition-faithful oracle, capped in size) and
//! [`as_linear`] counts runs of the descent word. Their equivalence is pinned
//! by exhaustive tests.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::Error;

/// Comparison sign between two adjacent (or consecutive chosen) entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Ascent,
    Descent,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Ascent => Sign::Descent,
            Sign::Descent => Sign::Ascent,
        }
    }
}

/// Which comparison an alternating subsequence must start with.
///
/// The distribution of the statistic is identical under both variants (via
/// the complement bijection), so every downstream statistic is
/// convention-independent; that fact is itself tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Pattern a1 > a2 < a3 > ...
    #[default]
    DescentFirst,
    /// Pattern a1 < a2 > a3 < ...
    AscentFirst,
}

impl Convention {
    pub fn start_sign(self) -> Sign {
        match self {
            Convention::DescentFirst => Sign::Descent,
            Convention::AscentFirst => Sign::Ascent,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::DescentFirst => "descent-first",
            Convention::AscentFirst => "ascent-first",
        }
    }
}

/// A bijection on {1..n}, stored one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validates that `values` is a bijection on {1..n} with n >= 1.
    pub fn new(values: Vec<u32>) -> Result<Self, Error> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::NotAPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::NotAPermutation(format!("value {v} repeated")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Result<Self, Error> {
        Permutation::new((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The map v -> n+1-v. An involution that swaps the two conventions.
    pub fn complement(&self) -> Permutation {
        let n = self.values.len() as u32;
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Signs comparing adjacent positions; empty for n = 1.
    pub fn descent_word(&self) -> DescentWord {
        DescentWord {
            signs: self
                .values
                .windows(2)
                .map(|w| if w[1] > w[0] { Sign::Ascent } else { Sign::Descent })
                .collect(),
        }
    }
}

/// The sequence of ascent/descent signs between adjacent positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentWord {
    signs: Vec<Sign>,
}

impl DescentWord {
    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Number of maximal constant runs; 0 for the empty word.
    pub fn run_count(&self) -> usize {
        if self.signs.is_empty() {
            return 0;
        }
        1 + self.signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// Default size cap for the subsequence brute-force oracle.
pub const BRUTE_FORCE_CAP: usize = 14;

/// Length of the longest alternating subsequence, by exhaustive search over
/// all nonempty subsequences. A single element always qualifies.
pub fn as_bruteforce(w: &Permutation, c: Convention) -> Result<u32, Error> {
    as_bruteforce_capped(w, c, BRUTE_FORCE_CAP)
}

/// [`as_bruteforce`] with an explicit size cap.
pub fn as_bruteforce_capped(w: &Permutation, c: Convention, cap: usize) -> Result<u32, Error> {
    let n = w.len();
    if n > cap {
        return Err(Error::OracleTooLarge { n, cap });
    }
    let values = w.values();
    let start = c.start_sign();
    let mut best = 1u32;
    for mask in 1u32..(1u32 << n) {
        let len = mask.count_ones();
        if len > best && subsequence_alternates(values, mask, start) {
            best = len;
        }
    }
    Ok(best)
}

fn subsequence_alternates(values: &[u32], mask: u32, start: Sign) -> bool {
    let mut prev: Option<u32> = None;
    let mut expect = start;
    for (i, &x) in values.iter().enumerate() {
        if mask & (1 << i) == 0 {
            continue;
        }
        if let Some(p) = prev {
            let sign = if x > p { Sign::Ascent } else { Sign::Descent };
            if sign != expect {
                return false;
            }
            expect = expect.flip();
        }
        prev = Some(x);
    }
    true
}

/// Linear-time evaluator: with m maximal runs in the descent word, the
/// statistic is m+1 when the first sign matches the convention's start sign
/// and m otherwise (1 for n = 1).
pub fn as_linear(w: &Permutation, c: Convention) -> u32 {
    let word = w.descent_word();
    let signs = word.signs();
    if signs.is_empty() {
        return 1;
    }
    let m = word.run_count() as u32;
    if signs[0] == c.start_sign() {
        m + 1
    } else {
        m
    }
}

/// Deterministic stream of random permutations.
///
/// The generator is ChaCha12 keyed from the 64-bit seed by
/// `SeedableRng::seed_from_u64` (SplitMix64 key expansion). Bounded draws use
/// rejection sampling on `next_u64`, so streams are reproducible across
/// platforms and builds.
pub struct SeededRng {
    inner: ChaCha12Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            inner: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from 0..bound via rejection of the biased tail.
    fn uniform_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound >= 1);
        // 2^64 mod bound; values >= 2^64 - rem are rejected.
        let rem = (u64::MAX % bound).wrapping_add(1) % bound;
        loop {
            let x = self.inner.next_u64();
            if rem == 0 || x <= u64::MAX - rem {
                return x % bound;
            }
        }
    }
}

/// Uniform random permutation via the Fisher-Yates shuffle (top-down: swap
/// position i with a uniform j in 0..=i, for i = n-1 down to 1).
pub fn sample_permutation(n: usize, rng: &mut SeededRng) -> Result<Permutation, Error> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut values: Vec<u32> = (1..=n as u32).collect();
    for i in (1..n).rev() {
        let j = rng.uniform_below(i as u64 + 1) as usize;
        values.swap(i, j);
    }
    Ok(Permutation { values })
}

/// Calls `f` with every permutation of {1..n} exactly once (Heap's algorithm).
pub fn for_each_permutation<F: FnMut(&Permutation)>(n: usize, mut f: F) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut values: Vec<u32> = (1..=n as u32).collect();
    let mut c = vec![0usize; n];
    let mut p = Permutation {
        values: values.clone(),
    };
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                values.swap(0, i);
            } else {
                values.swap(c[i], i);
            }
            p.values.copy_from_slice(&values);
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(values: &[u32]) -> Permutation {
        Permutation::new(values.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![2, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(as_bruteforce(&perm(&[2, 1]), Convention::DescentFirst).unwrap(), 2);
        let inc = Permutation::identity(7).unwrap();
        assert_eq!(as_bruteforce(&inc, Convention::DescentFirst).unwrap(), 1);
        assert_eq!(as_bruteforce(&perm(&[1, 3, 2]), Convention::DescentFirst).unwrap(), 2);
        assert_eq!(as_bruteforce(&perm(&[2, 1, 3]), Convention::DescentFirst).unwrap(), 3);
    }

    #[test]
    fn bruteforce_size_guard() {
        let w = Permutation::identity(15).unwrap();
        assert!(matches!(
            as_bruteforce(&w, Convention::DescentFirst),
            Err(Error::OracleTooLarge { n: 15, cap: 14 })
        ));
    }

    #[test]
    fn linear_examples() {
        assert_eq!(as_linear(&perm(&[2, 1, 3]), Convention::DescentFirst), 3);
        assert_eq!(as_linear(&perm(&[1, 2, 3]), Convention::DescentFirst), 1);
        assert_eq!(as_linear(&perm(&[1, 3, 2]), Convention::AscentFirst), 3);
        assert_eq!(as_linear(&perm(&[1]), Convention::DescentFirst), 1);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(perm(&[1, 2, 3]).complement(), perm(&[3, 2, 1]));
        assert_eq!(perm(&[2, 1, 3]).complement(), perm(&[2, 3, 1]));
    }

    #[test]
    fn complement_is_involution_on_s5() {
        for_each_permutation(5, |w| {
            assert_eq!(&w.complement().complement(), w);
        })
        .unwrap();
    }

    #[test]
    fn complement_swaps_conventions() {
        for_each_permutation(6, |w| {
            assert_eq!(
                as_linear(&w.complement(), Convention::DescentFirst),
                as_linear(w, Convention::AscentFirst)
            );
        })
        .unwrap();
    }

    #[test]
    fn evaluators_agree_exhaustively_small() {
        for n in 1..=7 {
            for_each_permutation(n, |w| {
                for c in [Convention::DescentFirst, Convention::AscentFirst] {
                    assert_eq!(as_linear(w, c), as_bruteforce(w, c).unwrap(), "{:?} {:?}", w, c);
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn statistic_is_n_iff_word_alternates_from_start_sign() {
        for_each_permutation(6, |w| {
            for c in [Convention::DescentFirst, Convention::AscentFirst] {
                let x = as_linear(w, c);
                assert!(x >= 1 && x as usize <= w.len());
                let signs = w.descent_word().signs().to_vec();
                let alternating = signs[0] == c.start_sign()
                    && signs.windows(2).all(|s| s[0] != s[1]);
                assert_eq!(x as usize == w.len(), alternating);
            }
        })
        .unwrap();
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        for _ in 0..20 {
            assert_eq!(
                sample_permutation(9, &mut a).unwrap(),
                sample_permutation(9, &mut b).unwrap()
            );
        }
        assert_eq!(sample_permutation(1, &mut a).unwrap(), perm(&[1]));
    }

    #[test]
    fn sampling_rejects_n_zero() {
        let mut rng = SeededRng::new(0);
        assert!(sample_permutation(0, &mut rng).is_err());
    }

    #[test]
    fn sampling_is_uniform_on_s5() {
        // Multinomial 5-sigma bound on each of the 120 cells.
        let m = 120_000u64;
        let mut rng = SeededRng::new(7);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..m {
            let w = sample_permutation(5, &mut rng).unwrap();
            *counts.entry(w.values().to_vec()).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 120);
        let p = 1.0 / 120.0;
        let sigma = (m as f64 * p * (1.0 - p)).sqrt();
        let expected = m as f64 * p;
        for (w, &cnt) in &counts {
            let dev = (cnt as f64 - expected).abs();
            assert!(dev <= 5.0 * sigma, "cell {:?} deviates {:.1} sigma", w, dev / sigma);
        }
    }

    proptest! {
        #[test]
        fn linear_matches_bruteforce_random(seed in any::<u64>(), n in 1usize..=10) {
            let mut rng = SeededRng::new(seed);
            let w = sample_permutation(n, &mut rng).unwrap();
            for c in [Convention::DescentFirst, Convention::AscentFirst] {
                prop_assert_eq!(as_linear(&w, c), as_bruteforce(&w, c).unwrap());
            }
        }

        #[test]
        fn statistic_bounds(seed in any::<u64>(), n in 1usize..=40) {
            let mut rng = SeededRng::new(seed);
            let w = sample_permutation(n, &mut rng).unwrap();
            let x = as_linear(&w, Convention::DescentFirst);
            prop_assert!(x >= 1 && x as usize <= n);
        }
    }
}
