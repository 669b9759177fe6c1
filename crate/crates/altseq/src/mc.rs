//! Seeded Monte-Carlo sampling of the statistic, total-variation
//! cross-checks against the exact tables, and a Kolmogorov distance to the
//! normal limit.

use num::rational::BigRational;
use num::{BigInt, Signed, ToPrimitive, Zero};

use crate::dist::DistributionTable;
use crate::error::Error;
use crate::moment::moments_from_table;
use crate::perm::{as_linear, sample_permutation, Convention, SeededRng};

/// Empirical counts of the statistic over M sampled permutations.
/// Reproducible from (n, samples, seed): sampling is single-stream ChaCha12.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalHistogram {
    n: usize,
    samples: u64,
    seed: u64,
    counts: Vec<u64>,
}

impl EmpiricalHistogram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Counts indexed by k-1, k = 1..=n.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }
}

pub fn empirical_histogram(
    n: usize,
    samples: u64,
    seed: u64,
    c: Convention,
) -> Result<EmpiricalHistogram, Error> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = SeededRng::new(seed);
    let mut counts = vec![0u64; n];
    for _ in 0..samples {
        let w = sample_permutation(n, &mut rng)?;
        counts[as_linear(&w, c) as usize - 1] += 1;
    }
    Ok(EmpiricalHistogram {
        n,
        samples,
        seed,
        counts,
    })
}

/// Total variation distance (half the L1 distance between the proportion
/// vectors) between an empirical histogram and an exact table over the same n.
pub fn tv_distance(h: &EmpiricalHistogram, t: &DistributionTable) -> Result<f64, Error> {
    if h.n != t.n() {
        return Err(Error::Mismatch(format!(
            "histogram n = {} vs table n = {}",
            h.n,
            t.n()
        )));
    }
    let m = BigInt::from(h.samples);
    let total = BigInt::from(t.total());
    let mut sum = BigRational::zero();
    for k in 0..h.n {
        let a = BigRational::new(BigInt::from(h.counts[k]), m.clone());
        let b = BigRational::new(BigInt::from(t.counts()[k].clone()), total.clone());
        sum += (a - b).abs();
    }
    Ok((sum / BigRational::from(BigInt::from(2))).to_f64().unwrap())
}

/// Total variation distance between two empirical histograms over the same n.
pub fn tv_distance_hists(a: &EmpiricalHistogram, b: &EmpiricalHistogram) -> Result<f64, Error> {
    if a.n != b.n {
        return Err(Error::Mismatch(format!("n = {} vs n = {}", a.n, b.n)));
    }
    let ma = BigInt::from(a.samples);
    let mb = BigInt::from(b.samples);
    let mut sum = BigRational::zero();
    for k in 0..a.n {
        let pa = BigRational::new(BigInt::from(a.counts[k]), ma.clone());
        let pb = BigRational::new(BigInt::from(b.counts[k]), mb.clone());
        sum += (pa - pb).abs();
    }
    Ok((sum / BigRational::from(BigInt::from(2))).to_f64().unwrap())
}

/// Standard normal CDF, accurate to well under 1e-12 absolute.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Complementary error function to near machine accuracy: a positive-term
/// series of erf for |x| < 3 and the classical continued fraction for the
/// tail.
fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 3.0 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// erf(x) = (2/sqrt(pi)) x e^(-x^2) sum_n (2x^2)^n / (1*3*...*(2n+1)).
/// All terms positive, so no cancellation.
fn erf_series(x: f64) -> f64 {
    let two_pi_sqrt_inv = 2.0 / std::f64::consts::PI.sqrt();
    let t = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut n = 0u32;
    loop {
        n += 1;
        term *= t / (2 * n + 1) as f64;
        sum += term;
        if term < sum * 1e-18 || n > 200 {
            break;
        }
    }
    two_pi_sqrt_inv * x * (-x * x).exp() * sum
}

/// erfc(x) = e^(-x^2)/(x sqrt(pi)) * 1/(1 + q1/(1 + q2/(1 + ...))) with
/// q_n = n/(2x^2), evaluated backward.
fn erfc_continued_fraction(x: f64) -> f64 {
    let inv = 1.0 / (2.0 * x * x);
    let mut f = 0.0;
    for n in (1..=120u32).rev() {
        f = n as f64 * inv / (1.0 + f);
    }
    (-x * x).exp() / (x * std::f64::consts::PI.sqrt() * (1.0 + f))
}

/// sup_k |F_n(k) - Phi((k - mu_n)/sigma_n)| with exact mu_n, sigma_n from the
/// table. The discrete CDF is evaluated at right endpoints with no
/// continuity correction.
pub fn kolmogorov_to_normal(t: &DistributionTable) -> Result<f64, Error> {
    if t.n() < 2 {
        return Err(Error::InvalidArgument(
            "kolmogorov distance needs n >= 2".into(),
        ));
    }
    let m = moments_from_table(t, 2)?;
    let mu = m.mean().to_f64().unwrap();
    let sigma = m.variance().to_f64().unwrap().sqrt();
    let total = BigInt::from(t.total());
    let mut cum = BigInt::zero();
    let mut sup: f64 = 0.0;
    for k in 1..=t.n() {
        cum += BigInt::from(t.count(k).clone());
        let cdf = BigRational::new(cum.clone(), total.clone()).to_f64().unwrap();
        let z = (k as f64 - mu) / sigma;
        sup = sup.max((cdf - normal_cdf(z)).abs());
    }
    Ok(sup)
}
