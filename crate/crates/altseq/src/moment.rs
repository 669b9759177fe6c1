//! Exact-rational moments of the statistic and of its standardization
//! Z_n = (X_n - mu_n)/sigma_n, plus evaluators for the published closed
//! forms: mu_n = 2n/3 + 1/6, sigma_n^2 = 8n/45 - 13/180 (n >= 4), the
//! Gaussian moment limits, and the 1/n correction coefficients of the
//! moment expansions.
//!
//! Odd standardized moments carry a sqrt(m_2) factor; to keep everything
//! exact they are stored as q_{2r+1} = m_{2r+1}/(m_2)^r, with the square
//! root confined to numeric rendering.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::dist::DistributionTable;
use crate::error::Error;

pub type Rational = BigRational;

pub fn rational(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Default maximum moment order (covers alpha_2..alpha_12 and q_3..q_11).
pub const DEFAULT_MAX_ORDER: usize = 12;

/// Exact moments of one table: mean, central m_r, and standardized entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    n: usize,
    max_order: usize,
    mean: Rational,
    central: Vec<Rational>,
    std_even: Vec<Rational>,
    std_odd_q: Vec<Rational>,
    degenerate: bool,
}

impl MomentTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn mean(&self) -> &Rational {
        &self.mean
    }

    /// Central moment m_r for 2 <= r <= max_order.
    pub fn central(&self, r: usize) -> Option<&Rational> {
        if r < 2 || r > self.max_order {
            None
        } else {
            Some(&self.central[r - 2])
        }
    }

    /// alpha_{2r} = m_{2r}/(m_2)^r, exact. None when 2r > max_order or the
    /// table is degenerate (n = 1).
    pub fn alpha_even(&self, r: usize) -> Option<&Rational> {
        if r == 0 || self.degenerate {
            return None;
        }
        self.std_even.get(r - 1)
    }

    /// q_{2r+1} = m_{2r+1}/(m_2)^r, exact; alpha_{2r+1} = q/sqrt(m_2).
    pub fn q_odd(&self, r: usize) -> Option<&Rational> {
        if r == 0 || self.degenerate {
            return None;
        }
        self.std_odd_q.get(r - 1)
    }

    /// True for n = 1, where the variance vanishes and standardized moments
    /// are undefined.
    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn variance(&self) -> &Rational {
        &self.central[0]
    }
}

/// Exact mean, central, and standardized moments from a counting table.
/// Requires max_order >= 2; n = 1 yields a degenerate table.
pub fn moments_from_table(t: &DistributionTable, max_order: usize) -> Result<MomentTable, Error> {
    if max_order < 2 {
        return Err(Error::InvalidArgument(
            "max_order must be at least 2".into(),
        ));
    }
    let n = t.n();
    // Raw power sums S_j = sum_k k^j b_{n,k}, j = 0..=max_order.
    let mut raw = vec![BigInt::zero(); max_order + 1];
    for (idx, cnt) in t.counts().iter().enumerate() {
        let k = BigInt::from(idx + 1);
        let c = BigInt::from(cnt.clone());
        let mut kp = BigInt::one();
        for s in raw.iter_mut() {
            *s += &c * &kp;
            kp *= &k;
        }
    }
    let total = raw[0].clone();
    let mean = BigRational::new(raw[1].clone(), total.clone());

    // m_r = sum_j C(r,j) S_j (-mean)^(r-j) / S_0.
    let binom = pascal(max_order);
    let neg_mean = -mean.clone();
    let mut neg_mean_pows = vec![BigRational::one()];
    for _ in 1..=max_order {
        neg_mean_pows.push(neg_mean_pows.last().unwrap() * &neg_mean);
    }
    let total_rat = BigRational::from(total);
    let mut central = Vec::with_capacity(max_order - 1);
    for r in 2..=max_order {
        let mut sum = BigRational::zero();
        for j in 0..=r {
            sum += BigRational::from(&binom[r][j] * &raw[j]) * &neg_mean_pows[r - j];
        }
        central.push(sum / &total_rat);
    }

    let m2 = central[0].clone();
    let degenerate = m2.is_zero();
    let mut std_even = Vec::new();
    let mut std_odd_q = Vec::new();
    if !degenerate {
        let mut m2_pow = m2.clone();
        let mut r = 1usize;
        loop {
            let even_order = 2 * r;
            let odd_order = 2 * r + 1;
            if even_order > max_order {
                break;
            }
            std_even.push(&central[even_order - 2] / &m2_pow);
            if odd_order <= max_order {
                std_odd_q.push(&central[odd_order - 2] / &m2_pow);
            }
            m2_pow *= &m2;
            r += 1;
        }
        debug_assert!(std_even[0].is_one());
    }
    Ok(MomentTable {
        n,
        max_order,
        mean,
        central,
        std_even,
        std_odd_q,
        degenerate,
    })
}

fn pascal(max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for r in 1..=max {
        let prev = &rows[r - 1];
        let mut row = vec![BigInt::one()];
        for j in 1..r {
            row.push(&prev[j - 1] + &prev[j]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}

/// mu_n = 2n/3 + 1/6. Valid for n >= 2 (at n = 1 the true mean is 1).
pub fn published_mean(n: u64) -> Rational {
    BigRational::new(BigInt::from(4 * n + 1), BigInt::from(6))
}

/// sigma_n^2 = 8n/45 - 13/180. Valid for n >= 4 only.
pub fn published_variance(n: u64) -> Rational {
    BigRational::new(BigInt::from(32 * i128::from(n) - 13), BigInt::from(180))
}

/// (2r)!/(2^r r!) = 1 * 3 * ... * (2r-1), the 2r-th Gaussian moment.
pub fn gaussian_moment(r: u32) -> Rational {
    let mut p = BigInt::one();
    for j in 1..=r {
        p *= BigInt::from(2 * j - 1);
    }
    BigRational::from(p)
}

/// Coefficient of 1/n inside the even expansion:
/// alpha_{2r} = (2r)!/(2^r r!) * (1 + r(r-1)(10r-713)/(1764 n) + O(1/n^2)).
pub fn published_even_correction(r: i64) -> Rational {
    let num = r * (r - 1) * (10 * r - 713);
    rational(num, 1764)
}

/// Coefficients of the odd expansion
/// alpha_{2r+1} = -(sqrt(10)/43) g_r n^(-1/2) ((r-1) + correction/n + O(1/n^2)).
#[derive(Debug, Clone, PartialEq)]
pub struct OddExpansionCoeffs {
    /// q with leading coefficient of alpha_{2r+1} * sqrt(n) equal to q * sqrt(10).
    pub leading_sqrt10: Rational,
    /// (r-1)(1760 r^3 - 381744 r^2 + 1430752 r + 150351)/931392.
    pub correction: Rational,
}

pub fn published_odd_coeffs(r: i64) -> OddExpansionCoeffs {
    let g = gaussian_moment(r as u32);
    let leading_sqrt10 = -g * rational(r - 1, 43);
    let poly = 1760 * r.pow(3) - 381744 * r * r + 1430752 * r + 150351;
    let correction = rational((r - 1) * poly, 931392);
    OddExpansionCoeffs {
        leading_sqrt10,
        correction,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Evaluate the truncated published expansion (through the printed 1/n term)
/// for alpha_{2r} (Even) or alpha_{2r+1} (Odd). `n = None` gives the limit.
/// Odd values involve sqrt(10/n) and are rounded to `digits` significant
/// digits; even values are exact rationals.
pub fn predict_alpha(n: Option<u64>, r: u32, parity: Parity, digits: usize) -> Rational {
    match parity {
        Parity::Even => {
            let g = gaussian_moment(r);
            match n {
                None => g,
                Some(n) => {
                    let c = published_even_correction(r as i64);
                    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
                    g * (BigRational::one() + c * inv_n)
                }
            }
        }
        Parity::Odd => match n {
            None => BigRational::zero(),
            Some(n) => {
                let coeffs = published_odd_coeffs(r as i64);
                let g = gaussian_moment(r);
                let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
                let inner = rational(r as i64 - 1, 1) + coeffs.correction * &inv_n;
                let scale = -g * rational(1, 43) * inner;
                let root = crate::fit::sqrt_rational(
                    &(rational(10, 1) * inv_n),
                    digits,
                );
                scale * root
            }
        },
    }
}

/// Absolute value helper for tolerance checks.
pub fn abs_rational(x: &Rational) -> Rational {
    x.abs()
}
