//! Inverse-power series extraction from exact moment data.
//!
//! Samples f(n) are fitted to sum_j c_j n^(-j) by solving the exact
//! Vandermonde-in-1/n system on sliding windows of J+1 consecutive points;
//! the coefficients of record come from the largest-n window and the drift
//! between windows serves as the uncertainty estimate. All arithmetic is
//! exact rational; irrational inputs (square roots for the odd moments)
//! enter as rationals rounded to a configurable number of significant
//! digits, which is the only place precision matters.

use num::bigint::{BigInt, Sign as IntSign};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::moment::Rational;

/// Default working precision in significant decimal digits.
pub const DEFAULT_DIGITS: usize = 64;

/// Power of n multiplying the fitted series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefactorExponent {
    /// Plain series sum c_j n^(-j).
    Zero,
    /// Series carries a global n^(-1/2) prefactor (odd standardized moments).
    NegHalf,
}

impl PrefactorExponent {
    pub fn label(self) -> &'static str {
        match self {
            PrefactorExponent::Zero => "0",
            PrefactorExponent::NegHalf => "-1/2",
        }
    }
}

/// Coefficients solved on one window of consecutive sample points.
#[derive(Debug, Clone)]
pub struct WindowEstimate {
    pub n_first: u64,
    pub n_last: u64,
    pub coefficients: Vec<Rational>,
    /// Relative change of each coefficient against the previous window;
    /// empty for the first window.
    pub rel_delta: Vec<f64>,
}

/// A fitted series with per-window diagnostics.
#[derive(Debug, Clone)]
pub struct AsymptoticSeries {
    pub prefactor_exponent: PrefactorExponent,
    /// c_0..c_J from the largest-n window.
    pub coefficients: Vec<Rational>,
    pub windows: Vec<WindowEstimate>,
}

impl AsymptoticSeries {
    /// Largest relative drift of any coefficient in the last window.
    pub fn last_drift(&self) -> Option<f64> {
        self.windows
            .last()
            .and_then(|w| w.rel_delta.iter().cloned().reduce(f64::max))
    }

    /// True when the drift in the final window is no larger than in the
    /// first window that has one, i.e. the estimates settle as n grows.
    pub fn drift_converging(&self) -> bool {
        let drifts: Vec<f64> = self
            .windows
            .iter()
            .filter_map(|w| w.rel_delta.iter().cloned().reduce(f64::max))
            .collect();
        match (drifts.first(), drifts.last()) {
            (Some(a), Some(b)) => b <= a,
            _ => false,
        }
    }
}

/// Fit c_0..c_J of f(n) = sum c_j n^(-j) through exact interpolation on
/// sliding windows. Requires J+1 distinct sample points; windows slide by
/// one up to the largest n.
pub fn fit_inverse_powers(
    samples: &[(u64, Rational)],
    degree: usize,
) -> Result<AsymptoticSeries, Error> {
    fit_with_prefactor(samples, degree, PrefactorExponent::Zero)
}

fn fit_with_prefactor(
    samples: &[(u64, Rational)],
    degree: usize,
    prefactor: PrefactorExponent,
) -> Result<AsymptoticSeries, Error> {
    let mut pts = samples.to_vec();
    pts.sort_by_key(|&(n, _)| n);
    for pair in pts.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::DuplicateSample(pair[0].0));
        }
    }
    if pts.iter().any(|&(n, _)| n == 0) {
        return Err(Error::InvalidArgument("sample point n = 0".into()));
    }
    let need = degree + 1;
    if pts.len() < need {
        return Err(Error::InsufficientSamples {
            needed: need,
            got: pts.len(),
        });
    }

    let mut windows: Vec<WindowEstimate> = Vec::new();
    for w in pts.windows(need) {
        let xs: Vec<Rational> = w
            .iter()
            .map(|&(n, _)| BigRational::new(BigInt::one(), BigInt::from(n)))
            .collect();
        let ys: Vec<Rational> = w.iter().map(|(_, y)| y.clone()).collect();
        let coeffs = solve_vandermonde(&xs, &ys)?;
        let rel_delta = match windows.last() {
            None => Vec::new(),
            Some(prev) => coeffs
                .iter()
                .zip(&prev.coefficients)
                .map(|(a, b)| relative_delta(a, b))
                .collect(),
        };
        windows.push(WindowEstimate {
            n_first: w[0].0,
            n_last: w[need - 1].0,
            coefficients: coeffs,
            rel_delta,
        });
    }
    let coefficients = windows.last().unwrap().coefficients.clone();
    Ok(AsymptoticSeries {
        prefactor_exponent: prefactor,
        coefficients,
        windows,
    })
}

/// One sample for the odd-moment fit: the exact q_{2r+1} and m_2 at n.
#[derive(Debug, Clone)]
pub struct OddSample {
    pub n: u64,
    pub q_odd: Rational,
    pub m2: Rational,
}

/// Fit the odd standardized moment rescaled by sqrt(n):
/// y(n) = alpha_{2r+1} sqrt(n) = q_{2r+1} sqrt(n/m_2), with the square root
/// taken to `digits` significant digits. The result carries the n^(-1/2)
/// prefactor marker.
pub fn fit_odd_scaled(
    samples: &[OddSample],
    degree: usize,
    digits: usize,
) -> Result<AsymptoticSeries, Error> {
    let scaled: Vec<(u64, Rational)> = samples
        .iter()
        .map(|s| {
            let ratio = BigRational::from(BigInt::from(s.n)) / &s.m2;
            (s.n, &s.q_odd * sqrt_rational(&ratio, digits))
        })
        .collect();
    fit_with_prefactor(&scaled, degree, PrefactorExponent::NegHalf)
}

fn relative_delta(a: &Rational, b: &Rational) -> f64 {
    let diff = (a - b).abs().to_f64().unwrap_or(f64::INFINITY);
    let scale = a.abs().to_f64().unwrap_or(0.0).max(1e-30);
    diff / scale
}

/// Solve sum_j c_j x_i^j = y_i for distinct x_i, exactly.
fn solve_vandermonde(xs: &[Rational], ys: &[Rational]) -> Result<Vec<Rational>, Error> {
    let n = xs.len();
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for x in xs {
        let mut row = Vec::with_capacity(n);
        let mut p = BigRational::one();
        for _ in 0..n {
            row.push(p.clone());
            p *= x;
        }
        a.push(row);
    }
    solve_linear(a, ys.to_vec())
}

/// Exact Gaussian elimination with nonzero pivoting.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>, Error> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let t = &a[col][j] * &f;
                    a[r][j] = &a[r][j] - t;
                }
                let t = &b[col] * &f;
                b[r] = &b[r] - t;
            }
        }
    }
    Ok(b)
}

/// Exact Lagrange-style interpolation: coefficients (constant first) of the
/// unique degree-`degree` polynomial in r through the given points.
pub fn interpolate_in_r(
    points: &[(i64, Rational)],
    degree: usize,
) -> Result<Vec<Rational>, Error> {
    let need = degree + 1;
    if points.len() < need {
        return Err(Error::InsufficientSamples {
            needed: need,
            got: points.len(),
        });
    }
    let pts = &points[..need];
    for i in 0..need {
        for j in i + 1..need {
            if pts[i].0 == pts[j].0 {
                return Err(Error::DuplicateSample(pts[i].0 as u64));
            }
        }
    }
    let xs: Vec<Rational> = pts
        .iter()
        .map(|&(r, _)| BigRational::from(BigInt::from(r)))
        .collect();
    let ys: Vec<Rational> = pts.iter().map(|(_, y)| y.clone()).collect();
    solve_vandermonde(&xs, &ys)
}

/// Evaluate a polynomial (constant coefficient first) at integer r.
pub fn evaluate_poly(coeffs: &[Rational], r: i64) -> Rational {
    let x = BigRational::from(BigInt::from(r));
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// Square root of a non-negative rational, correctly within one unit in the
/// last of `digits` significant digits, returned as a rational.
pub fn sqrt_rational(x: &Rational, digits: usize) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return BigRational::zero();
    }
    // sqrt(p/q) = sqrt(p q)/q; scale so the integer sqrt carries enough digits.
    let p = x.numer().clone();
    let q = x.denom().clone();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = &p * &q * (&scale * &scale);
    let root = scaled.sqrt();
    BigRational::new(root, q * scale)
}

/// Round a rational to `digits` significant decimal digits (half away from
/// zero), as a rational.
pub fn round_to_digits(x: &Rational, digits: usize) -> Rational {
    let (m, e) = decimal_mantissa(x, digits);
    if m.is_zero() {
        return BigRational::zero();
    }
    // value = sign * m * 10^(e - digits + 1)
    let shift = e - digits as i64 + 1;
    let ten = BigInt::from(10u32);
    let mag = if shift >= 0 {
        BigRational::from(&m * ten.pow(shift as u32))
    } else {
        BigRational::new(m.clone(), ten.pow((-shift) as u32))
    };
    if x.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Render a rational as a correctly rounded decimal string with `digits`
/// significant digits.
pub fn to_decimal_string(x: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let (m, e) = decimal_mantissa(x, digits);
    let mantissa = m.to_string();
    debug_assert_eq!(mantissa.len(), digits);
    let sign = if x.is_negative() { "-" } else { "" };
    if e >= 0 && (e as usize) < digits.max(e as usize + 1) && e < digits as i64 {
        let (int_part, frac_part) = mantissa.split_at(e as usize + 1);
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    } else if e < 0 && e >= -5 {
        let zeros = "0".repeat((-e - 1) as usize);
        format!("{sign}0.{zeros}{mantissa}")
    } else {
        // Scientific notation for extreme exponents.
        let (head, tail) = mantissa.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{e}")
        } else {
            format!("{sign}{head}.{tail}e{e}")
        }
    }
}

/// Mantissa (exactly `digits` decimal digits) and decimal exponent e such
/// that |x| rounds to mantissa * 10^(e - digits + 1).
fn decimal_mantissa(x: &Rational, digits: usize) -> (BigInt, i64) {
    let num = x.numer().abs();
    let den = x.denom().clone();
    if num.is_zero() {
        return (BigInt::zero(), 0);
    }
    // Initial exponent estimate from digit counts, then correct.
    let mut e = digit_count(&num) as i64 - digit_count(&den) as i64;
    loop {
        let m = rounded_scaled(&num, &den, digits as i64 - 1 - e);
        let lo = BigInt::from(10u32).pow((digits - 1) as u32);
        let hi = &lo * 10;
        if m < lo {
            e -= 1;
        } else if m >= hi {
            e += 1;
        } else {
            return (m, e);
        }
    }
}

/// round(num/den * 10^shift), half away from zero, for non-negative num.
fn rounded_scaled(num: &BigInt, den: &BigInt, shift: i64) -> BigInt {
    let ten = BigInt::from(10u32);
    let (n, d) = if shift >= 0 {
        (num * ten.pow(shift as u32), den.clone())
    } else {
        (num.clone(), den * ten.pow((-shift) as u32))
    };
    (2 * n + &d) / (2 * d)
}

fn digit_count(x: &BigInt) -> u64 {
    let (sign, digits) = x.to_radix_be(10);
    debug_assert_ne!(sign, IntSign::Minus);
    digits.len() as u64
}
