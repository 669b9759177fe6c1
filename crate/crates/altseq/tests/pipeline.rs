//! End-to-end fitting pipeline on exact moment data.

use std::sync::OnceLock;

use num::ToPrimitive;

use altseq::dist::distribution_dp_family;
use altseq::fit::{fit_inverse_powers, fit_odd_scaled, OddSample};
use altseq::moment::{moments_from_table, MomentTable, Rational};
use altseq::perm::Convention;

const FIT_NS: [u64; 11] = [100, 110, 120, 130, 140, 150, 160, 170, 180, 190, 200];

fn moment_tables() -> &'static Vec<MomentTable> {
    static TABLES: OnceLock<Vec<MomentTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        let family = distribution_dp_family(200, Convention::DescentFirst).unwrap();
        FIT_NS
            .iter()
            .map(|&n| moments_from_table(&family[n as usize - 1], 12).unwrap())
            .collect()
    })
}

fn even_samples(r: usize) -> Vec<(u64, Rational)> {
    moment_tables()
        .iter()
        .map(|m| (m.n() as u64, m.alpha_even(r).unwrap().clone()))
        .collect()
}

fn odd_samples(r: usize) -> Vec<OddSample> {
    moment_tables()
        .iter()
        .map(|m| OddSample {
            n: m.n() as u64,
            q_odd: m.q_odd(r).unwrap().clone(),
            m2: m.variance().clone(),
        })
        .collect()
}

#[test]
fn alpha_4_fit_matches_published_coefficients() {
    let fit = fit_inverse_powers(&even_samples(2), 3).unwrap();
    let c0 = fit.coefficients[0].to_f64().unwrap();
    let ratio = (&fit.coefficients[1] / &fit.coefficients[0]).to_f64().unwrap();
    assert!((c0 - 3.0).abs() / 3.0 < 1e-3, "c0 = {c0}");
    let target = -11.0 / 14.0;
    assert!((ratio - target).abs() / target.abs() < 1e-3, "c1/c0 = {ratio}");
}

#[test]
fn even_fit_window_drift_shrinks_toward_large_n() {
    for r in [2usize, 3] {
        let fit = fit_inverse_powers(&even_samples(r), 3).unwrap();
        let drifts: Vec<f64> = fit
            .windows
            .iter()
            .filter_map(|w| w.rel_delta.iter().cloned().reduce(f64::max))
            .collect();
        assert!(drifts.len() >= 2);
        for pair in drifts.windows(2) {
            assert!(
                pair[1] <= pair[0] * 1.0000001,
                "drift grew for r = {r}: {drifts:?}"
            );
        }
    }
}

#[test]
fn odd_fit_is_insensitive_to_precision() {
    // Raising the square-root precision from 64 to 128 digits must move the
    // coefficients by less than the window drift.
    for r in [1usize, 2] {
        let lo = fit_odd_scaled(&odd_samples(r), 3, 64).unwrap();
        let hi = fit_odd_scaled(&odd_samples(r), 3, 128).unwrap();
        let drift = lo.last_drift().unwrap();
        for (a, b) in lo.coefficients.iter().zip(&hi.coefficients) {
            let delta = (a - b).to_f64().unwrap().abs();
            let scale = a.to_f64().unwrap().abs().max(1e-30);
            assert!(
                delta / scale < drift,
                "precision delta {delta:.3e} vs drift {drift:.3e} for r = {r}"
            );
        }
    }
}

#[test]
fn odd_fits_converge_and_are_consistent() {
    // The alpha_3 and alpha_5 leading coefficients from exact data; the two
    // fits must agree with the exact closed form of m_3 = -16(n+1)/945,
    // which forces alpha_3 sqrt(n) -> -sqrt(10)/14.
    let s3 = fit_odd_scaled(&odd_samples(1), 3, 64).unwrap();
    assert!(s3.drift_converging());
    let c0 = s3.coefficients[0].to_f64().unwrap();
    let target = -(10.0f64).sqrt() / 14.0;
    assert!(
        (c0 - target).abs() / target.abs() < 1e-5,
        "alpha_3 sqrt(n) leading {c0} vs {target}"
    );

    let s5 = fit_odd_scaled(&odd_samples(2), 3, 64).unwrap();
    assert!(s5.drift_converging());
    let c5 = s5.coefficients[0].to_f64().unwrap();
    // Empirically alpha_5 sqrt(n) -> 10 * (alpha_3 limit).
    assert!((c5 / c0 - 10.0).abs() < 1e-3, "ratio {}", c5 / c0);
}

#[test]
fn third_central_moment_closed_form() {
    // m_3 = -16(n+1)/945 for n >= 6, verified against exact tables.
    use altseq::moment::rational;
    let family = distribution_dp_family(40, Convention::DescentFirst).unwrap();
    for t in family.iter().filter(|t| t.n() >= 6) {
        let m = moments_from_table(t, 4).unwrap();
        let n = t.n() as i64;
        assert_eq!(
            m.central(3).unwrap(),
            &rational(-16 * (n + 1), 945),
            "n = {n}"
        );
    }
}
