//! Special functions: the standard normal CDF and quantile, the Gaussian
//! Mills function and its supremum (the Muckenhoupt/Hardy constant),
//! log-space factorials and Poisson probabilities, and the non-asymptotic
//! Stirling bounds.

use crate::{Error, Result};

pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
/// √(π/2), the best constant in the Gaussian L¹ Hardy inequality.
pub const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;

/// Standard normal CDF Φ(x) = ∫_{-∞}^x φ(t) dt, via erfc.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Standard normal density φ(x).
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Inverse of [`normal_cdf`] on (0, 1).
///
/// Rational initial guess (Acklam) polished with two Halley steps against
/// `normal_cdf`, which keeps the pair mutually inverse to ~1e-15 on the
/// whole usable range.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile argument {p} not in (0,1)")));
    }
    let x0 = acklam_guess(p);
    let mut x = x0;
    for _ in 0..2 {
        let e = normal_cdf(x) - p;
        let u = e * SQRT_2PI * (0.5 * x * x).exp();
        x -= u / (1.0 + 0.5 * x * u);
    }
    Ok(x)
}

fn acklam_guess(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Gaussian Mills function H(r) = e^{r²/2} ∫_r^∞ e^{-x²/2} dx, r ≥ 0.
///
/// Direct erfc form for moderate r; the Laplace continued fraction beyond,
/// where e^{r²/2} would overflow against an underflowing tail.
pub fn mills(r: f64) -> f64 {
    debug_assert!(r >= 0.0);
    if r < 6.0 {
        (0.5 * r * r).exp() * SQRT_PI_OVER_2 * libm::erfc(r / std::f64::consts::SQRT_2)
    } else {
        // H(r) = 1/(r + 1/(r + 2/(r + 3/(r + ...)))), backward recurrence
        let mut t = r;
        for k in (1..=80u32).rev() {
            t = r + f64::from(k) / t;
        }
        1.0 / t
    }
}

/// sup_{r ≥ 0} H(r) together with its maximiser.
///
/// A 10³-point grid certifies that H is non-increasing, which pins the
/// supremum at r = 0 where H(0) = √(π/2).
pub fn mills_sup() -> (f64, f64) {
    let n = 1000;
    let mut prev = f64::INFINITY;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..=n {
        let r = 8.0 * i as f64 / n as f64;
        let h = mills(r);
        debug_assert!(h <= prev + 1e-12, "Mills function must be non-increasing");
        if h > best.0 {
            best = (h, r);
        }
        prev = h;
    }
    best
}

/// ln k! via lgamma; exact-enough for k up to 10⁴ and beyond.
pub fn log_factorial(k: u64) -> f64 {
    libm::lgamma(k as f64 + 1.0)
}

/// log of the Poisson(λ) probability mass at k.
pub fn poisson_log_pmf(lambda: f64, k: u64) -> f64 {
    -lambda + k as f64 * lambda.ln() - log_factorial(k)
}

/// Poisson(λ) probability mass at k, evaluated in log space.
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    poisson_log_pmf(lambda, k).exp()
}

/// Default truncation point for Poisson(λ) sums: the mass beyond it is far
/// below every tolerance in use.
pub fn poisson_truncation(lambda: f64) -> u64 {
    50u64.max((lambda + 20.0 * lambda.sqrt()).ceil() as u64)
}

/// Upper tail Σ_{n ≥ k+1} π(n), summed over the truncated support.
pub fn poisson_tail(lambda: f64, k: u64) -> f64 {
    let kmax = poisson_truncation(lambda).max(k + 10);
    let mut sum = 0.0;
    // backward so the smallest terms accumulate first
    for n in (k + 1..=kmax).rev() {
        sum += poisson_pmf(lambda, n);
    }
    sum
}

/// Outcome of checking the non-asymptotic Stirling bounds
/// e^{1/(1+12n)} ≤ n!/(nⁿ e^{-n} √(2πn)) ≤ e^{1/(12n)}.
#[derive(Debug, Clone)]
pub struct StirlingReport {
    pub n: u64,
    pub log_ratio: f64,
    pub lower_slack: f64,
    pub upper_slack: f64,
    pub pass: bool,
}

pub fn stirling_bounds_check(n: u64) -> StirlingReport {
    assert!(n >= 1);
    let nf = n as f64;
    let log_ratio =
        log_factorial(n) - (nf * nf.ln() - nf + 0.5 * (2.0 * std::f64::consts::PI * nf).ln());
    let lower = 1.0 / (1.0 + 12.0 * nf);
    let upper = 1.0 / (12.0 * nf);
    StirlingReport {
        n,
        log_ratio,
        lower_slack: log_ratio - lower,
        upper_slack: upper - log_ratio,
        pass: log_ratio >= lower && log_ratio <= upper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_symmetry() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_543).abs() < 1e-12);
    }

    #[test]
    fn quantile_symmetry() {
        assert!(normal_quantile(0.5).unwrap().abs() < 1e-15);
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
    }

    #[test]
    fn cdf_quantile_mutually_inverse() {
        // In the x direction the achievable accuracy is limited by the ulp of
        // p near 1: δx ≈ ulp(p)/φ(x). Within that floor the pair is inverse
        // to 1e-12 on [-8, 8].
        for i in 1..400 {
            let x = -8.0 + 16.0 * i as f64 / 400.0;
            let round = normal_quantile(normal_cdf(x)).unwrap();
            let floor = 4.0 * f64::EPSILON / normal_pdf(x);
            assert!(
                (round - x).abs() < 1e-12f64.max(floor),
                "x = {x}, round = {round}"
            );
        }
        for &p in &[1e-6, 1e-3, 0.25, 0.5, 0.75, 1.0 - 1e-3, 1.0 - 1e-6] {
            let round = normal_cdf(normal_quantile(p).unwrap());
            assert!((round - p).abs() < 1e-12);
        }
    }

    #[test]
    fn quantile_is_monotone() {
        let mut prev = f64::NEG_INFINITY;
        for i in 1..2000 {
            let q = normal_quantile(i as f64 / 2000.0).unwrap();
            assert!(q > prev);
            prev = q;
        }
    }

    #[test]
    fn mills_matches_both_branches_at_crossover() {
        // direct erfc form still accurate just above the switch point
        let direct = (0.5 * 6.25f64 * 6.25).exp()
            * SQRT_PI_OVER_2
            * libm::erfc(6.25 / std::f64::consts::SQRT_2);
        assert!((mills(6.25) - direct).abs() / direct < 1e-12);
    }

    #[test]
    fn mills_sup_is_at_zero() {
        let (value, argmax) = mills_sup();
        assert_eq!(argmax, 0.0);
        assert!((value - SQRT_PI_OVER_2).abs() < 1e-14);
        assert!(mills(1.0) < mills(0.0));
        assert!(mills(4.0) > 0.0);
    }

    #[test]
    fn poisson_pmf_values() {
        assert!((poisson_pmf(1.0, 0) - (-1.0f64).exp()).abs() < 1e-15);
        // λ=2, k=3: e^{-2}·8/6
        let exact = (-2.0f64).exp() * 8.0 / 6.0;
        assert!((poisson_pmf(2.0, 3) - exact).abs() < 1e-15);
    }

    #[test]
    fn poisson_mass_sums_to_one() {
        for &lambda in &[0.5, 1.0, 5.0] {
            let total: f64 = (0..=poisson_truncation(lambda))
                .map(|k| poisson_pmf(lambda, k))
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "λ = {lambda}: {total}");
        }
    }

    #[test]
    fn poisson_tail_complements_head() {
        for &(lambda, k) in &[(1.0, 0), (1.0, 3), (5.0, 7), (0.5, 2)] {
            let head: f64 = (0..=k).map(|n| poisson_pmf(lambda, n)).sum();
            assert!((head + poisson_tail(lambda, k) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stirling_bounds_hold() {
        for &n in &[1u64, 2, 5, 10, 100, 1000] {
            let rep = stirling_bounds_check(n);
            assert!(rep.pass, "n = {n}: {rep:?}");
        }
        // n = 1: ratio e/√(2π) ≈ 1.08444 inside [e^{1/13}, e^{1/12}]
        let rep = stirling_bounds_check(1);
        assert!((rep.log_ratio.exp() - 1.084_437).abs() < 1e-5);
    }
}
