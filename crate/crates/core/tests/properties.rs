//! Property tests for the numerical invariants: self-consistency of the
//! quadrature under refinement, inverse-pair identities, monotonicity of
//! the special functions, measure normalisation, conjugate duality, and
//! structure preservation of the rearrangement.

use funkineq_core::conjugate::{g_star_closed, g_star_numeric, w_inverse, WeightTriple};
use funkineq_core::function::{FamilySpec, Function1D};
use funkineq_core::measure::{weighted_integral_fn, MeasureSpec};
use funkineq_core::poisson::ChainSpec;
use funkineq_core::quad::{gauss_hermite_gamma, integrate};
use funkineq_core::rearrange::{f2, gaussian_rearrangement};
use funkineq_core::semigroup::{admissibility_threshold, integral_identity_check};
use funkineq_core::special::{mills, normal_cdf, normal_quantile, poisson_pmf, poisson_tail};
use funkineq_core::QuadratureConfig;
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

proptest! {
    #[test]
    fn adaptive_simpson_integrates_cubics_exactly(
        c0 in -3.0..3.0f64, c1 in -3.0..3.0f64, c2 in -3.0..3.0f64, c3 in -2.0..2.0f64,
        a in -2.0..0.0f64, b in 0.1..2.5f64,
    ) {
        let f = |x: f64| c0 + c1 * x + c2 * x * x + c3 * x * x * x;
        let anti = |x: f64| c0 * x + c1 * x * x / 2.0 + c2 * x.powi(3) / 3.0 + c3 * x.powi(4) / 4.0;
        let q = integrate(&f, a, b, &cfg()).unwrap();
        prop_assert!((q.value - (anti(b) - anti(a))).abs() < 1e-10);
    }

    #[test]
    fn gauss_hermite_error_estimate_dominates_refinement(freq in 0.1..1.0f64, amp in 0.1..1.0f64) {
        let f = move |x: f64| (freq * x).sin() * amp + (0.3 * x).cos();
        let coarse = gauss_hermite_gamma(&f, 32).unwrap();
        let fine = gauss_hermite_gamma(&f, 64).unwrap();
        prop_assert!((fine.value - coarse.value).abs() <= coarse.error.max(1e-13));
    }

    #[test]
    fn cdf_quantile_identity_on_probabilities(p in 1e-6..0.999_999f64) {
        let x = normal_quantile(p).unwrap();
        prop_assert!((normal_cdf(x) - p).abs() < 1e-10);
    }

    #[test]
    fn mills_function_is_nonincreasing(r1 in 0.0..8.0f64, dr in 0.0..2.0f64) {
        prop_assert!(mills(r1 + dr) <= mills(r1) + 1e-13);
    }

    #[test]
    fn poisson_tail_complements_head(lambda in 0.1..8.0f64, k in 0u64..30) {
        let head: f64 = (0..=k).map(|n| poisson_pmf(lambda, n)).sum();
        prop_assert!((head + poisson_tail(lambda, k) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detailed_balance_holds_for_any_rate(lambda in 0.05..10.0f64) {
        let chain = ChainSpec::new(lambda).unwrap();
        prop_assert!(chain.detailed_balance_defect() < 1e-13);
    }

    #[test]
    fn perturbed_measures_have_unit_mass(a in -0.4..0.4f64, b in -0.4..0.4f64) {
        let h = Function1D::new(
            "trig",
            move |x: f64| 1.0 + a * x.cos() + b * x.sin(),
            move |x: f64| -a * x.sin() + b * x.cos(),
        );
        let bound = a.abs() + b.abs();
        let c = cfg();
        let mu = MeasureSpec::perturbed(MeasureSpec::gaussian(), h, 1.0 - bound - 1e-9, 1.0 + bound + 1e-9, &c).unwrap();
        let mass = mu.total_mass(&c).unwrap();
        prop_assert!((mass - 1.0).abs() < 1e-9);
    }

    #[test]
    fn w_inverse_round_trips_both_cases(w in -3.0..30.0f64, beta in 1.3..1.9f64) {
        let g = WeightTriple::gauss();
        let x = w_inverse(&g, w).unwrap();
        prop_assert!((g.w(x) - w).abs() < 1e-10);
        let t = WeightTriple::beta(beta).unwrap();
        let x = w_inverse(&t, w).unwrap();
        prop_assert!((t.w(x) - w).abs() < 1e-10);
    }

    #[test]
    fn conjugates_agree_along_the_range(log_y in 0.0..20.0f64) {
        let t = WeightTriple::gauss();
        let y = log_y.exp();
        let closed = g_star_closed(&t, y).unwrap();
        let numeric = g_star_numeric(&t.g_fn(), y).unwrap();
        prop_assert!((closed - numeric).abs() <= 1e-7 * closed.abs().max(1.0));
    }

    #[test]
    fn fenchel_young_never_negative(x in 0.0..5.0f64, log_y in 0.0..10.0f64) {
        let t = WeightTriple::gauss();
        let g = t.g_fn();
        let y = log_y.exp();
        let slack = g.eval(x) + g_star_numeric(&g, y).unwrap() - x * y;
        prop_assert!(slack >= -1e-8, "slack = {slack}");
    }

    #[test]
    fn exponent_identity_at_random_admissible_points(
        rho in 0.3..2.0f64, t in 0.2..2.0f64, bump in 0.05..2.0f64,
    ) {
        let alpha = admissibility_threshold(rho, t) + bump;
        let rep = integral_identity_check(rho, alpha, t, &cfg()).unwrap();
        prop_assert!(rep.pass, "rel err {}", rep.rel_err);
    }

    #[test]
    fn rearrangement_is_monotone_and_mean_preserving(
        a in -1.0..1.0f64, b in -1.0..1.0f64, c_ in -0.5..0.5f64,
    ) {
        let f = Function1D::new(
            "trig-mix",
            move |x: f64| a * x.sin() + b * (0.5 * x).cos() + c_ * x,
            move |x: f64| a * x.cos() - 0.5 * b * (0.5 * x).sin() + c_,
        );
        let fs = gaussian_rearrangement(&f, 1024);
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=400 {
            let x = -8.0 + 16.0 * i as f64 / 400.0;
            let v = fs.eval(x);
            prop_assert!(v >= prev - 1e-12);
            prev = v;
        }
        let q = cfg();
        let mu = MeasureSpec::gaussian();
        let mean_f = weighted_integral_fn(|x| f.eval(x), &[], &mu, &q).unwrap().value;
        let mean_fs = weighted_integral_fn(|x| fs.eval(x), &[], &mu, &q).unwrap().value;
        prop_assert!((mean_f - mean_fs).abs() < 1e-3 * mean_f.abs().max(1.0));
    }

    #[test]
    fn f2_convex_identity_and_doubling_bound(x in 0.0..5.0f64) {
        let exp = Function1D::new("e^x", |z: f64| z.exp(), |z: f64| z.exp());
        let v = f2(&exp, x);
        prop_assert!((v - (x.exp() + 1.0)).abs() < 1e-9);
        prop_assert!(v <= 2.0 * x.exp() + 1e-12);
    }

    #[test]
    fn bg_margin_nonnegative_for_scaled_linear(lam in 0.0..1.0f64) {
        let f = FamilySpec::Linear { a: lam }.build();
        let rep = funkineq_core::checkers::check_bg(&f, 1.0, 0.5, &cfg()).unwrap();
        // closed form: margin = lam²(αc/(α−c) − 1/2) = lam²/2 ≥ 0
        prop_assert!(rep.margin >= -1e-9);
        prop_assert!((rep.margin - 0.5 * lam * lam).abs() < 1e-7);
    }
}

#[test]
fn family_derivatives_are_consistent() {
    // the Function1D invariant: declared derivative matches finite
    // differences away from kinks for every default family member
    for f in funkineq_core::suite::default_family_suite() {
        assert_eq!(f.derivative_defect(-6.0, 6.0, 1000), 0.0, "{}", f.tag());
    }
}
