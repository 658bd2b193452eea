//! Reference measures: the standard Gaussian γ, the sub-Gaussian family
//! μ_p ∝ e^{-|x|^p}, Poisson(λ) on the integers, and bounded perturbations
//! h·μ of a continuous base. All "∫ · dμ" in the inequality checkers go
//! through [`weighted_integral`].

use crate::function::Function1D;
use crate::quad::{self, Quad, QuadratureConfig, QuadratureScheme};
use crate::special::{normal_pdf, poisson_pmf, poisson_truncation};
use crate::{Error, Result};

/// Tagged description of a reference measure, carrying its normalisation.
#[derive(Debug, Clone)]
pub enum MeasureSpec {
    /// Standard Gaussian on the line.
    Gaussian1d,
    /// μ_p with density Z_p⁻¹ e^{-|x|^p}, p ∈ (1, 2]; Z_p is computed once
    /// by adaptive quadrature when the value is constructed and cached here.
    SubGaussian { p: f64, z: f64 },
    /// Poisson(λ) on {0, 1, ...}, truncated sums up to `k_max`.
    Poisson { lambda: f64, k_max: u64 },
    /// ν = h·μ / Z for a continuous base μ, with a ≤ h ≤ b on the working
    /// domain; Z = ∫ h dμ is cached.
    Perturbed {
        base: Box<MeasureSpec>,
        h: Function1D,
        a: f64,
        b: f64,
        z: f64,
    },
}

impl MeasureSpec {
    pub fn gaussian() -> Self {
        MeasureSpec::Gaussian1d
    }

    pub fn subgaussian(p: f64, cfg: &QuadratureConfig) -> Result<Self> {
        if !(p > 1.0 && p <= 2.0) {
            return Err(Error::Domain(format!(
                "subgaussian exponent p = {p} not in (1, 2]"
            )));
        }
        let r = subgaussian_radius(p, cfg);
        let z = quad::integrate(&|x: f64| (-x.abs().powf(p)).exp(), -r, r, cfg)?.value;
        Ok(MeasureSpec::SubGaussian { p, z })
    }

    pub fn poisson(lambda: f64) -> Result<Self> {
        if lambda <= 0.0 {
            return Err(Error::Domain(format!(
                "poisson rate λ = {lambda} must be positive"
            )));
        }
        Ok(MeasureSpec::Poisson {
            lambda,
            k_max: poisson_truncation(lambda),
        })
    }

    /// Perturbation ν = h·μ / Z. The bounds a ≤ h ≤ b are checked by
    /// sampling on the working domain; `h` enters unnormalised and the
    /// effective density bounds become a/Z and b/Z.
    pub fn perturbed(
        base: MeasureSpec,
        h: Function1D,
        a: f64,
        b: f64,
        cfg: &QuadratureConfig,
    ) -> Result<Self> {
        if !(a > 0.0 && a <= b && b.is_finite()) {
            return Err(Error::Domain(format!(
                "perturbation bounds 0 < a <= b violated: a = {a}, b = {b}"
            )));
        }
        if matches!(base, MeasureSpec::Poisson { .. }) {
            return Err(Error::Domain(
                "perturbed kind requires a continuous base".into(),
            ));
        }
        let r = base.working_radius(cfg);
        for i in 0..=400 {
            let x = -r + 2.0 * r * i as f64 / 400.0;
            let hx = h.eval(x);
            if !(hx >= a - 1e-12 && hx <= b + 1e-12) {
                return Err(Error::Domain(format!(
                    "perturbation density h({x}) = {hx} outside [{a}, {b}]"
                )));
            }
        }
        let z = weighted_integral_fn(|x| h.eval(x), h.kinks(), &base, cfg)?.value;
        Ok(MeasureSpec::Perturbed {
            base: Box::new(base),
            h,
            a,
            b,
            z,
        })
    }

    /// Truncation radius appropriate for this measure's tails.
    pub fn working_radius(&self, cfg: &QuadratureConfig) -> f64 {
        match self {
            MeasureSpec::Gaussian1d => cfg.truncation_radius,
            MeasureSpec::SubGaussian { p, .. } => subgaussian_radius(*p, cfg),
            MeasureSpec::Perturbed { base, .. } => base.working_radius(cfg),
            MeasureSpec::Poisson { .. } => 0.0,
        }
    }

    /// Density with respect to Lebesgue measure (continuous kinds only).
    pub fn density(&self, x: f64) -> f64 {
        match self {
            MeasureSpec::Gaussian1d => normal_pdf(x),
            MeasureSpec::SubGaussian { p, z } => (-x.abs().powf(*p)).exp() / z,
            MeasureSpec::Perturbed { base, h, z, .. } => h.eval(x) * base.density(x) / z,
            MeasureSpec::Poisson { .. } => panic!("Poisson kind has no Lebesgue density"),
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, MeasureSpec::Poisson { .. })
    }

    /// Total mass by the same machinery the checkers use; should be 1
    /// within the configured relative tolerance.
    pub fn total_mass(&self, cfg: &QuadratureConfig) -> Result<f64> {
        Ok(weighted_integral_fn(|_| 1.0, &[], self, cfg)?.value)
    }
}

fn subgaussian_radius(p: f64, cfg: &QuadratureConfig) -> f64 {
    // weight e^{-R^p} ≤ tail_epsilon, padded; never below the Gaussian default
    let r = (-cfg.tail_epsilon.ln()).powf(1.0 / p) + 2.0;
    r.max(cfg.truncation_radius)
}

/// ∫ f dμ for a [`Function1D`], splitting at its declared kinks.
pub fn weighted_integral(f: &Function1D, mu: &MeasureSpec, cfg: &QuadratureConfig) -> Result<Quad> {
    weighted_integral_fn(|x| f.eval(x), f.kinks(), mu, cfg)
}

/// ∫ g dμ for a plain integrand with declared kink points. This is the
/// realisation of every "∫ · dμ" appearing in the checkers.
pub fn weighted_integral_fn(
    g: impl Fn(f64) -> f64,
    kinks: &[f64],
    mu: &MeasureSpec,
    cfg: &QuadratureConfig,
) -> Result<Quad> {
    match mu {
        MeasureSpec::Poisson { lambda, k_max } => {
            let mut sum = 0.0;
            for k in (0..=*k_max).rev() {
                let term = g(k as f64) * poisson_pmf(*lambda, k);
                if !term.is_finite() {
                    return Err(Error::NonFiniteIntegrand { x: k as f64 });
                }
                sum += term;
            }
            Ok(Quad {
                value: sum,
                error: f64::EPSILON * sum.abs() * *k_max as f64,
            })
        }
        MeasureSpec::Gaussian1d if cfg.scheme == QuadratureScheme::GaussHermite => {
            quad::gauss_hermite_gamma(&|x| g(x), cfg.order)
        }
        _ => {
            let r = mu.working_radius(cfg);
            quad::integrate_with_kinks(&|x| g(x) * mu.density(x), -r, r, kinks, cfg)
        }
    }
}

/// Un-normalised half-line integral ∫₀^∞ f(x) e^{-x²/2} dx.
pub fn halfline_integral(f: &Function1D, cfg: &QuadratureConfig) -> Result<Quad> {
    halfline_integral_fn(|x| f.eval(x), f.kinks(), cfg)
}

/// Same, for a plain integrand with declared kinks, optionally integrating
/// out to a caller-supplied radius (the falsification scan needs cutoffs
/// beyond the default truncation).
pub fn halfline_integral_fn(
    g: impl Fn(f64) -> f64,
    kinks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Quad> {
    halfline_integral_to(g, kinks, cfg.truncation_radius, cfg)
}

pub fn halfline_integral_to(
    g: impl Fn(f64) -> f64,
    kinks: &[f64],
    radius: f64,
    cfg: &QuadratureConfig,
) -> Result<Quad> {
    quad::integrate_with_kinks(&|x| g(x) * (-0.5 * x * x).exp(), 0.0, radius, kinks, cfg)
}

/// Mean ∫ f dμ; checkers subtract it to enforce mean-zero preconditions.
pub fn mean(
    f: impl Fn(f64) -> f64,
    kinks: &[f64],
    mu: &MeasureSpec,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(weighted_integral_fn(f, kinks, mu, cfg)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::SQRT_PI_OVER_2;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn gaussian_normalisation_and_moments() {
        let mu = MeasureSpec::gaussian();
        let one = weighted_integral_fn(|_| 1.0, &[], &mu, &cfg()).unwrap();
        assert!((one.value - 1.0).abs() < 1e-10);
        let second = weighted_integral_fn(|x| x * x, &[], &mu, &cfg()).unwrap();
        assert!((second.value - 1.0).abs() < 1e-10);
        let mgf = weighted_integral_fn(|x| x.exp(), &[], &mu, &cfg()).unwrap();
        assert!((mgf.value - (0.5f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn all_kinds_have_unit_mass() {
        let c = cfg();
        let measures = [
            MeasureSpec::gaussian(),
            MeasureSpec::subgaussian(1.5, &c).unwrap(),
            MeasureSpec::subgaussian(1.2, &c).unwrap(),
            MeasureSpec::poisson(1.0).unwrap(),
            MeasureSpec::poisson(5.0).unwrap(),
            MeasureSpec::perturbed(
                MeasureSpec::gaussian(),
                Function1D::new("1+cos/2", |x| 1.0 + 0.5 * x.cos(), |x| -0.5 * x.sin()),
                0.5,
                1.5,
                &c,
            )
            .unwrap(),
        ];
        for mu in &measures {
            let mass = mu.total_mass(&c).unwrap();
            assert!((mass - 1.0).abs() < 1e-9, "{mu:?}: mass = {mass}");
        }
    }

    #[test]
    fn subgaussian_normaliser_matches_gamma_function() {
        // Z_p = 2 Γ(1 + 1/p)
        let c = cfg();
        for &p in &[1.2, 1.5, 1.8, 2.0] {
            let MeasureSpec::SubGaussian { z, .. } = MeasureSpec::subgaussian(p, &c).unwrap()
            else {
                unreachable!()
            };
            let exact = 2.0 * libm::tgamma(1.0 + 1.0 / p);
            assert!((z - exact).abs() < 1e-9, "p = {p}: {z} vs {exact}");
        }
    }

    #[test]
    fn halfline_identities() {
        let c = cfg();
        let one = halfline_integral_fn(|_| 1.0, &[], &c).unwrap();
        assert!((one.value - SQRT_PI_OVER_2).abs() < 1e-10);
        let x1 = halfline_integral_fn(|x| x, &[], &c).unwrap();
        assert!((x1.value - 1.0).abs() < 1e-10);
        let x2 = halfline_integral_fn(|x| x * x, &[], &c).unwrap();
        assert!((x2.value - SQRT_PI_OVER_2).abs() < 1e-10);
    }

    #[test]
    fn perturbed_bounds_are_enforced() {
        let c = cfg();
        let h = Function1D::new("cos", |x: f64| x.cos(), |x: f64| -x.sin());
        assert!(MeasureSpec::perturbed(MeasureSpec::gaussian(), h, 0.5, 1.5, &c).is_err());
    }

    #[test]
    fn truncation_radius_leaves_tail_below_epsilon() {
        // the invariant is assertable by comparing against a doubled radius
        let c = cfg();
        let mu = MeasureSpec::gaussian();
        let at_r = weighted_integral_fn(|x| 1.0 + 0.1 * x.cos(), &[], &mu, &c).unwrap();
        let mut wide = c;
        wide.truncation_radius *= 2.0;
        let at_2r = weighted_integral_fn(|x| 1.0 + 0.1 * x.cos(), &[], &mu, &wide).unwrap();
        assert!((at_r.value - at_2r.value).abs() <= c.tail_epsilon);
        // checks at tolerance <= 1e-6 need order >= 16; the default provides it
        assert!(c.order >= 16);
    }

    #[test]
    fn scheme_self_consistency_under_order_doubling() {
        // doubling the Gauss-Hermite order moves the result by less than the
        // reported error estimate
        let mut c = cfg();
        c.scheme = QuadratureScheme::GaussHermite;
        c.order = 32;
        let mu = MeasureSpec::gaussian();
        let f = |x: f64| (0.4 * x).sin().powi(2) + 0.1 * x;
        let at_32 = weighted_integral_fn(f, &[], &mu, &c).unwrap();
        c.order = 64;
        let at_64 = weighted_integral_fn(f, &[], &mu, &c).unwrap();
        assert!((at_64.value - at_32.value).abs() <= at_32.error.max(1e-14));
    }
}
