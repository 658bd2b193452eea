//! Transfer principles: bounded perturbation of the reference measure,
//! one-dimensional contraction onto strongly log-concave targets, and the
//! zero-median variant of the mean-zero constraint.

use crate::checkers::g_ir;
use crate::function::Function1D;
use crate::measure::{weighted_integral_fn, MeasureSpec};
use crate::quad::QuadratureConfig;
use crate::report::InequalityReport;
use crate::special::{normal_pdf, normal_quantile, SQRT_PI_OVER_2};
use crate::{Error, Result};
use std::sync::Arc;

/// Base inequality (F, G) a transfer builds on. The quantitative Gaussian
/// inequality log∫e^f ≤ 10∫G_ir(|f'|) is the default, i.e. F(t) = e^{10t}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseInequality {
    Ir,
}

impl BaseInequality {
    pub fn f_of(&self, t: f64) -> f64 {
        match self {
            BaseInequality::Ir => (10.0 * t).exp(),
        }
    }

    pub fn g_of(&self, t: f64) -> f64 {
        match self {
            BaseInequality::Ir => g_ir(t),
        }
    }

    /// The constant a in the log form log∫e^f ≤ a∫G(|f'|).
    pub fn log_constant(&self) -> f64 {
        match self {
            BaseInequality::Ir => 10.0,
        }
    }
}

/// Bounded-perturbation transfer: with ν = h·μ/Z and a ≤ h ≤ b on the
/// working domain, a base inequality ∫e^f dμ ≤ F(∫G(|f'|)dμ) yields
/// ∫e^f dν ≤ 1 + b̂ F((1/â) ∫G(|f'|)dν) for ν-mean-zero f, where â, b̂ are
/// the bounds of the normalised density.
pub fn holley_stroock_transfer(
    base: BaseInequality,
    h: &Function1D,
    a: f64,
    b: f64,
    f: &Function1D,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let nu = MeasureSpec::perturbed(MeasureSpec::gaussian(), h.clone(), a, b, cfg)?;
    let MeasureSpec::Perturbed { z, .. } = &nu else {
        unreachable!()
    };
    let (a_hat, b_hat) = (a / z, b / z);
    let mean = weighted_integral_fn(|x| f.eval(x), f.kinks(), &nu, cfg)?.value;
    let lhs_q = weighted_integral_fn(|x| (f.eval(x) - mean).exp(), f.kinks(), &nu, cfg)?;
    let g_int = match weighted_integral_fn(|x| base.g_of(f.deriv(x)), f.kinks(), &nu, cfg) {
        Ok(q) => q.value,
        Err(Error::NonFiniteIntegrand { .. }) => {
            return Ok(
                InequalityReport::vacuous("hs-transfer", lhs_q.value, f.tag())
                    .with_param("a", a)
                    .with_param("b", b),
            )
        }
        Err(e) => return Err(e),
    };
    let rhs = 1.0 + b_hat * base.f_of(g_int / a_hat);
    Ok(
        InequalityReport::two_sided("hs-transfer", lhs_q.value, rhs, f.tag())
            .with_param("a", a)
            .with_param("b", b)
            .with_param("a_normalised", a_hat)
            .with_param("b_normalised", b_hat)
            .with_quad_error(lhs_q.error),
    )
}

/// Monotone transport T = F_μ⁻¹ ∘ Φ onto μ ∝ e^{-V} dγ, tabulated on a fine
/// grid; the target's CDF is accumulated by the trapezoid rule and inverted
/// by binary search.
pub struct Transport {
    xs: Vec<f64>,
    cdf: Vec<f64>,
}

impl Transport {
    pub fn new(v: &Function1D, cfg: &QuadratureConfig) -> Result<Self> {
        let r = cfg.truncation_radius;
        let n = 40_000;
        let mut xs = Vec::with_capacity(n + 1);
        let mut dens = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let x = -r + 2.0 * r * i as f64 / n as f64;
            let d = (-v.eval(x)).exp() * normal_pdf(x);
            if !d.is_finite() {
                return Err(Error::NonFiniteIntegrand { x });
            }
            xs.push(x);
            dens.push(d);
        }
        let mut cdf = vec![0.0];
        for i in 1..=n {
            let step = 0.5 * (dens[i] + dens[i - 1]) * (xs[i] - xs[i - 1]);
            cdf.push(cdf[i - 1] + step);
        }
        let total = cdf[n];
        for c in cdf.iter_mut() {
            *c /= total;
        }
        Ok(Transport { xs, cdf })
    }

    pub fn apply(&self, x: f64) -> f64 {
        let p = crate::special::normal_cdf(x);
        let i = self
            .cdf
            .partition_point(|&c| c < p)
            .clamp(1, self.xs.len() - 1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let t = ((p - c0) / (c1 - c0).max(1e-300)).clamp(0.0, 1.0);
        self.xs[i - 1] + t * (self.xs[i] - self.xs[i - 1])
    }

    /// Largest |ΔT/Δx| over a uniform grid on [−4, 4].
    pub fn max_slope(&self) -> f64 {
        let n = 400;
        let mut worst: f64 = 0.0;
        let mut prev = self.apply(-4.0);
        for i in 1..=n {
            let x = -4.0 + 8.0 * i as f64 / n as f64;
            let cur = self.apply(x);
            worst = worst.max((cur - prev).abs() / (8.0 / n as f64));
            prev = cur;
        }
        worst
    }
}

/// Contraction transfer onto the strongly log-concave μ ∝ e^{-V} dγ
/// (V convex, caller-asserted): checks that the monotone transport is
/// 1-Lipschitz on a grid, then verifies the transferred base inequality
/// ∫e^g dμ ≤ F(∫G(|g'|)dμ) for μ-mean-zero g.
pub fn contraction_transfer_1d(
    v: &Function1D,
    g: &Function1D,
    base: BaseInequality,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let transport = Transport::new(v, cfg)?;
    let slope = transport.max_slope();
    if slope > 1.0 + 1e-6 {
        return Err(Error::NotLogConcave { slope, x: f64::NAN });
    }
    let z = {
        let r = cfg.truncation_radius;
        crate::quad::integrate(&|x| (-v.eval(x)).exp() * normal_pdf(x), -r, r, cfg)?.value
    };
    let v_arc = Arc::new(v.clone());
    let dens = {
        let v = Arc::clone(&v_arc);
        move |x: f64| (-v.eval(x)).exp() * normal_pdf(x) / z
    };
    let r = cfg.truncation_radius;
    let integrate_mu = |f: &dyn Fn(f64) -> f64, kinks: &[f64]| -> Result<f64> {
        Ok(crate::quad::integrate_with_kinks(&|x| f(x) * dens(x), -r, r, kinks, cfg)?.value)
    };
    let mean = integrate_mu(&|x| g.eval(x), g.kinks())?;
    let lhs = integrate_mu(&|x| (g.eval(x) - mean).exp(), g.kinks())?;
    let g_int = integrate_mu(&|x| base.g_of(g.deriv(x)), g.kinks())?;
    let rhs = base.f_of(g_int);
    Ok(
        InequalityReport::two_sided("contraction-1d", lhs, rhs, g.tag())
            .with_param("lipschitz", slope),
    )
}

/// Maximal median m_g = inf{ t : γ(g > t) ≤ 1/2 } from an equal-mass sample.
pub fn maximal_median(g: &Function1D) -> f64 {
    const M: usize = 1 << 16;
    let mut vals: Vec<f64> = (0..M)
        .map(|i| {
            let p = (i as f64 + 0.5) / M as f64;
            g.eval(normal_quantile(p).expect("p in (0,1)"))
        })
        .collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // γ(g > v[k]) ≈ (M − k − 1)/M ≤ 1/2 from k = M/2 − 1 on; the infimum is
    // the smallest such order statistic
    vals[M / 2 - 1]
}

/// Median variant: with the maximal median subtracted, the mean-zero
/// inequality log∫e^f ≤ a∫G(|f'|) transfers to
/// log∫e^g dγ ≤ (a + 2c)∫G(|g'|)dγ for median-zero g, where c is the
/// Gaussian Maz'ya-Cheeger constant (√(π/2), the Muckenhoupt L¹ value).
pub fn median_variant_check(
    g: &Function1D,
    a: f64,
    c_cheeger: f64,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    let m = maximal_median(g);
    let mu = MeasureSpec::gaussian();
    let lhs_q = weighted_integral_fn(|x| (g.eval(x) - m).exp(), g.kinks(), &mu, cfg)?;
    let lhs = lhs_q.value.ln();
    let rhs = match weighted_integral_fn(|x| g_ir(g.deriv(x)), g.kinks(), &mu, cfg) {
        Ok(q) => (a + 2.0 * c_cheeger) * q.value,
        Err(Error::NonFiniteIntegrand { .. }) => {
            return Ok(InequalityReport::vacuous("median", lhs, g.tag()))
        }
        Err(e) => return Err(e),
    };
    Ok(InequalityReport::two_sided("median", lhs, rhs, g.tag())
        .with_param("median", m)
        .with_param("a", a)
        .with_param("c_cheeger", c_cheeger)
        .with_quad_error(lhs_q.error))
}

/// Default Cheeger constant for γ.
pub fn gaussian_cheeger_constant() -> f64 {
    SQRT_PI_OVER_2
}
