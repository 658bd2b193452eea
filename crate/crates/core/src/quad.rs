//! Quadrature primitives: adaptive Simpson (the workhorse), tanh-sinh for
//! finite panels, and Gauss-Hermite rules for smooth Gaussian-weighted
//! integrands. Every result carries an error estimate; integrands that go
//! non-finite at a node abort with [`Error::NonFiniteIntegrand`] — that is
//! the caller's signal that a test function left the admissible class.

use crate::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureScheme {
    GaussHermite,
    AdaptiveSimpson,
    TanhSinh,
}

/// Scheme, order, truncation and tolerance parameters governing all
/// integrals.
///
/// `truncation_radius` is chosen so the weighted tail mass beyond it stays
/// below `tail_epsilon`; the default R = 12 leaves Gaussian weight below
/// 1e-31, negligible against the 1e-10 tolerances in use.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct QuadratureConfig {
    pub scheme: QuadratureScheme,
    pub order: usize,
    pub truncation_radius: f64,
    pub tail_epsilon: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            scheme: QuadratureScheme::AdaptiveSimpson,
            order: 64,
            truncation_radius: 12.0,
            tail_epsilon: 1e-12,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
        }
    }
}

impl QuadratureConfig {
    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn with_tols(mut self, rel: f64, abs: f64) -> Self {
        self.rel_tol = rel;
        self.abs_tol = abs;
        self
    }
}

/// An integral value together with its estimated absolute error.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

fn guard(f: &dyn Fn(f64) -> f64, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { x })
    }
}

/// ∫_a^b f, splitting first at the declared kinks inside (a, b).
pub fn integrate_with_kinks(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    kinks: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Quad> {
    let mut cuts: Vec<f64> = kinks
        .iter()
        .copied()
        .filter(|&k| k > a + 1e-300 && k < b - 1e-300)
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let mut lo = a;
    let mut total = 0.0;
    let mut err = 0.0;
    for hi in cuts.into_iter().chain(std::iter::once(b)) {
        let q = integrate(f, lo, hi, cfg)?;
        total += q.value;
        err += q.error;
        lo = hi;
    }
    Ok(Quad {
        value: total,
        error: err,
    })
}

/// ∫_a^b f under the configured scheme. Gauss-Hermite has no meaning on a
/// finite panel, so that scheme falls back to adaptive Simpson here; it is
/// honoured by the measure layer for full-line Gaussian integrals.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Quad> {
    if a == b {
        return Ok(Quad {
            value: 0.0,
            error: 0.0,
        });
    }
    match cfg.scheme {
        QuadratureScheme::TanhSinh => tanh_sinh(f, a, b, cfg),
        _ => adaptive_simpson(f, a, b, cfg),
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<Quad> {
    // rough scale for the relative-tolerance target
    let mut rough = 0.0;
    let n0 = 32;
    for i in 0..=n0 {
        let x = a + (b - a) * i as f64 / n0 as f64;
        let w = if i == 0 || i == n0 { 0.5 } else { 1.0 };
        rough += w * guard(f, x)?;
    }
    rough *= (b - a) / n0 as f64;
    let tol = cfg.abs_tol.max(cfg.rel_tol * rough.abs());

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (guard(f, a)?, guard(f, m)?, guard(f, b)?);
    let whole = simpson(fa, fm, fb, a, b);
    let (value, error) = simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, 48)?;
    if error > 50.0 * tol.max(cfg.rel_tol * value.abs()) {
        return Err(Error::ToleranceNotMet { residual: error });
    }
    Ok(Quad { value, error })
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<(f64, f64)> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = guard(f, lm)?;
    let frm = guard(f, rm)?;
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    // stop at the requested tolerance, at the roundoff floor of the panel
    // values (refinement below it cannot converge), or at the depth cap
    let roundoff_floor = 8.0 * f64::EPSILON * (left.abs() + right.abs());
    if depth == 0
        || delta.abs() <= 15.0 * tol
        || delta.abs() <= roundoff_floor
        || (b - a) < 1e-13 * (a.abs() + b.abs() + 1.0)
    {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    let (lv, le) = simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1)?;
    let (rv, re) = simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1)?;
    Ok((lv + rv, le + re))
}

/// Tanh-sinh (double exponential) rule on a finite panel; error from the
/// last level doubling.
fn tanh_sinh(f: &dyn Fn(f64) -> f64, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Quad> {
    let c = 0.5 * (a + b);
    let d = 0.5 * (b - a);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut h = 1.0f64;
    let mut prev = f64::NAN;
    let mut value = 0.0;
    for level in 0..=12u32 {
        let mut sum = 0.0;
        // at level 0 take every node; afterwards only the odd new ones
        let stride = if level == 0 { 1 } else { 2 };
        let start = if level == 0 { 0 } else { 1 };
        let kmax = (6.0 / h).ceil() as i64;
        let mut k = start;
        while k <= kmax {
            for sgn in [1.0, -1.0] {
                if k == 0 && sgn < 0.0 {
                    continue;
                }
                let t = sgn * k as f64 * h;
                let u = half_pi * t.sinh();
                let ch = u.cosh();
                let w = half_pi * t.cosh() / (ch * ch);
                if w < 1e-300 {
                    continue;
                }
                let x = c + d * u.tanh();
                if x <= a || x >= b {
                    continue;
                }
                sum += w * guard(f, x)?;
                if k == 0 {
                    break;
                }
            }
            k += stride;
        }
        value = if level == 0 {
            d * h * sum
        } else {
            0.5 * value + d * h * sum
        };
        if level > 1 {
            let err = (value - prev).abs();
            if err <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
                return Ok(Quad { value, error: err });
            }
        }
        prev = value;
        h *= 0.5;
    }
    let err = (value - prev).abs();
    Ok(Quad { value, error: err })
}

/// Gauss-Hermite rule for the physicists' weight e^{-x²}.
pub struct GaussHermiteRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Nodes and weights by Newton iteration on the orthonormal Hermite
/// recurrence; rules are cached per order.
pub fn gauss_hermite_rule(order: usize) -> Arc<GaussHermiteRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussHermiteRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(compute_gauss_hermite(order));
    cache
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&rule));
    rule
}

fn compute_gauss_hermite(n: usize) -> GaussHermiteRule {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            // orthonormal Hermite values p_n(z) and derivative
            let mut p1 = std::f64::consts::PI.powf(-0.25);
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    GaussHermiteRule { nodes, weights }
}

/// ∫ f dγ over the standard Gaussian via Gauss-Hermite at the given order,
/// with the order-halving difference as error estimate.
pub fn gauss_hermite_gamma(f: &dyn Fn(f64) -> f64, order: usize) -> Result<Quad> {
    let value = gh_gamma_once(f, order)?;
    let coarse = gh_gamma_once(f, (order / 2).max(2))?;
    Ok(Quad {
        value,
        error: (value - coarse).abs().max(f64::EPSILON * value.abs()),
    })
}

fn gh_gamma_once(f: &dyn Fn(f64) -> f64, order: usize) -> Result<f64> {
    let rule = gauss_hermite_rule(order);
    let mut sum = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(rule.weights.iter()) {
        sum += w * guard(f, std::f64::consts::SQRT_2 * x)?;
    }
    Ok(sum / std::f64::consts::PI.sqrt())
}
