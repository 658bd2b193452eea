//! Scalar root finding and maximisation used by the conjugate and
//! rearrangement machinery: bisection on monotone functions, golden-section
//! refinement after a grid scan.

use crate::{Error, Result};

/// Root of a continuous function on `[lo, hi]` given a sign change.
///
/// Plain bisection with a secant-style midpoint nudge; terminates when the
/// bracket is below `xtol` or the residual below `ftol`.
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, xtol: f64, ftol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Domain(format!(
            "no sign change on [{a}, {b}]: f(a) = {fa:e}, f(b) = {fb:e}"
        )));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || fm.abs() < ftol || (b - a).abs() < xtol {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Expands `[lo, hi]` geometrically until `f` changes sign, then bisects.
pub fn bisect_with_expansion(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    ftol: f64,
) -> Result<f64> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for _ in 0..64 {
        if flo.signum() != fhi.signum() {
            return bisect_root(&f, lo, hi, xtol, ftol);
        }
        if flo > 0.0 {
            // both positive: push the bracket down
            lo *= 0.5;
            flo = f(lo);
        } else {
            hi *= 2.0;
            fhi = f(hi);
        }
    }
    Err(Error::Domain(format!(
        "failed to bracket a root starting from [{lo}, {hi}]"
    )))
}

/// Golden-section maximisation of a unimodal function on `[a, b]`.
///
/// Returns `(argmax, max)` with the abscissa resolved to `xtol`.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, xtol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > xtol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Grid scan followed by golden-section refinement around the best cell.
///
/// Robust for continuous objectives that are unimodal between few critical
/// points; the grid localises the global maximum, golden section polishes it.
pub fn grid_then_golden_max(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    grid: usize,
    xtol: f64,
) -> (f64, f64) {
    debug_assert!(grid >= 8);
    let h = (b - a) / grid as f64;
    let mut best_i = 0usize;
    let mut best = f64::NEG_INFINITY;
    for i in 0..=grid {
        let v = f(a + h * i as f64);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let lo = a + h * best_i.saturating_sub(1) as f64;
    let hi = (a + h * (best_i + 1) as f64).min(b);
    let (x, v) = golden_max(&f, lo, hi, xtol);
    if v >= best {
        (x, v)
    } else {
        (a + h * best_i as f64, best)
    }
}
