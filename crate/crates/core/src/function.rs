//! The universal test-function carrier: a real function of one real variable
//! with an evaluable derivative, a declared domain and declared kink points
//! (quadrature intervals split on them), plus the parametric families the
//! checker suites run over.

use std::fmt;
use std::sync::Arc;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A function together with its derivative and, when available, its second
/// derivative (needed by the second-order |Lf| checker).
#[derive(Clone)]
pub struct Function1D {
    eval: Eval,
    deriv: Eval,
    deriv2: Option<Eval>,
    domain: (f64, f64),
    kinks: Vec<f64>,
    tag: String,
}

impl fmt::Debug for Function1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Function1D")
            .field("tag", &self.tag)
            .field("domain", &self.domain)
            .field("kinks", &self.kinks)
            .finish()
    }
}

impl Function1D {
    pub fn new(
        tag: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(eval),
            deriv: Arc::new(deriv),
            deriv2: None,
            domain: (f64::NEG_INFINITY, f64::INFINITY),
            kinks: Vec::new(),
            tag: tag.into(),
        }
    }

    pub fn with_deriv2(mut self, d2: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.deriv2 = Some(Arc::new(d2));
        self
    }

    pub fn with_kinks(mut self, kinks: Vec<f64>) -> Self {
        self.kinks = kinks;
        self
    }

    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn deriv(&self, x: f64) -> f64 {
        (self.deriv)(x)
    }

    /// Second derivative where declared; families built from
    /// [`FamilySpec::build`] always carry one.
    pub fn deriv2(&self, x: f64) -> Option<f64> {
        self.deriv2.as_ref().map(|d| d(x))
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Largest deviation between the declared derivative and a central
    /// finite difference, sampled away from declared kinks. Used by the
    /// consistency tests for every family member.
    pub fn derivative_defect(&self, lo: f64, hi: f64, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        let h = 1e-6;
        for i in 0..samples {
            let x = lo + (hi - lo) * (i as f64 + 0.5) / samples as f64;
            if self.kinks.iter().any(|&k| (x - k).abs() < 1e-2) {
                continue;
            }
            let fd = (self.eval(x + h) - self.eval(x - h)) / (2.0 * h);
            let d = self.deriv(x);
            let tol = 1e-6f64.max(1e-6 * d.abs());
            let defect = ((fd - d).abs() - tol).max(0.0);
            worst = worst.max(defect);
        }
        worst
    }
}

/// Parametric test-function families used by the default checker suites.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    /// f(x) = ½ (|x| ∧ N)², kinks at ±N.
    QuadraticCapped { n: f64 },
    /// f(x) = a·x.
    Linear { a: f64 },
    /// f(x) = √(x² + ε²) − ε, a smooth |x|.
    AbsSmoothed { eps: f64 },
    /// f(x) = a·sin x.
    SinScaled { a: f64 },
    /// Piecewise-linear interpolation through the given knots, constant
    /// outside their range.
    Piecewise { knots: Vec<(f64, f64)> },
    /// f(x) = c₁·x + c₂·(x² − 1) (probabilists' Hermite He₁, He₂).
    HermiteMix { c1: f64, c2: f64 },
}

impl FamilySpec {
    pub fn tag(&self) -> String {
        match self {
            FamilySpec::QuadraticCapped { n } => format!("quadratic-capped({n})"),
            FamilySpec::Linear { a } => format!("linear({a})"),
            FamilySpec::AbsSmoothed { eps } => format!("abs-smoothed({eps})"),
            FamilySpec::SinScaled { a } => format!("sin-scaled({a})"),
            FamilySpec::Piecewise { knots } => format!("piecewise({} knots)", knots.len()),
            FamilySpec::HermiteMix { c1, c2 } => format!("hermite-mix({c1},{c2})"),
        }
    }

    pub fn build(&self) -> Function1D {
        let tag = self.tag();
        match self {
            FamilySpec::QuadraticCapped { n } => {
                let n = *n;
                assert!(n > 0.0);
                Function1D::new(
                    tag,
                    move |x| 0.5 * x.abs().min(n).powi(2),
                    move |x| if x.abs() < n { x } else { 0.0 },
                )
                .with_deriv2(move |x| if x.abs() < n { 1.0 } else { 0.0 })
                .with_kinks(vec![-n, n])
            }
            FamilySpec::Linear { a } => {
                let a = *a;
                Function1D::new(tag, move |x| a * x, move |_| a).with_deriv2(|_| 0.0)
            }
            FamilySpec::AbsSmoothed { eps } => {
                let e2 = eps * eps;
                Function1D::new(
                    tag,
                    move |x| (x * x + e2).sqrt() - e2.sqrt(),
                    move |x| x / (x * x + e2).sqrt(),
                )
                .with_deriv2(move |x| e2 / (x * x + e2).powf(1.5))
            }
            FamilySpec::SinScaled { a } => {
                let a = *a;
                Function1D::new(tag, move |x| a * x.sin(), move |x| a * x.cos())
                    .with_deriv2(move |x| -a * x.sin())
            }
            FamilySpec::Piecewise { knots } => {
                let mut knots = knots.clone();
                knots.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
                assert!(knots.len() >= 2, "piecewise family needs at least 2 knots");
                let kinks: Vec<f64> = knots.iter().map(|k| k.0).collect();
                let ev = knots.clone();
                let dv = knots.clone();
                Function1D::new(
                    tag,
                    move |x| piecewise_eval(&ev, x),
                    move |x| piecewise_deriv(&dv, x),
                )
                .with_deriv2(|_| 0.0)
                .with_kinks(kinks)
            }
            FamilySpec::HermiteMix { c1, c2 } => {
                let (c1, c2) = (*c1, *c2);
                Function1D::new(
                    tag,
                    move |x| c1 * x + c2 * (x * x - 1.0),
                    move |x| c1 + 2.0 * c2 * x,
                )
                .with_deriv2(move |_| 2.0 * c2)
            }
        }
    }
}

fn piecewise_eval(knots: &[(f64, f64)], x: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if x <= first.0 {
        return first.1;
    }
    if x >= last.0 {
        return last.1;
    }
    let i = knots.partition_point(|k| k.0 <= x);
    let (x0, y0) = knots[i - 1];
    let (x1, y1) = knots[i];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn piecewise_deriv(knots: &[(f64, f64)], x: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if x <= first.0 || x >= last.0 {
        return 0.0;
    }
    let i = knots.partition_point(|k| k.0 <= x);
    let (x0, y0) = knots[i - 1];
    let (x1, y1) = knots[i];
    (y1 - y0) / (x1 - x0)
}
