//! Default test-function suites and the checker registry: every registered
//! inequality id dispatches here, both for single runs and for full-suite
//! sweeps (which fan out across the worker pool).

use crate::checkers;
use crate::function::{FamilySpec, Function1D};
use crate::par;
use crate::poisson::{self, ChainSpec, PoissonCheckMode};
use crate::quad::QuadratureConfig;
use crate::report::InequalityReport;
use crate::semigroup::{self, BgForm};
use crate::transfer::{self, BaseInequality};
use crate::{Error, Result};

/// Registered inequality identifiers, in the order the CLI lists them.
pub const REGISTERED_IDS: [&str; 14] = [
    "bg",
    "ir",
    "ir-sqrt",
    "exp-hardy",
    "beta-hardy",
    "cmp",
    "bg-local",
    "cmp-lf",
    "mlsi-p",
    "poisson",
    "poisson-thm51",
    "hs-transfer",
    "contraction-1d",
    "median",
];

pub fn is_registered(id: &str) -> bool {
    REGISTERED_IDS.contains(&id)
}

/// True for the identifiers whose checks run over discrete (Poisson-side)
/// test functions.
pub fn is_discrete(id: &str) -> bool {
    matches!(id, "poisson" | "poisson-thm51")
}

/// Parameters a checker run may consume; unspecified entries fall back to
/// the documented defaults.
#[derive(Debug, Clone)]
pub struct CheckerParams {
    pub alpha: Option<f64>,
    pub c: f64,
    pub beta: f64,
    pub kappa: Option<f64>,
    pub p: f64,
    pub c_assumed: f64,
    pub t: f64,
    pub x: f64,
    pub lambda: f64,
    pub c_lsi: Option<f64>,
    /// constant a of the mean-zero base in the median variant
    pub a_base: f64,
    /// sampled bounds for the default Holley-Stroock perturbation
    pub hs_bounds: (f64, f64),
}

impl Default for CheckerParams {
    fn default() -> Self {
        CheckerParams {
            alpha: None,
            c: 0.5,
            beta: 1.5,
            kappa: None,
            p: 1.5,
            c_assumed: 1.0,
            t: 1.0,
            x: 0.0,
            lambda: 1.0,
            c_lsi: None,
            a_base: 10.0,
            hs_bounds: (0.5, 1.5),
        }
    }
}

impl CheckerParams {
    fn alpha_or(&self, default: f64) -> f64 {
        self.alpha.unwrap_or(default)
    }
}

/// The eleven-member default continuous family suite: capped quadratics,
/// linear, sine, and Hermite mixes with coefficient norm ≤ 0.5.
pub fn default_family_suite() -> Vec<Function1D> {
    let mut fns = Vec::with_capacity(11);
    for n in [1.0, 2.0, 3.0] {
        fns.push(FamilySpec::QuadraticCapped { n }.build());
    }
    for a in [0.2, 0.5, 1.0] {
        fns.push(FamilySpec::Linear { a }.build());
    }
    for a in [0.5, 1.0] {
        fns.push(FamilySpec::SinScaled { a }.build());
    }
    for (c1, c2) in [(0.3, 0.2), (0.2, -0.2), (0.5, 0.0)] {
        fns.push(FamilySpec::HermiteMix { c1, c2 }.build());
    }
    fns
}

/// Single family member from a CLI-style (kind, parameters) description.
pub fn family_member(kind: &str, a: f64, b: f64) -> Result<Function1D> {
    let spec = match kind {
        "quadratic-capped" => FamilySpec::QuadraticCapped { n: a },
        "linear" => FamilySpec::Linear { a },
        "abs-smoothed" => FamilySpec::AbsSmoothed { eps: a },
        "sin-scaled" => FamilySpec::SinScaled { a },
        "hermite-mix" => FamilySpec::HermiteMix { c1: a, c2: b },
        other => {
            return Err(Error::Domain(format!(
                "unknown family '{other}' (expected quadratic-capped | linear | abs-smoothed | sin-scaled | hermite-mix)"
            )))
        }
    };
    Ok(spec.build())
}

/// Runs one registered continuous checker on one function.
pub fn run_continuous_checker(
    id: &str,
    f: &Function1D,
    params: &CheckerParams,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    match id {
        "bg" => checkers::check_bg(f, params.alpha_or(1.0), params.c, cfg),
        "ir" => checkers::check_ir(f, cfg),
        "ir-sqrt" => checkers::check_ir_sqrt(f, cfg),
        "exp-hardy" => checkers::check_exp_hardy(f, cfg),
        "beta-hardy" => checkers::check_beta_hardy(f, params.beta, cfg),
        "cmp" => {
            let kappa_beta =
                1.0 / std::f64::consts::SQRT_2 + std::f64::consts::SQRT_2 / params.beta;
            checkers::check_cmp(f, params.beta, params.kappa.unwrap_or(kappa_beta), cfg)
        }
        "bg-local" => semigroup::theorem_bg_check(
            f,
            params.alpha_or(1.0),
            BgForm::Local {
                t: params.t,
                x: params.x,
            },
            cfg,
        ),
        "cmp-lf" => semigroup::cmp_lf_check(f, params.alpha_or(1.0), cfg),
        "mlsi-p" => semigroup::modified_lsi_conclusion_check(
            params.p,
            f,
            params.alpha_or(2.0),
            params.c_assumed,
            cfg,
        ),
        "hs-transfer" => {
            let h = Function1D::new(
                "1+cos/2",
                |x: f64| 1.0 + 0.5 * x.cos(),
                |x: f64| -0.5 * x.sin(),
            );
            transfer::holley_stroock_transfer(
                BaseInequality::Ir,
                &h,
                params.hs_bounds.0,
                params.hs_bounds.1,
                f,
                cfg,
            )
        }
        "contraction-1d" => {
            let quartic = Function1D::new("x^4/4", |x: f64| 0.25 * x.powi(4), |x: f64| x.powi(3));
            transfer::contraction_transfer_1d(&quartic, f, BaseInequality::Ir, cfg)
        }
        "median" => transfer::median_variant_check(
            f,
            params.a_base,
            transfer::gaussian_cheeger_constant(),
            cfg,
        ),
        other => Err(Error::Domain(format!(
            "'{other}' is not a continuous checker"
        ))),
    }
}

/// Runs one registered discrete checker on one function.
pub fn run_discrete_checker(
    id: &str,
    f: &poisson::DiscreteFunction,
    params: &CheckerParams,
) -> Result<InequalityReport> {
    let chain = ChainSpec::new(params.lambda)?;
    match id {
        "poisson-thm51" => {
            let c_lsi = params.c_lsi.unwrap_or(params.lambda);
            poisson::theorem_51_check(&chain, f, params.alpha_or(params.lambda + 2.0), c_lsi)
        }
        "poisson" => {
            let consts = poisson::constants_cd_estimate(params.lambda)?;
            let mode = if f.eval(0) == 0.0 {
                PoissonCheckMode::ZeroAtOrigin
            } else {
                PoissonCheckMode::MeanZero
            };
            poisson::poisson_exponential_check(&chain, f, &consts, mode)
        }
        other => Err(Error::Domain(format!(
            "'{other}' is not a discrete checker"
        ))),
    }
}

/// Runs a registered checker over its default suite (continuous families or
/// discrete table functions), fanning out across the worker pool.
pub fn run_default_suite(
    id: &str,
    params: &CheckerParams,
    cfg: &QuadratureConfig,
) -> Result<Vec<InequalityReport>> {
    if !is_registered(id) {
        return Err(Error::Domain(format!("unknown inequality id '{id}'")));
    }
    if is_discrete(id) {
        let chain = ChainSpec::new(params.lambda)?;
        // constants are shared across the suite for the exp inequality
        let consts = if id == "poisson" {
            Some(poisson::constants_cd_estimate(params.lambda)?)
        } else {
            None
        };
        let members = poisson::discrete_suite(chain.k_max);
        let out = par::map_collect(members, |f| match (id, &consts) {
            ("poisson", Some(cs)) => {
                let mode = if f.eval(0) == 0.0 {
                    PoissonCheckMode::ZeroAtOrigin
                } else {
                    PoissonCheckMode::MeanZero
                };
                poisson::poisson_exponential_check(&chain, &f, cs, mode)
            }
            _ => {
                let c_lsi = params.c_lsi.unwrap_or(params.lambda);
                poisson::theorem_51_check(&chain, &f, params.alpha_or(params.lambda + 2.0), c_lsi)
            }
        });
        out.into_iter().collect()
    } else {
        let members = default_family_suite();
        let out = par::map_collect(members, |f| run_continuous_checker(id, &f, params, cfg));
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_has_at_least_ten_members() {
        assert!(default_family_suite().len() >= 10);
        assert!(poisson::discrete_suite(50).len() >= 10);
    }

    #[test]
    fn registry_covers_all_ids() {
        let cfg = QuadratureConfig::default();
        let params = CheckerParams::default();
        let f = FamilySpec::Linear { a: 0.3 }.build();
        for id in REGISTERED_IDS {
            if is_discrete(id) {
                let df = poisson::DiscreteFunction::from_fn(
                    "lin",
                    60,
                    |k| 0.1 * k as f64,
                    poisson::TailExtension::Linear { slope: 0.1 },
                );
                let rep = run_discrete_checker(id, &df, &params).unwrap();
                assert!(rep.satisfied, "{id}: {rep:?}");
            } else {
                let rep = run_continuous_checker(id, &f, &params, &cfg).unwrap();
                assert!(rep.satisfied, "{id}: {rep:?}");
            }
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let cfg = QuadratureConfig::default();
        let params = CheckerParams::default();
        assert!(run_default_suite("not-an-id", &params, &cfg).is_err());
        assert!(family_member("not-a-family", 1.0, 0.0).is_err());
    }
}
