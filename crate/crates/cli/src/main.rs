//! `funkineq` — runs the inequality checkers, audits the constants table,
//! drives the falsification scan, and sweeps parameter grids. Exit codes:
//! 0 all checks satisfied, 1 an inequality or audit failed, 2 usage error.

mod expr;

use clap::{Args, Parser, Subcommand};
use funkineq_core::report::{AuditEntry, InequalityReport};
use funkineq_core::scan;
use funkineq_core::suite::{
    family_member, is_discrete, is_registered, run_continuous_checker, run_default_suite,
    CheckerParams, REGISTERED_IDS,
};
use funkineq_core::QuadratureConfig;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(
    name = "funkineq",
    version,
    about = "Numerical verification of exponential integrability inequalities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one inequality checker, over the default suite or a single family member
    Check(CheckArgs),
    /// Reproduce the constants table
    Audit(AuditArgs),
    /// Falsification scan for a candidate denominator H(t)
    Falsify(FalsifyArgs),
    /// Sweep a parameter grid and emit the margin surface as CSV
    Scan(ScanArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// One of: bg ir ir-sqrt exp-hardy beta-hardy cmp bg-local cmp-lf mlsi-p
    /// poisson poisson-thm51 hs-transfer contraction-1d median
    inequality_id: String,
    /// Family kind (quadratic-capped | linear | abs-smoothed | sin-scaled |
    /// hermite-mix); omitted = full default suite
    #[arg(long)]
    family: Option<String>,
    /// First family parameter (N, a, eps, or c1)
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    /// Cap N for quadratic-capped (alias for the first parameter)
    #[arg(long, alias = "N")]
    n: Option<f64>,
    /// Second family parameter (c2 of hermite-mix)
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    c_assumed: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    c_lsi: Option<f64>,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// Run every audit (the default)
    #[arg(long)]
    all: bool,
    /// Run a single audit id
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FalsifyArgs {
    /// Denominator H(t) in the tiny grammar: t, numbers, e, +, *, log, pow
    #[arg(long = "H")]
    h: String,
    #[arg(long = "N-max", default_value_t = 64)]
    n_max: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    inequality: String,
    /// α range lo:hi:step
    #[arg(long)]
    alpha: String,
    #[arg(long, default_value = "linear")]
    family: String,
    /// family-parameter range lo:hi:step
    #[arg(long)]
    a: String,
}

/// Versioned envelope around every machine-readable run.
#[derive(Serialize)]
struct RunManifest<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    params: BTreeMap<String, String>,
    reports: T,
    tool_version: &'a str,
    quadrature: &'a QuadratureConfig,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let mut cfg = QuadratureConfig::default();
    if let Ok(order) = std::env::var("FUNKINEQ_QUAD_ORDER") {
        match order.parse::<usize>() {
            Ok(n) if n >= 2 => cfg.order = n,
            _ => {
                eprintln!("FUNKINEQ_QUAD_ORDER must be an integer >= 2");
                return 2;
            }
        }
    }
    match cli.cmd {
        Cmd::Check(args) => cmd_check(args, &cfg),
        Cmd::Audit(args) => cmd_audit(args, &cfg),
        Cmd::Falsify(args) => cmd_falsify(args, &cfg),
        Cmd::Scan(args) => cmd_scan(args, &cfg),
    }
}

fn checker_params(args: &CheckArgs) -> CheckerParams {
    let mut p = CheckerParams {
        alpha: args.alpha,
        kappa: args.kappa,
        c_lsi: args.c_lsi,
        ..CheckerParams::default()
    };
    if let Some(beta) = args.beta {
        p.beta = beta;
    }
    if let Some(pp) = args.p {
        p.p = pp;
    }
    if let Some(c) = args.c_assumed {
        p.c_assumed = c;
    }
    if let Some(t) = args.t {
        p.t = t;
    }
    if let Some(x) = args.x {
        p.x = x;
    }
    if let Some(l) = args.lambda {
        p.lambda = l;
    }
    p
}

fn cmd_check(args: CheckArgs, cfg: &QuadratureConfig) -> i32 {
    let id = args.inequality_id.as_str();
    if !is_registered(id) {
        eprintln!(
            "unknown inequality id '{id}'; registered: {}",
            REGISTERED_IDS.join(" ")
        );
        return 2;
    }
    let params = checker_params(&args);
    // admissibility gates that are usage errors, not inequality failures
    if id == "bg" {
        if let Some(alpha) = params.alpha {
            if alpha <= params.c {
                eprintln!("alpha must exceed c={}", params.c);
                return 2;
            }
        }
    }
    let reports: Result<Vec<InequalityReport>, _> = match &args.family {
        None => run_default_suite(id, &params, cfg),
        Some(kind) if !is_discrete(id) => {
            let first = args.n.unwrap_or(args.a);
            family_member(kind, first, args.b)
                .and_then(|f| run_continuous_checker(id, &f, &params, cfg))
                .map(|r| vec![r])
        }
        Some(_) => {
            // discrete checkers run their own table-function suite
            run_default_suite(id, &params, cfg)
        }
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let mut manifest_params = BTreeMap::new();
    if let Some(f) = &args.family {
        manifest_params.insert("family".to_string(), f.clone());
    }
    for (k, v) in [
        ("alpha", args.alpha),
        ("beta", args.beta),
        ("kappa", args.kappa),
        ("p", args.p),
        ("c_assumed", args.c_assumed),
        ("t", args.t),
        ("x", args.x),
        ("lambda", args.lambda),
        ("c_lsi", args.c_lsi),
    ] {
        if let Some(v) = v {
            manifest_params.insert(k.to_string(), format!("{v}"));
        }
    }
    let all_ok = reports.iter().all(|r| r.satisfied);
    if args.json {
        print_json("check", manifest_params, &reports, cfg);
    } else if args.csv {
        print_reports_csv(&reports);
    } else {
        for r in &reports {
            println!(
                "{} [{}] lhs={:.6e} rhs={:.6e} margin={:.3e} {}{}",
                r.inequality_id,
                r.function_tag,
                r.lhs,
                r.rhs,
                r.margin,
                if r.satisfied { "PASS" } else { "FAIL" },
                if r.vacuous { " (vacuous)" } else { "" },
            );
        }
    }
    if all_ok {
        0
    } else {
        if !args.json && !args.csv {
            for r in reports.iter().filter(|r| !r.satisfied) {
                eprintln!("FAILED: {r:?}");
            }
        }
        1
    }
}

fn cmd_audit(args: AuditArgs, cfg: &QuadratureConfig) -> i32 {
    let entries: Vec<AuditEntry> = match funkineq_core::audit::run_audit(args.id.as_deref()) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    if args.json {
        print_json("audit", BTreeMap::new(), &entries, cfg);
    } else {
        for e in &entries {
            println!(
                "{:<14} {:<44} computed={:+.9e} claimed=[{}, {}] {}",
                e.id,
                e.description,
                e.computed,
                e.claimed_lo,
                e.claimed_hi,
                if e.pass { "PASS" } else { "FAIL" }
            );
        }
    }
    if entries.iter().all(|e| e.pass) {
        0
    } else {
        1
    }
}

fn cmd_falsify(args: FalsifyArgs, cfg: &QuadratureConfig) -> i32 {
    let h = match expr::parse(&args.h) {
        Ok(h) => h,
        Err(e) => {
            eprintln!("invalid H expression: {e}");
            return 2;
        }
    };
    let mut ns = Vec::new();
    let mut n = 2.0;
    while n <= args.n_max as f64 {
        ns.push(n);
        n *= 2.0;
    }
    let report = match funkineq_core::checkers::falsify_h(|t| h.eval(t), &ns, cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    if args.json {
        print_json(
            "falsify",
            BTreeMap::from([("H".to_string(), args.h.clone())]),
            &report,
            cfg,
        );
    } else {
        println!("N, lhs, rhs, gap");
        for row in &report.rows {
            println!("{}, {:.6}, {:.6}, {:.6}", row.n, row.lhs, row.rhs, row.gap);
        }
        println!(
            "strictly_increasing={} divergent={}",
            report.strictly_increasing, report.divergent
        );
    }
    0
}

fn cmd_scan(args: ScanArgs, cfg: &QuadratureConfig) -> i32 {
    if !is_registered(&args.inequality) || is_discrete(&args.inequality) {
        eprintln!("scan supports the continuous inequality ids");
        return 2;
    }
    let (alphas, params) = match (parse_range(&args.alpha), parse_range(&args.a)) {
        (Ok(a), Ok(p)) => (a, p),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("invalid range: {e}");
            return 2;
        }
    };
    let base = CheckerParams::default();
    let points = match scan::grid_scan(&args.inequality, &args.family, &alphas, &params, &base, cfg)
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    println!("inequality_id,alpha,family,family_param,lhs,rhs,margin,satisfied,vacuous");
    for p in &points {
        println!(
            "{},{},{},{},{},{},{},{},{}",
            p.report.inequality_id,
            p.alpha,
            args.family,
            p.family_param,
            p.report.lhs,
            p.report.rhs,
            p.report.margin,
            p.report.satisfied,
            p.report.vacuous
        );
    }
    if points.iter().all(|p| p.report.satisfied) {
        0
    } else {
        1
    }
}

fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => single
            .parse::<f64>()
            .map(|v| vec![v])
            .map_err(|_| format!("'{s}' is not a number")),
        [lo, hi, step] => {
            let (lo, hi, step) = (
                lo.parse::<f64>().map_err(|_| format!("bad lo in '{s}'"))?,
                hi.parse::<f64>().map_err(|_| format!("bad hi in '{s}'"))?,
                step.parse::<f64>()
                    .map_err(|_| format!("bad step in '{s}'"))?,
            );
            if step <= 0.0 || hi < lo {
                return Err(format!("range '{s}' must satisfy lo <= hi, step > 0"));
            }
            let mut out = Vec::new();
            let mut v = lo;
            while v <= hi + 1e-12 {
                out.push(v);
                v += step;
            }
            Ok(out)
        }
        _ => Err(format!("'{s}' is not lo:hi:step")),
    }
}

fn print_json<T: Serialize>(
    command: &str,
    params: BTreeMap<String, String>,
    reports: &T,
    cfg: &QuadratureConfig,
) {
    let manifest = RunManifest {
        schema: 1,
        command,
        params,
        reports,
        tool_version: env!("CARGO_PKG_VERSION"),
        quadrature: cfg,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&manifest).expect("serializable manifest")
    );
}

fn print_reports_csv(reports: &[InequalityReport]) {
    println!("inequality_id,lhs,rhs,margin,satisfied,vacuous,quadrature_error,function_tag,params");
    for r in reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "{},{},{},{},{},{},{},{},{}",
            r.inequality_id,
            r.lhs,
            r.rhs,
            r.margin,
            r.satisfied,
            r.vacuous,
            r.quadrature_error,
            r.function_tag,
            params.join(";")
        );
    }
}
