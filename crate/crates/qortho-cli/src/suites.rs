//! Verification suites behind `qortho verify`.
//!
//! Every suite is a fixed, deterministic list of checks. A check reports
//! the worst residual over its parameter grid, the threshold it must stay
//! below, and the number of cases evaluated. A check whose computation
//! fails outright is reported with an infinite residual and the error text.
//! Count-type checks (interlacing, monotonicity) report their number of
//! violations against a threshold of zero.

use qortho::families::{coeffs, laguerre_from_jacobi_limit_check, q_to_1_limit_check, FamilyId, Params};
use qortho::precision::{all_zero, max_abs_exact, rational, ExactRational};
use qortho::qcalc::{sobolev_constant, sobolev_op};
use qortho::qcore::Tolerances;
use qortho::recurrence::{recurrence_residual, recurrence_residual_poly};
use qortho::verify::{
    a_norm, eigen_qde_residual, eigen_qde_residual_poly, hyper_operator_residual, hyper_operator_residual_poly,
    integral_rep_residual, sobolev_inner, third_order_qde_residual, third_order_residual_poly,
};
use qortho::zeros::{compute_zeros, interlace_check, sobolev_laguerre_link_residual, Method, DEFAULT_IM_TOL};
use qortho::Result;
use rayon::prelude::*;

use crate::config::Suite;
use crate::output::{Cell, Report};

/// The five basic families with a hypergeometric representation.
const BASIC: [FamilyId; 5] = [
    FamilyId::GenLittleQJacobi,
    FamilyId::GenQLaguerre,
    FamilyId::GenQBessel,
    FamilyId::ExtLittleQLaguerre,
    FamilyId::GenStieltjesWigert,
];

/// The five `c = 0` families with a second-order eigenvalue equation.
const CORES: [FamilyId; 5] = [
    FamilyId::LittleQJacobi,
    FamilyId::QLaguerre,
    FamilyId::GenQBessel,
    FamilyId::ExtLittleQLaguerre,
    FamilyId::GenStieltjesWigert,
];

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub worst: f64,
    pub threshold: f64,
    pub cases: usize,
    pub error: Option<String>,
}

impl Check {
    /// `true` when the worst residual is within the threshold.
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.worst <= self.threshold
    }
}

/// Running maximum over a grid of residuals.
struct Worst {
    value: f64,
    cases: usize,
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, cases: 0 }
    }

    fn add(&mut self, r: f64) {
        self.cases += 1;
        // NaN must surface as a failure.
        self.value = if r.is_nan() || self.value.is_nan() { f64::NAN } else { self.value.max(r) };
    }

    fn add_violation(&mut self, violated: bool) {
        self.add(if violated { self.value + 1.0 } else { self.value });
    }
}

fn check(suite: &'static str, name: &str, threshold: f64, run: impl FnOnce(&mut Worst) -> Result<()>) -> Check {
    let mut w = Worst::new();
    let error = run(&mut w).err().map(|e| e.to_string());
    let worst = if error.is_some() || w.value.is_nan() { f64::INFINITY } else { w.value };
    Check { suite, name: name.to_string(), worst, threshold, cases: w.cases, error }
}

fn p(q: f64, g: f64, x: f64, c: f64) -> Params {
    Params::new(q, g, x, c).expect("suite parameters are admissible")
}

/// Non-integer floating grid shared by the identity suites.
fn float_grid(cs: &[f64]) -> Vec<Params> {
    let mut out = Vec::new();
    for &q in &[0.3, 0.5, 0.9] {
        for &g in &[-0.5, 0.1, 0.9] {
            for &x in &[-0.5, 0.1, 0.9] {
                for &c in cs {
                    out.push(p(q, g, x, c));
                }
            }
        }
    }
    out
}

/// Integer grid for exact-rational checks: `q = 1/2`, `gamma, xi, c in {0, 1, 2}`.
fn exact_grid() -> Vec<Params<ExactRational>> {
    let mut out = Vec::new();
    for g in 0..3 {
        for x in 0..3 {
            for c in 0..3 {
                out.push(Params::new_exact(rational(1, 2), g, x, c).expect("integer grid is admissible"));
            }
        }
    }
    out
}

/// Size of an exact residual; never rounds a nonzero rational to zero.
fn exact_residual(v: &[ExactRational]) -> f64 {
    if all_zero(v) {
        0.0
    } else {
        max_abs_exact(v).max(f64::MIN_POSITIVE)
    }
}

const Z_GRID: [f64; 5] = [0.0, 0.25, 0.5, 1.0, 2.0];

fn recurrence_suite() -> Vec<Check> {
    let s = "recurrence";
    vec![
        check(s, "four-term residual, floating grid", 1e-9, |w| {
            for pr in float_grid(&[1.0, 2.0]) {
                for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                    for n in 0..=12 {
                        // gamma + xi = -1 makes the degree-0 and degree-1 rows vanish.
                        if fam == FamilyId::GenLittleQJacobi && pr.gamma + pr.xi == -1.0 && n <= 1 {
                            continue;
                        }
                        for &z in &Z_GRID {
                            w.add(recurrence_residual(fam, n, &pr, z)?);
                        }
                    }
                }
            }
            Ok(())
        }),
        check(s, "four-term residual, exact rationals", 0.0, |w| {
            for pr in exact_grid().into_iter().filter(|pr| pr.c >= 1.0) {
                for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                    for n in 0..=8 {
                        w.add(exact_residual(&recurrence_residual_poly(fam, n, &pr)?.coeffs));
                    }
                }
            }
            Ok(())
        }),
        check(s, "c = 1 link to q-Laguerre", 1e-12, |w| {
            for &q in &[0.5, 0.9] {
                for &g in &[0.1, 0.5] {
                    for n in 0..=10 {
                        for &z in &[0.0, 0.3, 0.7, 1.7, 4.0] {
                            w.add(sobolev_laguerre_link_residual(n, &p(q, g, 0.0, 1.0), z)?.link);
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn qde3_suite() -> Vec<Check> {
    let s = "qde3";
    vec![
        check(s, "third-order residual, floating grid", 1e-10, |w| {
            for pr in float_grid(&[0.5, 1.0, 2.0]) {
                for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                    for n in 0..=8 {
                        for &z in &Z_GRID {
                            w.add(third_order_qde_residual(fam, n, &pr, z)?);
                        }
                    }
                }
            }
            Ok(())
        }),
        check(s, "third-order residual, exact rationals", 0.0, |w| {
            for pr in exact_grid().into_iter().filter(|pr| pr.c >= 1.0) {
                for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                    for n in 0..=6 {
                        w.add(exact_residual(&third_order_residual_poly(fam, n, &pr)?.coeffs));
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn hyper_op_suite() -> Vec<Check> {
    let s = "hyper-op";
    vec![
        check(s, "operator equation, floating grid", 1e-10, |w| {
            for pr in float_grid(&[0.0, 0.5, 1.0, 2.0]) {
                for fam in BASIC {
                    for n in 0..=8 {
                        w.add(hyper_operator_residual(fam, n, &pr)?);
                    }
                }
            }
            Ok(())
        }),
        check(s, "operator equation, exact rationals", 0.0, |w| {
            for pr in exact_grid() {
                for fam in BASIC {
                    for n in 0..=8 {
                        w.add(exact_residual(&hyper_operator_residual_poly(fam, n, &pr)?.coeffs));
                    }
                }
            }
            Ok(())
        }),
        check(s, "Sobolev reduction, exact rationals", 0.0, |w| {
            for pr in exact_grid().into_iter().filter(|pr| pr.c >= 1.0) {
                let c = pr.c as usize;
                let k = sobolev_constant(&pr.q, c);
                for (gen, core) in
                    [(FamilyId::GenLittleQJacobi, FamilyId::LittleQJacobi), (FamilyId::GenQLaguerre, FamilyId::QLaguerre)]
                {
                    for n in 0..=8 {
                        let image = sobolev_op(&coeffs(gen, n, &pr)?, c, &pr.q)?;
                        let target = coeffs(core, n, &pr.with_c(0.0))?.scale(&k);
                        w.add(exact_residual(&image.sub(&target).coeffs));
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn eigen_suite() -> Vec<Check> {
    let s = "eigen-qde";
    vec![
        check(s, "eigenvalue equations, floating grid", 1e-11, |w| {
            for pr in float_grid(&[0.0]) {
                for fam in CORES {
                    for n in 0..=10 {
                        w.add(eigen_qde_residual(fam, n, &pr)?);
                    }
                }
            }
            Ok(())
        }),
        check(s, "eigenvalue equations, exact rationals", 0.0, |w| {
            for pr in exact_grid().into_iter().filter(|pr| pr.c == 0.0) {
                for fam in CORES {
                    for n in 0..=8 {
                        w.add(exact_residual(&eigen_qde_residual_poly(fam, n, &pr)?.coeffs));
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Gram matrix of the Sobolev inner product for degrees `0..size`.
fn gram(fam: FamilyId, pr: &Params, size: usize) -> Result<Vec<Vec<f64>>> {
    let tol = Tolerances::default();
    (0..size).map(|n| (0..size).map(|m| sobolev_inner(fam, n, m, pr, tol)).collect()).collect()
}

const DISCRETE: [FamilyId; 3] = [FamilyId::GenLittleQJacobi, FamilyId::GenQBessel, FamilyId::ExtLittleQLaguerre];
const HALF_LINE: [FamilyId; 2] = [FamilyId::GenQLaguerre, FamilyId::GenStieltjesWigert];

fn discrete_params() -> Vec<Params> {
    let mut v = Vec::new();
    for &q in &[0.5, 0.9] {
        for &(g, x) in &[(0.1, 0.2), (0.5, 0.5), (-0.5, 1.2)] {
            for &c in &[1.0, 2.0] {
                v.push(p(q, g, x, c));
            }
        }
    }
    v
}

fn half_line_params() -> Vec<Params> {
    let mut v = Vec::new();
    for &q in &[0.5, 0.9] {
        for &g in &[0.3, -0.4, 1.6] {
            for &c in &[1.0, 2.0] {
                v.push(p(q, g, 0.0, c));
            }
        }
    }
    v
}

fn orthogonality_suite() -> Vec<Check> {
    let s = "orthogonality";
    let off = |families: &'static [FamilyId], grid: Vec<Params>| {
        move |w: &mut Worst| -> Result<()> {
            for &fam in families {
                for pr in &grid {
                    let g = gram(fam, pr, 7)?;
                    for n in 0..7 {
                        for m in 0..7 {
                            if n != m {
                                w.add(g[n][m].abs() / (g[n][n] * g[m][m]).sqrt());
                            }
                        }
                    }
                }
            }
            Ok(())
        }
    };
    vec![
        check(s, "discrete measures, normalized off-diagonal", 1e-7, off(&DISCRETE, discrete_params())),
        check(s, "half-line measures, normalized off-diagonal", 1e-7, off(&HALF_LINE, half_line_params())),
    ]
}

fn norms_suite() -> Vec<Check> {
    let s = "norms";
    vec![
        check(s, "discrete measures, relative diagonal error", 1e-5, |w| {
            for fam in DISCRETE {
                for pr in discrete_params() {
                    for n in 0..7 {
                        let inner = sobolev_inner(fam, n, n, &pr, Tolerances::default())?;
                        w.add((inner / a_norm(fam, n, &pr)? - 1.0).abs());
                    }
                }
            }
            Ok(())
        }),
        check(s, "half-line measures, variation of diagonal ratio", 1e-5, |w| {
            for fam in HALF_LINE {
                for pr in half_line_params() {
                    let ratio = |n| -> Result<f64> {
                        Ok(sobolev_inner(fam, n, n, &pr, Tolerances::default())? / a_norm(fam, n, &pr)?)
                    };
                    let r0 = ratio(0)?;
                    for n in 1..7 {
                        w.add((ratio(n)? / r0 - 1.0).abs());
                    }
                }
            }
            Ok(())
        }),
    ]
}

fn integral_rep_suite() -> Vec<Check> {
    let s = "integral-rep";
    let run = |fam: FamilyId, grid: &'static [f64]| {
        move |w: &mut Worst| -> Result<()> {
            for &q in &[0.3, 0.5, 0.9] {
                for &(g, x) in &[(0.1, 0.2), (1.5, -0.5)] {
                    for &c in &[0.5, 1.0, 2.0, 3.0] {
                        let pr = p(q, g, x, c);
                        for n in 0..=8 {
                            for &z in grid {
                                w.add(integral_rep_residual(fam, n, &pr, z)?);
                            }
                        }
                    }
                }
            }
            Ok(())
        }
    };
    vec![
        check(s, "little q-Jacobi from q-beta integral", 1e-8, run(FamilyId::GenLittleQJacobi, &[0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0])),
        check(s, "q-Laguerre from q-beta integral", 1e-8, run(FamilyId::GenQLaguerre, &[0.0, 0.5, 1.0, 2.0, 4.0, 8.0])),
    ]
}

fn limits_suite() -> Vec<Check> {
    let s = "limits";
    vec![
        check(s, "little q-Jacobi -> q-Laguerre at b = -1e10", 1e-6, |w| {
            for &(q, g, c) in &[(0.5, 0.3, 1.0), (0.9, 0.1, 2.0)] {
                for n in 1..=4 {
                    w.add(laguerre_from_jacobi_limit_check(n, &p(q, g, 0.0, c), &[-1e10])?[0]);
                }
            }
            Ok(())
        }),
        check(s, "little q-Jacobi -> q-Laguerre converges like 1/b (rate error)", 1e-2, |w| {
            for &(q, g, c) in &[(0.5, 0.3, 1.0), (0.9, 0.1, 2.0)] {
                for n in 1..=4 {
                    let dev = laguerre_from_jacobi_limit_check(n, &p(q, g, 0.0, c), &[-1e6, -1e8])?;
                    w.add((dev[1] / dev[0] * 1e2 - 1.0).abs());
                }
            }
            Ok(())
        }),
        check(s, "q -> 1 relative deviation at q = 0.9999", 1e-2, |w| {
            for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                for n in 1..=4 {
                    w.add(q_to_1_limit_check(fam, n, &p(0.5, 0.1, 0.2, 1.0), &[0.9999])?[0]);
                }
            }
            Ok(())
        }),
        check(s, "q -> 1 deviation decreases monotonically (violations)", 0.0, |w| {
            for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                let dev = q_to_1_limit_check(fam, 4, &p(0.5, 0.1, 0.2, 1.0), &[0.9, 0.99, 0.999, 0.9999])?;
                for pair in dev.windows(2) {
                    w.add_violation(pair[1] >= pair[0]);
                }
            }
            Ok(())
        }),
    ]
}

fn interlacing_suite() -> Vec<Check> {
    let s = "interlacing";
    vec![
        check(s, "q-Laguerre consecutive degrees (violations)", 0.0, |w| {
            for pr in [p(0.9, 0.5, 0.0, 1.0), p(0.5, 0.1, 0.0, 2.0), p(0.7, -0.5, 0.0, 1.0)] {
                for n in 1..10 {
                    let a = compute_zeros(FamilyId::GenQLaguerre, n, &pr, Method::Both, DEFAULT_IM_TOL)?;
                    let b = compute_zeros(FamilyId::GenQLaguerre, n + 1, &pr, Method::Both, DEFAULT_IM_TOL)?;
                    let real = a.real_count() == n && b.real_count() == n + 1;
                    w.add_violation(!real || !interlace_check(&a.real_zeros(), &b.real_zeros())?.holds);
                }
            }
            Ok(())
        }),
        check(s, "ordinary vs generalized q-Laguerre (violations)", 0.0, |w| {
            let pr = p(0.9, 0.1, 0.0, 1.0);
            for n in 1..9 {
                let ord = compute_zeros(FamilyId::QLaguerre, n, &pr.with_c(0.0), Method::Aberth, DEFAULT_IM_TOL)?;
                let gen = compute_zeros(FamilyId::GenQLaguerre, n, &pr, Method::Both, DEFAULT_IM_TOL)?;
                w.add_violation(!interlace_check(&ord.real_zeros(), &gen.real_zeros())?.holds);
            }
            Ok(())
        }),
        check(s, "pencil vs Aberth zeros", 1e-6, |w| {
            for pr in float_grid(&[1.0, 2.0]) {
                for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                    for n in 1..=12 {
                        if let Some(a) = compute_zeros(fam, n, &pr, Method::Both, DEFAULT_IM_TOL)?.agreement {
                            w.add(a);
                        }
                    }
                }
            }
            Ok(())
        }),
    ]
}

/// Runs one suite.
pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Recurrence => recurrence_suite(),
        Suite::Qde3 => qde3_suite(),
        Suite::HyperOp => hyper_op_suite(),
        Suite::EigenQde => eigen_suite(),
        Suite::Orthogonality => orthogonality_suite(),
        Suite::Norms => norms_suite(),
        Suite::IntegralRep => integral_rep_suite(),
        Suite::Limits => limits_suite(),
        Suite::Interlacing => interlacing_suite(),
    }
}

/// `verify`: the named suite, or all of them, as a pass/fail report.
pub fn verify(suite: Option<Suite>) -> Report {
    let suites: Vec<Suite> = suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]);
    let checks: Vec<Check> = suites.par_iter().flat_map_iter(|&s| run_suite(s)).collect();
    let mut r = Report::new(&["suite", "check", "worst", "threshold", "cases", "passed", "error"]);
    r.config("command", "verify");
    r.config("suites", suites.iter().map(|s| s.name()).collect::<Vec<_>>());
    for c in &checks {
        r.push(vec![
            c.suite.into(),
            c.name.clone().into(),
            c.worst.into(),
            c.threshold.into(),
            c.cases.into(),
            c.passed().into(),
            c.error.clone().map_or(Cell::Empty, Cell::Text),
        ]);
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    r.diag("checks", checks.len());
    r.diag("failed", failed);
    r.failed = failed > 0;
    r
}
