//! Residual verification of q-difference equations and Sobolev orthogonality.
//!
//! Every difference-equation check runs in the coefficient domain: the
//! operators act exactly on monomial coefficient vectors, so an identity
//! becomes finitely many coefficient equalities. The `*_poly` variants are
//! generic over [`Scalar`] and return the residual polynomial itself, which
//! is identically zero in exact-rational mode; the `f64` variants return a
//! normalized residual.
//!
//! Orthogonality is checked by summing the Sobolev images
//! `D_q^c (z^c y_n)` against the family measure: a discrete lattice measure
//! on `{q^k}` for the little q-Jacobi, q-Bessel and little q-Laguerre
//! families, and a bilateral Jackson sum over `{q^k : k in Z}` for the
//! q-Laguerre and Stieltjes–Wigert families.

use std::f64::consts::PI;

use crate::error::{QError, Result};
use crate::families::{coeffs, make_spec, FamilyId, FamilySpec, Params};
use crate::hyper::{phi_coeffs, HParam, Polynomial};
use crate::precision::{comp_sum, CompensatedAccumulator, Scalar};
use crate::qcalc::{delta_b, delta_param, dq_poly, dq_poly_pow, sobolev_constant, sobolev_op};
use crate::qcore::{poch_qpow, q_pochhammer_inf, q_pochhammer_inf_qpow, QBase, Tolerances};

fn poly_max_abs<T: Scalar>(p: &Polynomial<T>) -> f64 {
    p.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
}

fn relative_to<T: Scalar>(residual: &Polynomial<T>, parts: &[&Polynomial<T>]) -> f64 {
    let scale = parts.iter().map(|p| poly_max_abs(p)).fold(0.0, f64::max);
    if scale == 0.0 {
        0.0
    } else {
        poly_max_abs(residual) / scale
    }
}

fn q_num<T: Scalar>(q: &T, a: f64) -> T {
    T::one_minus_q_pow(q, a) / T::one_minus_q_pow(q, 1.0)
}

fn basic_spec<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<(crate::hyper::PhiSpec<T>, T)> {
    match make_spec(family, n, p)? {
        FamilySpec::Basic { spec, z_scale } => Ok((spec, z_scale)),
        FamilySpec::Classical { .. } => Err(QError::Domain(format!("{family} is not a basic hypergeometric family"))),
    }
}

/// Both sides of the hypergeometric-type operator equation
/// `(Delta Delta_{b_1/q} ... Delta_{b_p/q}) y(z) = s z (Delta_{a_1} ... Delta_{a_m}) y(q^{1+p-m} z)`
/// for `y(z) = phi(a; b; q, s z)`, as coefficient vectors.
///
/// `Delta_b f(z) = b f(qz) - f(z)`. For the little q-Jacobi family this is
/// `(Delta Delta_{q^g} Delta_{q^c}) y = q z (Delta_{q^{-n}} Delta_{q^{n+g+xi+1}} Delta_q) y`;
/// for the q-Laguerre family the right-hand side is evaluated at `qz` and
/// carries the argument scale `-q^{n+g+1}`.
pub fn hyper_operator_sides<T: Scalar>(
    family: FamilyId,
    n: usize,
    p: &Params<T>,
) -> Result<(Polynomial<T>, Polynomial<T>)> {
    let (spec, z_scale) = basic_spec(family, n, p)?;
    let q = &p.q;
    let y = phi_coeffs(&spec, q, &z_scale)?;
    let mut lhs = delta_b(&y, &T::one(), q);
    for b in &spec.lower {
        let b_over_q = match b {
            HParam::QPow { neg, exp } => HParam::QPow { neg: *neg, exp: exp - 1.0 },
            HParam::Value(v) => HParam::Value(v.clone() / q.clone()),
        };
        lhs = delta_param(&lhs, &b_over_q, q);
    }
    let mut rhs = y.dilate(&T::q_pow(q, spec.power_exponent() as f64));
    for a in &spec.upper {
        rhs = delta_param(&rhs, a, q);
    }
    Ok((lhs, rhs.shift_up(1).scale(&z_scale)))
}

/// `LHS - RHS` of [`hyper_operator_sides`]; identically zero.
pub fn hyper_operator_residual_poly<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<Polynomial<T>> {
    let (l, r) = hyper_operator_sides(family, n, p)?;
    Ok(l.sub(&r))
}

/// Largest coefficient of `LHS - RHS`, relative to the largest coefficient of either side.
pub fn hyper_operator_residual(family: FamilyId, n: usize, p: &Params) -> Result<f64> {
    let (l, r) = hyper_operator_sides(family, n, p)?;
    Ok(relative_to(&l.sub(&r), &[&l, &r]))
}

/// Coefficients `k_0 .. k_3` (polynomials in `z`) of the third-order equation
/// `sum_j k_j(z) D_q^j y(z) = 0` satisfied by the generalized little
/// q-Jacobi and q-Laguerre polynomials.
///
/// They follow from the operator equation of [`hyper_operator_sides`] after
/// rewriting `Delta_b` through `D_q`; with `N = q^n`, `S = q^{g+xi}`,
/// `G = q^g`, `C = q^c`.
pub fn third_order_coefficients<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<[Polynomial<T>; 4]> {
    let q = &p.q;
    let (nf, g, c) = (n as f64, p.gamma, p.c);
    let qp = |e: f64| T::q_pow(q, e);
    let two = T::from_i64(2);
    let zero = T::zero;
    // Shared by both families.
    let k2_lin = qp(c + g + 4.0) - qp(c + g + 2.0) - qp(c + 2.0) + qp(c + 1.0) - qp(g + 2.0) + qp(g + 1.0);
    let k3_quad = qp(c + g + 5.0) - two.clone() * qp(c + g + 4.0) + qp(c + g + 3.0);
    match family {
        FamilyId::GenLittleQJacobi | FamilyId::LittleQJacobi => {
            let s = g + p.xi;
            let k0 = qp(nf + s + 2.0) - qp(s + 2.0) - qp(1.0) + qp(1.0 - nf);
            let k1_0 = qp(c + g + 2.0) - qp(c + 1.0) - qp(g + 1.0) + T::one();
            let k1_1 = qp(nf + s + 4.0) + qp(nf + s + 3.0) - qp(nf + s + 2.0) - qp(s + 5.0) - qp(s + 4.0)
                + qp(s + 2.0)
                - qp(2.0)
                + qp(3.0 - nf)
                + qp(2.0 - nf)
                - qp(1.0 - nf);
            let k2_2 = qp(nf + s + 5.0) - qp(nf + s + 4.0) - qp(s + 7.0) + two.clone() * qp(s + 4.0) - qp(s + 3.0)
                + qp(4.0 - nf)
                - qp(3.0 - nf);
            let k3_3 = -qp(s + 8.0) + two * qp(s + 7.0) - qp(s + 6.0);
            Ok([
                Polynomial::new(vec![k0]),
                Polynomial::new(vec![k1_0, k1_1]),
                Polynomial::new(vec![zero(), k2_lin, k2_2]),
                Polynomial::new(vec![zero(), zero(), k3_quad, k3_3]),
            ])
        }
        FamilyId::GenQLaguerre | FamilyId::QLaguerre => {
            let k0 = qp(g + 1.0) - qp(g + nf + 1.0);
            let k1_0 = T::one_minus_q_pow(q, c + 1.0) * T::one_minus_q_pow(q, g + 1.0);
            let q2 = qp(2.0);
            let q3 = qp(3.0);
            let k1_1 = qp(g + 1.0)
                * (-(qp(nf) * (q2.clone() + q.clone() - T::one())) + q3 + q2 - T::one());
            let k2_2 = -qp(g + nf + 4.0) + qp(g + nf + 3.0) + qp(g + 6.0) - two.clone() * qp(g + 3.0) + qp(g + 2.0);
            let k3_3 = qp(g + 7.0) - two * qp(g + 6.0) + qp(g + 5.0);
            Ok([
                Polynomial::new(vec![k0]),
                Polynomial::new(vec![k1_0, k1_1]),
                Polynomial::new(vec![zero(), k2_lin, k2_2]),
                Polynomial::new(vec![zero(), zero(), k3_quad, k3_3]),
            ])
        }
        other => Err(QError::Domain(format!("no third-order equation is implemented for {other}"))),
    }
}

/// `sum_j k_j(z) D_q^j y(z)` as a polynomial; identically zero.
pub fn third_order_residual_poly<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<Polynomial<T>> {
    let k = third_order_coefficients(family, n, p)?;
    let y = coeffs(family, n, p)?;
    let mut out = Polynomial::zero();
    for (j, kj) in k.iter().enumerate() {
        out = out.add(&kj.mul(&dq_poly_pow(&y, &p.q, j)));
    }
    Ok(out)
}

/// Residual of the third-order equation at `z`, divided by the evaluation
/// scale `sum_j |k_j|(|z|) |D_q^j y|(|z|)` (each factor taken with absolute
/// coefficients). Near the end of the lattice the terms cancel to many
/// orders below their coefficients, so the term values themselves are not a
/// meaningful scale.
pub fn third_order_qde_residual(family: FamilyId, n: usize, p: &Params, z: f64) -> Result<f64> {
    let k = third_order_coefficients(family, n, p)?;
    let y = coeffs(family, n, p)?;
    let mut terms = Vec::with_capacity(4);
    let mut scale = 0.0;
    for (j, kj) in k.iter().enumerate() {
        let dy = dq_poly_pow(&y, &p.q, j);
        terms.push(kj.eval_accurate(z) * dy.eval_accurate(z));
        scale += kj.abs_scale(z) * dy.abs_scale(z);
    }
    Ok(if scale == 0.0 { 0.0 } else { comp_sum(&terms).abs() / scale })
}

/// Second-order eigenvalue equation
/// `l2(z) D_q^2 p_n(z) + l1(z) D_q p_n(z) = lambda_n p_n(qz)` of a classical core.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenEqSpec<T> {
    /// Coefficient of `D_q^2`.
    pub l2: Polynomial<T>,
    /// Coefficient of `D_q`.
    pub l1: Polynomial<T>,
    /// Coefficient of the undifferentiated term (zero for all five cores).
    pub l0: Polynomial<T>,
    /// Eigenvalue.
    pub lambda: T,
    /// `true` when the eigenvalue side is evaluated at `qz` (all five cores).
    pub rhs_at_qz: bool,
}

/// The classical core (`c = 0`) underlying a family.
///
/// Little q-Jacobi, q-Laguerre, q-Bessel, little q-Laguerre and
/// Stieltjes–Wigert; the generalized families map to their own `c = 0`
/// member.
pub fn eigen_spec<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<EigenEqSpec<T>> {
    let q = &p.q;
    let (g, x, nf) = (p.gamma, p.xi, n as f64);
    let qp = |e: f64| T::q_pow(q, e);
    let one = T::one;
    let q_minus_one = -T::one_minus_q_pow(q, 1.0);
    let one_minus_q = T::one_minus_q_pow(q, 1.0);
    let zero = T::zero;
    let nq = q_num(q, nf);
    let (l2, l1, lambda) = match family {
        FamilyId::LittleQJacobi | FamilyId::GenLittleQJacobi => {
            let s = g + x;
            let l2 = vec![zero(), -qp(g - 1.0), qp(s + 1.0)];
            // l1 = (1-q^{g+1})/(q^2(q-1)) - (1-q^{s+2})/(q(q-1)) z; the opposite
            // overall sign leaves a residual of order one.
            let l1 = vec![
                T::one_minus_q_pow(q, g + 1.0) / (qp(2.0) * q_minus_one.clone()),
                -(T::one_minus_q_pow(q, s + 2.0) / (q.clone() * q_minus_one)),
            ];
            let lambda = nq / qp(nf)
                * (qp(s + 1.0) * q_num(q, nf - 1.0) + T::one_minus_q_pow(q, s + 2.0) / (q.clone() * one_minus_q));
            (l2, l1, lambda)
        }
        FamilyId::QLaguerre | FamilyId::GenQLaguerre => {
            let l2 = vec![zero(), one(), q.clone()];
            let l1 = vec![q_num(q, g + 1.0) / qp(g + 1.0), q.clone() / q_minus_one.clone()];
            (l2, l1, nq / q_minus_one)
        }
        FamilyId::GenQBessel => {
            let l2 = vec![zero(), zero(), qp(x)];
            let l1 = vec![
                one() / (qp(2.0) * one_minus_q.clone()),
                (one() + qp(x + 1.0)) / (q.clone() * q_minus_one),
            ];
            let lambda = -(nq * (one() + qp(nf + x)) / (qp(nf + 1.0) * one_minus_q));
            (l2, l1, lambda)
        }
        FamilyId::ExtLittleQLaguerre => {
            let l2 = vec![zero(), qp(g)];
            let l1 = vec![q_num(q, g + 1.0) / q.clone(), one() / q_minus_one];
            (l2, l1, -(nq / (qp(nf) * one_minus_q)))
        }
        FamilyId::GenStieltjesWigert => {
            let l2 = vec![zero(), zero(), one()];
            let l1 = vec![one() / (qp(2.0) * one_minus_q.clone()), one() / q_minus_one];
            (l2, l1, -(nq / (q.clone() * one_minus_q)))
        }
        other => return Err(QError::Domain(format!("{other} has no eigenvalue equation here"))),
    };
    Ok(EigenEqSpec {
        l2: Polynomial::new(l2),
        l1: Polynomial::new(l1),
        l0: Polynomial::zero(),
        lambda,
        rhs_at_qz: true,
    })
}

fn core_family(family: FamilyId) -> FamilyId {
    match family {
        FamilyId::GenLittleQJacobi => FamilyId::LittleQJacobi,
        FamilyId::GenQLaguerre => FamilyId::QLaguerre,
        other => other,
    }
}

fn eigen_terms<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<[Polynomial<T>; 3]> {
    let spec = eigen_spec(family, n, p)?;
    let core = p.with_c(0.0);
    let y = coeffs(core_family(family), n, &core)?;
    let d1 = dq_poly(&y, &p.q);
    let d2 = dq_poly(&d1, &p.q);
    let at = if spec.rhs_at_qz { y.dilate(&p.q) } else { y.clone() };
    Ok([
        spec.l2.mul(&d2),
        spec.l1.mul(&d1).add(&spec.l0.mul(&y)),
        at.scale(&-spec.lambda),
    ])
}

/// `l2 D^2 p_n + l1 D p_n - lambda_n p_n(q.)` for the `c = 0` core of `family`.
pub fn eigen_qde_residual_poly<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<Polynomial<T>> {
    let [a, b, c] = eigen_terms(family, n, p)?;
    Ok(a.add(&b).add(&c))
}

/// Largest coefficient of the eigenvalue-equation residual relative to the
/// largest coefficient of its three terms.
pub fn eigen_qde_residual(family: FamilyId, n: usize, p: &Params) -> Result<f64> {
    let [a, b, c] = eigen_terms(family, n, p)?;
    Ok(relative_to(&a.add(&b).add(&c), &[&a, &b, &c]))
}

/// Kind of measure a family is orthogonal against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    /// Point masses `w_k` at `z = q^k`, `k >= 0`.
    DiscreteLattice,
    /// `(1-q) sum_{k in Z} q^k w(q^k) f(q^k)` with a density `w`.
    JacksonHalfLine,
}

/// Orthogonality measure of a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    pub family: FamilyId,
    pub kind: MeasureKind,
    pub q: f64,
    pub gamma: f64,
    pub xi: f64,
    pub tol: Tolerances,
}

impl MeasureSpec {
    /// Measure of `family` at `p`.
    ///
    /// * little q-Jacobi: `w_k = (q^{xi+1};q)_k / (q;q)_k q^{(g+1)k}`;
    /// * q-Bessel: `w_k = q^{xi k} q^{k(k+1)/2} / (q;q)_k`;
    /// * little q-Laguerre: `w_k = q^{(g+1)k} / (q;q)_k`;
    /// * q-Laguerre: `w(z) = z^g / (-z;q)_inf`;
    /// * Stieltjes–Wigert: `w(z) = 1 / ((-z;q)_inf (-q/z;q)_inf)`.
    pub fn for_family(family: FamilyId, p: &Params, tol: Tolerances) -> Result<Self> {
        let kind = match core_family(family) {
            FamilyId::LittleQJacobi | FamilyId::GenQBessel | FamilyId::ExtLittleQLaguerre => MeasureKind::DiscreteLattice,
            FamilyId::QLaguerre | FamilyId::GenStieltjesWigert => MeasureKind::JacksonHalfLine,
            other => return Err(QError::Domain(format!("{other} has no orthogonality measure here"))),
        };
        Ok(MeasureSpec { family: core_family(family), kind, q: p.q, gamma: p.gamma, xi: p.xi, tol })
    }

    /// Ratio `w_{k+1} / w_k` of a discrete measure (`w_0 = 1`).
    fn step(&self, k: usize) -> f64 {
        let q = self.q;
        let k1 = (k + 1) as f64;
        let denom = f64::one_minus_q_pow(&q, k1);
        match self.family {
            FamilyId::LittleQJacobi => {
                f64::one_minus_q_pow(&q, self.xi + 1.0 + k as f64) / denom * q.powf(self.gamma + 1.0)
            }
            FamilyId::GenQBessel => q.powf(self.xi) * q.powf(k1) / denom,
            _ => q.powf(self.gamma + 1.0) / denom,
        }
    }

    /// Discrete weights `w_0, ..., w_{count-1}`.
    pub fn weights(&self, count: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(count);
        let mut w = 1.0;
        for k in 0..count {
            out.push(w);
            w *= self.step(k);
        }
        out
    }

    /// `ln w(z)` of a half-line density at `z > 0`.
    pub fn ln_density(&self, z: f64) -> f64 {
        let q = self.q;
        let ln_poch = |a: f64| {
            // ln (-a;q)_inf = sum_j ln(1 + a q^j)
            let mut s = 0.0;
            let mut t = a;
            while t > 1e-18 {
                s += t.ln_1p();
                t *= q;
            }
            s
        };
        match self.family {
            FamilyId::QLaguerre => self.gamma * z.ln() - ln_poch(z),
            _ => -ln_poch(z) - ln_poch(q / z),
        }
    }
}

/// Sign and natural logarithm of `|p(z)|` for `z > 0`, without overflow.
fn ln_abs_poly(p: &Polynomial<f64>, z: f64) -> (f64, f64) {
    if z <= 1.0 {
        let v = p.eval_accurate(z);
        return (v.signum(), v.abs().ln());
    }
    // p(z) = z^d sum_j a_{d-j} z^{-j}
    let d = p.degree();
    let rev = Polynomial::new(p.coeffs.iter().rev().cloned().collect());
    let v = rev.eval_accurate(1.0 / z);
    (v.signum(), d as f64 * z.ln() + v.abs().ln())
}

/// Sobolev image `D_q^c (z^c y)`; the identity for `c = 0`.
fn sobolev_image(y: &Polynomial<f64>, c: f64, q: f64) -> Result<Polynomial<f64>> {
    if c.fract() != 0.0 || c < 0.0 {
        return Err(QError::Domain(format!("Sobolev inner products need an integer c >= 0, got {c}")));
    }
    if c == 0.0 {
        Ok(y.clone())
    } else {
        sobolev_op(y, c as usize, &q)
    }
}

/// Sum of `terms(k)` over consecutive `k` until `CONSECUTIVE` terms in a row
/// fall below `tol` times the accumulated absolute sum.
fn tail_sum<F: FnMut(i64) -> f64>(
    mut term: F,
    ks: impl Iterator<Item = i64>,
    tol: Tolerances,
    acc: &mut CompensatedAccumulator,
    abs_sum: &mut f64,
) -> Result<()> {
    const CONSECUTIVE: usize = 5;
    let mut small = 0;
    for (i, k) in ks.enumerate() {
        if i >= tol.max_terms {
            return Err(QError::Truncation { max_terms: tol.max_terms });
        }
        let t = term(k);
        if !t.is_finite() {
            return Err(QError::Divergence { terms: i + 1 });
        }
        acc.add(t);
        *abs_sum += t.abs();
        if t.abs() <= tol.series_tol * *abs_sum {
            small += 1;
            if small >= CONSECUTIVE {
                return Ok(());
            }
        } else {
            small = 0;
        }
    }
    Err(QError::Truncation { max_terms: tol.max_terms })
}

/// Sobolev inner product `<y_n, y_m>_S = integral D_q^c(z^c y_n) D_q^c(z^c y_m) dmu`.
///
/// Discrete lattices are summed until the terms fall below
/// `tol.series_tol` relative to the accumulated absolute sum; half-line
/// families are summed over `k in Z` in both directions with the same rule,
/// with the density evaluated in logarithms to avoid overflow.
pub fn sobolev_inner(family: FamilyId, n: usize, m: usize, p: &Params, tol: Tolerances) -> Result<f64> {
    let measure = MeasureSpec::for_family(family, p, tol)?;
    let q = p.q;
    let f = sobolev_image(&coeffs(family, n, p)?, p.c, q)?;
    let g = sobolev_image(&coeffs(family, m, p)?, p.c, q)?;
    let mut acc = CompensatedAccumulator::new();
    let mut abs_sum = 0.0;
    match measure.kind {
        MeasureKind::DiscreteLattice => {
            let mut w = 1.0;
            let mut z = 1.0;
            let mut next = 0usize;
            tail_sum(
                |k| {
                    debug_assert_eq!(k as usize, next);
                    let t = w * f.eval_accurate(z) * g.eval_accurate(z);
                    w *= measure.step(next);
                    z *= q;
                    next += 1;
                    t
                },
                0..,
                tol,
                &mut acc,
                &mut abs_sum,
            )?;
            Ok(acc.sum())
        }
        MeasureKind::JacksonHalfLine => {
            let term = |k: i64| {
                let z = q.powf(k as f64);
                let (sf, lf) = ln_abs_poly(&f, z);
                let (sg, lg) = ln_abs_poly(&g, z);
                sf * sg * (z.ln() + measure.ln_density(z) + lf + lg).exp()
            };
            tail_sum(term, (1..).map(|k: i64| -k), tol, &mut acc, &mut abs_sum)?;
            tail_sum(term, 0.., tol, &mut acc, &mut abs_sum)?;
            Ok((1.0 - q) * acc.sum())
        }
    }
}

/// Classical gamma function (Lanczos approximation, `g = 7`, nine terms,
/// with reflection for arguments below `1/2`).
pub fn gamma(x: f64) -> Result<f64> {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(QError::Domain(format!("the gamma function has a pole at {x}")));
    }
    if x < 0.5 {
        return Ok(PI / ((PI * x).sin() * gamma(1.0 - x)?));
    }
    let x = x - 1.0;
    let mut a = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a)
}

fn integer_c(p: &Params) -> Result<usize> {
    if p.c.fract() != 0.0 || p.c < 0.0 {
        return Err(QError::Domain(format!("norms need an integer c >= 0, got {}", p.c)));
    }
    Ok(p.c as usize)
}

/// Which variant of a norm display to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormForm {
    /// The closed form that matches the Sobolev inner products.
    Corrected,
    /// The closed form as commonly displayed (differs for little q-Jacobi,
    /// q-Laguerre and Stieltjes–Wigert).
    Printed,
}

/// Closed-form squared norm `A_{n,q}` of the Sobolev inner product.
///
/// With `K = (q;q)_c/(1-q)^c` and `s = g + xi`:
/// * little q-Jacobi: `K^2 (q^{s+2})_inf/(q^{g+1})_inf (1-q^{s+1}) q^{(g+1)n}
///   / (1-q^{2n+s+1}) (q, q^{xi+1};q)_n / (q^{g+1}, q^{s+1};q)_n`;
/// * q-Laguerre: `K^2 (q;q)_n/((q^{g+1};q)_n q^n) (q^{-g})_inf/(q;q)_inf
///   Gamma(-g) Gamma(g+1)` (pole for integer `g >= 0`);
/// * q-Bessel: `K^2 (q;q)_n (-q^{xi+n})_inf q^{xi n} q^{n(n+1)/2} / (1 + q^{xi+2n})`;
/// * little q-Laguerre: `K^2 q^{(g+1)n}/(q^{g+1})_inf (q;q)_n/(q^{g+1};q)_n`;
/// * Stieltjes–Wigert: `-ln q K^2 (q;q)_inf (q;q)_n / q^n`.
pub fn a_norm(family: FamilyId, n: usize, p: &Params) -> Result<f64> {
    a_norm_form(family, n, p, NormForm::Corrected)
}

/// [`a_norm`] in either the corrected or the printed form.
pub fn a_norm_form(family: FamilyId, n: usize, p: &Params, form: NormForm) -> Result<f64> {
    let c = integer_c(p)?;
    let tol = Tolerances::default();
    let (q, g, x, nf) = (p.q, p.gamma, p.xi, n as f64);
    let base = QBase::new(q)?;
    let k = sobolev_constant(&q, c);
    let k2 = k * k;
    let inf = |e: f64| q_pochhammer_inf_qpow(e, base, tol);
    let fin = |e: f64| poch_qpow(&q, e, n);
    let printed = form == NormForm::Printed;
    match core_family(family) {
        FamilyId::LittleQJacobi => {
            let s = g + x;
            // (1 - q^{s+1}) / ((1 - q^{2n+s+1}) (q^{s+1};q)_n), which is 1 at n = 0.
            let edge = if printed {
                f64::one_minus_q_pow(&q, s + 2.0)
                    / (f64::one_minus_q_pow(&q, 2.0 * nf + s + 1.0) * fin(s + 1.0))
            } else if n == 0 {
                1.0
            } else {
                1.0 / (f64::one_minus_q_pow(&q, 2.0 * nf + s + 1.0) * poch_qpow(&q, s + 2.0, n - 1))
            };
            Ok(k2 * inf(s + 2.0)? / inf(g + 1.0)? * q.powf((g + 1.0) * nf) * fin(1.0) * fin(x + 1.0)
                / fin(g + 1.0)
                * edge)
        }
        FamilyId::QLaguerre => {
            let ratio = if printed { fin(g + 1.0) / fin(1.0) } else { fin(1.0) / fin(g + 1.0) };
            Ok(ratio / q.powf(nf) * inf(-g)? / inf(1.0)? * k2 * gamma(-g)? * gamma(g + 1.0)?)
        }
        FamilyId::GenQBessel => {
            let tail = q_pochhammer_inf(-q.powf(x + nf), base, tol)?;
            Ok(k2 * fin(1.0) * tail * q.powf(x * nf + nf * (nf + 1.0) / 2.0) / (1.0 + q.powf(x + 2.0 * nf)))
        }
        FamilyId::ExtLittleQLaguerre => Ok(k2 * q.powf((g + 1.0) * nf) / inf(g + 1.0)? * fin(1.0) / fin(g + 1.0)),
        FamilyId::GenStieltjesWigert => {
            let ratio = if printed { inf(1.0)? / fin(1.0) } else { inf(1.0)? * fin(1.0) };
            Ok(-q.ln() * ratio / q.powf(nf) * k2)
        }
        other => Err(QError::Domain(format!("{other} has no norm formula here"))),
    }
}

/// Residual of the q-integral representation
/// `y_n(z) = (1-q^c)/(1-q) integral_0^1 (qt;q)_inf/(q^c t;q)_inf p_n(zt) d_q t`
/// linking a generalized family (little q-Jacobi or q-Laguerre, `c > 0`)
/// with its `c = 0` core. Returns `|Jackson sum - y_n(z)|` divided by
/// `sum_k |a_k| |z|^k` of `y_n`.
pub fn integral_rep_residual(family: FamilyId, n: usize, p: &Params, z: f64) -> Result<f64> {
    let core = match family {
        FamilyId::GenLittleQJacobi => FamilyId::LittleQJacobi,
        FamilyId::GenQLaguerre => FamilyId::QLaguerre,
        other => return Err(QError::Domain(format!("{other} has no integral representation here"))),
    };
    if !(p.c > 0.0) {
        return Err(QError::Domain("the integral representation needs c > 0".into()));
    }
    let q = p.q;
    let base = QBase::new(q)?;
    let tol = Tolerances::default();
    let target = coeffs(family, n, p)?;
    let inner = coeffs(core, n, &p.with_c(0.0))?;
    let mut acc = CompensatedAccumulator::new();
    let mut abs_sum = 0.0;
    // Weight at t = q^k: (q^{k+1};q)_inf / (q^{c+k};q)_inf, updated by its ratio.
    let mut w = q_pochhammer_inf_qpow(1.0, base, tol)? / q_pochhammer_inf_qpow(p.c, base, tol)?;
    let mut t = 1.0;
    tail_sum(
        |k| {
            let term = t * w * inner.eval_accurate(z * t);
            let kf = k as f64;
            w *= f64::one_minus_q_pow(&q, p.c + kf) / f64::one_minus_q_pow(&q, kf + 1.0);
            t *= q;
            term
        },
        0..,
        tol,
        &mut acc,
        &mut abs_sum,
    )?;
    let value = f64::one_minus_q_pow(&q, p.c) / f64::one_minus_q_pow(&q, 1.0) * (1.0 - q) * acc.sum();
    let scale = target.abs_scale(z);
    Ok((value - target.eval_accurate(z)).abs() / scale.max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{all_zero, rational, ExactRational};
    use approx::assert_relative_eq;

    fn params(q: f64, g: f64, x: f64, c: f64) -> Params {
        Params::new(q, g, x, c).unwrap()
    }

    const CORES: [FamilyId; 5] = [
        FamilyId::LittleQJacobi,
        FamilyId::QLaguerre,
        FamilyId::GenQBessel,
        FamilyId::ExtLittleQLaguerre,
        FamilyId::GenStieltjesWigert,
    ];

    #[test]
    fn hyper_operator_examples() {
        assert!(hyper_operator_residual(FamilyId::GenLittleQJacobi, 3, &params(0.5, 0.2, 0.4, 1.0)).unwrap() < 1e-12);
        assert!(hyper_operator_residual(FamilyId::GenQLaguerre, 3, &params(0.5, 0.2, 0.0, 1.0)).unwrap() < 1e-12);
        let (l, r) = hyper_operator_sides(FamilyId::GenLittleQJacobi, 0, &params(0.5, 0.2, 0.4, 1.0)).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn hyper_operator_holds_for_all_basic_families() {
        let p = params(0.6, 0.3, 0.7, 2.0);
        for fam in FamilyId::ALL.into_iter().filter(|f| !f.is_classical()) {
            for n in 0..7 {
                assert!(hyper_operator_residual(fam, n, &p).unwrap() < 1e-12, "{fam} n={n}");
            }
        }
    }

    #[test]
    fn third_order_examples() {
        let r = third_order_qde_residual(FamilyId::GenLittleQJacobi, 4, &params(0.5, 0.3, 0.7, 2.0), 0.4).unwrap();
        assert!(r < 1e-10, "{r}");
        let r = third_order_qde_residual(FamilyId::GenQLaguerre, 5, &params(0.9, 0.1, 0.0, 1.0), 1.7).unwrap();
        assert!(r < 1e-10, "{r}");
        let r = third_order_qde_residual(FamilyId::GenQLaguerre, 0, &params(0.9, 0.1, 0.0, 1.0), 1.7).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn third_order_is_exact_in_rationals() {
        for (q, g, x, c) in [(rational(1, 2), 0, 1, 1), (rational(9, 10), 2, 0, 2), (rational(1, 3), 1, 2, 3)] {
            let p = Params::new_exact(q, g, x, c).unwrap();
            for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
                for n in 0..6 {
                    let r: Polynomial<ExactRational> = third_order_residual_poly(fam, n, &p).unwrap();
                    assert!(all_zero(&r.coeffs), "{fam} n={n}");
                }
            }
        }
    }

    #[test]
    fn eigen_examples() {
        assert!(eigen_qde_residual(FamilyId::LittleQJacobi, 5, &params(0.9, 0.1, 0.2, 0.0)).unwrap() < 1e-11);
        assert!(eigen_qde_residual(FamilyId::QLaguerre, 4, &params(0.5, 0.5, 0.0, 0.0)).unwrap() < 1e-11);
        for fam in CORES {
            assert_eq!(eigen_qde_residual(fam, 0, &params(0.5, 0.5, 0.3, 0.0)).unwrap(), 0.0);
        }
    }

    #[test]
    fn eigen_equations_are_exact_in_rationals() {
        let p = Params::new_exact(rational(2, 3), 1, 2, 0).unwrap();
        for fam in CORES {
            for n in 0..7 {
                assert!(all_zero(&eigen_qde_residual_poly(fam, n, &p).unwrap().coeffs), "{fam} n={n}");
            }
        }
    }

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma(1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(5.0).unwrap(), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(0.5).unwrap(), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(-0.5).unwrap(), -2.0 * PI.sqrt(), max_relative = 1e-13);
        assert!(gamma(0.0).is_err() && gamma(-3.0).is_err());
        // Reflection: Gamma(-g) Gamma(1+g) = -pi / sin(pi g).
        let g = 0.3;
        assert_relative_eq!(
            gamma(-g).unwrap() * gamma(1.0 + g).unwrap(),
            -PI / (PI * g).sin(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn norm_at_zero_matches_weight_sum() {
        let p = params(0.5, 0.1, 0.2, 1.0);
        let w: f64 = MeasureSpec::for_family(FamilyId::GenLittleQJacobi, &p, Tolerances::default())
            .unwrap()
            .weights(200)
            .iter()
            .sum();
        let k = sobolev_constant(&p.q, 1);
        assert_relative_eq!(a_norm(FamilyId::GenLittleQJacobi, 0, &p).unwrap(), k * k * w, max_relative = 1e-13);
    }

    #[test]
    fn norms_are_positive() {
        for fam in CORES {
            for &q in &[0.3, 0.5, 0.9] {
                for n in 0..6 {
                    let a = a_norm(fam, n, &params(q, 0.4, 0.6, 1.0)).unwrap();
                    assert!(a > 0.0, "{fam} q={q} n={n}: {a}");
                }
            }
        }
        assert!(a_norm(FamilyId::GenQLaguerre, 1, &params(0.5, 1.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn discrete_orthogonality_and_norms() {
        let tol = Tolerances::default();
        for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQBessel, FamilyId::ExtLittleQLaguerre] {
            let p = params(0.5, 0.1, 0.2, 1.0);
            let diag: Vec<f64> = (0..5).map(|n| sobolev_inner(fam, n, n, &p, tol).unwrap()).collect();
            for n in 0..5 {
                assert_relative_eq!(diag[n], a_norm(fam, n, &p).unwrap(), max_relative = 1e-9);
                for m in 0..n {
                    let v = sobolev_inner(fam, n, m, &p, tol).unwrap();
                    assert!(v.abs() < 1e-9 * (diag[n] * diag[m]).sqrt(), "{fam} {n},{m}: {v}");
                }
            }
        }
    }

    #[test]
    fn printed_little_q_jacobi_norm_differs() {
        let p = params(0.5, 0.1, 0.2, 1.0);
        let tol = Tolerances::default();
        let d = sobolev_inner(FamilyId::GenLittleQJacobi, 2, 2, &p, tol).unwrap();
        let printed = a_norm_form(FamilyId::GenLittleQJacobi, 2, &p, NormForm::Printed).unwrap();
        assert!((d / printed - 1.0).abs() > 1e-2);
    }

    #[test]
    fn half_line_ratio_is_constant() {
        let tol = Tolerances::default();
        for (fam, p) in [
            (FamilyId::GenQLaguerre, params(0.5, 0.3, 0.0, 1.0)),
            (FamilyId::GenStieltjesWigert, params(0.5, 0.0, 0.0, 1.0)),
        ] {
            let ratios: Vec<f64> = (0..4)
                .map(|n| sobolev_inner(fam, n, n, &p, tol).unwrap() / a_norm(fam, n, &p).unwrap())
                .collect();
            for r in &ratios {
                assert_relative_eq!(*r, ratios[0], max_relative = 1e-8);
            }
            let off = sobolev_inner(fam, 3, 1, &p, tol).unwrap();
            let scale = (sobolev_inner(fam, 3, 3, &p, tol).unwrap() * sobolev_inner(fam, 1, 1, &p, tol).unwrap()).sqrt();
            assert!(off.abs() < 1e-9 * scale, "{fam}: {off}");
        }
    }

    #[test]
    fn integral_representation() {
        for (fam, p) in [
            (FamilyId::GenLittleQJacobi, params(0.5, 0.1, 0.2, 1.0)),
            (FamilyId::GenLittleQJacobi, params(0.8, 0.4, 0.6, 2.5)),
            (FamilyId::GenQLaguerre, params(0.7, 0.3, 0.0, 1.5)),
        ] {
            for n in 0..6 {
                for &z in &[0.0, 0.3, 0.9, 2.0] {
                    let r = integral_rep_residual(fam, n, &p, z).unwrap();
                    assert!(r < 1e-10, "{fam} n={n} z={z}: {r}");
                }
            }
        }
        assert!(integral_rep_residual(FamilyId::GenQLaguerre, 2, &params(0.5, 0.3, 0.0, 0.0), 0.5).is_err());
    }
}
