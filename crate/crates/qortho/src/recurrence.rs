//! Four-term recurrences of the generalized little q-Jacobi and q-Laguerre
//! polynomials.
//!
//! For `y_n = P_n^{(g,x)}(z,c;q)`
//!
//! ```text
//! mu1 y_{n-2} + (mu2 + z mu5) y_{n-1} + (mu3 + z mu6) y_n + mu4 y_{n+1} = 0,
//! ```
//!
//! and for `y_n = L_n^{(g)}(z,c;q)` the primed coefficients enter as
//!
//! ```text
//! q mu1' y_{n-2} + (q mu2' - z mu5') y_{n-1} + (q mu3' - z mu6') y_n + q mu4' y_{n+1} = 0,
//! ```
//!
//! with `y_{-1} = y_{-2} = 0`. The closed forms are written in terms of the
//! bracket products `[q^a;q]_i = (1 - q^a)(1 - q^{a-1}) ... (1 - q^{a-i+1})`.
//! Degrees 0 and 1 use dedicated formulas; `mu1` is taken as zero there
//! since it multiplies a vanishing polynomial. For `n >= 2`, `mu1` follows
//! from `mu1 + mu2 + mu3 + mu4 = 0`.

use crate::error::{QError, Result};
use crate::families::{coeffs, FamilyId, Params};
use crate::hyper::Polynomial;
use crate::precision::Scalar;

/// The six recurrence coefficients at one degree index.
#[derive(Debug, Clone, PartialEq)]
pub struct FourTermCoeffs<T> {
    /// [`FamilyId::GenLittleQJacobi`] (`mu`) or [`FamilyId::GenQLaguerre`] (`mu'`).
    pub family: FamilyId,
    /// Degree index.
    pub n: usize,
    /// `mu_1 .. mu_6` (or `mu'_1 .. mu'_6`) exactly as in the closed forms.
    pub mu: [T; 6],
}

/// Coefficients arranged as `a1 y_{n-2} + (a2 + z b5) y_{n-1} + (a3 + z b6) y_n + a4 y_{n+1} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub b5: T,
    pub b6: T,
}

impl<T: Scalar> FourTermCoeffs<T> {
    /// Uniform arrangement used by the residual, the forward solve and the pencil.
    pub fn normalized(&self, q: &T) -> Normalized<T> {
        let [m1, m2, m3, m4, m5, m6] = self.mu.clone();
        match self.family {
            FamilyId::GenQLaguerre => Normalized {
                a1: q.clone() * m1,
                a2: q.clone() * m2,
                a3: q.clone() * m3,
                a4: q.clone() * m4,
                b5: -m5,
                b6: -m6,
            },
            _ => Normalized { a1: m1, a2: m2, a3: m3, a4: m4, b5: m5, b6: m6 },
        }
    }
}

struct Q<'a, T> {
    q: &'a T,
}

impl<T: Scalar> Q<'_, T> {
    /// `q^a`
    fn p(&self, a: f64) -> T {
        T::q_pow(self.q, a)
    }
    /// `1 - q^a`
    fn om(&self, a: f64) -> T {
        T::one_minus_q_pow(self.q, a)
    }
    /// `[q^a;q]_i`, with `[.;q]_0 = 0`.
    fn br(&self, a: f64, i: usize) -> T {
        if i == 0 {
            return T::zero();
        }
        (0..i).fold(T::one(), |r, j| r * self.om(a - j as f64))
    }
}

fn check_c<T>(p: &Params<T>) -> Result<()> {
    if !(p.gamma > -1.0) || !(p.c > 0.0) {
        return Err(QError::Domain(format!(
            "recurrence needs gamma > -1 and c > 0, got gamma = {}, c = {}",
            p.gamma, p.c
        )));
    }
    Ok(())
}

/// Recurrence coefficients `mu_{q,1..6}(n)` of the generalized little q-Jacobi polynomials.
///
/// Errors with [`QError::Degenerate`] for `n <= 1` when `gamma + xi = -1`,
/// where the degree-0 row vanishes identically and the degree-1 formulas
/// become `0/0`.
pub fn mu_jacobi<T: Scalar>(n: usize, p: &Params<T>) -> Result<FourTermCoeffs<T>> {
    check_c(p)?;
    if !(p.xi > -1.0) {
        return Err(QError::Domain(format!("recurrence needs xi > -1, got {}", p.xi)));
    }
    let (g, c, s) = (p.gamma, p.c, p.gamma + p.xi);
    if n <= 1 && (s + 1.0).abs() < 1e-12 {
        return Err(QError::Degenerate { n });
    }
    let k = Q { q: &p.q };
    let q = p.q.clone();
    let nf = n as f64;
    let omq = k.om(1.0);

    let m6 = k.br(2.0 * nf + s + 2.0, 2) * k.om(nf + s) * k.om(nf + 1.0);
    let m4 = k.p(nf) * k.om(g + nf + 1.0) * k.om(c + nf + 1.0) * k.br(nf + s + 1.0, 2);
    let m5 = -(q.clone() * k.br(nf, 1) * k.om(nf + s - 1.0) * k.br(2.0 * nf + s + 2.0, 2));

    let (m1, m2, m3) = match n {
        0 => {
            let m3 = -(k.om(g + 1.0) * k.om(c + 1.0) * k.br(s + 1.0, 2));
            (T::zero(), T::zero(), m3)
        }
        1 => {
            let one_plus_q = T::one() + q.clone();
            let m2 = q.clone() * k.om(g + 1.0) * k.om(c + 1.0) * k.om(s) * k.br(s + 4.0, 2) / k.om(s + 2.0)
                - q.clone() * k.om(g + 2.0) * k.om(c + 2.0) * k.br(s + 2.0, 2)
                + one_plus_q.clone() * k.om(g + 2.0) * k.om(c + 2.0) * k.om(s + 1.0) * k.om(s + 3.0)
                - one_plus_q.clone() * k.om(g + 1.0) * k.om(c + 1.0) * k.om(s + 1.0) * k.br(s + 4.0, 2)
                    / k.om(s + 2.0);
            let inner = q.clone() * k.om(g + 1.0) * k.om(c + 1.0) * k.om(s) * k.om(s + 4.0) / k.br(s + 2.0, 2)
                + one_plus_q.clone() * k.om(g + 2.0) * k.om(c + 2.0)
                - one_plus_q * k.om(g + 1.0) * k.om(c + 1.0) * k.om(s + 4.0) / k.om(s + 2.0);
            let m3 = -(k.br(s + 1.0, 1) * k.br(s + 3.0, 1) * inner);
            (T::zero(), m2, m3)
        }
        _ => {
            let two_n = 2.0 * nf;
            let inner = k.br(nf + 1.0, 1) * k.om(g + nf + 1.0) * k.om(c + nf + 1.0) / omq.clone()
                + k.p(nf) * k.om(nf + s - 1.0) * k.om(g + nf) * k.om(c + nf) * k.om(two_n + s + 2.0)
                    / k.br(two_n + s, 2)
                - k.om(g + nf) * k.om(c + nf) * k.om(two_n + s + 2.0) * k.br(nf + 1.0, 1)
                    / (omq.clone() * k.om(two_n + s));
            let m3 = -(k.br(two_n + s + 1.0, 1) * k.br(nf + s, 1) * inner);
            let omq2 = omq.clone() * omq.clone();
            let b_n1 = k.br(nf + 1.0, 2);
            let b_top = k.br(two_n + s + 2.0, 2);
            let b22 = k.br(2.0, 2);
            let m2 = k.om(two_n + s - 1.0) * b_n1.clone() * k.om(g + nf + 1.0) * k.om(c + nf + 1.0)
                * k.om(two_n + s + 1.0)
                / (k.p(nf - 1.0) * omq2.clone())
                + q.clone() * k.om(nf + s - 1.0) * k.om(g + nf) * k.om(c + nf) * k.om(nf) * b_top.clone()
                    / (omq.clone() * k.om(two_n + s))
                - k.om(two_n + s - 1.0) * k.om(g + nf) * k.om(c + nf) * b_n1.clone() * b_top.clone()
                    / (k.p(nf - 1.0) * omq2 * k.om(two_n + s))
                - k.br(two_n + s, 2) * k.om(g + nf + 1.0) * k.om(c + nf + 1.0) * b_n1.clone()
                    / (k.p(nf - 2.0) * b22.clone())
                - q * k.om(nf + s - 1.0) * k.om(g + nf - 1.0) * k.om(c + nf - 1.0) * k.om(nf) * b_top.clone()
                    / (omq * k.om(two_n + s - 2.0))
                + b_top * k.om(g + nf - 1.0) * k.om(c + nf - 1.0) * b_n1 / (k.p(nf - 2.0) * b22);
            let m1 = -(m2.clone() + m3.clone() + m4.clone());
            (m1, m2, m3)
        }
    };
    Ok(FourTermCoeffs { family: FamilyId::GenLittleQJacobi, n, mu: [m1, m2, m3, m4, m5, m6] })
}

/// Recurrence coefficients `mu'_{q,1..6}(n)` of the generalized q-Laguerre polynomials.
pub fn mu_laguerre<T: Scalar>(n: usize, p: &Params<T>) -> Result<FourTermCoeffs<T>> {
    check_c(p)?;
    let (g, c) = (p.gamma, p.c);
    let k = Q { q: &p.q };
    let q = p.q.clone();
    let nf = n as f64;
    let omq = k.om(1.0);
    let q2 = q.clone() * q.clone();
    let e = k.p(3.0 * nf + 2.0 * g + 1.0);

    let m3 = -(e.clone()
        * (k.om(nf + 1.0) * k.om(g + nf + 1.0) * k.om(c + nf + 1.0) / omq.clone()
            + q2.clone() * k.om(g + nf) * k.om(c + nf)
            - q2 * k.om(nf + 1.0) * k.om(g + nf) * k.om(c + nf) / omq.clone()));
    let m4 = e.clone() * k.om(g + nf + 1.0) * k.om(c + nf + 1.0);
    let m6 = -(k.p(5.0 * nf + 3.0 * g + 3.0) * k.om(nf + 1.0));
    let (m1, m2, m5) = match n {
        0 => (T::zero(), T::zero(), T::zero()),
        1 => {
            let m2 = k.p(2.0 * g + 5.0) * k.om(g + 2.0) * k.om(c + 2.0)
                - k.p(2.0 * g + 7.0) * k.om(g + 1.0) * k.om(c + 1.0);
            (T::zero(), m2, k.p(3.0 * g + 8.0) * omq)
        }
        _ => {
            let b2 = k.br(nf + 1.0, 2);
            let b22 = k.br(2.0, 2);
            let omq2 = omq.clone() * omq.clone();
            let e3 = k.p(3.0 * nf + 2.0 * g + 3.0);
            let e5 = k.p(3.0 * nf + 2.0 * g + 5.0);
            let m2 = e.clone() * k.om(g + nf + 1.0) * k.om(c + nf + 1.0) * b2.clone() / omq2.clone()
                + e3.clone() * k.om(g + nf) * k.om(c + nf) * k.om(nf) / omq.clone()
                - e3 * k.om(g + nf) * k.om(c + nf) * b2.clone() / omq2
                - e * k.om(g + nf + 1.0) * k.om(c + nf + 1.0) * b2.clone() / b22.clone()
                - e5.clone() * k.om(g + nf - 1.0) * k.om(c + nf - 1.0) * k.om(nf) / omq
                + e5 * k.om(g + nf - 1.0) * k.om(c + nf - 1.0) * b2 / b22;
            let m1 = -(m2.clone() + m3.clone() + m4.clone());
            (m1, m2, k.p(5.0 * nf + 3.0 * g + 3.0) * k.om(nf))
        }
    };
    Ok(FourTermCoeffs { family: FamilyId::GenQLaguerre, n, mu: [m1, m2, m3, m4, m5, m6] })
}

/// Dispatches to [`mu_jacobi`] or [`mu_laguerre`].
pub fn mu<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<FourTermCoeffs<T>> {
    match family {
        FamilyId::GenLittleQJacobi => mu_jacobi(n, p),
        FamilyId::GenQLaguerre => mu_laguerre(n, p),
        other => Err(QError::Domain(format!("{other} has no four-term recurrence in this crate"))),
    }
}

/// The recurrence applied to the family polynomials, as a polynomial in `z`.
///
/// Identically zero when the closed forms are right; under exact arithmetic
/// this is a bit-for-bit check.
pub fn recurrence_residual_poly<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<Polynomial<T>> {
    let r = mu(family, n, p)?.normalized(&p.q);
    let y = |k: isize| -> Result<Polynomial<T>> {
        if k < 0 {
            Ok(Polynomial::zero())
        } else {
            coeffs(family, k as usize, p)
        }
    };
    let ni = n as isize;
    let z = Polynomial::new(vec![T::zero(), T::one()]);
    let lin = |a: &T, b: &T| z.scale(b).add(&Polynomial::new(vec![a.clone()]));
    Ok(y(ni - 2)?
        .scale(&r.a1)
        .add(&y(ni - 1)?.mul(&lin(&r.a2, &r.b5)))
        .add(&y(ni)?.mul(&lin(&r.a3, &r.b6)))
        .add(&y(ni + 1)?.scale(&r.a4)))
}

/// Normalized pointwise residual of the recurrence at `z`.
///
/// The absolute residual is divided by the largest of the four terms with
/// each polynomial value `|y_k(z)|` replaced by its evaluation scale
/// `sum_j |a_j| |z|^j`. Near the end of the lattice (`z = 1` at small `q`)
/// the monomial coefficients are many orders larger than the value, and this
/// scale is what bounds the rounding error of the series evaluation.
pub fn recurrence_residual(family: FamilyId, n: usize, p: &Params, z: f64) -> Result<f64> {
    let r = mu(family, n, p)?.normalized(&p.q);
    let y = |k: isize| -> Result<(f64, f64)> {
        if k < 0 {
            Ok((0.0, 0.0))
        } else {
            let poly = coeffs(family, k as usize, p)?;
            Ok((poly.eval_accurate(z), poly.abs_scale(z)))
        }
    };
    let ni = n as isize;
    let factors = [r.a1, r.a2 + z * r.b5, r.a3 + z * r.b6, r.a4];
    let mut terms = [0.0; 4];
    let mut scale: f64 = 0.0;
    for (i, f) in factors.iter().enumerate() {
        let (v, s) = y(ni - 2 + i as isize)?;
        terms[i] = f * v;
        scale = scale.max((f * s).abs());
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(crate::precision::comp_sum(&terms).abs() / scale)
}

/// Values `y_0 .. y_N` at `z` by the forward recurrence.
///
/// `y_0 = 1` and `y_1` are taken from the series; higher degrees solve the
/// recurrence for `y_{n+1}`. A vanishing `mu4(n)` is reported as a pivot error.
pub fn eval_by_recurrence(family: FamilyId, big_n: usize, p: &Params, z: f64) -> Result<Vec<f64>> {
    let mut ys = vec![1.0];
    if big_n == 0 {
        return Ok(ys);
    }
    ys.push(coeffs(family, 1, p)?.eval_accurate(z));
    for n in 1..big_n {
        let r = mu(family, n, p)?.normalized(&p.q);
        if r.a4 == 0.0 || !r.a4.is_finite() {
            return Err(QError::Pivot { n });
        }
        let ym2 = if n >= 2 { ys[n - 2] } else { 0.0 };
        let next = -(r.a1 * ym2 + (r.a2 + z * r.b5) * ys[n - 1] + (r.a3 + z * r.b6) * ys[n]) / r.a4;
        ys.push(next);
    }
    Ok(ys)
}
