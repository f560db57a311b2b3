//! Basic hypergeometric series `_m phi_p` and classical `_r F_s`.
//!
//! Series terms are generated by ratio recursion, which is linear in the
//! number of terms and avoids the overflow of the explicit
//! `q^{k(k-1)/2}` power factor. Parameters of the form `q^e` are stored by
//! exponent, so factors `1 - q^{e+k}` are evaluated through `expm1` and the
//! termination of `q^{-n}` is detected exactly rather than by comparing
//! floating values.

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::precision::{horner_dd, Scalar};
use crate::qcore::Tolerances;

/// A numerator or denominator parameter of a basic hypergeometric series.
#[derive(Debug, Clone, PartialEq)]
pub enum HParam<T> {
    /// `q^exp`, or `-q^exp` when `neg` is set.
    QPow { neg: bool, exp: f64 },
    /// A literal value such as `0`.
    Value(T),
}

impl<T: Scalar> HParam<T> {
    /// `q^e`.
    pub fn qpow(exp: f64) -> Self {
        HParam::QPow { neg: false, exp }
    }

    /// `-q^e`.
    pub fn neg_qpow(exp: f64) -> Self {
        HParam::QPow { neg: true, exp }
    }

    /// The literal zero parameter.
    pub fn zero() -> Self {
        HParam::Value(T::zero())
    }

    /// Numerical value of the parameter.
    pub fn value(&self, q: &T) -> T {
        match self {
            HParam::QPow { neg, exp } => {
                let v = T::q_pow(q, *exp);
                if *neg {
                    -v
                } else {
                    v
                }
            }
            HParam::Value(v) => v.clone(),
        }
    }

    /// The factor `1 - a q^k` of `(a;q)_{k+1} / (a;q)_k`.
    pub fn shifted_factor(&self, q: &T, k: usize) -> T {
        match self {
            HParam::QPow { neg: false, exp } => T::one_minus_q_pow(q, exp + k as f64),
            HParam::QPow { neg: true, exp } => T::one() + T::q_pow(q, exp + k as f64),
            HParam::Value(v) => T::one() - v.clone() * T::q_pow(q, k as f64),
        }
    }

    /// `Some(n)` when the parameter is exactly `q^{-n}`, so that `(a;q)_k = 0` for `k > n`.
    pub fn termination(&self) -> Option<usize> {
        match self {
            HParam::QPow { neg: false, exp } if *exp <= 0.0 && exp.fract() == 0.0 => {
                Some((-exp) as usize)
            }
            _ => None,
        }
    }
}

/// Specification of `_m phi_p(a_1..a_m; b_1..b_p; q, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiSpec<T> {
    /// Numerator parameters `a_i`.
    pub upper: Vec<HParam<T>>,
    /// Denominator parameters `b_j`.
    pub lower: Vec<HParam<T>>,
}

impl<T: Scalar> PhiSpec<T> {
    /// Builds a spec from its parameter lists.
    pub fn new(upper: Vec<HParam<T>>, lower: Vec<HParam<T>>) -> Self {
        PhiSpec { upper, lower }
    }

    /// Number of numerator parameters.
    pub fn m(&self) -> usize {
        self.upper.len()
    }

    /// Number of denominator parameters.
    pub fn p(&self) -> usize {
        self.lower.len()
    }

    /// Exponent `1 + p - m` of the power factor `(-1)^k q^{k(k-1)/2}`.
    pub fn power_exponent(&self) -> i64 {
        1 + self.p() as i64 - self.m() as i64
    }

    /// Degree at which the series terminates, if any numerator is `q^{-n}`.
    pub fn termination(&self) -> Option<usize> {
        self.upper.iter().filter_map(HParam::termination).min()
    }

    /// Checks that no denominator factor vanishes within the terms that are summed.
    pub fn check_admissible(&self, q: &T) -> Result<()> {
        let last = self.termination().unwrap_or(64);
        for (index, b) in self.lower.iter().enumerate() {
            for k in 0..last {
                if is_negligible(&b.shifted_factor(q, k)) {
                    return Err(QError::Admissibility { index, k });
                }
            }
        }
        Ok(())
    }
}

fn is_negligible<T: Scalar>(x: &T) -> bool {
    x.is_zero() || x.to_f64().abs() < 1e-12
}

/// Dense polynomial in the monomial basis; `coeffs[k]` multiplies `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    pub coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Wraps a coefficient vector, dropping exactly-zero trailing entries.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Polynomial { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![T::zero()] }
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Polynomial { coeffs: vec![T::one()] }
    }

    /// Highest index carrying a nonzero coefficient (0 for constants).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `true` if every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient of `z^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, s: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    /// Multiplication by `z^s`.
    pub fn shift_up(&self, s: usize) -> Self {
        let mut out = vec![T::zero(); s];
        out.extend(self.coeffs.iter().cloned());
        Polynomial::new(out)
    }

    /// Argument dilation `p(z) -> p(s z)`: coefficient `k` is scaled by `s^k`.
    pub fn dilate(&self, s: &T) -> Self {
        let mut f = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * f.clone());
            f = f * s.clone();
        }
        Polynomial::new(out)
    }
}

impl Polynomial<f64> {
    /// Evaluation at a complex point in double-double arithmetic.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner_dd(&self.coeffs, z).0
    }

    /// Evaluation at a real point in double-double arithmetic.
    pub fn eval_accurate(&self, z: f64) -> f64 {
        horner_dd(&self.coeffs, Complex64::new(z, 0.0)).0.re
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Sum of `|c_k| |z|^k`, the natural scale of `p(z)`.
    pub fn abs_scale(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z.abs() + c.abs())
    }
}

/// Ratio `term_{k+1} / term_k` of the series, excluding the argument.
///
/// Returns exactly zero at and beyond the termination degree.
pub fn phi_term_ratio<T: Scalar>(spec: &PhiSpec<T>, q: &T, k: usize) -> Result<T> {
    if spec.termination().is_some_and(|n| k >= n) {
        return Ok(T::zero());
    }
    let mut num = T::one();
    for a in &spec.upper {
        num = num * a.shifted_factor(q, k);
    }
    let mut den = T::one_minus_q_pow(q, k as f64 + 1.0);
    for (index, b) in spec.lower.iter().enumerate() {
        let f = b.shifted_factor(q, k);
        if f.is_zero() {
            return Err(QError::Admissibility { index, k });
        }
        den = den * f;
    }
    let e = spec.power_exponent();
    // ((-1)^{k+1} q^{k(k+1)/2}) / ((-1)^k q^{k(k-1)/2}) = -q^k, raised to e.
    let mut pf = T::q_pow(q, (k as i64 * e) as f64);
    if e.rem_euclid(2) == 1 {
        pf = -pf;
    }
    Ok(num / den * pf)
}

/// Monomial coefficients of the terminating series `_m phi_p(...; q, z_scale z)`.
pub fn phi_coeffs<T: Scalar>(spec: &PhiSpec<T>, q: &T, z_scale: &T) -> Result<Polynomial<T>> {
    let n = spec.termination().ok_or(QError::NotPolynomial)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = T::one();
    coeffs.push(c.clone());
    for k in 0..n {
        c = c * phi_term_ratio(spec, q, k)? * z_scale.clone();
        coeffs.push(c.clone());
    }
    Ok(Polynomial::new(coeffs))
}

/// Value of `_m phi_p(...; q, z)`.
///
/// Terminating series are summed exactly (via their coefficients, in
/// double-double); otherwise terms are added until they fall below
/// `series_tol` relative to the partial sum. Convergence of non-terminating
/// series is the caller's responsibility; growth is reported as divergence.
pub fn phi_eval(spec: &PhiSpec<f64>, q: f64, z: Complex64, tol: Tolerances) -> Result<Complex64> {
    if spec.termination().is_some() {
        return Ok(phi_coeffs(spec, &q, &1.0)?.eval_complex(z));
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small = 0;
    for k in 0..tol.max_terms {
        term *= z * phi_term_ratio(spec, &q, k)?;
        if !term.norm().is_finite() || term.norm() > 1e300 {
            return Err(QError::Divergence { terms: k + 1 });
        }
        sum += term;
        if term.norm() <= tol.series_tol * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(QError::Divergence { terms: tol.max_terms })
}

/// Degree of a terminating classical series (an upper parameter equal to `-n`).
fn classical_termination(upper: &[f64]) -> Option<usize> {
    upper
        .iter()
        .filter(|a| **a <= 0.0 && a.fract() == 0.0)
        .map(|a| (-a) as usize)
        .min()
}

/// Ratio `term_{k+1}/term_k` of `_r F_s`, excluding the argument.
fn pfq_ratio(upper: &[f64], lower: &[f64], k: usize) -> Result<f64> {
    let kf = k as f64;
    let mut r = 1.0 / (kf + 1.0);
    for a in upper {
        r *= a + kf;
    }
    for (index, b) in lower.iter().enumerate() {
        if b + kf == 0.0 {
            return Err(QError::Admissibility { index, k });
        }
        r /= b + kf;
    }
    Ok(r)
}

/// Monomial coefficients of the terminating series `_r F_s(upper; lower; z_scale z)`.
pub fn pfq_coeffs(upper: &[f64], lower: &[f64], z_scale: f64) -> Result<Polynomial<f64>> {
    let n = classical_termination(upper).ok_or(QError::NotPolynomial)?;
    let mut coeffs = vec![1.0];
    let mut c = 1.0;
    for k in 0..n {
        c *= pfq_ratio(upper, lower, k)? * z_scale;
        coeffs.push(c);
    }
    Ok(Polynomial::new(coeffs))
}

/// Value of the classical generalized hypergeometric series `_r F_s(upper; lower; z)`.
pub fn pfq_eval(upper: &[f64], lower: &[f64], z: f64, tol: Tolerances) -> Result<f64> {
    if classical_termination(upper).is_some() {
        return Ok(pfq_coeffs(upper, lower, 1.0)?.eval_accurate(z));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut small = 0;
    for k in 0..tol.max_terms {
        term *= z * pfq_ratio(upper, lower, k)?;
        if !term.is_finite() || term.abs() > 1e300 {
            return Err(QError::Divergence { terms: k + 1 });
        }
        sum += term;
        if term.abs() <= tol.series_tol * sum.abs() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(QError::Divergence { terms: tol.max_terms })
}
