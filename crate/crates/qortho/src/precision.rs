//! Compensated arithmetic and the exact-rational evaluation mode.
//!
//! Close to `q = 1` the polynomial coefficients alternate in sign and span
//! many orders of magnitude, so plain double summation loses several digits.
//! This module provides
//!
//! * error-free transformations ([`two_sum`], [`two_prod`]) and the
//!   compensated sums built on them ([`comp_sum`], [`CompensatedAccumulator`]);
//! * a small double-double type ([`Dd`], [`CDd`]) used by the root finder to
//!   evaluate polynomials with roughly 106 bits of working precision;
//! * the [`Scalar`] abstraction which lets every coefficient-domain routine
//!   run either in `f64` or in exact rationals ([`ExactRational`]), plus
//!   [`exact_coeffs`], the exact oracle for integer parameters.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

use crate::error::{QError, Result};
use crate::families::{self, FamilyId, Params};
use crate::hyper::Polynomial;

/// Arbitrary-precision rational; always kept in canonical (reduced) form.
pub type ExactRational = BigRational;

/// Numeric field in which coefficient-domain computations are carried out.
///
/// Exponents of `q` are passed as `f64`. For `f64` they may be arbitrary;
/// for [`ExactRational`] they must be integers, which is guaranteed when the
/// family parameters are integers (checked by [`Params::new_exact`]).
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    /// Embeds a small integer.
    fn from_i64(v: i64) -> Self;
    /// Embeds a double (exactly, for rationals).
    fn from_f64(v: f64) -> Self;
    /// `q^e`.
    fn q_pow(q: &Self, e: f64) -> Self;
    /// `1 - q^e`, computed without cancellation where the representation allows.
    fn one_minus_q_pow(q: &Self, e: f64) -> Self {
        Self::one() - Self::q_pow(q, e)
    }
    /// Nearest `f64` (used only for norms and reporting).
    fn to_f64(&self) -> f64;
    /// Natural logarithm of `q`, where meaningful (floating mode only).
    fn ln_f64(&self) -> f64 {
        self.to_f64().ln()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn q_pow(q: &Self, e: f64) -> Self {
        if e == 0.0 {
            1.0
        } else if e.fract() == 0.0 && e.abs() < 64.0 {
            q.powi(e as i32)
        } else {
            q.powf(e)
        }
    }

    fn one_minus_q_pow(q: &Self, e: f64) -> Self {
        -(e * q.ln()).exp_m1()
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for ExactRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite value")
    }

    fn q_pow(q: &Self, e: f64) -> Self {
        assert!(
            e.fract() == 0.0 && e.abs() < i32::MAX as f64,
            "exact mode requires integer exponents of q, got {e}"
        );
        num_traits::Pow::pow(q, e as i32)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Error-free sum: returns `(s, e)` with `s = fl(a + b)` and `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free product: returns `(p, e)` with `p = fl(a * b)` and `a * b = p + e` exactly.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

/// Running sum carried as a value plus an error channel.
///
/// The represented sum `value + error` equals the exact sum of the inputs up
/// to roughly twice working precision.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedAccumulator {
    value: f64,
    error: f64,
}

impl CompensatedAccumulator {
    /// Empty accumulator.
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one term.
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.value, x);
        self.value = s;
        self.error += e;
    }

    /// Adds the exact product `a * b`.
    pub fn add_product(&mut self, a: f64, b: f64) {
        let (p, pe) = two_prod(a, b);
        self.add(p);
        self.error += pe;
    }

    /// Leading component of the sum.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// Accumulated rounding error.
    pub fn error(&self) -> f64 {
        self.error
    }

    /// Rounded total.
    pub fn sum(&self) -> f64 {
        self.value + self.error
    }
}

/// Compensated (Ogita–Rump–Oishi `Sum2`) summation; faithfully rounded for
/// all but pathologically ill-conditioned inputs. Empty input gives `0`.
pub fn comp_sum(values: &[f64]) -> f64 {
    let mut acc = CompensatedAccumulator::new();
    for &v in values {
        acc.add(v);
    }
    acc.sum()
}

/// Compensated dot product.
pub fn comp_dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = CompensatedAccumulator::new();
    for (&x, &y) in a.iter().zip(b) {
        acc.add_product(x, y);
    }
    acc.sum()
}

/// Double-double real number `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

// Named methods keep the call sites in the Horner loops explicit.
#[allow(clippy::should_implement_trait)]
impl Dd {
    /// Lifts a double.
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    /// Sum.
    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = (s, e + t);
        let (s, e) = two_sum(s, e);
        Dd::renorm(s, e + f)
    }

    /// Difference.
    pub fn sub(self, o: Dd) -> Dd {
        self.add(Dd { hi: -o.hi, lo: -o.lo })
    }

    /// Product.
    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        Dd::renorm(p, e)
    }

    /// Rounded value.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Complex double-double, used for polynomial evaluation at complex points.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

#[allow(clippy::should_implement_trait)]
impl CDd {
    /// Lifts a complex double.
    pub fn from_c64(z: Complex64) -> Self {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    /// Sum.
    pub fn add(self, o: CDd) -> CDd {
        CDd { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    /// Product.
    pub fn mul(self, o: CDd) -> CDd {
        CDd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    /// Rounded value.
    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Evaluates `p(z)` and `p'(z)` by Horner's rule in double-double arithmetic.
///
/// `coeffs[k]` multiplies `z^k`. The double inputs are treated as exact, so
/// the result is accurate to about 30 digits relative to the condition of
/// the evaluation, independent of cancellation between terms.
pub fn horner_dd(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zz = CDd::from_c64(z);
    let mut p = CDd::default();
    let mut dp = CDd::default();
    for &a in coeffs.iter().rev() {
        dp = dp.mul(zz).add(p);
        p = p.mul(zz).add(CDd { re: Dd::from_f64(a), im: Dd::default() });
    }
    (p.to_c64(), dp.to_c64())
}

/// Exact monomial coefficients of a family member at integer parameters and rational `q`.
///
/// `gamma`, `xi` and `c` must be integers (with `gamma, xi > -1`, `c >= 0`);
/// otherwise `q^{gamma+1}` and friends are irrational and a domain error is
/// returned. Classical (`q = 1`) families are rejected as they have their
/// own rational form that does not involve `q`.
pub fn exact_coeffs(
    family: FamilyId,
    n: usize,
    q: ExactRational,
    gamma: i64,
    xi: i64,
    c: i64,
) -> Result<Vec<ExactRational>> {
    if family.is_classical() {
        return Err(QError::Domain("exact mode supports only basic (q-) families".into()));
    }
    let p = Params::new_exact(q, gamma, xi, c)?;
    Ok(families::coeffs(family, n, &p)?.coeffs)
}

/// Converts an exact polynomial to floating point.
pub fn to_f64_poly(p: &Polynomial<ExactRational>) -> Polynomial<f64> {
    Polynomial::new(p.coeffs.iter().map(Scalar::to_f64).collect())
}

/// `true` when every entry is exactly zero.
pub fn all_zero(v: &[ExactRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Largest absolute value as `f64` (used for reporting exact residuals).
pub fn max_abs_exact(v: &[ExactRational]) -> f64 {
    v.iter().map(|x| Scalar::to_f64(&x.abs())).fold(0.0, f64::max)
}

/// Builds the rational `num/den`.
pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comp_sum_recovers_cancelled_term() {
        assert_eq!(comp_sum(&[1.0, 1e-20, -1.0]), 1e-20);
        assert_eq!(comp_sum(&[]), 0.0);
    }

    #[test]
    fn accumulator_tracks_error() {
        let mut acc = CompensatedAccumulator::new();
        acc.add(1e16);
        acc.add(1.0);
        acc.add(-1e16);
        assert_eq!(acc.sum(), 1.0);
    }

    #[test]
    fn two_prod_is_exact() {
        let (p, e) = two_prod(1.0 + 2f64.powi(-30), 1.0 - 2f64.powi(-30));
        assert_eq!(p, 1.0);
        assert_eq!(e, -(2f64.powi(-60)));
    }

    #[test]
    fn horner_dd_matches_expansion() {
        // (z - 1)^2 = z^2 - 2z + 1, evaluated right next to the double root.
        let c = [1.0, -2.0, 1.0];
        let h = 2f64.powi(-30);
        let (p, dp) = horner_dd(&c, Complex64::new(1.0 + h, 0.0));
        assert_eq!(p.re, h * h);
        assert_eq!(dp.re, 2.0 * h);
    }

    #[test]
    fn rational_powers() {
        let q = rational(1, 2);
        assert_eq!(ExactRational::q_pow(&q, -2.0), rational(4, 1));
        assert_eq!(ExactRational::one_minus_q_pow(&q, 2.0), rational(3, 4));
    }

    #[test]
    fn float_one_minus_power_is_accurate_near_one() {
        let q = 0.99999_f64;
        let v = f64::one_minus_q_pow(&q, 1.0);
        // 1 - q is exact in binary floating point for q in [1/2, 1].
        assert!((v - (1.0 - q)).abs() < 1e-15 * (1.0 - q));
        let v = f64::one_minus_q_pow(&q, 3.0);
        let exact = (1.0 - q) * (1.0 + q + q * q);
        assert!((v - exact).abs() < 1e-15 * exact);
    }

    #[test]
    fn exact_first_degree_little_q_jacobi() {
        let c = exact_coeffs(FamilyId::LittleQJacobi, 1, rational(1, 2), 0, 0, 0).unwrap();
        assert_eq!(c, vec![rational(1, 1), rational(-3, 2)]);
    }

    #[test]
    fn exact_mode_rejects_classical() {
        assert!(exact_coeffs(FamilyId::ClassicalGenJacobi, 1, rational(1, 2), 0, 0, 1).is_err());
    }
}
