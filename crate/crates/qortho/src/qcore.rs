//! Scalar q-calculus special functions.
//!
//! q-numbers, finite and infinite q-shifted factorials, the q-gamma and
//! q-beta functions, q-binomial coefficients, q-power products and the
//! classical rising factorial used in `q -> 1` comparisons.
//!
//! Every function is pure; infinite products truncate on the size of the
//! deviation of the next factor from one, which is a geometric tail bound.

use crate::error::{QError, Result};
use crate::precision::Scalar;

/// Smallest distance of `q` from the endpoints of `(0, 1)`.
pub const Q_EPS: f64 = 1e-12;

/// A validated base `q` strictly inside `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QBase(f64);

impl QBase {
    /// Accepts `q` in `(1e-12, 1 - 1e-12)`.
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > Q_EPS && q < 1.0 - Q_EPS {
            Ok(QBase(q))
        } else {
            Err(QError::Domain(format!("q = {q} must lie strictly inside (0, 1)")))
        }
    }

    /// The wrapped value.
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Truncation controls for infinite products and series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative tail bound.
    pub series_tol: f64,
    /// Hard iteration cap.
    pub max_terms: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { series_tol: 1e-14, max_terms: 1_000_000 }
    }
}

impl Tolerances {
    /// Checks `series_tol > 0` and `max_terms >= 1`.
    pub fn new(series_tol: f64, max_terms: usize) -> Result<Self> {
        if !(series_tol > 0.0) || max_terms == 0 {
            return Err(QError::Domain("tolerances need series_tol > 0 and max_terms >= 1".into()));
        }
        Ok(Tolerances { series_tol, max_terms })
    }
}

/// q-number `[a]_q = (q^a - 1)/(q - 1)`.
pub fn q_number(a: f64, q: QBase) -> f64 {
    let q = q.get();
    f64::one_minus_q_pow(&q, a) / f64::one_minus_q_pow(&q, 1.0)
}

/// Finite q-shifted factorial `(b;q)_k = prod_{j<k} (1 - b q^j)`.
pub fn q_pochhammer(b: f64, q: QBase, k: usize) -> f64 {
    poch_value(&b, &q.get(), k)
}

/// `(b;q)_k` for an arbitrary scalar `b`.
pub fn poch_value<T: Scalar>(b: &T, q: &T, k: usize) -> T {
    let mut r = T::one();
    let mut bq = b.clone();
    for _ in 0..k {
        r = r * (T::one() - bq.clone());
        bq = bq * q.clone();
    }
    r
}

/// `(q^e;q)_k`, each factor evaluated as `1 - q^{e+j}` without cancellation.
pub fn poch_qpow<T: Scalar>(q: &T, e: f64, k: usize) -> T {
    let mut r = T::one();
    for j in 0..k {
        r = r * T::one_minus_q_pow(q, e + j as f64);
    }
    r
}

/// Infinite product `(b;q)_inf`, truncated once `|b q^j| < series_tol (1 - q)`.
pub fn q_pochhammer_inf(b: f64, q: QBase, tol: Tolerances) -> Result<f64> {
    let q = q.get();
    let bound = tol.series_tol * (1.0 - q);
    let mut r = 1.0;
    let mut t = b;
    for _ in 0..tol.max_terms {
        if t.abs() < bound {
            return Ok(r);
        }
        r *= 1.0 - t;
        if r == 0.0 {
            return Ok(0.0);
        }
        t *= q;
    }
    Err(QError::Truncation { max_terms: tol.max_terms })
}

/// `(q^e;q)_inf` with factors `1 - q^{e+j}` computed via `expm1`.
pub fn q_pochhammer_inf_qpow(e: f64, q: QBase, tol: Tolerances) -> Result<f64> {
    let qv = q.get();
    let bound = tol.series_tol * (1.0 - qv);
    let mut r = 1.0;
    for j in 0..tol.max_terms {
        let t = qv.powf(e + j as f64);
        if t.abs() < bound {
            return Ok(r);
        }
        r *= f64::one_minus_q_pow(&qv, e + j as f64);
    }
    Err(QError::Truncation { max_terms: tol.max_terms })
}

/// q-gamma function `Gamma_q(e) = (q;q)_inf / (q^e;q)_inf (1-q)^{1-e}` for `e > 0`.
pub fn q_gamma(e: f64, q: QBase, tol: Tolerances) -> Result<f64> {
    if !(e > 0.0) {
        return Err(QError::Domain(format!("q_gamma needs a positive argument, got {e}")));
    }
    let qv = q.get();
    let bound = tol.series_tol * (1.0 - qv);
    // One combined product keeps the ratio away from under/overflow.
    let mut r = 1.0;
    for j in 0..tol.max_terms {
        let jf = j as f64;
        if qv.powf(jf + e.min(1.0)) < bound {
            return Ok(r * (1.0 - qv).powf(1.0 - e));
        }
        r *= f64::one_minus_q_pow(&qv, jf + 1.0) / f64::one_minus_q_pow(&qv, jf + e);
    }
    Err(QError::Truncation { max_terms: tol.max_terms })
}

/// q-beta function `B_q(a, b) = Gamma_q(a) Gamma_q(b) / Gamma_q(a + b)`.
pub fn q_beta(a: f64, b: f64, q: QBase, tol: Tolerances) -> Result<f64> {
    Ok(q_gamma(a, q, tol)? * q_gamma(b, q, tol)? / q_gamma(a + b, q, tol)?)
}

/// Gaussian binomial `(q;q)_n / ((q;q)_k (q;q)_{n-k})`.
pub fn q_binomial(n: usize, k: usize, q: QBase) -> Result<f64> {
    if k > n {
        return Err(QError::Domain(format!("q_binomial needs k <= n, got k = {k}, n = {n}")));
    }
    let qv = q.get();
    // prod_{j=1}^{k} (1 - q^{n-k+j}) / (1 - q^j)
    let mut r = 1.0;
    for j in 1..=k {
        r *= f64::one_minus_q_pow(&qv, (n - k + j) as f64) / f64::one_minus_q_pow(&qv, j as f64);
    }
    Ok(r)
}

/// q-power `(x + y)_q^n = prod_{j<n} (x + q^j y)`.
pub fn q_power(x: f64, y: f64, q: QBase, n: usize) -> f64 {
    let qv = q.get();
    let mut r = 1.0;
    let mut qj = 1.0;
    for _ in 0..n {
        r *= x + qj * y;
        qj *= qv;
    }
    r
}

/// Rising factorial `(s)_l = s (s+1) ... (s+l-1)`.
pub fn rising_factorial(s: f64, l: usize) -> f64 {
    (0..l).fold(1.0, |r, j| r * (s + j as f64))
}
