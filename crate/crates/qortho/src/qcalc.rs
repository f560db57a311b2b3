//! q-difference operators and Jackson q-integrals.
//!
//! All operators on polynomials act on the monomial coefficient vector and
//! are therefore exact linear maps; nothing is sampled or differenced
//! numerically. The only pointwise operator is [`dq_fn`], for arbitrary
//! closures.

use crate::error::{QError, Result};
use crate::hyper::{HParam, Polynomial};
use crate::precision::Scalar;
use crate::qcore::{poch_qpow, QBase, Tolerances};

/// Step of the symmetric difference used by [`dq_fn`] at the origin.
pub const ORIGIN_STEP: f64 = 1e-6;

/// q-derivative `(f(qz) - f(z)) / ((q - 1) z)` of a closure.
///
/// At `z = 0` the q-derivative equals `f'(0)`, which is approximated by a
/// symmetric difference with step [`ORIGIN_STEP`].
pub fn dq_fn<F: Fn(f64) -> f64>(f: F, z: f64, q: QBase) -> f64 {
    let q = q.get();
    if z == 0.0 {
        (f(ORIGIN_STEP) - f(-ORIGIN_STEP)) / (2.0 * ORIGIN_STEP)
    } else {
        (f(q * z) - f(z)) / ((q - 1.0) * z)
    }
}

/// q-derivative of a polynomial: `z^k -> [k]_q z^{k-1}`.
pub fn dq_poly<T: Scalar>(poly: &Polynomial<T>, q: &T) -> Polynomial<T> {
    if poly.coeffs.len() <= 1 {
        return Polynomial::zero();
    }
    let one_minus_q = T::one_minus_q_pow(q, 1.0);
    Polynomial::new(
        poly.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::one_minus_q_pow(q, k as f64) / one_minus_q.clone())
            .collect(),
    )
}

/// `j`-fold q-derivative.
pub fn dq_poly_pow<T: Scalar>(poly: &Polynomial<T>, q: &T, j: usize) -> Polynomial<T> {
    (0..j).fold(poly.clone(), |p, _| dq_poly(&p, q))
}

/// `Delta_b f(x) = b f(qx) - f(x)`: coefficient `k` is multiplied by `b q^k - 1`.
pub fn delta_b<T: Scalar>(poly: &Polynomial<T>, b: &T, q: &T) -> Polynomial<T> {
    Polynomial::new(
        poly.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.clone() * (b.clone() * T::q_pow(q, k as f64) - T::one()))
            .collect(),
    )
}

/// [`delta_b`] for a series parameter; powers of `q` are handled without cancellation.
pub fn delta_param<T: Scalar>(poly: &Polynomial<T>, b: &HParam<T>, q: &T) -> Polynomial<T> {
    Polynomial::new(
        poly.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| -(c.clone() * b.shifted_factor(q, k)))
            .collect(),
    )
}

/// The constant `(q;q)_c / (1-q)^c` relating the Sobolev image to the classical family.
pub fn sobolev_constant<T: Scalar>(q: &T, c: usize) -> T {
    let one_minus_q = T::one_minus_q_pow(q, 1.0);
    let mut r = poch_qpow(q, 1.0, c);
    for _ in 0..c {
        r = r / one_minus_q.clone();
    }
    r
}

/// Sobolev operator `D_q^c (z^c y)`: shift the coefficients up by `c`, then
/// apply the q-derivative `c` times. Requires `c >= 1`.
pub fn sobolev_op<T: Scalar>(poly: &Polynomial<T>, c: usize, q: &T) -> Result<Polynomial<T>> {
    if c < 1 {
        return Err(QError::Domain("the Sobolev operator needs an integer c >= 1".into()));
    }
    Ok(dq_poly_pow(&poly.shift_up(c), q, c))
}

/// Coefficient `d_j` of the expansion `D_q^c (z^c y) = sum_j d_j z^j D_q^j y`:
/// `d_j = ((q;q)_c / (q;q)_j)^2 q^{j^2} / ((q;q)_{c-j} (1-q)^{c-j})`.
///
/// This is the q-Leibniz rule applied to `z^c y`. The variant with `q^{jc}`
/// in place of `q^{j^2}` ([`sobolev_d_qjc`]) coincides with it only for
/// `c = 1`.
pub fn sobolev_d<T: Scalar>(j: usize, c: usize, q: &T) -> T {
    sobolev_d_with_power(j, c, q, (j * j) as f64)
}

/// The expansion coefficient with power `q^{jc}`; correct only for `c = 1`.
pub fn sobolev_d_qjc<T: Scalar>(j: usize, c: usize, q: &T) -> T {
    sobolev_d_with_power(j, c, q, (j * c) as f64)
}

fn sobolev_d_with_power<T: Scalar>(j: usize, c: usize, q: &T, power: f64) -> T {
    let ratio = poch_qpow(q, 1.0, c) / poch_qpow(q, 1.0, j);
    let mut den = poch_qpow(q, 1.0, c - j);
    for _ in 0..c - j {
        den = den * T::one_minus_q_pow(q, 1.0);
    }
    ratio.clone() * ratio * T::q_pow(q, power) / den
}

/// The Sobolev operator through its expansion `sum_{j=0}^{c} d_j z^j D_q^j y`.
pub fn sobolev_op_expanded<T: Scalar>(poly: &Polynomial<T>, c: usize, q: &T) -> Result<Polynomial<T>> {
    if c < 1 {
        return Err(QError::Domain("the Sobolev operator needs an integer c >= 1".into()));
    }
    let mut out = Polynomial::zero();
    let mut dj = poly.clone();
    for j in 0..=c {
        out = out.add(&dj.shift_up(j).scale(&sobolev_d(j, c, q)));
        dj = dq_poly(&dj, q);
    }
    Ok(out)
}

/// Jackson integral over `[0, 1]`: `(1-q) sum_{k>=0} q^k f(q^k)`.
pub fn jackson_01<F: Fn(f64) -> f64>(f: F, q: QBase, tol: Tolerances) -> Result<f64> {
    let q = q.get();
    let mut sum = 0.0;
    let mut qk = 1.0;
    let mut small = 0;
    for k in 0..tol.max_terms {
        let term = qk * f(qk);
        if !term.is_finite() {
            return Err(QError::Divergence { terms: k + 1 });
        }
        sum += term;
        if term.abs() <= tol.series_tol * sum.abs() || term == 0.0 {
            small += 1;
            if small >= 3 {
                return Ok((1.0 - q) * sum);
            }
        } else {
            small = 0;
        }
        qk *= q;
    }
    Err(QError::Divergence { terms: tol.max_terms })
}

/// Bilateral Jackson integral over `[0, inf)`: `(1-q) sum_{k in Z} q^k f(q^k)`.
///
/// The window `k in [-W, W]` starts at `W = 64` and doubles until the sum
/// changes by less than `series_tol` relative.
pub fn jackson_0inf<F: Fn(f64) -> f64>(f: F, q: QBase, tol: Tolerances) -> Result<f64> {
    let qv = q.get();
    let term = |k: i64| {
        let t = qv.powf(k as f64);
        let v = t * f(t);
        if v.is_nan() {
            0.0
        } else {
            v
        }
    };
    let window_sum = |lo: i64, hi: i64| (lo..hi).map(term).sum::<f64>();
    let mut w: i64 = 64;
    let mut sum = window_sum(-w, w + 1);
    loop {
        let wider = w * 2;
        if (2 * wider + 1) as usize > tol.max_terms {
            return Err(QError::Divergence { terms: tol.max_terms });
        }
        let extra = window_sum(-wider, -w) + window_sum(w + 1, wider + 1);
        if !extra.is_finite() {
            return Err(QError::Divergence { terms: (2 * wider + 1) as usize });
        }
        let new = sum + extra;
        if (new - sum).abs() <= tol.series_tol * new.abs() {
            return Ok((1.0 - qv) * new);
        }
        sum = new;
        w = wider;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{coeffs, FamilyId, Params};
    use approx::assert_relative_eq;

    fn qb(q: f64) -> QBase {
        QBase::new(q).unwrap()
    }

    fn max_rel_diff(a: &Polynomial<f64>, b: &Polynomial<f64>) -> f64 {
        let scale = a.max_abs().max(b.max_abs());
        let n = a.coeffs.len().max(b.coeffs.len());
        (0..n).map(|k| (a.coeff(k) - b.coeff(k)).abs()).fold(0.0, f64::max) / scale
    }

    #[test]
    fn dq_fn_examples() {
        assert_eq!(dq_fn(|_| 3.0, 0.4, qb(0.5)), 0.0);
        assert_relative_eq!(dq_fn(|z| z * z, 0.4, qb(0.5)), 1.5 * 0.4, max_relative = 1e-14);
        let p = coeffs(FamilyId::LittleQJacobi, 3, &Params::new(0.5, 0.2, 0.4, 0.0).unwrap()).unwrap();
        let d = dq_poly(&p, &0.5);
        assert_relative_eq!(dq_fn(|z| p.eval(&z), 0.3, qb(0.5)), d.eval(&0.3), max_relative = 1e-12);
    }

    #[test]
    fn dq_poly_examples() {
        assert!(dq_poly(&Polynomial::new(vec![5.0]), &0.5).is_zero());
        assert_eq!(dq_poly(&Polynomial::new(vec![0.0, 0.0, 1.0]), &0.5).coeffs, vec![0.0, 1.5]);
    }

    #[test]
    fn monomial_image_law() {
        let q = 0.6_f64;
        for c in 1..=4 {
            for j in 0..=10 {
                let mono = Polynomial::new(vec![1.0]).shift_up(j + c);
                let img = dq_poly_pow(&mono, &q, c);
                let expect = poch_qpow(&q, j as f64 + 1.0, c) / (1.0 - q).powi(c as i32);
                assert_relative_eq!(img.coeff(j), expect, max_relative = 1e-13);
                assert_eq!(img.degree(), j);
            }
        }
    }

    #[test]
    fn delta_examples() {
        let q = 0.5;
        assert!(delta_b(&Polynomial::new(vec![4.0]), &1.0, &q).is_zero());
        let z = Polynomial::new(vec![0.0, 1.0]);
        assert_eq!(delta_b(&z, &3.0, &q).coeffs, vec![0.0, 0.5]);
        // Delta_a y = a(q-1) z D_q y + (a-1) y
        let y = Polynomial::new(vec![0.3, -1.2, 0.7, 2.1]);
        let a = 1.7;
        let lhs = delta_b(&y, &a, &q);
        let rhs = dq_poly(&y, &q).shift_up(1).scale(&(a * (q - 1.0))).add(&y.scale(&(a - 1.0)));
        assert!(max_rel_diff(&lhs, &rhs) < 1e-15);
        assert!(max_rel_diff(&lhs, &delta_param(&y, &HParam::Value(a), &q)) < 1e-15);
    }

    #[test]
    fn sobolev_examples() {
        let q = 0.5;
        assert_eq!(sobolev_op(&Polynomial::one(), 1, &q).unwrap().coeffs, vec![1.0]);
        assert!(sobolev_op(&Polynomial::one(), 0, &q).is_err());
        // c = 1: d_0 = 1, d_1 = q.
        assert_relative_eq!(sobolev_d(0, 1, &q), 1.0, max_relative = 1e-15);
        assert_relative_eq!(sobolev_d(1, 1, &q), q, max_relative = 1e-15);
        for c in 1..=3 {
            let one = sobolev_op(&Polynomial::one(), c, &q).unwrap();
            assert_relative_eq!(one.coeffs[0], sobolev_constant(&q, c), max_relative = 1e-14);
        }
    }

    #[test]
    fn sobolev_maps_generalized_families_to_classical_ones() {
        let p = Params::new(0.5, 0.3, 0.7, 2.0).unwrap();
        let gen = coeffs(FamilyId::GenLittleQJacobi, 4, &p).unwrap();
        let img = sobolev_op(&gen, 2, &0.5).unwrap();
        let target = coeffs(FamilyId::LittleQJacobi, 4, &p).unwrap().scale(&sobolev_constant(&0.5, 2));
        assert!(max_rel_diff(&img, &target) < 1e-12);

        let p = Params::new(0.9, 0.1, 0.0, 1.0).unwrap();
        let gen = coeffs(FamilyId::GenQLaguerre, 5, &p).unwrap();
        let img = sobolev_op(&gen, 1, &0.9).unwrap();
        let target = coeffs(FamilyId::QLaguerre, 5, &p).unwrap().scale(&sobolev_constant(&0.9, 1));
        assert!(max_rel_diff(&img, &target) < 1e-12);
    }

    #[test]
    fn expanded_form_matches() {
        let y = Polynomial::new(vec![0.4, -1.0, 2.5, 0.3, -0.8]);
        for c in 1..=3 {
            let a = sobolev_op(&y, c, &0.5).unwrap();
            let b = sobolev_op_expanded(&y, c, &0.5).unwrap();
            assert!(max_rel_diff(&a, &b) < 1e-12);
        }
    }

    #[test]
    fn qjc_power_variant_differs_beyond_c_one() {
        let q = 0.5;
        assert_eq!(sobolev_d_qjc(1, 1, &q), sobolev_d(1, 1, &q));
        let y = Polynomial::new(vec![0.0, 1.0]);
        let direct = sobolev_op(&y, 2, &q).unwrap();
        let alt = (0..=2).fold(Polynomial::zero(), |acc, j| {
            acc.add(&dq_poly_pow(&y, &q, j).shift_up(j).scale(&sobolev_d_qjc(j, 2, &q)))
        });
        assert!(max_rel_diff(&direct, &alt) > 1e-3);
    }

    #[test]
    fn jackson_examples() {
        let t = Tolerances::default();
        assert_relative_eq!(jackson_01(|_| 1.0, qb(0.5), t).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(jackson_01(|x| x, qb(0.7), t).unwrap(), 1.0 / 1.7, max_relative = 1e-13);
        assert_eq!(jackson_0inf(|_| 0.0, qb(0.5), t).unwrap(), 0.0);
        let w = |z: f64| z.powf(0.5) / (0..2000).fold(1.0, |r, j| r * (1.0 + z * 0.5f64.powi(j)));
        let v = jackson_0inf(w, qb(0.5), t).unwrap();
        assert!(v > 0.0 && v.is_finite());
    }

    #[test]
    fn jackson_reports_divergence() {
        let t = Tolerances::new(1e-14, 1000).unwrap();
        assert!(jackson_01(|x| 1.0 / (x * x), qb(0.5), t).is_err());
        assert!(jackson_0inf(|_| 1.0, qb(0.5), t).is_err());
    }
}
