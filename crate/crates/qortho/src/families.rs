//! The nine polynomial families and the limits connecting them.
//!
//! | id | symbol | series |
//! |----|--------|--------|
//! | [`FamilyId::LittleQJacobi`] | `P_n^{(g,x)}(z;q)` | `2phi1(q^-n, q^{n+g+x+1}; q^{g+1}; q, qz)` |
//! | [`FamilyId::QLaguerre`] | `L_n^{(g)}(z;q)` | `1phi1(q^-n; q^{g+1}; q, -q^{n+g+1} z)` |
//! | [`FamilyId::GenLittleQJacobi`] | `P_n^{(g,x)}(z,c;q)` | `3phi2(q^-n, q^{n+g+x+1}, q; q^{g+1}, q^{c+1}; q, qz)` |
//! | [`FamilyId::GenQLaguerre`] | `L_n^{(g)}(z,c;q)` | `2phi2(q^-n, q; q^{g+1}, q^{c+1}; q, -q^{n+g+1} z)` |
//! | [`FamilyId::GenQBessel`] | `B_n^{(x)}(z,c;q)` | `3phi2(q^-n, -q^{x+n}, q; 0, q^{c+1}; q, qz)` |
//! | [`FamilyId::ExtLittleQLaguerre`] | `C_n^{(g)}(z,c;q)` | `3phi2(q^-n, 0, q; q^{g+1}, q^{c+1}; q, qz)` |
//! | [`FamilyId::GenStieltjesWigert`] | `S_n(z,c;q)` | `2phi2(q^-n, q; 0, q^{c+1}; q, -q^{n+1} z)` |
//! | [`FamilyId::ClassicalGenJacobi`] | `P_n(z,g,x,c)` | `3F2(-n, n+g+x+1, 1; g+1, c+1; z)` |
//! | [`FamilyId::ClassicalGenLaguerre`] | `L_n(z,g,c)` | `2F2(-n, 1; g+1, c+1; z)` |
//!
//! With `c = 0` the pair `(q; q^{c+1})` (or `(1; c+1)`) cancels and each
//! generalized family collapses to its classical q-counterpart.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::hyper::{pfq_coeffs, phi_coeffs, HParam, PhiSpec, Polynomial};
use crate::precision::{ExactRational, Scalar};
use crate::qcore::QBase;

/// Tag selecting one of the polynomial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    LittleQJacobi,
    QLaguerre,
    GenLittleQJacobi,
    GenQLaguerre,
    GenQBessel,
    ExtLittleQLaguerre,
    GenStieltjesWigert,
    ClassicalGenJacobi,
    ClassicalGenLaguerre,
}

impl FamilyId {
    /// Every family, in CLI listing order.
    pub const ALL: [FamilyId; 9] = [
        FamilyId::LittleQJacobi,
        FamilyId::QLaguerre,
        FamilyId::GenLittleQJacobi,
        FamilyId::GenQLaguerre,
        FamilyId::GenQBessel,
        FamilyId::ExtLittleQLaguerre,
        FamilyId::GenStieltjesWigert,
        FamilyId::ClassicalGenJacobi,
        FamilyId::ClassicalGenLaguerre,
    ];

    /// Stable command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            FamilyId::LittleQJacobi => "little-q-jacobi",
            FamilyId::QLaguerre => "q-laguerre",
            FamilyId::GenLittleQJacobi => "gen-little-q-jacobi",
            FamilyId::GenQLaguerre => "gen-q-laguerre",
            FamilyId::GenQBessel => "gen-q-bessel",
            FamilyId::ExtLittleQLaguerre => "ext-little-q-laguerre",
            FamilyId::GenStieltjesWigert => "gen-stieltjes-wigert",
            FamilyId::ClassicalGenJacobi => "classical-jacobi",
            FamilyId::ClassicalGenLaguerre => "classical-laguerre",
        }
    }

    /// `true` for the two `q = 1` families.
    pub fn is_classical(self) -> bool {
        matches!(self, FamilyId::ClassicalGenJacobi | FamilyId::ClassicalGenLaguerre)
    }

    /// `true` if the family depends on `gamma`.
    pub fn uses_gamma(self) -> bool {
        !matches!(self, FamilyId::GenQBessel | FamilyId::GenStieltjesWigert)
    }

    /// `true` if the family depends on `xi`.
    pub fn uses_xi(self) -> bool {
        matches!(
            self,
            FamilyId::LittleQJacobi
                | FamilyId::GenLittleQJacobi
                | FamilyId::GenQBessel
                | FamilyId::ClassicalGenJacobi
        )
    }

    /// `true` if the family carries the Sobolev parameter `c`.
    pub fn uses_c(self) -> bool {
        !matches!(self, FamilyId::LittleQJacobi | FamilyId::QLaguerre)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for FamilyId {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL.iter().copied().find(|f| f.cli_name() == s).ok_or_else(|| {
            let names: Vec<_> = FamilyId::ALL.iter().map(|f| f.cli_name()).collect();
            QError::Domain(format!("unknown family '{s}'; expected one of: {}", names.join(", ")))
        })
    }
}

/// Parameter bundle `(q, gamma, xi, c)`.
///
/// `q` is generic so the same constructors run in `f64` and in exact
/// rationals. `xi` is ignored by Laguerre-type families, `gamma` by the
/// q-Bessel and Stieltjes–Wigert families, and `q` by the classical ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Params<T = f64> {
    pub q: T,
    pub gamma: f64,
    pub xi: f64,
    pub c: f64,
}

impl Params<f64> {
    /// Floating parameters; `q` must lie in `(1e-12, 1 - 1e-12)` and `c >= 0`.
    ///
    /// The family-specific constraints `gamma, xi > -1` are checked when a
    /// family is instantiated (see [`make_spec`]).
    pub fn new(q: f64, gamma: f64, xi: f64, c: f64) -> Result<Self> {
        QBase::new(q)?;
        if !gamma.is_finite() || !xi.is_finite() || !c.is_finite() || c < 0.0 {
            return Err(QError::Domain(format!("need finite gamma, xi and c >= 0, got c = {c}")));
        }
        Ok(Params { q, gamma, xi, c })
    }

    /// The validated base.
    pub fn base(&self) -> QBase {
        QBase::new(self.q).expect("validated on construction")
    }
}

impl Params<ExactRational> {
    /// Exact parameters: rational `q` in `(0, 1)` and integer `gamma, xi > -1`, `c >= 0`.
    pub fn new_exact(q: ExactRational, gamma: i64, xi: i64, c: i64) -> Result<Self> {
        let zero = ExactRational::from_i64(0);
        let one = ExactRational::from_i64(1);
        if q <= zero || q >= one {
            return Err(QError::Domain("exact q must lie strictly inside (0, 1)".into()));
        }
        if gamma <= -1 || xi <= -1 || c < 0 {
            return Err(QError::Domain(format!(
                "exact mode needs integers gamma, xi > -1 and c >= 0, got ({gamma}, {xi}, {c})"
            )));
        }
        Ok(Params { q, gamma: gamma as f64, xi: xi as f64, c: c as f64 })
    }
}

impl<T: Scalar> Params<T> {
    /// Copy with a different `c`.
    pub fn with_c(&self, c: f64) -> Self {
        Params { c, ..self.clone() }
    }

    fn check_for(&self, family: FamilyId) -> Result<()> {
        if family.uses_gamma() && !(self.gamma > -1.0) {
            return Err(QError::Domain(format!("{family} needs gamma > -1, got {}", self.gamma)));
        }
        if family.uses_xi() && !(self.xi > -1.0) {
            return Err(QError::Domain(format!("{family} needs xi > -1, got {}", self.xi)));
        }
        if !(self.c >= 0.0) {
            return Err(QError::Domain(format!("{family} needs c >= 0, got {}", self.c)));
        }
        Ok(())
    }
}

/// Series template of a family member.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec<T> {
    /// Basic hypergeometric series with argument `z_scale * z`.
    Basic { spec: PhiSpec<T>, z_scale: T },
    /// Classical series with argument `z_scale * z`.
    Classical { upper: Vec<f64>, lower: Vec<f64>, z_scale: f64 },
}

/// Series template of degree `n` of `family` at parameters `p`.
pub fn make_spec<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<FamilySpec<T>> {
    p.check_for(family)?;
    let nf = n as f64;
    let (g, x, c) = (p.gamma, p.xi, p.c);
    let q = &p.q;
    let qp = HParam::qpow;
    // The generalized families append the pair (q; q^{c+1}), which cancels at c = 0.
    let sobolev = family.uses_c() && c != 0.0;
    let pair = |mut up: Vec<HParam<T>>, mut lo: Vec<HParam<T>>| {
        if sobolev {
            up.push(qp(1.0));
            lo.push(qp(c + 1.0));
        }
        PhiSpec::new(up, lo)
    };
    let basic = |spec, z_scale| Ok(FamilySpec::Basic { spec, z_scale });
    let minus_q_pow = |e: f64| -T::q_pow(q, e);
    match family {
        FamilyId::LittleQJacobi | FamilyId::GenLittleQJacobi => {
            basic(pair(vec![qp(-nf), qp(nf + g + x + 1.0)], vec![qp(g + 1.0)]), q.clone())
        }
        FamilyId::QLaguerre | FamilyId::GenQLaguerre => {
            basic(pair(vec![qp(-nf)], vec![qp(g + 1.0)]), minus_q_pow(nf + g + 1.0))
        }
        FamilyId::GenQBessel => {
            basic(pair(vec![qp(-nf), HParam::neg_qpow(x + nf)], vec![HParam::zero()]), q.clone())
        }
        FamilyId::ExtLittleQLaguerre => {
            basic(pair(vec![qp(-nf), HParam::zero()], vec![qp(g + 1.0)]), q.clone())
        }
        FamilyId::GenStieltjesWigert => {
            basic(pair(vec![qp(-nf)], vec![HParam::zero()]), minus_q_pow(nf + 1.0))
        }
        FamilyId::ClassicalGenJacobi | FamilyId::ClassicalGenLaguerre => {
            let mut upper = vec![-nf];
            if family == FamilyId::ClassicalGenJacobi {
                upper.push(nf + g + x + 1.0);
            }
            let mut lower = vec![g + 1.0];
            if c != 0.0 {
                upper.push(1.0);
                lower.push(c + 1.0);
            }
            Ok(FamilySpec::Classical { upper, lower, z_scale: 1.0 })
        }
    }
}

/// Monomial coefficients of the degree-`n` member of `family`.
pub fn coeffs<T: Scalar>(family: FamilyId, n: usize, p: &Params<T>) -> Result<Polynomial<T>> {
    match make_spec(family, n, p)? {
        FamilySpec::Basic { spec, z_scale } => phi_coeffs(&spec, &p.q, &z_scale),
        FamilySpec::Classical { upper, lower, z_scale } => {
            let poly = pfq_coeffs(&upper, &lower, z_scale)?;
            Ok(Polynomial::new(poly.coeffs.into_iter().map(T::from_f64).collect()))
        }
    }
}

/// Value of the degree-`n` member at a real point.
pub fn eval(family: FamilyId, n: usize, p: &Params, z: f64) -> Result<f64> {
    Ok(coeffs(family, n, p)?.eval_accurate(z))
}

/// Value of the degree-`n` member at a complex point.
pub fn eval_complex(family: FamilyId, n: usize, p: &Params, z: Complex64) -> Result<Complex64> {
    Ok(coeffs(family, n, p)?.eval_complex(z))
}

/// Evaluation grid `start, start + h, ..., stop` with `count` points.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
    }
}

/// Checks the limit `L_n(z,c;q) = lim_{b -> -inf} P_n^{(g, log b / log q)}(-z/(bq), c; q)`.
///
/// For each `b` the little q-Jacobi side is built with `q^{n+g+xi+1}`
/// replaced by `b q^{n+g+1}` (so `q^xi = b`) and compared with the
/// generalized q-Laguerre polynomial on `z in [0, 2]`. Returns the sup-norm
/// deviation for every `b`, in input order.
pub fn laguerre_from_jacobi_limit_check(n: usize, p: &Params, b_values: &[f64]) -> Result<Vec<f64>> {
    let target = coeffs(FamilyId::GenQLaguerre, n, p)?;
    let grid = linspace(0.0, 2.0, 41);
    let nf = n as f64;
    b_values
        .iter()
        .map(|&b| {
            let mut up = vec![HParam::qpow(-nf), HParam::Value(b * p.q.powf(nf + p.gamma + 1.0))];
            let mut lo = vec![HParam::qpow(p.gamma + 1.0)];
            if p.c != 0.0 {
                up.push(HParam::qpow(1.0));
                lo.push(HParam::qpow(p.c + 1.0));
            }
            // Argument q * (-z / (b q)) = -z / b.
            let side = phi_coeffs(&PhiSpec::new(up, lo), &p.q, &(-1.0 / b))?;
            Ok(grid
                .iter()
                .map(|&z| (side.eval_accurate(z) - target.eval_accurate(z)).abs())
                .fold(0.0, f64::max))
        })
        .collect()
}

/// Checks the `q -> 1` limit of a q-family towards its classical counterpart.
///
/// * `GenLittleQJacobi`/`LittleQJacobi` are compared directly with
///   `P_n(z, g, x, c)` on `[0, 1]` (with `c = 0` for the latter);
/// * `GenQLaguerre`/`QLaguerre` are compared after the rescaling
///   `z -> (1-q) z` with `L_n(z, g, c)` on `[0, 4n]`.
///
/// Returns, for each `q`, the sup-norm deviation divided by the sup-norm of
/// the classical target on the grid.
pub fn q_to_1_limit_check(family: FamilyId, n: usize, p: &Params, q_values: &[f64]) -> Result<Vec<f64>> {
    let (classical, c, laguerre) = match family {
        FamilyId::GenLittleQJacobi => (FamilyId::ClassicalGenJacobi, p.c, false),
        FamilyId::LittleQJacobi => (FamilyId::ClassicalGenJacobi, 0.0, false),
        FamilyId::GenQLaguerre => (FamilyId::ClassicalGenLaguerre, p.c, true),
        FamilyId::QLaguerre => (FamilyId::ClassicalGenLaguerre, 0.0, true),
        other => {
            return Err(QError::Domain(format!("{other} has no classical limit in this crate")));
        }
    };
    let target = coeffs(classical, n, &p.with_c(c))?;
    let grid = if laguerre { linspace(0.0, 4.0 * n.max(1) as f64, 81) } else { linspace(0.0, 1.0, 41) };
    let norm = grid.iter().map(|&z| target.eval_accurate(z).abs()).fold(0.0, f64::max);
    q_values
        .iter()
        .map(|&q| {
            let pq = Params::new(q, p.gamma, p.xi, p.c)?;
            let mut poly = coeffs(family, n, &pq)?;
            if laguerre {
                poly = poly.dilate(&(1.0 - q));
            }
            let dev = grid
                .iter()
                .map(|&z| (poly.eval_accurate(z) - target.eval_accurate(z)).abs())
                .fold(0.0, f64::max);
            Ok(dev / norm)
        })
        .collect()
}
