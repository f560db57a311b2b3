//! Zeros of the polynomial families.
//!
//! Two independent methods are provided:
//!
//! * the **recurrence pencil**: writing the four-term recurrence for
//!   `y_0 .. y_{n-1}` in matrix form gives `A X = z B X - a4(n-1) y_n e_n`,
//!   so the zeros of `y_n` are the eigenvalues of `(A, B)`. `B` is lower
//!   bidiagonal, which makes `B^{-1} A` lower Hessenberg; its transpose is
//!   balanced and handed to a Francis double-shift QR iteration;
//! * **Aberth–Ehrlich** simultaneous iteration on the monomial coefficients,
//!   with polynomial values computed in double-double arithmetic so that
//!   cancellation near `q = 1` does not limit the accuracy of the roots.
//!
//! The module also classifies roots as real or complex, checks
//! interlacing, and evaluates two structural identities linking the
//! generalized and ordinary q-Laguerre polynomials at `c = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QError, Result};
use crate::families::{coeffs, FamilyId, Params};
use crate::hyper::Polynomial;
use crate::precision::horner_dd;
use crate::recurrence::mu;

/// Default tolerance of the real/complex classification.
pub const DEFAULT_IM_TOL: f64 = 1e-7;

/// Relative distance within which a nonreal root must find its conjugate.
pub const PAIR_TOL: f64 = 1e-8;

/// Maximum number of Aberth sweeps.
pub const ABERTH_MAX_SWEEPS: usize = 500;

/// Rotation of the initial Aberth circle.
pub const ABERTH_THETA0: f64 = 0.4;

/// Banded matrix pair `(A, B)` whose eigenvalues are the zeros of `y_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    /// Size (the degree of the polynomial whose zeros are sought).
    pub n: usize,
    /// `A`: `mu3` on the diagonal, `mu4` above, `mu2` and `mu1` below.
    pub a: Vec<Vec<f64>>,
    /// `B`: `-mu6` on the diagonal, `-mu5` below.
    pub b: Vec<Vec<f64>>,
}

/// Builds the pencil of degree `n` for the generalized little q-Jacobi or
/// q-Laguerre family. Row `i` holds the recurrence coefficients at degree `i`.
pub fn build_pencil(family: FamilyId, n: usize, p: &Params) -> Result<Pencil> {
    if n < 1 {
        return Err(QError::Domain("a pencil needs n >= 1".into()));
    }
    let mut a = vec![vec![0.0; n]; n];
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        let r = mu(family, i, p)?.normalized(&p.q);
        a[i][i] = r.a3;
        b[i][i] = -r.b6;
        if i + 1 < n {
            a[i][i + 1] = r.a4;
        }
        if i >= 1 {
            a[i][i - 1] = r.a2;
            b[i][i - 1] = -r.b5;
        }
        if i >= 2 {
            a[i][i - 2] = r.a1;
        }
    }
    Ok(Pencil { n, a, b })
}

/// `A X(z) - z B X(z)` with `X = (y_0(z), ..., y_{n-1}(z))` from the series.
///
/// Only the last entry is nonzero, equal to `-a4(n-1) y_n(z)`.
pub fn pencil_residual(pencil: &Pencil, family: FamilyId, p: &Params, z: f64) -> Result<Vec<f64>> {
    let n = pencil.n;
    let x: Vec<f64> = (0..n).map(|k| Ok(coeffs(family, k, p)?.eval_accurate(z))).collect::<Result<_>>()?;
    Ok((0..n)
        .map(|i| (0..n).map(|j| (pencil.a[i][j] - z * pencil.b[i][j]) * x[j]).sum())
        .collect())
}

/// Eigenvalues of the pencil.
///
/// `B^{-1} A` is formed by forward substitution (two terms per row), the
/// transposed upper Hessenberg matrix is balanced, and its eigenvalues are
/// found by Francis double-shift QR with a cap of `100 n` iterations.
#[allow(clippy::needless_range_loop)]
pub fn pencil_eigenvalues(pencil: &Pencil) -> Result<Vec<Complex64>> {
    let n = pencil.n;
    for i in 0..n {
        if pencil.b[i][i] == 0.0 || !pencil.b[i][i].is_finite() {
            return Err(QError::PencilSingular { index: i });
        }
    }
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut v = pencil.a[i][j];
            if i >= 1 {
                v -= pencil.b[i][i - 1] * m[i - 1][j];
            }
            m[i][j] = v / pencil.b[i][i];
        }
    }
    // Transpose: lower Hessenberg -> upper Hessenberg.
    let mut h: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    balance(&mut h);
    hqr(&mut h, 100 * n)
}

/// Parlett–Reinsch balancing by powers of two; preserves Hessenberg form.
#[allow(clippy::needless_range_loop)]
fn balance(a: &mut [Vec<f64>]) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let n = a.len();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[i][j] *= g;
                    }
                    for row in a.iter_mut() {
                        row[i] *= f;
                    }
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix by the Francis double-shift QR
/// algorithm with deflation and exceptional shifts (EISPACK `hqr`).
#[allow(clippy::needless_range_loop)]
fn hqr(a: &mut [Vec<f64>], max_total: usize) -> Result<Vec<Complex64>> {
    let n = a.len() as isize;
    let mut wr = vec![0.0; n as usize];
    let mut wi = vec![0.0; n as usize];
    let at = |i: isize, j: isize| (i as usize, j as usize);
    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            let (r, c) = at(i, j);
            anorm += a[r][c].abs();
        }
    }
    let mut nn = n - 1;
    let mut t = 0.0;
    let mut total = 0usize;
    macro_rules! e {
        ($i:expr, $j:expr) => {
            a[($i) as usize][($j) as usize]
        };
    }
    while nn >= 0 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 1 {
                let mut s = e!(l - 1, l - 1).abs() + e!(l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if e!(l, l - 1).abs() + s == s {
                    e!(l, l - 1) = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = e!(nn, nn);
            if l == nn {
                wr[nn as usize] = x + t;
                wi[nn as usize] = 0.0;
                nn -= 1;
                break;
            }
            let mut y = e!(nn - 1, nn - 1);
            let mut w = e!(nn, nn - 1) * e!(nn - 1, nn);
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                let (i0, i1) = ((nn - 1) as usize, nn as usize);
                if q >= 0.0 {
                    z = p + sign(z, p);
                    wr[i0] = x + z;
                    wr[i1] = x + z;
                    if z != 0.0 {
                        wr[i1] = x - w / z;
                    }
                    wi[i0] = 0.0;
                    wi[i1] = 0.0;
                } else {
                    wr[i0] = x + p;
                    wr[i1] = x + p;
                    wi[i0] = -z;
                    wi[i1] = z;
                }
                nn -= 2;
                break;
            }
            if its >= 60 || total >= max_total {
                return Err(QError::Convergence { method: "Hessenberg QR", iterations: total });
            }
            if its == 10 || its == 20 {
                t += x;
                for i in 0..=nn {
                    e!(i, i) -= x;
                }
                let s = e!(nn, nn - 1).abs() + e!(nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            total += 1;
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = e!(m, m);
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / e!(m + 1, m) + e!(m, m + 1);
                q = e!(m + 1, m + 1) - z - rr - ss;
                r = e!(m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = e!(m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (e!(m - 1, m - 1).abs() + z.abs() + e!(m + 1, m + 1).abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                e!(i, i - 2) = 0.0;
                if i != m + 2 {
                    e!(i, i - 3) = 0.0;
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = e!(k, k - 1);
                    q = e!(k + 1, k - 1);
                    r = 0.0;
                    if k != nn - 1 {
                        r = e!(k + 2, k - 1);
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            e!(k, k - 1) = -e!(k, k - 1);
                        }
                    } else {
                        e!(k, k - 1) = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = e!(k, j) + q * e!(k + 1, j);
                        if k != nn - 1 {
                            pp += r * e!(k + 2, j);
                            e!(k + 2, j) -= pp * z;
                        }
                        e!(k + 1, j) -= pp * y;
                        e!(k, j) -= pp * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * e!(i, k) + y * e!(i, k + 1);
                        if k != nn - 1 {
                            pp += z * e!(i, k + 2);
                            e!(i, k + 2) -= pp * r;
                        }
                        e!(i, k + 1) -= pp * q;
                        e!(i, k) -= pp;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(wr.into_iter().zip(wi).map(|(re, im)| Complex64::new(re, im)).collect())
}

/// Starting points on concentric circles read off the Newton polygon.
///
/// The upper convex hull of `(k, ln |a_k|)` has one edge per cluster of
/// root moduli; an edge from `i` to `j` contributes `j - i` points on the
/// circle of radius `(|a_i| / |a_j|)^{1/(j-i)}`, rotated by
/// [`ABERTH_THETA0`] plus an offset per circle. With a single edge this is
/// the usual rotated circle; with roots spread over many orders of
/// magnitude (q-Laguerre zeros at small `q`) it puts each group of starting
/// points near the modulus of its roots.
fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let pts: Vec<(usize, f64)> =
        c.iter().enumerate().filter(|(_, a)| **a != 0.0).map(|(k, a)| (k, a.abs().ln())).collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or below the segment a -> p.
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut z = Vec::with_capacity(d);
    if hull[0].0 > 0 {
        // Zero roots from vanishing low-order coefficients start near zero.
        for k in 0..hull[0].0 {
            z.push(Complex64::from_polar(1e-300_f64.max(f64::MIN_POSITIVE), ABERTH_THETA0 + k as f64));
        }
    }
    for (e, w) in hull.windows(2).enumerate() {
        let (i, li) = w[0];
        let (j, lj) = w[1];
        let m = j - i;
        let r = ((li - lj) / m as f64).exp();
        for k in 0..m {
            let angle = 2.0 * PI * k as f64 / m as f64 + ABERTH_THETA0 + 0.7 * e as f64;
            z.push(Complex64::from_polar(r, angle));
        }
    }
    z
}

/// All roots of `poly` by Aberth–Ehrlich iteration followed by Newton polishing.
///
/// Starts from rotated circles given by the Newton polygon of the
/// coefficients (see `initial_guesses`). Iterates (in place, Gauss–Seidel style) until every
/// correction is below `tol` relative to its root, for at most
/// [`ABERTH_MAX_SWEEPS`] sweeps. Polynomial values are computed in
/// double-double arithmetic.
pub fn aberth_roots(poly: &Polynomial<f64>, tol: f64) -> Result<Vec<Complex64>> {
    let c = &poly.coeffs;
    let d = poly.degree();
    if d < 1 {
        return Err(QError::Domain("root finding needs degree >= 1".into()));
    }
    let lead = c[d];
    if lead == 0.0 || !lead.is_finite() {
        return Err(QError::Domain("leading coefficient is negligible".into()));
    }
    if d == 1 {
        return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]);
    }
    let mut z = initial_guesses(c);
    let tol = tol.max(4.0 * f64::EPSILON);
    let mut converged = vec![false; d];
    let mut sweeps = 0;
    while converged.iter().any(|c| !c) {
        if sweeps >= ABERTH_MAX_SWEEPS {
            return Err(QError::Convergence { method: "Aberth", iterations: sweeps });
        }
        sweeps += 1;
        for i in 0..d {
            if converged[i] {
                continue;
            }
            let (p, dp) = horner_dd(c, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                converged[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() <= tol * z[i].norm() {
                converged[i] = true;
            }
        }
    }
    for zi in z.iter_mut() {
        newton_polish(c, zi);
    }
    Ok(z)
}

fn newton_polish(c: &[f64], z: &mut Complex64) {
    let (mut p, _) = horner_dd(c, *z);
    for _ in 0..3 {
        let (_, dp) = horner_dd(c, *z);
        if dp.norm() == 0.0 {
            return;
        }
        let cand = *z - p / dp;
        let (pc, _) = horner_dd(c, cand);
        if pc.norm() < p.norm() {
            *z = cand;
            p = pc;
        } else {
            return;
        }
    }
}

/// `|p(z)| / sum_k |a_k| |z|^k`: residual relative to the evaluation scale.
pub fn relative_residual(poly: &Polynomial<f64>, z: Complex64) -> f64 {
    let scale = poly.coeffs.iter().rev().fold(0.0, |acc, a| acc * z.norm() + a.abs());
    if scale == 0.0 {
        return 0.0;
    }
    poly.eval_complex(z).norm() / scale
}

/// Real/complex flags: a root is real iff `|Im| < im_tol (1 + |Re|)`.
///
/// Every nonreal root must have a conjugate partner within
/// [`PAIR_TOL`]` (1 + |z|)`; otherwise a pairing error is raised.
pub fn classify_real(roots: &[Complex64], im_tol: f64) -> Result<Vec<bool>> {
    let flags: Vec<bool> = roots.iter().map(|z| z.im.abs() < im_tol * (1.0 + z.re.abs())).collect();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if flags[i] || used[i] {
            continue;
        }
        let target = roots[i].conj();
        let partner = (0..roots.len())
            .filter(|&j| j != i && !flags[j] && !used[j])
            .min_by(|&a, &b| (roots[a] - target).norm().total_cmp(&(roots[b] - target).norm()));
        match partner {
            Some(j) if (roots[j] - target).norm() <= PAIR_TOL * (1.0 + roots[i].norm()) => {
                used[i] = true;
                used[j] = true;
            }
            _ => return Err(QError::Pairing { re: roots[i].re, im: roots[i].im }),
        }
    }
    Ok(flags)
}

/// Matches two root lists by repeatedly taking the closest unused pair.
///
/// Returns `(index_in_a, index_in_b, distance)` triples. Taking globally
/// closest pairs first never produces collisions.
pub fn pair_roots(a: &[Complex64], b: &[Complex64]) -> Vec<(usize, usize, f64)> {
    let mut cand: Vec<(usize, usize, f64)> =
        (0..a.len()).flat_map(|i| (0..b.len()).map(move |j| (i, j))).map(|(i, j)| (i, j, (a[i] - b[j]).norm())).collect();
    cand.sort_by(|x, y| x.2.total_cmp(&y.2));
    let mut ua = vec![false; a.len()];
    let mut ub = vec![false; b.len()];
    let mut out = Vec::new();
    for (i, j, d) in cand {
        if !ua[i] && !ub[j] {
            ua[i] = true;
            ub[j] = true;
            out.push((i, j, d));
        }
    }
    out
}

/// Largest distance among [`pair_roots`] matches, relative to `1 + |root|`.
pub fn max_pair_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    pair_roots(a, b).into_iter().map(|(i, _, d)| d / (1.0 + a[i].norm())).fold(0.0, f64::max)
}

/// Which method produced a [`ZeroSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Pencil,
    Aberth,
    Both,
}

impl std::str::FromStr for Method {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pencil" => Ok(Method::Pencil),
            "aberth" => Ok(Method::Aberth),
            "both" => Ok(Method::Both),
            _ => Err(QError::Domain(format!("unknown method '{s}'; expected pencil, aberth or both"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Pencil => "pencil",
            Method::Aberth => "aberth",
            Method::Both => "both",
        })
    }
}

/// Computed zeros with classification and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    /// Roots sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    /// Method that produced `roots` (for [`Method::Both`], the Aberth roots are kept).
    pub method: Method,
    /// Real/complex flag per root.
    pub is_real: Vec<bool>,
    /// [`relative_residual`] per root.
    pub residuals: Vec<f64>,
    /// For [`Method::Both`]: largest relative deviation between the two methods.
    pub agreement: Option<f64>,
    /// Fallbacks taken along the way.
    pub warnings: Vec<String>,
}

impl ZeroSet {
    /// Number of roots flagged real.
    pub fn real_count(&self) -> usize {
        self.is_real.iter().filter(|r| **r).count()
    }

    /// Real parts of the roots flagged real, ascending.
    pub fn real_zeros(&self) -> Vec<f64> {
        self.roots.iter().zip(&self.is_real).filter(|(_, r)| **r).map(|(z, _)| z.re).collect()
    }
}

fn sort_roots(roots: &mut [Complex64]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Zeros of the degree-`n` member of `family`.
///
/// Families without a four-term recurrence, and singular or degenerate
/// pencils, fall back to Aberth iteration with a warning.
pub fn compute_zeros(family: FamilyId, n: usize, p: &Params, method: Method, im_tol: f64) -> Result<ZeroSet> {
    if n < 1 {
        return Err(QError::Domain("zeros need n >= 1".into()));
    }
    let poly = coeffs(family, n, p)?;
    let mut warnings = Vec::new();
    let pencil_ok = matches!(family, FamilyId::GenLittleQJacobi | FamilyId::GenQLaguerre);
    let pencil_roots = if method != Method::Aberth {
        if pencil_ok {
            match build_pencil(family, n, p).and_then(|pen| pencil_eigenvalues(&pen)) {
                Ok(r) => Some(r),
                Err(e) => {
                    warnings.push(format!("pencil failed ({e}); falling back to aberth"));
                    None
                }
            }
        } else {
            warnings.push(format!("{family} has no recurrence pencil; using aberth"));
            None
        }
    } else {
        None
    };
    let aberth = if method != Method::Pencil || pencil_roots.is_none() {
        Some(aberth_roots(&poly, 1e-14)?)
    } else {
        None
    };
    let (mut roots, used, agreement) = match (pencil_roots, aberth) {
        (Some(pr), Some(ar)) => {
            let dev = max_pair_deviation(&ar, &pr);
            (ar, Method::Both, Some(dev))
        }
        (Some(pr), None) => (pr, Method::Pencil, None),
        (None, Some(ar)) => (ar, Method::Aberth, None),
        (None, None) => unreachable!("at least one method runs"),
    };
    sort_roots(&mut roots);
    let is_real = classify_real(&roots, im_tol)?;
    let residuals = roots.iter().map(|z| relative_residual(&poly, *z)).collect();
    Ok(ZeroSet { roots, method: used, is_real, residuals, agreement, warnings })
}

/// Outcome of an interlacing check.
#[derive(Debug, Clone, PartialEq)]
pub struct Interlacing {
    /// `true` when the whole chain holds.
    pub holds: bool,
    /// Description of the first violated inequality.
    pub first_violation: Option<String>,
}

/// Checks interlacing of two sorted lists of real zeros.
///
/// * `outer.len() == inner.len() + 1` (consecutive degrees):
///   `outer_1 < inner_1 < outer_2 < ... < inner_n < outer_{n+1}`;
/// * equal lengths (ordinary vs. generalized zeros):
///   `inner_1 <= outer_1 <= inner_2 <= ... <= inner_n <= outer_n`.
pub fn interlace_check(inner: &[f64], outer: &[f64]) -> Result<Interlacing> {
    for (name, v) in [("inner", inner), ("outer", outer)] {
        if v.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(QError::Domain(format!("{name} zeros must be sorted ascending")));
        }
    }
    let (chain, strict): (Vec<(String, f64)>, bool) = if outer.len() == inner.len() + 1 {
        let mut c = Vec::new();
        for i in 0..inner.len() {
            c.push((format!("outer[{i}]"), outer[i]));
            c.push((format!("inner[{i}]"), inner[i]));
        }
        c.push((format!("outer[{}]", inner.len()), outer[inner.len()]));
        (c, true)
    } else if outer.len() == inner.len() {
        let c = inner
            .iter()
            .zip(outer)
            .enumerate()
            .flat_map(|(i, (a, b))| [(format!("inner[{i}]"), *a), (format!("outer[{i}]"), *b)])
            .collect();
        (c, false)
    } else {
        return Err(QError::Domain("interlacing needs |outer| = |inner| + 1 or equal lengths".into()));
    };
    for w in chain.windows(2) {
        let ok = if strict { w[0].1 < w[1].1 } else { w[0].1 <= w[1].1 };
        if !ok {
            let op = if strict { "<" } else { "<=" };
            return Ok(Interlacing {
                holds: false,
                first_violation: Some(format!("{} = {} {op} {} = {} fails", w[0].0, w[0].1, w[1].0, w[1].1)),
            });
        }
    }
    Ok(Interlacing { holds: true, first_violation: None })
}

fn require_c_one(p: &Params) -> Result<()> {
    if p.c != 1.0 {
        return Err(QError::Domain(format!("this identity is stated for c = 1, got c = {}", p.c)));
    }
    Ok(())
}

fn normalized(terms: &[f64]) -> f64 {
    let scale = terms.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
    if scale == 0.0 {
        0.0
    } else {
        terms.iter().sum::<f64>().abs() / scale
    }
}

/// Residual of the shift relation
/// `(1+z) L_n(qz,1) = A_n L_{n+1}(z,1) + B_n L_n(z,1)` with
/// `A_n = (1-q^{n+g+1})(1-q^{n+2}) / (q^{n+g+1}(q^{n+1}-1))` and
/// `B_n = (q^{2n+g+1} + 1 - q^{2n+g+2}) / q^{n+g+1}`,
/// normalized by the largest of the three terms. Requires `c = 1`.
pub fn laguerre_shift_identity_residual(n: usize, p: &Params, z: f64) -> Result<f64> {
    require_c_one(p)?;
    let (q, g, nf) = (p.q, p.gamma, n as f64);
    let l = |k: usize, x: f64| -> Result<f64> { Ok(coeffs(FamilyId::GenQLaguerre, k, p)?.eval_accurate(x)) };
    let e = q.powf(nf + g + 1.0);
    let a = (1.0 - e) * (1.0 - q.powf(nf + 2.0)) / (e * (q.powf(nf + 1.0) - 1.0));
    let b = (q.powf(2.0 * nf + g + 1.0) + 1.0 - q.powf(2.0 * nf + g + 2.0)) / e;
    Ok(normalized(&[(1.0 + z) * l(n, q * z)?, -a * l(n + 1, z)?, -b * l(n, z)?]))
}

/// Residuals of the two relations expressing `L_n(z;q)` through the
/// generalized polynomials at `c = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkResiduals {
    /// `-(1-q)/q L_n(z) = -A'_n L_{n+1}(z,1)/(1+z) + B_n L_n(z,1)/(1+z) - L_n(z,1)/q`,
    /// with `A'_n = (1-q^{n+g+1})(1-q^{n+2}) / (q^{n+g+1}(1-q^{n+1}))`.
    pub combined: f64,
    /// `q L_n(qz,1) - L_n(z,1) = (q-1) L_n(z)`.
    pub link: f64,
}

/// Evaluates [`LinkResiduals`] at `z != -1`. Requires `c = 1`.
pub fn sobolev_laguerre_link_residual(n: usize, p: &Params, z: f64) -> Result<LinkResiduals> {
    require_c_one(p)?;
    if z == -1.0 {
        return Err(QError::Domain("the relation has a pole at z = -1".into()));
    }
    let (q, g, nf) = (p.q, p.gamma, n as f64);
    let gen = |k: usize, x: f64| -> Result<f64> { Ok(coeffs(FamilyId::GenQLaguerre, k, p)?.eval_accurate(x)) };
    let ord = coeffs(FamilyId::QLaguerre, n, p)?.eval_accurate(z);
    let e = q.powf(nf + g + 1.0);
    let a = (1.0 - e) * (1.0 - q.powf(nf + 2.0)) / (e * (1.0 - q.powf(nf + 1.0)));
    let b = (q.powf(2.0 * nf + g + 1.0) + 1.0 - q.powf(2.0 * nf + g + 2.0)) / e;
    let ln = gen(n, z)?;
    let combined = normalized(&[
        -(1.0 - q) / q * ord,
        a * gen(n + 1, z)? / (1.0 + z),
        -b * ln / (1.0 + z),
        ln / q,
    ]);
    let link = normalized(&[q * gen(n, q * z)?, -ln, -(q - 1.0) * ord]);
    Ok(LinkResiduals { combined, link })
}
