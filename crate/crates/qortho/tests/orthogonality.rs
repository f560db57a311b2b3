//! Sobolev orthogonality, closed-form norms, q-integral representations
//! and limit relations.

use qortho::families::{laguerre_from_jacobi_limit_check, q_to_1_limit_check, FamilyId, Params};
use qortho::qcore::Tolerances;
use qortho::verify::{a_norm, a_norm_form, integral_rep_residual, sobolev_inner, NormForm};

fn params(q: f64, g: f64, x: f64, c: f64) -> Params {
    Params::new(q, g, x, c).unwrap()
}

fn gram(fam: FamilyId, p: &Params, size: usize) -> Vec<Vec<f64>> {
    let tol = Tolerances::default();
    (0..size).map(|n| (0..size).map(|m| sobolev_inner(fam, n, m, p, tol).unwrap()).collect()).collect()
}

fn max_off_diagonal(g: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 0..g.len() {
        for m in 0..g.len() {
            if n != m {
                worst = worst.max(g[n][m].abs() / (g[n][n] * g[m][m]).sqrt());
            }
        }
    }
    worst
}

#[test]
fn discrete_families_are_orthogonal_with_closed_form_norms() {
    for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQBessel, FamilyId::ExtLittleQLaguerre] {
        for &q in &[0.5, 0.9] {
            for &(g, x) in &[(0.1, 0.2), (0.5, 0.5), (-0.5, 1.2)] {
                for &c in &[1.0, 2.0] {
                    let p = params(q, g, x, c);
                    let gm = gram(fam, &p, 7);
                    let off = max_off_diagonal(&gm);
                    assert!(off < 1e-7, "{fam} q={q} g={g} x={x} c={c}: off-diagonal {off}");
                    for (n, row) in gm.iter().enumerate() {
                        let a = a_norm(fam, n, &p).unwrap();
                        let rel = (row[n] / a - 1.0).abs();
                        assert!(rel < 1e-5, "{fam} q={q} g={g} x={x} c={c} n={n}: {rel}");
                    }
                }
            }
        }
    }
}

#[test]
fn half_line_families_are_orthogonal_with_constant_norm_ratio() {
    for fam in [FamilyId::GenQLaguerre, FamilyId::GenStieltjesWigert] {
        for &q in &[0.5, 0.9] {
            for &g in &[0.3, -0.4, 1.6] {
                for &c in &[1.0, 2.0] {
                    let p = params(q, g, 0.0, c);
                    let gm = gram(fam, &p, 7);
                    let off = max_off_diagonal(&gm);
                    assert!(off < 1e-7, "{fam} q={q} g={g} c={c}: off-diagonal {off}");
                    let ratios: Vec<f64> = (0..7).map(|n| gm[n][n] / a_norm(fam, n, &p).unwrap()).collect();
                    for r in &ratios {
                        assert!((r / ratios[0] - 1.0).abs() < 1e-5, "{fam} q={q} g={g} c={c}: {ratios:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn printed_norm_forms_fail_where_corrected_ones_hold() {
    let tol = Tolerances::default();
    // Little q-Jacobi: the printed form is off by the constant factor
    // (1 - q^{s+2}) / (1 - q^{s+1}), visible on the absolute diagonal.
    let p = params(0.5, 0.1, 0.2, 1.0);
    for n in 0..4 {
        let inner = sobolev_inner(FamilyId::GenLittleQJacobi, n, n, &p, tol).unwrap();
        let printed = a_norm_form(FamilyId::GenLittleQJacobi, n, &p, NormForm::Printed).unwrap();
        let s: f64 = 0.3;
        let factor = (1.0 - 0.5f64.powf(s + 2.0)) / (1.0 - 0.5f64.powf(s + 1.0));
        assert!((printed / inner / factor - 1.0).abs() < 1e-9);
    }
    // q-Laguerre and Stieltjes–Wigert: the printed forms are off by an
    // n-dependent factor, so even the diagonal ratio is not constant.
    for (fam, p) in [
        (FamilyId::GenQLaguerre, params(0.5, 0.3, 0.0, 1.0)),
        (FamilyId::GenStieltjesWigert, params(0.5, 0.0, 0.0, 1.0)),
    ] {
        let ratio = |n: usize| {
            sobolev_inner(fam, n, n, &p, tol).unwrap() / a_norm_form(fam, n, &p, NormForm::Printed).unwrap()
        };
        assert!((ratio(3) / ratio(1) - 1.0).abs() > 1e-2, "{fam}");
    }
}

#[test]
fn integral_representations_reconstruct_generalized_families() {
    let mut worst: f64 = 0.0;
    for (fam, grid) in [
        (FamilyId::GenLittleQJacobi, vec![0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0]),
        (FamilyId::GenQLaguerre, vec![0.0, 0.5, 1.0, 2.0, 4.0, 8.0]),
    ] {
        for &q in &[0.3, 0.5, 0.9] {
            for &(g, x) in &[(0.1, 0.2), (1.5, -0.5)] {
                for &c in &[0.5, 1.0, 2.0, 3.0] {
                    let p = params(q, g, x, c);
                    for n in 0..=8 {
                        for &z in &grid {
                            worst = worst.max(integral_rep_residual(fam, n, &p, z).unwrap());
                        }
                    }
                }
            }
        }
    }
    assert!(worst < 1e-8, "worst {worst}");
}

#[test]
fn laguerre_is_a_limit_of_little_q_jacobi() {
    let p = params(0.5, 0.3, 0.0, 1.0);
    let dev = laguerre_from_jacobi_limit_check(4, &p, &[-1e2, -1e4, -1e6, -1e8]).unwrap();
    for w in dev.windows(2) {
        assert!(w[1] < w[0]);
    }
    assert!(dev[3] < 1e-6, "{dev:?}");
}

#[test]
fn q_to_one_limits_approach_classical_families() {
    for fam in [FamilyId::GenLittleQJacobi, FamilyId::GenQLaguerre] {
        let p = params(0.5, 0.1, 0.2, 1.0);
        let dev = q_to_1_limit_check(fam, 4, &p, &[0.9, 0.99, 0.999, 0.9999]).unwrap();
        for w in dev.windows(2) {
            assert!(w[1] < w[0], "{fam}: {dev:?}");
        }
        assert!(dev[3] < 1e-2, "{fam}: {dev:?}");
    }
}
