//! The `eval`, `coeffs`, `zeros`, `table` and `sweep` commands.
//!
//! Each command has a typed core (returning library types, used directly by
//! tests) and a thin wrapper that turns the result into a [`Report`].
//! Batch work (table columns, sweep points) runs on the rayon pool; results
//! are collected in grid order, so the output does not depend on scheduling.

use num_complex::Complex64;
use qortho::families::{coeffs, FamilyId, Params};
use qortho::precision::{ExactRational, Scalar};
use qortho::zeros::{compute_zeros, interlace_check, Method, ZeroSet};
use rayon::prelude::*;
use serde_json::Value;

use crate::config::{Common, Grid, Preset};
use crate::error::CliError;
use crate::output::{num_value, Cell, Report};
use crate::svg::{Figure, Panel};

/// Default z-grid of `eval`.
pub const DEFAULT_EVAL_GRID: Grid = Grid { start: 0.0, stop: 1.0, count: 11 };

fn params_config(r: &mut Report, family: Option<FamilyId>, n: Option<usize>, cfg: &Common) {
    if let Some(f) = family {
        r.config("family", f.cli_name());
    }
    if let Some(n) = n {
        r.config("n", n);
    }
    r.config("q", cfg.q.clone());
    r.config("gamma", num_value(cfg.gamma));
    r.config("xi", num_value(cfg.xi));
    r.config("c", num_value(cfg.c));
}

/// `eval`: values on the z-grid (default `0:1:11`).
pub fn eval(cfg: &Common) -> Result<Report, CliError> {
    let family = cfg.family()?;
    let n = cfg.degree()?;
    let grid = cfg.grid_or(Some(DEFAULT_EVAL_GRID))?;
    let zs = grid.points();
    let values: Vec<f64> = if cfg.exact {
        let p = cfg.exact_params(family)?;
        let poly = coeffs(family, n, &p)?;
        zs.iter().map(|&z| poly.eval(&ExactRational::from_f64(z)).to_f64()).collect()
    } else {
        let p = cfg.params_for(family)?;
        let poly = coeffs(family, n, &p)?;
        zs.iter().map(|&z| poly.eval_accurate(z)).collect()
    };
    let mut r = Report::new(&["z", "value"]);
    r.config("command", "eval");
    params_config(&mut r, Some(family), Some(n), cfg);
    r.config("grid", format!("{}:{}:{}", grid.start, grid.stop, grid.count));
    r.config("exact", cfg.exact);
    for (&z, &v) in zs.iter().zip(&values) {
        r.push(vec![z.into(), v.into()]);
    }
    r.figure = Some(Figure {
        title: format!("{family} n={n}"),
        panels: vec![Panel {
            title: "value".into(),
            x_label: "z".into(),
            y_label: "y(z)".into(),
            markers: vec![],
            line: zs.iter().copied().zip(values.iter().copied()).collect(),
        }],
    });
    Ok(r)
}

/// `coeffs`: monomial coefficients; `--exact` adds the exact fractions.
pub fn coefficients(cfg: &Common) -> Result<Report, CliError> {
    let family = cfg.family()?;
    let n = cfg.degree()?;
    let mut r;
    if cfg.exact {
        let p = cfg.exact_params(family)?;
        let poly = coeffs(family, n, &p)?;
        r = Report::new(&["k", "coefficient", "exact"]);
        for (k, a) in poly.coeffs.iter().enumerate() {
            r.push(vec![k.into(), a.to_f64().into(), a.to_string().into()]);
        }
    } else {
        let p = cfg.params_for(family)?;
        let poly = coeffs(family, n, &p)?;
        r = Report::new(&["k", "coefficient"]);
        for (k, a) in poly.coeffs.iter().enumerate() {
            r.push(vec![k.into(), (*a).into()]);
        }
    }
    r.config("command", "coeffs");
    params_config(&mut r, Some(family), Some(n), cfg);
    r.config("exact", cfg.exact);
    Ok(r)
}

/// Zeros from the command-line configuration.
pub fn zero_set(cfg: &Common) -> Result<(FamilyId, usize, ZeroSet), CliError> {
    let family = cfg.family()?;
    let n = cfg.degree()?;
    if n < 1 {
        return Err(CliError::Usage("zeros need --n >= 1".into()));
    }
    let method = cfg.method()?;
    let im_tol = cfg.im_tol()?;
    let zs = if cfg.exact {
        // Exact coefficients, rounded once, then the floating root finder.
        let p = cfg.exact_params(family)?;
        let poly = qortho::precision::to_f64_poly(&coeffs(family, n, &p)?);
        let mut roots = qortho::zeros::aberth_roots(&poly, 1e-14)?;
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let is_real = qortho::zeros::classify_real(&roots, im_tol)?;
        let residuals = roots.iter().map(|z| qortho::zeros::relative_residual(&poly, *z)).collect();
        let mut warnings = Vec::new();
        if method != Method::Aberth {
            warnings.push("exact coefficients are root-found with aberth only".to_string());
        }
        ZeroSet { roots, method: Method::Aberth, is_real, residuals, agreement: None, warnings }
    } else {
        let p = cfg.params_for(family)?;
        compute_zeros(family, n, &p, method, im_tol)?
    };
    Ok((family, n, zs))
}

/// Real-axis and complex-plane panels of a zero set (one marker per zero).
fn zero_panels(title: &str, zs: &ZeroSet) -> Vec<Panel> {
    let real: Vec<(f64, f64)> = zs.roots.iter().zip(&zs.is_real).filter(|(_, r)| **r).map(|(z, _)| (z.re, 0.0)).collect();
    let complex: Vec<(f64, f64)> =
        zs.roots.iter().zip(&zs.is_real).filter(|(_, r)| !**r).map(|(z, _)| (z.re, z.im)).collect();
    vec![
        Panel { title: format!("{title}: real zeros"), x_label: "Re z".into(), y_label: String::new(), markers: real, line: vec![] },
        Panel { title: format!("{title}: complex zeros"), x_label: "Re z".into(), y_label: "Im z".into(), markers: complex, line: vec![] },
    ]
}

/// `zeros`: one row per zero plus one warning row per fallback.
pub fn zeros(cfg: &Common) -> Result<Report, CliError> {
    let (family, n, zs) = zero_set(cfg)?;
    let mut r = Report::new(&["kind", "index", "re", "im", "real", "residual", "method", "note"]);
    r.config("command", "zeros");
    params_config(&mut r, Some(family), Some(n), cfg);
    r.config("method", cfg.method.clone());
    r.config("im_tol", num_value(cfg.im_tol));
    r.config("exact", cfg.exact);
    for w in &zs.warnings {
        r.push(vec!["warning".into(), Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty, zs.method.to_string().into(), w.clone().into()]);
    }
    for (i, z) in zs.roots.iter().enumerate() {
        r.push(vec![
            "zero".into(),
            (i + 1).into(),
            z.re.into(),
            z.im.into(),
            zs.is_real[i].into(),
            zs.residuals[i].into(),
            zs.method.to_string().into(),
            Cell::Empty,
        ]);
    }
    r.diag("real_count", zs.real_count());
    r.diag("complex_count", zs.roots.len() - zs.real_count());
    r.diag("method_agreement", zs.agreement.map_or(Value::Null, num_value));
    r.diag("warnings", zs.warnings.clone());
    r.figure = Some(Figure { title: format!("zeros of {family} n={n}"), panels: zero_panels(family.cli_name(), &zs) });
    Ok(r)
}

/// One column of a preset table.
#[derive(Debug, Clone)]
pub struct TableColumn {
    pub label: String,
    pub family: FamilyId,
    pub n: usize,
    pub params: Params,
    /// Zeros are reported as `z / scale` (Laguerre tables use `1 - q`).
    pub scale: f64,
    pub zeros: ZeroSet,
}

impl TableColumn {
    /// Reported (scaled) real zeros, ascending.
    pub fn values(&self) -> Vec<f64> {
        self.zeros.real_zeros().iter().map(|z| z / self.scale).collect()
    }
}

/// A computed preset table.
#[derive(Debug, Clone)]
pub struct TableResult {
    pub preset: Preset,
    pub columns: Vec<TableColumn>,
}

fn column_specs(preset: Preset) -> Vec<(String, FamilyId, usize, Params, f64)> {
    let p = |q: f64, g: f64, x: f64, c: f64| Params::new(q, g, x, c).expect("preset parameters are admissible");
    match preset {
        Preset::Table1 => {
            let mut v: Vec<_> = [0.99997, 0.99998, 0.999985]
                .iter()
                .map(|&q| (format!("q={q}"), FamilyId::GenLittleQJacobi, 6, p(q, 0.1, 0.2, 1.0), 1.0))
                .collect();
            v.push(("classical".into(), FamilyId::ClassicalGenJacobi, 6, p(0.5, 0.1, 0.2, 1.0), 1.0));
            v
        }
        Preset::Table2 => {
            let mut v: Vec<_> = [0.9999, 0.99999, 0.999990001]
                .iter()
                .map(|&q| (format!("q={q}"), FamilyId::GenQLaguerre, 6, p(q, 0.1, 0.0, 1.0), 1.0 - q))
                .collect();
            v.push(("classical".into(), FamilyId::ClassicalGenLaguerre, 6, p(0.5, 0.1, 0.0, 1.0), 1.0));
            v
        }
        Preset::Table3 => vec![
            ("n=6".into(), FamilyId::GenQLaguerre, 6, p(0.9, 0.5, 0.0, 1.0), 1.0),
            ("n=7".into(), FamilyId::GenQLaguerre, 7, p(0.9, 0.5, 0.0, 1.0), 1.0),
        ],
        Preset::Table4 => vec![
            ("ordinary".into(), FamilyId::QLaguerre, 5, p(0.9, 0.1, 0.0, 0.0), 1.0),
            ("generalized".into(), FamilyId::GenQLaguerre, 5, p(0.9, 0.1, 0.0, 1.0), 1.0),
        ],
    }
}

/// Computes the zeros behind a preset table.
///
/// * `table1`: `P_6^{(0.1,0.2)}(z,1;q)` for q in {0.99997, 0.99998, 0.999985}
///   and the classical `P_6(z,0.1,0.2,1)`;
/// * `table2`: zeros of `L_6^{(0.1)}((1-q)z,1;q)` for q in
///   {0.9999, 0.99999, 0.999990001} and the classical `L_6(z,0.1,1)`;
/// * `table3`: `L_6^{(0.5)}(z,1;0.9)` and `L_7^{(0.5)}(z,1;0.9)`;
/// * `table4`: the q-Laguerre `L_5^{(0.1)}(z;0.9)` and `L_5^{(0.1)}(z,1;0.9)`.
pub fn table_preset(preset: Preset, method: Method, im_tol: f64) -> Result<TableResult, CliError> {
    let columns = column_specs(preset)
        .into_par_iter()
        .map(|(label, family, n, params, scale)| {
            let zeros = compute_zeros(family, n, &params, method, im_tol)?;
            Ok(TableColumn { label, family, n, params, scale, zeros })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(TableResult { preset, columns })
}

/// `table`: one row per zero index, one column per preset column.
pub fn table(preset: Preset, cfg: &Common) -> Result<Report, CliError> {
    let t = table_preset(preset, cfg.method()?, cfg.im_tol()?)?;
    let mut names = vec!["k".to_string()];
    names.extend(t.columns.iter().map(|c| c.label.clone()));
    let mut r = Report { columns: names, ..Default::default() };
    r.config("command", "table");
    r.config("preset", preset.name());
    r.config("method", cfg.method.clone());
    let values: Vec<Vec<f64>> = t.columns.iter().map(TableColumn::values).collect();
    let rows = t.columns.iter().map(|c| c.n).max().unwrap_or(0);
    for k in 0..rows {
        let mut row = vec![Cell::from(k + 1)];
        row.extend(values.iter().map(|v| v.get(k).copied().into()));
        r.push(row);
    }
    let mut cols = serde_json::Map::new();
    for c in &t.columns {
        cols.insert(
            c.label.clone(),
            serde_json::json!({
                "family": c.family.cli_name(),
                "n": c.n,
                "q": if c.family.is_classical() { Value::Null } else { num_value(c.params.q) },
                "gamma": c.params.gamma,
                "xi": c.params.xi,
                "c": c.params.c,
                "scale": c.scale,
                "method": c.zeros.method.to_string(),
                "real_count": c.zeros.real_count(),
                "method_agreement": c.zeros.agreement.map_or(Value::Null, num_value),
                "max_residual": num_value(c.zeros.residuals.iter().copied().fold(0.0, f64::max)),
                "warnings": c.zeros.warnings,
            }),
        );
    }
    r.diag("columns", Value::Object(cols));
    if preset == Preset::Table4 {
        let il = interlace_check(&t.columns[0].zeros.real_zeros(), &t.columns[1].zeros.real_zeros())?;
        r.diag("interlacing", il.holds);
        r.diag("interlacing_violation", il.first_violation.map_or(Value::Null, Value::String));
    }
    r.figure = Some(Figure {
        title: preset.name().to_string(),
        panels: t
            .columns
            .iter()
            .map(|c| Panel {
                title: c.label.clone(),
                x_label: "zero".into(),
                y_label: String::new(),
                markers: c.values().into_iter().map(|x| (x, 0.0)).collect(),
                line: vec![],
            })
            .collect(),
    });
    Ok(r)
}

/// Which parameters a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Vary {
    pub gamma: bool,
    pub xi: bool,
    pub c: bool,
}

impl Vary {
    /// Every parameter the family depends on.
    pub fn all_for(family: FamilyId) -> Self {
        Vary { gamma: family.uses_gamma(), xi: family.uses_xi(), c: family.uses_c() }
    }

    /// Parses `gamma,xi,c` subsets; an empty list means [`Vary::all_for`].
    pub fn parse(names: &[String], family: FamilyId) -> Result<Self, CliError> {
        if names.is_empty() {
            return Ok(Vary::all_for(family));
        }
        let mut v = Vary { gamma: false, xi: false, c: false };
        for name in names {
            match name.trim() {
                "gamma" => v.gamma = true,
                "xi" => v.xi = true,
                "c" => v.c = true,
                other => return Err(CliError::Usage(format!("--vary accepts gamma, xi, c; got '{other}'"))),
            }
        }
        Ok(v)
    }
}

/// Zeros at one sweep grid point.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub value: f64,
    pub params: Params,
    pub zeros: ZeroSet,
}

/// Zeros of the degree-`n` member of `family` at every grid value, with the
/// varied parameters set to that value and the others taken from `base`.
pub fn sweep_points(
    family: FamilyId,
    n: usize,
    base: &Params,
    vary: Vary,
    values: &[f64],
    method: Method,
    im_tol: f64,
) -> Result<Vec<SweepPoint>, CliError> {
    if n < 1 {
        return Err(CliError::Usage("sweep needs --n >= 1".into()));
    }
    values
        .par_iter()
        .map(|&v| {
            let params = Params::new(
                base.q,
                if vary.gamma { v } else { base.gamma },
                if vary.xi { v } else { base.xi },
                if vary.c { v } else { base.c },
            )
            .map_err(crate::config::usage)?;
            coeffs(family, 0, &params).map_err(crate::config::usage)?;
            let zeros = compute_zeros(family, n, &params, method, im_tol)?;
            Ok(SweepPoint { value: v, params, zeros })
        })
        .collect()
}

/// `sweep`: real/complex zero counts over the `--grid` of parameter values.
pub fn sweep(cfg: &Common) -> Result<Report, CliError> {
    let family = cfg.family()?;
    let n = cfg.degree()?;
    let grid = cfg.grid_or(None)?;
    let vary = Vary::parse(&cfg.vary, family)?;
    let base = cfg.params()?;
    let points = sweep_points(family, n, &base, vary, &grid.points(), cfg.method()?, cfg.im_tol()?)?;
    let mut r = Report::new(&["value", "gamma", "xi", "c", "real", "complex", "method", "agreement"]);
    r.config("command", "sweep");
    params_config(&mut r, Some(family), Some(n), cfg);
    r.config("grid", format!("{}:{}:{}", grid.start, grid.stop, grid.count));
    r.config("vary", [("gamma", vary.gamma), ("xi", vary.xi), ("c", vary.c)].iter().filter(|(_, b)| *b).map(|(s, _)| *s).collect::<Vec<_>>());
    r.config("method", cfg.method.clone());
    let mut warnings = serde_json::Map::new();
    for pt in &points {
        let real = pt.zeros.real_count();
        r.push(vec![
            pt.value.into(),
            pt.params.gamma.into(),
            pt.params.xi.into(),
            pt.params.c.into(),
            real.into(),
            (pt.zeros.roots.len() - real).into(),
            pt.zeros.method.to_string().into(),
            pt.zeros.agreement.into(),
        ]);
        if !pt.zeros.warnings.is_empty() {
            warnings.insert(crate::output::format_sig(pt.value, 9), pt.zeros.warnings.clone().into());
        }
    }
    r.diag("warnings", Value::Object(warnings));
    r.figure = Some(Figure {
        title: format!("zeros of {family} n={n}, q={}", cfg.q),
        panels: points
            .iter()
            .map(|pt| Panel {
                title: format!("value={} ({} real)", crate::output::format_sig(pt.value, 6), pt.zeros.real_count()),
                x_label: "Re z".into(),
                y_label: "Im z".into(),
                markers: pt.zeros.roots.iter().map(|z: &Complex64| (z.re, z.im)).collect(),
                line: vec![],
            })
            .collect(),
    });
    Ok(r)
}
