//! Command-line grammar and validated run configuration.
//!
//! Every subcommand shares the same option set
//! (`--family --n --q --gamma --xi --c --method --format --out --grid
//! --exact`); options a command does not need are ignored. Parsing and
//! validation happen here so that the commands only ever see admissible
//! parameters.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use qortho::families::{coeffs, FamilyId, Params};
use qortho::precision::ExactRational;
use qortho::zeros::{Method, DEFAULT_IM_TOL};
use qortho::QError;

use crate::error::CliError;

/// Top-level parser.
#[derive(Debug, Parser)]
#[command(name = "qortho", version, about = "Sobolev-type q-orthogonal polynomials: evaluation, zeros, tables and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a polynomial on a z-grid.
    Eval(Common),
    /// Dump the monomial coefficients of a polynomial.
    Coeffs(Common),
    /// Compute the zeros of a polynomial.
    Zeros(Common),
    /// Reproduce one of the preset zero tables.
    Table {
        /// Preset name.
        preset: Preset,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites (all of them when no suite is named).
    Verify {
        /// Suite name.
        suite: Option<Suite>,
        #[command(flatten)]
        common: Common,
    },
    /// Count real zeros over a parameter grid.
    Sweep(Common),
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Family name, e.g. gen-little-q-jacobi or gen-q-laguerre (an unknown name lists all of them).
    #[arg(long)]
    pub family: Option<String>,
    /// Degree.
    #[arg(long)]
    pub n: Option<usize>,
    /// Base q in (0, 1); in `--exact` mode a decimal or `a/b` fraction read exactly.
    #[arg(long, default_value = "0.5")]
    pub q: String,
    /// First shape parameter.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Second shape parameter.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub xi: f64,
    /// Sobolev parameter.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Zero finder: pencil, aberth or both.
    #[arg(long, default_value = "both")]
    pub method: String,
    /// Output format (defaults to json for `verify`, csv otherwise).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Grid `start:stop:count` (z for `eval`, the swept parameter for `sweep`).
    #[arg(long)]
    pub grid: Option<String>,
    /// Parameters varied by `sweep` (comma separated subset of gamma,xi,c).
    #[arg(long, value_delimiter = ',')]
    pub vary: Vec<String>,
    /// Imaginary-part tolerance for classifying a zero as real.
    #[arg(long, default_value_t = DEFAULT_IM_TOL)]
    pub im_tol: f64,
    /// Exact rational arithmetic (integer gamma, xi, c and rational q).
    #[arg(long)]
    pub exact: bool,
}

/// Output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Table presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Table1,
    Table2,
    Table3,
    Table4,
}

/// Verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Recurrence,
    Qde3,
    HyperOp,
    EigenQde,
    Orthogonality,
    Norms,
    IntegralRep,
    Limits,
    Interlacing,
}

impl Suite {
    /// Every suite, in report order.
    pub const ALL: [Suite; 9] = [
        Suite::Recurrence,
        Suite::Qde3,
        Suite::HyperOp,
        Suite::EigenQde,
        Suite::Orthogonality,
        Suite::Norms,
        Suite::IntegralRep,
        Suite::Limits,
        Suite::Interlacing,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Recurrence => "recurrence",
            Suite::Qde3 => "qde3",
            Suite::HyperOp => "hyper-op",
            Suite::EigenQde => "eigen-qde",
            Suite::Orthogonality => "orthogonality",
            Suite::Norms => "norms",
            Suite::IntegralRep => "integral-rep",
            Suite::Limits => "limits",
            Suite::Interlacing => "interlacing",
        }
    }
}

impl Preset {
    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Preset::Table1 => "table1",
            Preset::Table2 => "table2",
            Preset::Table3 => "table3",
            Preset::Table4 => "table4",
        }
    }
}

/// Inclusive, evenly spaced grid `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    /// Grid points in ascending index order.
    pub fn points(&self) -> Vec<f64> {
        qortho::families::linspace(self.start, self.stop, self.count)
    }
}

impl FromStr for Grid {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Usage(format!("grid must be start:stop:count, got '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !start.is_finite() || !stop.is_finite() || count == 0 || (count == 1 && start != stop) {
            return Err(bad());
        }
        Ok(Grid { start, stop, count })
    }
}

/// Reads a decimal (`0.9`, `1e-3`) or fraction (`9/10`) exactly.
pub fn parse_rational(s: &str) -> Result<ExactRational, CliError> {
    let bad = || CliError::Usage(format!("'{s}' is not a decimal or a fraction a/b"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.contains(['+', '-']) || (int_part.is_empty() && frac_part.is_empty()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Reads an integer-valued float for exact mode.
fn exact_integer(name: &str, v: f64) -> Result<i64, CliError> {
    if v.fract() != 0.0 || v.abs() > 1e9 {
        return Err(CliError::Usage(format!("--exact needs an integer {name}, got {v}")));
    }
    Ok(v as i64)
}

impl Common {
    /// The family, which must be given.
    pub fn family(&self) -> Result<FamilyId, CliError> {
        let name = self.family.as_deref().ok_or_else(|| CliError::Usage(family_list("--family is required")))?;
        FamilyId::from_str(name).map_err(usage)
    }

    /// The degree, which must be given.
    pub fn degree(&self) -> Result<usize, CliError> {
        self.n.ok_or_else(|| CliError::Usage("--n is required".into()))
    }

    /// The zero-finding method.
    pub fn method(&self) -> Result<Method, CliError> {
        Method::from_str(&self.method).map_err(usage)
    }

    /// The grid, or `default` when `--grid` is absent.
    pub fn grid_or(&self, default: Option<Grid>) -> Result<Grid, CliError> {
        match (&self.grid, default) {
            (Some(s), _) => s.parse(),
            (None, Some(g)) => Ok(g),
            (None, None) => Err(CliError::Usage("--grid start:stop:count is required".into())),
        }
    }

    /// The classification tolerance.
    pub fn im_tol(&self) -> Result<f64, CliError> {
        if self.im_tol.is_finite() && self.im_tol > 0.0 {
            Ok(self.im_tol)
        } else {
            Err(CliError::Usage(format!("--im-tol must be positive, got {}", self.im_tol)))
        }
    }

    /// Floating parameters, without family-specific checks.
    pub fn params(&self) -> Result<Params, CliError> {
        let q: f64 = self.q.trim().parse().map_err(|_| CliError::Usage(format!("--q '{}' is not a number", self.q)))?;
        Params::new(q, self.gamma, self.xi, self.c).map_err(usage)
    }

    /// Floating parameters checked against `family` (degree-0 instantiation).
    pub fn params_for(&self, family: FamilyId) -> Result<Params, CliError> {
        let p = self.params()?;
        coeffs(family, 0, &p).map_err(usage)?;
        Ok(p)
    }

    /// Exact parameters for `--exact` runs.
    pub fn exact_params(&self, family: FamilyId) -> Result<Params<ExactRational>, CliError> {
        if family.is_classical() {
            return Err(CliError::Usage(format!("--exact supports only basic families, not {family}")));
        }
        let q = parse_rational(&self.q)?;
        let p = Params::new_exact(
            q,
            exact_integer("gamma", self.gamma)?,
            exact_integer("xi", self.xi)?,
            exact_integer("c", self.c)?,
        )
        .map_err(usage)?;
        coeffs(family, 0, &p).map_err(usage)?;
        Ok(p)
    }
}

/// Usage error carrying the message of a parameter-validation failure.
pub fn usage(e: QError) -> CliError {
    match e {
        QError::Domain(msg) => CliError::Usage(msg),
        other => CliError::Usage(other.to_string()),
    }
}

/// Appends the list of valid family names to a message.
pub fn family_list(msg: &str) -> String {
    let names: Vec<_> = FamilyId::ALL.iter().map(|f| f.cli_name()).collect();
    format!("{msg}; expected one of: {}", names.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qortho::precision::rational;

    #[test]
    fn grid_parses_and_validates() {
        let g: Grid = "0:1:11".parse().unwrap();
        assert_eq!(g.points().len(), 11);
        assert_eq!(g.points()[10], 1.0);
        assert!("0:1".parse::<Grid>().is_err());
        assert!("0:1:0".parse::<Grid>().is_err());
        assert!("a:1:3".parse::<Grid>().is_err());
        assert!("0:1:1".parse::<Grid>().is_err());
        assert_eq!("2:2:1".parse::<Grid>().unwrap().points(), vec![2.0]);
    }

    #[test]
    fn rationals_are_read_exactly() {
        assert_eq!(parse_rational("0.9").unwrap(), rational(9, 10));
        assert_eq!(parse_rational("9/10").unwrap(), rational(9, 10));
        assert_eq!(parse_rational("0.999990001").unwrap(), rational(999_990_001, 1_000_000_000));
        assert_eq!(parse_rational("25e-2").unwrap(), rational(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rational(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn cli_grammar_parses() {
        let cli = Cli::try_parse_from([
            "qortho", "zeros", "--family", "gen-q-laguerre", "--n", "6", "--q", "0.9", "--gamma", "-0.5", "--c", "1",
        ])
        .unwrap();
        match cli.command {
            Command::Zeros(c) => {
                assert_eq!(c.family().unwrap(), FamilyId::GenQLaguerre);
                assert_eq!(c.params().unwrap().gamma, -0.5);
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from(["qortho", "table", "table9"]).is_err());
        assert!(Cli::try_parse_from(["qortho", "verify", "hyper-op"]).is_ok());
    }

    #[test]
    fn unknown_family_lists_names() {
        let c = Common {
            family: Some("hermite".into()),
            n: None,
            q: "0.5".into(),
            gamma: 0.0,
            xi: 0.0,
            c: 1.0,
            method: "both".into(),
            format: None,
            out: None,
            grid: None,
            vary: vec![],
            im_tol: DEFAULT_IM_TOL,
            exact: false,
        };
        let msg = c.family().unwrap_err().to_string();
        assert!(msg.contains("gen-stieltjes-wigert"), "{msg}");
        assert!(c.params_for(FamilyId::GenQLaguerre).is_ok());
        let bad = Common { gamma: -1.5, ..c };
        assert!(matches!(bad.params_for(FamilyId::GenQLaguerre), Err(CliError::Usage(_))));
    }
}
