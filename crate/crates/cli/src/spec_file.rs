//! Operator specification files: one `key = value` per line, `#` starts a
//! comment. Keys: `family`, `nu`, `alpha`, `beta`, `s0`, `s1`,
//! `potential_expr`, `N`, `bc0`, `bc1`, `shift`, `series0`, `series1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use sldet::determinant::{jacobi_potential, FactorizedSpec, OperatorSpec};
use sldet::ode::{BoundaryKind, Endpoint, EndpointExpansion, PotentialSpec};

use crate::error::CliError;
use crate::expr::parse_expr;
use crate::fit::endpoint_series;

/// Terms of the analytic right-end series of the Bessel model.
const MODEL_SERIES_TERMS: usize = 80;
/// Interior points where a custom expression must evaluate cleanly.
const INTERIOR_PROBES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Dirichlet,
    Bessel,
    Jacobi,
    Factorized,
    Custom,
}

impl Family {
    pub const NAMES: [&'static str; 5] = ["dirichlet", "bessel", "jacobi", "factorized", "custom"];

    pub fn name(self) -> &'static str {
        match self {
            Family::Dirichlet => "dirichlet",
            Family::Bessel => "bessel",
            Family::Jacobi => "jacobi",
            Family::Factorized => "factorized",
            Family::Custom => "custom",
        }
    }

    /// Boundary conditions used when the file names none.
    fn default_bcs(self) -> (BoundaryKind, BoundaryKind) {
        match self {
            Family::Dirichlet => (BoundaryKind::Dirichlet, BoundaryKind::Dirichlet),
            Family::Bessel => (BoundaryKind::Friedrichs, BoundaryKind::Dirichlet),
            _ => (BoundaryKind::Friedrichs, BoundaryKind::Friedrichs),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "dirichlet" => Family::Dirichlet,
            "bessel" => Family::Bessel,
            "jacobi" => Family::Jacobi,
            "factorized" => Family::Factorized,
            "custom" => Family::Custom,
            _ => return Err(format!("unknown family '{s}', expected one of {}", Family::NAMES.join(", "))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parameters {
    None,
    Nu(f64),
    AlphaBeta { alpha: f64, beta: f64 },
    S { s0: f64, s1: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFile {
    pub family: Family,
    pub parameters: Parameters,
    pub potential_expr: Option<String>,
    /// Branching order `N` of the endpoint series.
    pub branching: usize,
    pub bc0: BoundaryKind,
    pub bc1: BoundaryKind,
    pub shift: f64,
    pub series0: Option<Vec<f64>>,
    pub series1: Option<Vec<f64>>,
}

pub fn parse_boundary(s: &str) -> Result<BoundaryKind, String> {
    match s {
        "dirichlet" => Ok(BoundaryKind::Dirichlet),
        "friedrichs" => Ok(BoundaryKind::Friedrichs),
        _ => match s.strip_prefix("neumann:") {
            Some(a) => Ok(BoundaryKind::Neumann(parse_real(a)?)),
            None => Err(format!("bad boundary condition '{s}', expected dirichlet, neumann:<A> or friedrichs")),
        },
    }
}

pub fn format_boundary(b: BoundaryKind) -> String {
    match b {
        BoundaryKind::Dirichlet => "dirichlet".into(),
        BoundaryKind::Friedrichs => "friedrichs".into(),
        BoundaryKind::Neumann(a) => format!("neumann:{a:?}"),
    }
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("'{}' is not a finite real number", s.trim())),
    }
}

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    let v = s.split(',').map(parse_real).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err("empty coefficient list".into());
    }
    Ok(v)
}

impl OperatorFile {
    /// A built-in family with its parameters; other fields take defaults.
    pub fn family(family: Family, parameters: Parameters) -> Self {
        let (bc0, bc1) = family.default_bcs();
        OperatorFile {
            family,
            parameters,
            potential_expr: None,
            branching: 1,
            bc0,
            bc1,
            shift: 0.0,
            series0: None,
            series1: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(CliError::SpecFile {
                    line,
                    message: format!("expected 'key = value', found '{content}'"),
                });
            };
            let key = key.trim();
            if entries.insert(key, (line, value.trim())).is_some() {
                return Err(CliError::SpecFile {
                    line,
                    message: format!("duplicate key '{key}'"),
                });
            }
        }

        let last_line = text.lines().count().max(1);
        let (fline, fname) = entries.remove("family").ok_or(CliError::SpecFile {
            line: last_line,
            message: "missing key 'family'".into(),
        })?;
        let family: Family = fname.parse().map_err(|message| CliError::SpecFile { line: fline, message })?;

        let mut take = |key: &str| entries.remove(key);
        let mut real = |key: &str| -> Result<Option<f64>, CliError> {
            take(key)
                .map(|(line, v)| parse_real(v).map_err(|message| CliError::SpecFile { line, message }))
                .transpose()
        };
        let mut required = |key: &str| -> Result<f64, CliError> {
            real(key)?.ok_or(CliError::SpecFile {
                line: fline,
                message: format!("family {fname} needs key '{key}'"),
            })
        };
        let parameters = match family {
            Family::Bessel => Parameters::Nu(required("nu")?),
            Family::Jacobi => Parameters::AlphaBeta {
                alpha: required("alpha")?,
                beta: required("beta")?,
            },
            Family::Factorized => Parameters::S {
                s0: required("s0")?,
                s1: required("s1")?,
            },
            Family::Dirichlet | Family::Custom => Parameters::None,
        };

        let mut file = OperatorFile::family(family, parameters);
        if let Some((line, v)) = entries.remove("shift") {
            file.shift = parse_real(v).map_err(|message| CliError::SpecFile { line, message })?;
        }
        for (key, slot) in [("bc0", &mut file.bc0), ("bc1", &mut file.bc1)] {
            if let Some((line, v)) = entries.remove(key) {
                *slot = parse_boundary(v).map_err(|message| CliError::SpecFile { line, message })?;
            }
        }
        if family == Family::Custom {
            let (line, src) = entries.remove("potential_expr").ok_or(CliError::SpecFile {
                line: fline,
                message: "family custom needs key 'potential_expr'".into(),
            })?;
            parse_expr(src).map_err(|e| CliError::SpecFile {
                line,
                message: format!("potential_expr: {e}"),
            })?;
            file.potential_expr = Some(src.to_string());
            if let Some((line, v)) = entries.remove("N") {
                file.branching = match v.parse::<usize>() {
                    Ok(n) if n >= 1 => n,
                    _ => {
                        return Err(CliError::SpecFile {
                            line,
                            message: format!("N must be a positive integer, found '{v}'"),
                        })
                    }
                };
            }
            for (key, slot) in [("series0", &mut file.series0), ("series1", &mut file.series1)] {
                if let Some((line, v)) = entries.remove(key) {
                    *slot = Some(parse_reals(v).map_err(|message| CliError::SpecFile { line, message })?);
                }
            }
        }
        if let Some((key, (line, _))) = entries.into_iter().next() {
            let message = if is_known_key(key) {
                format!("key '{key}' does not apply to family {fname}")
            } else {
                format!("unknown key '{key}'")
            };
            return Err(CliError::SpecFile { line, message });
        }
        Ok(file)
    }

    /// Canonical text form; [`OperatorFile::parse`] inverts it exactly.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| writeln!(out, "{k} = {v}").expect("string write");
        put("family", self.family.name().into());
        match self.parameters {
            Parameters::None => {}
            Parameters::Nu(nu) => put("nu", format!("{nu:?}")),
            Parameters::AlphaBeta { alpha, beta } => {
                put("alpha", format!("{alpha:?}"));
                put("beta", format!("{beta:?}"));
            }
            Parameters::S { s0, s1 } => {
                put("s0", format!("{s0:?}"));
                put("s1", format!("{s1:?}"));
            }
        }
        if let Some(e) = &self.potential_expr {
            put("potential_expr", e.clone());
            put("N", self.branching.to_string());
        }
        put("bc0", format_boundary(self.bc0));
        put("bc1", format_boundary(self.bc1));
        put("shift", format!("{:?}", self.shift));
        for (key, series) in [("series0", &self.series0), ("series1", &self.series1)] {
            if let Some(s) = series {
                put(key, s.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(", "));
            }
        }
        out
    }

    /// The potential alone, before boundary conditions are attached.
    pub fn potential(&self) -> Result<PotentialSpec, CliError> {
        Ok(match (self.family, self.parameters) {
            (Family::Dirichlet, _) => PotentialSpec::zero(),
            (Family::Bessel, Parameters::Nu(nu)) => PotentialSpec::bessel_model(nu, MODEL_SERIES_TERMS)?,
            (Family::Jacobi, Parameters::AlphaBeta { alpha, beta }) => jacobi_potential(alpha, beta)?.potential().clone(),
            (Family::Factorized, Parameters::S { s0, s1 }) => FactorizedSpec::rational(s0, s1, &[])?.potential()?,
            (Family::Custom, _) => self.custom_potential()?,
            (family, p) => return Err(CliError::Input(format!("family {} cannot take {p:?}", family.name()))),
        })
    }

    fn custom_potential(&self) -> Result<PotentialSpec, CliError> {
        let src = self
            .potential_expr
            .as_deref()
            .ok_or_else(|| CliError::Input("family custom needs potential_expr".into()))?;
        let expr = parse_expr(src)?;
        for i in 1..INTERIOR_PROBES {
            expr.eval(i as f64 / INTERIOR_PROBES as f64)?;
        }
        let n = self.branching;
        let series = |given: &Option<Vec<f64>>, end| match given {
            Some(s) => Ok(s.clone()),
            None => endpoint_series(&expr, end, n),
        };
        let left = EndpointExpansion::new(Endpoint::Left, n, series(&self.series0, Endpoint::Left)?)?;
        let right = EndpointExpansion::new(Endpoint::Right, n, series(&self.series1, Endpoint::Right)?)?;
        Ok(PotentialSpec::new(left, right, move |x| expr.eval(x).unwrap_or(f64::NAN))?)
    }

    /// The shifted operator the file describes.
    pub fn operator(&self) -> Result<OperatorSpec, CliError> {
        let op = OperatorSpec::new(self.potential()?, self.bc0, self.bc1)?;
        Ok(op.with_shift(self.shift)?)
    }
}

fn is_known_key(key: &str) -> bool {
    ["nu", "alpha", "beta", "s0", "s1", "potential_expr", "N", "series0", "series1"].contains(&key)
}
