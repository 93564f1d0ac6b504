use std::path::Path;

use serde::Serialize;
use sldet::determinant::{
    det_factorized_closed, det_jacobi_closed, det_model_closed, det_shifted, det_wronskian, DetResult,
    FactorizedSpec,
};
use sldet::ode::{default_terms, frobenius_seed, BoundaryKind, Endpoint};
use sldet::spectrum::{det_via_trace_model, det_via_zeta_oracle, eigenvalues, ZetaFamily};

use crate::error::CliError;
use crate::spec_file::{format_boundary, Family, OperatorFile, Parameters};

/// Parameter overrides from the command line.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub s0: Option<f64>,
    pub s1: Option<f64>,
    pub shift: Option<f64>,
}

/// Reads `target` as a spec file if one exists at that path, otherwise as a
/// built-in family name, then applies the overrides.
pub fn resolve(target: &str, o: &Overrides) -> Result<OperatorFile, CliError> {
    let path = Path::new(target);
    let mut file = if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        OperatorFile::parse(&text)?
    } else {
        let family: Family = target.parse().map_err(|e: String| {
            CliError::Input(format!("{target} is neither a readable file nor a family name ({e})"))
        })?;
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| CliError::Input(format!("family {target} needs --{flag}")))
        };
        let parameters = match family {
            Family::Bessel => Parameters::Nu(need(o.nu, "nu")?),
            Family::Jacobi => Parameters::AlphaBeta {
                alpha: need(o.alpha, "alpha")?,
                beta: need(o.beta, "beta")?,
            },
            Family::Factorized => Parameters::S {
                s0: need(o.s0, "s0")?,
                s1: need(o.s1, "s1")?,
            },
            Family::Dirichlet => Parameters::None,
            Family::Custom => return Err(CliError::Input("family custom needs a spec file".into())),
        };
        OperatorFile::family(family, parameters)
    };

    let reject = |flag: &str| CliError::Input(format!("--{flag} does not apply to family {}", file.family.name()));
    match &mut file.parameters {
        Parameters::Nu(nu) => *nu = o.nu.unwrap_or(*nu),
        Parameters::AlphaBeta { alpha, beta } => {
            *alpha = o.alpha.unwrap_or(*alpha);
            *beta = o.beta.unwrap_or(*beta);
        }
        Parameters::S { s0, s1 } => {
            *s0 = o.s0.unwrap_or(*s0);
            *s1 = o.s1.unwrap_or(*s1);
        }
        Parameters::None => {}
    }
    let family = file.family;
    for (flag, given, applies) in [
        ("nu", o.nu, family == Family::Bessel),
        ("alpha", o.alpha, family == Family::Jacobi),
        ("beta", o.beta, family == Family::Jacobi),
        ("s0", o.s0, family == Family::Factorized),
        ("s1", o.s1, family == Family::Factorized),
    ] {
        if given.is_some() && !applies {
            return Err(reject(flag));
        }
    }
    if let Some(z) = o.shift {
        file.shift = z;
    }
    Ok(file)
}

#[derive(Debug, Serialize)]
pub struct DiagnosticsOutput {
    pub wronskian_drift: f64,
    pub series_tail: f64,
    pub route: String,
    pub negative_eigenvalues: usize,
}

#[derive(Debug, Serialize)]
pub struct DetOutput {
    pub nu0: f64,
    pub nu1: f64,
    pub wronskian: f64,
    pub det: f64,
    pub log_det: Option<f64>,
    pub diagnostics: DiagnosticsOutput,
}

impl From<DetResult> for DetOutput {
    fn from(r: DetResult) -> Self {
        DetOutput {
            nu0: r.nu0,
            nu1: r.nu1,
            wronskian: r.wronskian,
            det: r.det,
            log_det: r.log_det,
            diagnostics: DiagnosticsOutput {
                wronskian_drift: r.diagnostics.wronskian_drift,
                series_tail: r.diagnostics.series_tail,
                route: r.diagnostics.route.to_string(),
                negative_eigenvalues: r.diagnostics.negative_eigenvalues,
            },
        }
    }
}

pub fn det(file: &OperatorFile) -> Result<DetOutput, CliError> {
    let unshifted = OperatorFile { shift: 0.0, ..file.clone() }.operator()?;
    let r = if file.shift == 0.0 {
        det_wronskian(&unshifted)?
    } else {
        det_shifted(&unshifted, file.shift)?
    };
    Ok(r.into())
}

#[derive(Debug, Serialize)]
pub struct SpectrumOutput {
    pub count: usize,
    pub shift: f64,
    pub eigenvalues: Vec<f64>,
    /// Interior zeros of each eigenfunction.
    pub oscillation_indices: Vec<usize>,
    pub certificate: bool,
}

pub fn spectrum(file: &OperatorFile, count: usize) -> Result<SpectrumOutput, CliError> {
    if count == 0 {
        return Err(CliError::Input("--count must be at least 1".into()));
    }
    let s = eigenvalues(&file.operator()?, count)?;
    Ok(SpectrumOutput {
        count,
        shift: file.shift,
        certificate: s.certificate_holds(),
        eigenvalues: s.eigenvalues,
        oscillation_indices: s.count_certificate,
    })
}

#[derive(Debug, Serialize)]
pub struct SeriesOutput {
    pub endpoint: u8,
    pub branching: usize,
    pub boundary: String,
    pub nu: f64,
    pub shift: f64,
    /// `d² q = Σ q_m d^(m/N)`.
    pub potential_coefficients: Vec<f64>,
    /// Normalized solution `d^(ν+1/2) Σ c_m d^(m/N)`.
    pub coefficients: Vec<f64>,
    pub handoff: f64,
    pub tail: f64,
}

pub fn series(file: &OperatorFile, endpoint: u8, terms: Option<usize>) -> Result<SeriesOutput, CliError> {
    let end = match endpoint {
        0 => Endpoint::Left,
        1 => Endpoint::Right,
        _ => return Err(CliError::Input(format!("--endpoint must be 0 or 1, got {endpoint}"))),
    };
    let op = file.operator()?;
    let expansion = op.potential().expansion(end);
    let n = expansion.branching();
    let terms = terms.unwrap_or_else(|| default_terms(n));
    if terms == 0 {
        return Err(CliError::Input("--terms must be at least 1".into()));
    }
    let bc = op.boundary(end);
    let seed = frobenius_seed(op.potential(), end, bc, op.shift(), Some(terms))?;
    Ok(SeriesOutput {
        endpoint,
        branching: n,
        boundary: format_boundary(bc.kind()),
        nu: bc.nu(),
        shift: op.shift(),
        potential_coefficients: (0..terms).map(|m| expansion.coefficient(m)).collect(),
        coefficients: seed.coeffs()[..terms.min(seed.coeffs().len())].to_vec(),
        handoff: seed.handoff(),
        tail: seed.tail(),
    })
}

#[derive(Debug, Serialize)]
pub struct RouteValue {
    pub route: &'static str,
    pub det: f64,
}

#[derive(Debug, Default, Serialize)]
pub struct ParameterOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s1: Option<f64>,
    pub bc0: String,
    pub bc1: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub family: &'static str,
    pub parameters: ParameterOutput,
    pub routes: Vec<RouteValue>,
    pub max_rel_discrepancy: f64,
    pub tol: f64,
    pub agree: bool,
}

/// Default agreement for `verify`; the trace route is only good to this.
pub const TRACE_VERIFY_TOL: f64 = 1e-3;
pub const VERIFY_TOL: f64 = 1e-5;

type RouteFn<'a> = Box<dyn Fn() -> Result<f64, CliError> + Send + Sync + 'a>;

/// `|a - b| / max(|a|, |b|)`, zero when both vanish.
fn discrepancy(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Every route the family supports, evaluated concurrently and reported in
/// a fixed order.
pub fn verify(file: &OperatorFile, tol: Option<f64>) -> Result<VerifyOutput, CliError> {
    let tol = tol.unwrap_or(if file.family == Family::Bessel { TRACE_VERIFY_TOL } else { VERIFY_TOL });
    if file.shift != 0.0 {
        return Err(CliError::Input("verify compares unshifted operators; drop the shift".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Input(format!("--tol must be positive, got {tol}")));
    }
    let op = file.operator()?;
    let wronskian: RouteFn = Box::new(|| Ok(det_wronskian(&op)?.det));
    let defaults = OperatorFile::family(file.family, file.parameters);
    let default_bcs = (file.bc0, file.bc1) == (defaults.bc0, defaults.bc1);
    let mut parameters = ParameterOutput {
        bc0: format_boundary(file.bc0),
        bc1: format_boundary(file.bc1),
        ..Default::default()
    };
    let unsupported = || {
        CliError::Input(format!(
            "no independent routes for family {} with bc0 = {}, bc1 = {}",
            file.family.name(),
            format_boundary(file.bc0),
            format_boundary(file.bc1)
        ))
    };

    let routes: Vec<(&'static str, RouteFn)> = match (file.family, file.parameters) {
        (Family::Dirichlet, _) => {
            let oracle = match (file.bc0, file.bc1) {
                (BoundaryKind::Dirichlet, BoundaryKind::Dirichlet) => ZetaFamily::DirichletLaplacian,
                (BoundaryKind::Dirichlet, BoundaryKind::Neumann(0.0)) => ZetaFamily::DirichletNeumann,
                _ => return Err(unsupported()),
            };
            vec![
                ("wronskian", wronskian),
                ("closed_form", Box::new(|| Ok(2.0))),
                ("zeta_oracle", Box::new(move || Ok(det_via_zeta_oracle(oracle)?))),
            ]
        }
        (Family::Bessel, Parameters::Nu(nu)) if default_bcs => {
            parameters.nu = Some(nu);
            vec![
                ("wronskian", wronskian),
                ("closed_form", Box::new(move || Ok(det_model_closed(nu)?))),
                ("trace_integral", Box::new(move || Ok(det_via_trace_model(nu)?))),
            ]
        }
        (Family::Jacobi, Parameters::AlphaBeta { alpha, beta }) if default_bcs => {
            parameters.alpha = Some(alpha);
            parameters.beta = Some(beta);
            vec![
                ("wronskian", wronskian),
                ("closed_form", Box::new(move || Ok(det_jacobi_closed(alpha, beta)?))),
                ("zeta_oracle", Box::new(move || Ok(det_via_zeta_oracle(ZetaFamily::Jacobi { alpha, beta })?))),
            ]
        }
        (Family::Factorized, Parameters::S { s0, s1 }) if default_bcs => {
            parameters.s0 = Some(s0);
            parameters.s1 = Some(s1);
            vec![
                ("wronskian", wronskian),
                ("closed_form", Box::new(move || Ok(det_factorized_closed(&FactorizedSpec::rational(s0, s1, &[])?)?))),
            ]
        }
        _ => return Err(unsupported()),
    };

    let values: Vec<Result<f64, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = routes.iter().map(|(_, f)| scope.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().expect("route thread panicked")).collect()
    });
    let mut out = Vec::with_capacity(routes.len());
    for ((name, _), v) in routes.iter().zip(values) {
        out.push(RouteValue { route: name, det: v? });
    }
    let mut worst = 0f64;
    for (i, a) in out.iter().enumerate() {
        for b in &out[i + 1..] {
            worst = worst.max(discrepancy(a.det, b.det));
        }
    }
    Ok(VerifyOutput {
        family: file.family.name(),
        parameters,
        routes: out,
        max_rel_discrepancy: worst,
        tol,
        agree: worst <= tol,
    })
}
