//! Scenario configuration files.
//!
//! JSON with an explicit `schema` tag. Parse errors carry line and column;
//! validation errors name the offending field by its dotted path.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use plv_core::{ApsModel, ArrayConfig, MixtureComponent, PointSource, SampleDomain, TrigCoeffs};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const SCHEMA: &str = "plv-scenario/v1";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub schema: String,
    pub array: RawArray,
    pub aps: RawAps,
    #[serde(default)]
    pub quadrature: RawQuadrature,
    #[serde(default)]
    pub output: RawOutput,
    #[serde(default)]
    pub tolerances: RawTolerances,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArray {
    #[serde(alias = "M", alias = "m")]
    pub antennas: i64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum RawAps {
    Uniform {
        #[serde(default = "neg_half_pi")]
        lo: f64,
        #[serde(default = "half_pi")]
        hi: f64,
        #[serde(default = "one")]
        height: f64,
    },
    GaussianMixture {
        components: Vec<RawComponent>,
    },
    LaplacianMixture {
        components: Vec<RawComponent>,
    },
    TrigPolynomial {
        coeffs: Vec<f64>,
        gamma: Option<f64>,
    },
    PointSources {
        sources: Vec<RawSource>,
    },
    Sum {
        parts: Vec<RawAps>,
    },
}

fn neg_half_pi() -> f64 {
    -FRAC_PI_2
}
fn half_pi() -> f64 {
    FRAC_PI_2
}
fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComponent {
    pub mean: f64,
    pub std: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSource {
    pub angle: f64,
    pub power: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuadrature {
    #[serde(default = "default_nodes")]
    pub nodes: i64,
}

impl Default for RawQuadrature {
    fn default() -> Self {
        Self { nodes: default_nodes() }
    }
}

fn default_nodes() -> i64 {
    256
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RawDomain {
    Theta,
    X,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    #[serde(default = "default_grid_points")]
    pub grid_points: i64,
    #[serde(default = "default_domain")]
    pub domain: RawDomain,
    #[serde(default)]
    pub paths: OutputPaths,
}

impl Default for RawOutput {
    fn default() -> Self {
        Self { grid_points: default_grid_points(), domain: default_domain(), paths: OutputPaths::default() }
    }
}

fn default_grid_points() -> i64 {
    181
}

fn default_domain() -> RawDomain {
    RawDomain::Theta
}

/// File names written inside `--out`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputPaths {
    pub lags: String,
    pub coefficients: String,
    pub aps: String,
    pub recovery_report: String,
    pub certificate: String,
    pub sweep: String,
    pub gram_re: String,
    pub gram_im: String,
    pub gram_report: String,
}

impl Default for OutputPaths {
    fn default() -> Self {
        Self {
            lags: "lags.csv".into(),
            coefficients: "coefficients.csv".into(),
            aps: "aps.csv".into(),
            recovery_report: "recovery.txt".into(),
            certificate: "certificate.txt".into(),
            sweep: "sweep.csv".into(),
            gram_re: "gram_re.csv".into(),
            gram_im: "gram_im.csv".into(),
            gram_report: "gram.txt".into(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTolerances {
    #[serde(default = "default_constraint")]
    pub constraint: f64,
    #[serde(default = "default_identifiability")]
    pub identifiability: f64,
}

impl Default for RawTolerances {
    fn default() -> Self {
        Self { constraint: default_constraint(), identifiability: default_identifiability() }
    }
}

fn default_constraint() -> f64 {
    plv_core::plv::DEFAULT_CONSTRAINT_TOLERANCE
}

fn default_identifiability() -> f64 {
    plv_core::analysis::DEFAULT_IDENTIFIABILITY_TOLERANCE
}

/// Validated scenario.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub array: ArrayConfig,
    pub aps: ApsModel,
    pub nodes: usize,
    pub grid_points: usize,
    pub domain: SampleDomain,
    pub paths: OutputPaths,
    pub constraint_tolerance: f64,
    pub identifiability_tolerance: f64,
}

pub fn load(path: &Path) -> CliResult<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> CliResult<ScenarioConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))?;
    validate(raw)
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::config(format!("{field}: {msg}"))
}

fn positive_finite(field: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(field_err(field, format!("must be a positive finite number, got {v}")))
    }
}

fn nonnegative(field: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(field_err(field, format!("must be finite and nonnegative, got {v}")))
    }
}

fn angle(field: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() && v.abs() <= FRAC_PI_2 {
        Ok(v)
    } else {
        Err(field_err(field, format!("must lie in [-pi/2, pi/2], got {v}")))
    }
}

pub fn validate(raw: RawConfig) -> CliResult<ScenarioConfig> {
    if raw.schema != SCHEMA {
        return Err(field_err("schema", format!("expected \"{SCHEMA}\", got \"{}\"", raw.schema)));
    }
    if raw.array.antennas < 1 {
        return Err(field_err("array.antennas", format!("must be at least 1, got {}", raw.array.antennas)));
    }
    let gamma = positive_finite("array.gamma", raw.array.gamma)?;
    let array = ArrayConfig::new(raw.array.antennas as usize, gamma).map_err(|e| field_err("array", e))?;

    let aps = build_aps(&raw.aps, "aps", gamma)?;

    if raw.quadrature.nodes < 16 {
        return Err(field_err("quadrature.nodes", format!("must be at least 16, got {}", raw.quadrature.nodes)));
    }
    if raw.output.grid_points < 1 {
        return Err(field_err("output.grid_points", format!("must be at least 1, got {}", raw.output.grid_points)));
    }
    let constraint_tolerance = positive_finite("tolerances.constraint", raw.tolerances.constraint)?;
    let identifiability_tolerance = positive_finite("tolerances.identifiability", raw.tolerances.identifiability)?;

    Ok(ScenarioConfig {
        array,
        aps,
        nodes: raw.quadrature.nodes as usize,
        grid_points: raw.output.grid_points as usize,
        domain: match raw.output.domain {
            RawDomain::Theta => SampleDomain::Theta,
            RawDomain::X => SampleDomain::X,
        },
        paths: raw.output.paths,
        constraint_tolerance,
        identifiability_tolerance,
    })
}

fn build_aps(raw: &RawAps, path: &str, array_gamma: f64) -> CliResult<ApsModel> {
    let components = |list: &[RawComponent]| -> CliResult<Vec<MixtureComponent>> {
        list.iter()
            .enumerate()
            .map(|(i, c)| {
                Ok(MixtureComponent {
                    mean: angle(&format!("{path}.components[{i}].mean"), c.mean)?,
                    std: positive_finite(&format!("{path}.components[{i}].std"), c.std)?,
                    weight: nonnegative(&format!("{path}.components[{i}].weight"), c.weight)?,
                })
            })
            .collect()
    };
    let model = match raw {
        RawAps::Uniform { lo, hi, height } => {
            let lo = angle(&format!("{path}.lo"), *lo)?;
            let hi = angle(&format!("{path}.hi"), *hi)?;
            if lo > hi {
                return Err(field_err(&format!("{path}.lo"), format!("must not exceed hi ({lo} > {hi})")));
            }
            ApsModel::Uniform { lo, hi, height: nonnegative(&format!("{path}.height"), *height)? }
        }
        RawAps::GaussianMixture { components: c } => ApsModel::GaussianMixture(components(c)?),
        RawAps::LaplacianMixture { components: c } => ApsModel::LaplacianMixture(components(c)?),
        RawAps::TrigPolynomial { coeffs, gamma } => {
            let gamma = positive_finite(&format!("{path}.gamma"), gamma.unwrap_or(array_gamma))?;
            let coeffs = TrigCoeffs::new(coeffs.clone()).map_err(|e| field_err(&format!("{path}.coeffs"), e))?;
            ApsModel::TrigPolynomial { coeffs, gamma }
        }
        RawAps::PointSources { sources } => ApsModel::PointSources(
            sources
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    Ok(PointSource {
                        angle: angle(&format!("{path}.sources[{i}].angle"), s.angle)?,
                        power: nonnegative(&format!("{path}.sources[{i}].power"), s.power)?,
                    })
                })
                .collect::<CliResult<_>>()?,
        ),
        RawAps::Sum { parts } => ApsModel::Sum(
            parts
                .iter()
                .enumerate()
                .map(|(i, p)| build_aps(p, &format!("{path}.parts[{i}]"), array_gamma))
                .collect::<CliResult<_>>()?,
        ),
    };
    model.validate().map_err(|e| field_err(path, e))?;
    Ok(model)
}
