//! Ground-truth angular power spectrum models.
//!
//! A model describes `ρ(θ)` on `Θ = [-π/2, π/2]`. Every variant except
//! [`ApsModel::PointSources`] is square integrable and can be mapped to the
//! transformed domain `g(x) = ρ(arcsin x)` on `[-1, 1]`. Mixture components
//! are truncated to `Θ` without renormalization.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use crate::array::ArrayConfig;
use crate::error::{PlvError, Result};
use crate::quad::QuadratureRule;
use crate::trig::{evaluate_trig, TrigCoeffs};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    /// Center angle in radians.
    pub mean: f64,
    /// Standard deviation in radians.
    pub std: f64,
    /// Total mass of the untruncated profile.
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointSource {
    pub angle: f64,
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ApsModel {
    /// Constant `height` on `[lo, hi]`, zero elsewhere.
    Uniform { lo: f64, hi: f64, height: f64 },
    GaussianMixture(Vec<MixtureComponent>),
    LaplacianMixture(Vec<MixtureComponent>),
    /// `g(x)` given directly as a trigonometric polynomial in the
    /// transformed domain, with frequencies `gamma·π·m`.
    TrigPolynomial { coeffs: TrigCoeffs, gamma: f64 },
    /// Dirac masses; only usable in the forward model.
    PointSources(Vec<PointSource>),
    Sum(Vec<ApsModel>),
}

fn check_angle(name: &str, theta: f64) -> Result<()> {
    if !(theta.is_finite() && theta.abs() <= FRAC_PI_2) {
        return Err(PlvError::Model(format!("{name} = {theta} is outside [-π/2, π/2]")));
    }
    Ok(())
}

fn check_nonnegative(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(PlvError::Model(format!("{name} must be finite and nonnegative, got {v}")));
    }
    Ok(())
}

impl ApsModel {
    /// Flat spectrum of the given height over all of `Θ`.
    pub fn full_uniform(height: f64) -> Self {
        ApsModel::Uniform { lo: -FRAC_PI_2, hi: FRAC_PI_2, height }
    }

    pub fn uniform(lo: f64, hi: f64, height: f64) -> Result<Self> {
        let m = ApsModel::Uniform { lo, hi, height };
        m.validate()?;
        Ok(m)
    }

    pub fn gaussian(mean: f64, std: f64, weight: f64) -> Result<Self> {
        let m = ApsModel::GaussianMixture(vec![MixtureComponent { mean, std, weight }]);
        m.validate()?;
        Ok(m)
    }

    pub fn laplacian(mean: f64, std: f64, weight: f64) -> Result<Self> {
        let m = ApsModel::LaplacianMixture(vec![MixtureComponent { mean, std, weight }]);
        m.validate()?;
        Ok(m)
    }

    pub fn trig_polynomial(coeffs: TrigCoeffs, gamma: f64) -> Result<Self> {
        let m = ApsModel::TrigPolynomial { coeffs, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn point_sources(sources: Vec<PointSource>) -> Result<Self> {
        let m = ApsModel::PointSources(sources);
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ApsModel::Uniform { lo, hi, height } => {
                check_angle("lo", *lo)?;
                check_angle("hi", *hi)?;
                if lo > hi {
                    return Err(PlvError::Model(format!("uniform segment has lo = {lo} > hi = {hi}")));
                }
                check_nonnegative("height", *height)
            }
            ApsModel::GaussianMixture(components) | ApsModel::LaplacianMixture(components) => {
                for c in components {
                    check_angle("mean", c.mean)?;
                    check_nonnegative("weight", c.weight)?;
                    if !(c.std.is_finite() && c.std > 0.0) {
                        return Err(PlvError::Model(format!("std must be positive, got {}", c.std)));
                    }
                }
                Ok(())
            }
            ApsModel::TrigPolynomial { gamma, .. } => {
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return Err(PlvError::Model(format!("trig polynomial gamma must be positive, got {gamma}")));
                }
                Ok(())
            }
            ApsModel::PointSources(sources) => {
                for s in sources {
                    check_angle("angle", s.angle)?;
                    check_nonnegative("power", s.power)?;
                }
                Ok(())
            }
            ApsModel::Sum(parts) => parts.iter().try_for_each(ApsModel::validate),
        }
    }

    /// False exactly when the model contains Dirac masses.
    pub fn in_l2(&self) -> bool {
        match self {
            ApsModel::PointSources(_) => false,
            ApsModel::Sum(parts) => parts.iter().all(ApsModel::in_l2),
            _ => true,
        }
    }

    fn require_l2(&self) -> Result<()> {
        if self.in_l2() {
            Ok(())
        } else {
            Err(PlvError::Model(
                "point sources are not square integrable and have no density".into(),
            ))
        }
    }

    /// `ρ(θ)` for `θ ∈ Θ`.
    pub fn density(&self, theta: f64) -> Result<f64> {
        self.require_l2()?;
        if !(theta.abs() <= FRAC_PI_2) {
            return Err(PlvError::Domain(format!("θ = {theta} is outside [-π/2, π/2]")));
        }
        Ok(self.density_unchecked(theta))
    }

    pub(crate) fn density_unchecked(&self, theta: f64) -> f64 {
        match self {
            ApsModel::Uniform { lo, hi, height } => {
                if theta >= *lo && theta <= *hi {
                    *height
                } else {
                    0.0
                }
            }
            ApsModel::GaussianMixture(components) => components
                .iter()
                .map(|c| {
                    let z = (theta - c.mean) / c.std;
                    c.weight / (c.std * (2.0 * PI).sqrt()) * (-0.5 * z * z).exp()
                })
                .sum(),
            ApsModel::LaplacianMixture(components) => components
                .iter()
                .map(|c| {
                    let scale = c.std / SQRT_2;
                    c.weight / (2.0 * scale) * (-(theta - c.mean).abs() / scale).exp()
                })
                .sum(),
            ApsModel::TrigPolynomial { coeffs, gamma } => {
                let cfg = trig_config(coeffs, *gamma);
                evaluate_trig(&cfg, coeffs, theta.sin())
            }
            ApsModel::PointSources(_) => 0.0,
            ApsModel::Sum(parts) => parts.iter().map(|p| p.density_unchecked(theta)).sum(),
        }
    }

    /// Angles where `ρ` is not smooth (segment edges, Laplacian cusps),
    /// sorted and restricted to the interior of `Θ`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.collect_breakpoints(&mut out);
        out.retain(|t| t.abs() < FRAC_PI_2);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    fn collect_breakpoints(&self, out: &mut Vec<f64>) {
        match self {
            ApsModel::Uniform { lo, hi, .. } => out.extend([*lo, *hi]),
            ApsModel::LaplacianMixture(components) => out.extend(components.iter().map(|c| c.mean)),
            ApsModel::Sum(parts) => parts.iter().for_each(|p| p.collect_breakpoints(out)),
            _ => {}
        }
    }

    /// True when `g(x)` is smooth on the closed interval `[-1, 1]`, so that
    /// plain Chebyshev–Gauss converges spectrally.
    pub fn smooth_in_x(&self) -> bool {
        match self {
            ApsModel::TrigPolynomial { .. } => true,
            ApsModel::Uniform { lo, hi, .. } => *lo <= -FRAC_PI_2 && *hi >= FRAC_PI_2,
            ApsModel::Sum(parts) => parts.iter().all(ApsModel::smooth_in_x),
            _ => false,
        }
    }

    /// Chebyshev-weighted rule suited to this model: Chebyshev–Gauss when
    /// `g` is smooth in `x`, otherwise Gauss–Legendre panels in `arccos x`.
    pub fn weighted_rule(&self, nodes: usize) -> QuadratureRule {
        if self.smooth_in_x() {
            QuadratureRule::chebyshev_gauss(nodes)
        } else {
            QuadratureRule::chebyshev_panels(nodes, &self.breakpoints_x())
        }
    }

    /// Breakpoints mapped to the transformed domain, `x = sin θ`.
    pub fn breakpoints_x(&self) -> Vec<f64> {
        self.breakpoints().into_iter().map(f64::sin).collect()
    }

    /// Point sources contained in the model (directly or inside sums).
    pub fn point_source_list(&self) -> Vec<PointSource> {
        match self {
            ApsModel::PointSources(s) => s.clone(),
            ApsModel::Sum(parts) => parts.iter().flat_map(ApsModel::point_source_list).collect(),
            _ => Vec::new(),
        }
    }

    /// The model with every Dirac component removed.
    pub fn continuous_part(&self) -> ApsModel {
        match self {
            ApsModel::PointSources(_) => ApsModel::Sum(Vec::new()),
            ApsModel::Sum(parts) => ApsModel::Sum(parts.iter().map(ApsModel::continuous_part).collect()),
            other => other.clone(),
        }
    }
}

pub(crate) fn trig_config(coeffs: &TrigCoeffs, gamma: f64) -> ArrayConfig {
    ArrayConfig::new(coeffs.antennas(), gamma).expect("validated trig polynomial")
}

/// The transformed spectrum `g(x) = ρ(arcsin x)` of an L² model.
#[derive(Debug, Clone, Copy)]
pub struct TransformedAps<'a> {
    model: &'a ApsModel,
}

impl<'a> TransformedAps<'a> {
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x.abs() <= 1.0) {
            return Err(PlvError::Domain(format!("x = {x} is outside [-1, 1]")));
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation for quadrature nodes already known to lie in `[-1, 1]`.
    pub fn eval_unchecked(&self, x: f64) -> f64 {
        match self.model {
            // evaluate in x directly so the identity g_b(x) is exact
            ApsModel::TrigPolynomial { coeffs, gamma } => evaluate_trig(&trig_config(coeffs, *gamma), coeffs, x),
            ApsModel::Sum(parts) => parts.iter().map(|p| TransformedAps { model: p }.eval_unchecked(x)).sum(),
            other => other.density_unchecked(x.asin()),
        }
    }

    pub fn model(&self) -> &'a ApsModel {
        self.model
    }
}

/// Maps a model into the transformed domain. Fails for Dirac masses.
pub fn transform_aps(model: &ApsModel) -> Result<TransformedAps<'_>> {
    model.validate()?;
    model.require_l2()?;
    Ok(TransformedAps { model })
}

/// Which variable a sampled function is tabulated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleDomain {
    /// `x = sin θ ∈ [-1, 1]`
    X,
    /// `θ ∈ [-π/2, π/2]`
    Theta,
}

impl SampleDomain {
    pub fn bound(&self) -> f64 {
        match self {
            SampleDomain::X => 1.0,
            SampleDomain::Theta => FRAC_PI_2,
        }
    }

    /// `points` equally spaced samples covering the closed domain.
    pub fn uniform_grid(&self, points: usize) -> Vec<f64> {
        let b = self.bound();
        match points {
            0 => Vec::new(),
            1 => vec![0.0],
            n => (0..n).map(|i| -b + 2.0 * b * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    domain: SampleDomain,
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(domain: SampleDomain, grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(PlvError::InvalidInput(format!(
                "grid has {} points but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(PlvError::InvalidInput("grid must be strictly increasing".into()));
        }
        Ok(Self { domain, grid, values })
    }

    pub fn domain(&self) -> SampleDomain {
        self.domain
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Fraction of absolute mass carried by negative samples (trapezoidal).
    pub fn negative_mass_fraction(&self) -> f64 {
        let trapz = |f: &dyn Fn(f64) -> f64| -> f64 {
            self.grid
                .windows(2)
                .zip(self.values.windows(2))
                .map(|(g, v)| 0.5 * (g[1] - g[0]) * (f(v[0]) + f(v[1])))
                .sum()
        };
        let total = trapz(&|v: f64| v.abs());
        if total == 0.0 {
            return 0.0;
        }
        trapz(&|v: f64| (-v).max(0.0)) / total
    }
}
