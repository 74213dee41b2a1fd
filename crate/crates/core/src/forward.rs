//! Forward model: covariance lags of a known spectrum.
//!
//! `r_m = ∫_Θ ρ(θ) e^{iκ_m sin θ} dθ`, computed either in the angle domain
//! or, after `x = sin θ`, as `⟨g, e^{iκ_m(·)}⟩_w`. Dirac components are
//! summed exactly and never pass through a quadrature grid.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::array::{toeplitz_from_lags, ArrayConfig, CovarianceLags};
use crate::error::{PlvError, Result};
use crate::model::{transform_aps, ApsModel};
use crate::quad::{nodes_for_frequency, theta_rule, QuadratureRule, DEFAULT_SYNTHESIS_NODES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainPath {
    /// Gauss–Legendre over `θ ∈ [-π/2, π/2]`.
    Theta,
    /// Chebyshev-weighted rule over `x ∈ [-1, 1]`.
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisOptions {
    nodes: usize,
    path: DomainPath,
}

impl SynthesisOptions {
    pub fn new(nodes: usize, path: DomainPath) -> Result<Self> {
        if nodes < 16 {
            return Err(PlvError::InvalidInput(format!("synthesis needs at least 16 nodes, got {nodes}")));
        }
        Ok(Self { nodes, path })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn path(&self) -> DomainPath {
        self.path
    }
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self { nodes: DEFAULT_SYNTHESIS_NODES, path: DomainPath::Theta }
    }
}

/// Node count per panel actually used for an array: the requested count,
/// raised if needed to resolve the highest lag frequency.
pub fn effective_nodes(cfg: &ArrayConfig, requested: usize) -> usize {
    requested.max(nodes_for_frequency(cfg.kappa(cfg.antennas() - 1)))
}

pub fn synthesize_lags(model: &ApsModel, cfg: &ArrayConfig, opts: &SynthesisOptions) -> Result<CovarianceLags> {
    model.validate()?;
    let m = cfg.antennas();
    let nodes = effective_nodes(cfg, opts.nodes);

    let mut lags = vec![Complex64::new(0.0, 0.0); m];
    match opts.path {
        DomainPath::Theta => {
            let continuous = model.continuous_part();
            let rule = theta_rule(nodes, &continuous.breakpoints());
            accumulate(&mut lags, cfg, &rule, |t| continuous.density_unchecked(t), f64::sin);
        }
        DomainPath::X => {
            let g = transform_aps(model)?;
            let rule = model.weighted_rule(nodes);
            accumulate(&mut lags, cfg, &rule, |x| g.eval_unchecked(x), |x| x);
        }
    }

    for src in model.point_source_list() {
        let s = src.angle.sin();
        for (k, lag) in lags.iter_mut().enumerate() {
            *lag += Complex64::from_polar(src.power, cfg.kappa(k) * s);
        }
    }

    lags[0].im = 0.0;
    if lags.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(PlvError::Quadrature("synthesized lags are not finite".into()));
    }
    CovarianceLags::new(lags)
}

/// Adds `Σ_k w_k f(t_k) e^{iκ_m phase(t_k)}` to every lag.
fn accumulate<F, P>(lags: &mut [Complex64], cfg: &ArrayConfig, rule: &QuadratureRule, f: F, phase: P)
where
    F: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    for (&t, &w) in rule.abscissae().iter().zip(rule.weights()) {
        let v = w * f(t);
        if v == 0.0 {
            continue;
        }
        let p = phase(t);
        for (k, lag) in lags.iter_mut().enumerate() {
            *lag += Complex64::from_polar(v, cfg.kappa(k) * p);
        }
    }
}

/// `R = ∫ ρ(θ) a(θ) a(θ)^H dθ` as a Hermitian Toeplitz matrix.
pub fn synthesize_covariance(
    model: &ApsModel,
    cfg: &ArrayConfig,
    opts: &SynthesisOptions,
) -> Result<DMatrix<Complex64>> {
    Ok(toeplitz_from_lags(&synthesize_lags(model, cfg, opts)?))
}
