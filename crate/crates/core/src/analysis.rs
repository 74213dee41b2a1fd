//! Energy and error certificates.
//!
//! With `b = G⁻¹ y`, the recovered energy is `‖g_plv‖²_w = bᵀGb = yᵀG⁻¹y`,
//! and for a square-integrable truth `g` the reconstruction error is
//! `‖g - g_plv‖²_w = ‖g‖²_w - yᵀG⁻¹y`. Exact recovery happens iff `g` lies
//! in the trigonometric subspace.

use crate::array::ArrayConfig;
use crate::error::{PlvError, Result};
use crate::forward::{synthesize_lags, DomainPath, SynthesisOptions};
use crate::gram::gram_blocks;
use crate::model::{transform_aps, ApsModel, TransformedAps};
use crate::plv::{project_onto_nperp, recover_with, PlvSolution, RecoveryOptions};
use crate::quad::{nodes_for_frequency, weighted_norm_sq, QuadratureRule};
use crate::trig::{evaluate_trig, TrigCoeffs};

/// Default relative threshold on `error / energy` for an identifiability verdict.
pub const DEFAULT_IDENTIFIABILITY_TOLERANCE: f64 = 1e-6;
/// Default node count (per panel) for energy integrals.
pub const DEFAULT_ENERGY_NODES: usize = 512;
/// Max relative change allowed when the energy rule is doubled.
pub const NODE_DOUBLING_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub synthesis: SynthesisOptions,
    pub recovery: RecoveryOptions,
    pub energy_nodes: usize,
    pub identifiability_tolerance: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            synthesis: SynthesisOptions::default(),
            recovery: RecoveryOptions::default(),
            energy_nodes: DEFAULT_ENERGY_NODES,
            identifiability_tolerance: DEFAULT_IDENTIFIABILITY_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCertificate {
    /// `bᵀGb`
    pub energy_plv: f64,
    /// `‖g‖²_w` by quadrature.
    pub energy_truth: f64,
    /// `yᵀG⁻¹y`, evaluated as `yᵀb`.
    pub quadratic_form: f64,
    /// `energy_truth - quadratic_form`
    pub reconstruction_error_sq: f64,
    /// `‖g - g_plv‖²_w` by quadrature.
    pub direct_error_sq: f64,
    /// `|Q(g) - Q(g_plv) - Q(g - g_plv)|` with every term by quadrature.
    pub pythagoras_gap: f64,
    /// `⟨g_plv, g - g_plv⟩_w` by quadrature; zero for the minimum-norm solution.
    pub cross_term: f64,
    pub identifiable: bool,
    /// `reconstruction_error_sq / energy_truth` (0 for a zero truth).
    pub error_ratio: f64,
    pub constraint_residual: f64,
    pub coeffs: TrigCoeffs,
}

/// Chebyshev-weighted rule matching a model's smoothness and the array's frequencies.
pub fn energy_rule(model: &ApsModel, cfg: &ArrayConfig, nodes: usize) -> QuadratureRule {
    let n = nodes.max(nodes_for_frequency(cfg.max_gram_kappa()));
    model.weighted_rule(n)
}

/// `‖g‖²_w` of the truth, with a node-doubling convergence check.
pub fn truth_energy(model: &ApsModel, cfg: &ArrayConfig, nodes: usize) -> Result<f64> {
    let g = transform_aps(model)?;
    let coarse = weighted_norm_sq(|x| g.eval_unchecked(x), &energy_rule(model, cfg, nodes));
    let fine = weighted_norm_sq(|x| g.eval_unchecked(x), &energy_rule(model, cfg, 2 * nodes));
    if !((coarse - fine).abs() <= NODE_DOUBLING_TOLERANCE * fine.abs().max(f64::MIN_POSITIVE)) && coarse != fine {
        return Err(PlvError::Quadrature(format!(
            "energy integral not converged: {coarse:e} at {nodes} nodes vs {fine:e} at {} nodes",
            2 * nodes
        )));
    }
    Ok(coarse)
}

/// `bᵀGb` from the closed-form Gram blocks.
pub fn energy_of_solution(sol: &PlvSolution) -> f64 {
    coefficient_energy(sol.config(), sol.coeffs())
}

pub fn coefficient_energy(cfg: &ArrayConfig, b: &TrigCoeffs) -> f64 {
    let (re, im) = gram_blocks(cfg);
    let quad = |g: &nalgebra::DMatrix<f64>, v: &[f64]| -> f64 {
        let v = nalgebra::DVector::from_column_slice(v);
        v.dot(&(g * &v))
    };
    let mut e = quad(&re, b.cos_block());
    if im.nrows() > 0 {
        e += quad(&im, b.sin_block());
    }
    e
}

/// `yᵀG⁻¹y`, evaluated as `yᵀb`.
pub fn quadratic_form(sol: &PlvSolution) -> f64 {
    sol.measurements().dot(sol.coeffs())
}

pub fn certify(model: &ApsModel, cfg: &ArrayConfig) -> Result<ErrorCertificate> {
    certify_with(model, cfg, &CertifyOptions::default())
}

/// Runs synthesis, recovery and the quadrature energies for an L² model.
pub fn certify_with(model: &ApsModel, cfg: &ArrayConfig, opts: &CertifyOptions) -> Result<ErrorCertificate> {
    model.validate()?;
    if !model.in_l2() {
        return Err(PlvError::Model(
            "certificate requires a square-integrable spectrum; point sources have no finite energy".into(),
        ));
    }
    let g = transform_aps(model)?;
    let r = synthesize_lags(model, cfg, &opts.synthesis)?;
    let sol = recover_with(&r, cfg, &opts.recovery)?;

    let energy_truth = truth_energy(model, cfg, opts.energy_nodes)?;
    let energy_plv = energy_of_solution(&sol);
    let quadratic_form = quadratic_form(&sol);
    let reconstruction_error_sq = energy_truth - quadratic_form;

    let rule = energy_rule(model, cfg, opts.energy_nodes);
    let norms = QuadratureNorms::compute(&g, &sol, &rule);

    let error_ratio = if energy_truth > 0.0 { reconstruction_error_sq / energy_truth } else { 0.0 };
    Ok(ErrorCertificate {
        energy_plv,
        energy_truth,
        quadratic_form,
        reconstruction_error_sq,
        direct_error_sq: norms.difference,
        pythagoras_gap: (norms.truth - norms.recovered - norms.difference).abs(),
        cross_term: norms.cross,
        identifiable: error_ratio <= opts.identifiability_tolerance,
        error_ratio,
        constraint_residual: sol.constraint_residual(),
        coeffs: sol.coeffs().clone(),
    })
}

/// The three squared norms and the cross term of the orthogonal split
/// `g = g_plv + (g - g_plv)`, all by the same quadrature rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureNorms {
    pub truth: f64,
    pub recovered: f64,
    pub difference: f64,
    pub cross: f64,
}

impl QuadratureNorms {
    pub fn compute(g: &TransformedAps<'_>, sol: &PlvSolution, rule: &QuadratureRule) -> Self {
        let mut out = QuadratureNorms { truth: 0.0, recovered: 0.0, difference: 0.0, cross: 0.0 };
        for (&x, &w) in rule.abscissae().iter().zip(rule.weights()) {
            let t = g.eval_unchecked(x);
            let p = sol.eval_x(x);
            let d = t - p;
            out.truth += w * t * t;
            out.recovered += w * p * p;
            out.difference += w * d * d;
            out.cross += w * p * d;
        }
        out
    }
}

/// Second identifiability verdict: `‖g - P g‖²_w <= tol·‖g‖²_w`, with the
/// projection computed from quadrature moments rather than lags.
pub fn membership_verdict(model: &ApsModel, cfg: &ArrayConfig, opts: &CertifyOptions) -> Result<(bool, f64)> {
    let g = transform_aps(model)?;
    let rule = energy_rule(model, cfg, opts.energy_nodes);
    let c = project_onto_nperp(|x| g.eval_unchecked(x), cfg, &rule)?;
    let residual = weighted_norm_sq(|x| g.eval_unchecked(x) - evaluate_trig(cfg, &c, x), &rule);
    let energy = weighted_norm_sq(|x| g.eval_unchecked(x), &rule);
    let ratio = if energy > 0.0 { residual / energy } else { 0.0 };
    Ok((ratio <= opts.identifiability_tolerance, ratio))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub antennas: usize,
    pub reconstruction_error_sq: f64,
    pub energy_truth: f64,
    pub identifiable: bool,
}

pub fn resolution_sweep(model: &ApsModel, gamma: f64, m_values: &[usize]) -> Result<Vec<SweepPoint>> {
    resolution_sweep_with(model, gamma, m_values, &CertifyOptions::default())
}

/// Certificate error for each antenna count. For fixed `gamma` the subspaces
/// are nested, so the error is non-increasing in `M`.
pub fn resolution_sweep_with(
    model: &ApsModel,
    gamma: f64,
    m_values: &[usize],
    opts: &CertifyOptions,
) -> Result<Vec<SweepPoint>> {
    if m_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(PlvError::InvalidInput("sweep antenna counts must be strictly increasing".into()));
    }
    m_values
        .iter()
        .map(|&m| {
            let cfg = ArrayConfig::new(m, gamma)?;
            let cert = certify_with(model, &cfg, opts)?;
            Ok(SweepPoint {
                antennas: m,
                reconstruction_error_sq: cert.reconstruction_error_sq,
                energy_truth: cert.energy_truth,
                identifiable: cert.identifiable,
            })
        })
        .collect()
}

/// True when each error is at most the previous one plus `slack`.
pub fn is_non_increasing(points: &[SweepPoint], slack: f64) -> bool {
    points
        .windows(2)
        .all(|w| w[1].reconstruction_error_sq <= w[0].reconstruction_error_sq + slack)
}

/// Synthesis options that integrate in the transformed domain.
pub fn x_domain_synthesis(nodes: usize) -> Result<SynthesisOptions> {
    SynthesisOptions::new(nodes, DomainPath::X)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PointSource;
    use std::f64::consts::PI;

    #[test]
    fn flat_spectrum_certificate() {
        let cfg = ArrayConfig::new(4, 1.0).unwrap();
        let cert = certify(&ApsModel::full_uniform(1.0), &cfg).unwrap();
        assert!((cert.energy_truth - PI).abs() < 1e-12);
        assert!((cert.quadratic_form - PI).abs() < 1e-10);
        assert!(cert.reconstruction_error_sq.abs() < 1e-10);
        assert!(cert.identifiable);
    }

    #[test]
    fn gaussian_cluster_is_not_identifiable() {
        let cfg = ArrayConfig::new(4, 1.0).unwrap();
        let cert = certify(&ApsModel::gaussian(0.3, 0.05, 1.0).unwrap(), &cfg).unwrap();
        assert!(cert.reconstruction_error_sq > 1e-3 * cert.energy_truth);
        assert!(!cert.identifiable);
        assert!(cert.pythagoras_gap <= 1e-8 * cert.energy_truth);
        assert!((cert.energy_plv - cert.quadratic_form).abs() <= 1e-10 * cert.energy_plv);
    }

    #[test]
    fn point_sources_have_no_certificate() {
        let cfg = ArrayConfig::new(4, 1.0).unwrap();
        let m = ApsModel::point_sources(vec![PointSource { angle: 0.1, power: 1.0 }]).unwrap();
        assert!(matches!(certify(&m, &cfg), Err(PlvError::Model(_))));
    }

    #[test]
    fn energy_examples() {
        let cfg = ArrayConfig::new(3, 1.0).unwrap();
        assert_eq!(coefficient_energy(&cfg, &TrigCoeffs::zeros(&cfg)), 0.0);
        assert!((coefficient_energy(&cfg, &TrigCoeffs::unit(&cfg, 0)) - PI).abs() < 1e-14);
    }

    #[test]
    fn sweep_rejects_unsorted() {
        let m = ApsModel::full_uniform(1.0);
        assert!(resolution_sweep(&m, 1.0, &[4, 2]).is_err());
    }

    #[test]
    fn uniform_sweep_is_flat() {
        let pts = resolution_sweep(&ApsModel::full_uniform(1.0), 1.0, &[1, 2, 5, 9]).unwrap();
        assert!(pts.iter().all(|p| p.reconstruction_error_sq.abs() < 1e-9 && p.identifiable));
    }
}
