//! Minimum-norm spectrum recovery.
//!
//! Among all `g ∈ L²_w` reproducing the lags, the minimum-norm one is the
//! unique element of the feasible set that lies in the span of
//! `{1, cos(κ_m x), sin(κ_m x)}`. Its coefficients solve `G b = y`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::array::{lags_from_toeplitz, ArrayConfig, CovarianceLags};
use crate::error::{PlvError, Result};
use crate::gram::{assemble_gram_with, measurement_vector, MeasurementVector, DEFAULT_CONDITION_CEILING};
use crate::model::{SampleDomain, SampledFunction};
use crate::quad::{nodes_for_frequency, weighted_inner, weighted_inner_complex, QuadratureRule, DEFAULT_SYNTHESIS_NODES};
use crate::trig::{basis, evaluate_trig, TrigCoeffs};

/// Default constraint-residual tolerance, scaled by `1 + max|r_m|`.
pub const DEFAULT_CONSTRAINT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveryOptions {
    pub constraint_tolerance: f64,
    pub condition_ceiling: f64,
    /// Minimum Chebyshev–Gauss nodes for the residual check.
    pub residual_nodes: usize,
}

impl Default for RecoveryOptions {
    fn default() -> Self {
        Self {
            constraint_tolerance: DEFAULT_CONSTRAINT_TOLERANCE,
            condition_ceiling: DEFAULT_CONDITION_CEILING,
            residual_nodes: DEFAULT_SYNTHESIS_NODES,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlvSolution {
    coeffs: TrigCoeffs,
    measurements: MeasurementVector,
    constraint_residual: f64,
    cfg: ArrayConfig,
}

impl PlvSolution {
    pub fn coeffs(&self) -> &TrigCoeffs {
        &self.coeffs
    }

    pub fn measurements(&self) -> &MeasurementVector {
        &self.measurements
    }

    /// Max over the `2M - 1` real constraints of `|⟨g, e^{iκ_m(·)}⟩_w - r_m|`.
    pub fn constraint_residual(&self) -> f64 {
        self.constraint_residual
    }

    pub fn config(&self) -> &ArrayConfig {
        &self.cfg
    }

    /// `g(x)`.
    pub fn eval_x(&self, x: f64) -> f64 {
        evaluate_trig(&self.cfg, &self.coeffs, x)
    }

    /// `ρ(θ) = g(sin θ)`.
    pub fn eval_theta(&self, theta: f64) -> f64 {
        self.eval_x(theta.sin())
    }
}

/// Chebyshev–Gauss rule fine enough for products of two basis functions.
pub fn residual_rule(cfg: &ArrayConfig, min_nodes: usize) -> QuadratureRule {
    QuadratureRule::chebyshev_gauss(min_nodes.max(nodes_for_frequency(cfg.max_gram_kappa())))
}

/// Max deviation of the lags of `g_b` from `r` over all real constraints.
pub fn constraint_residual(cfg: &ArrayConfig, b: &TrigCoeffs, r: &CovarianceLags, rule: &QuadratureRule) -> f64 {
    let g = |x: f64| evaluate_trig(cfg, b, x);
    let mut worst: f64 = 0.0;
    for (m, target) in r.as_slice().iter().enumerate() {
        let got = weighted_inner_complex(g, m as i64, cfg, rule);
        worst = worst.max((got.re - target.re).abs());
        if m > 0 {
            worst = worst.max((got.im - target.im).abs());
        }
    }
    worst
}

pub fn recover(r: &CovarianceLags, cfg: &ArrayConfig) -> Result<PlvSolution> {
    recover_with(r, cfg, &RecoveryOptions::default())
}

/// `b = G⁻¹ y`, followed by a quadrature check that `g_b` reproduces `r`.
pub fn recover_with(r: &CovarianceLags, cfg: &ArrayConfig, opts: &RecoveryOptions) -> Result<PlvSolution> {
    r.check_len(cfg)?;
    let gram = assemble_gram_with(cfg, opts.condition_ceiling)?;
    let measurements = measurement_vector(r);
    let coeffs = gram.solve(&measurements)?;

    let rule = residual_rule(cfg, opts.residual_nodes);
    let residual = constraint_residual(cfg, &coeffs, r, &rule);
    let tolerance = opts.constraint_tolerance * (1.0 + r.max_abs());
    if !(residual <= tolerance) {
        return Err(PlvError::Feasibility { residual, tolerance });
    }
    Ok(PlvSolution { coeffs, measurements, constraint_residual: residual, cfg: *cfg })
}

/// Validates Hermitian Toeplitz structure within `tol`, then recovers.
pub fn recover_from_matrix(matrix: &DMatrix<Complex64>, cfg: &ArrayConfig, tol: f64) -> Result<PlvSolution> {
    let r = lags_from_toeplitz(matrix, tol)?;
    recover(&r, cfg)
}

/// Orthogonal projection of `g` onto the trigonometric subspace: solves
/// `G c = v` with `v_k = ⟨g, φ_k⟩_w` computed by `rule`.
pub fn project_onto_nperp<F: Fn(f64) -> f64>(g: F, cfg: &ArrayConfig, rule: &QuadratureRule) -> Result<TrigCoeffs> {
    let gram = assemble_gram_with(cfg, DEFAULT_CONDITION_CEILING)?;
    let moments: Vec<f64> = (0..cfg.dof()).map(|k| weighted_inner(&g, |x| basis(cfg, k, x), rule)).collect();
    gram.solve(&MeasurementVector::new(moments)?)
}

/// Samples `g(x)` or `ρ(θ)` on a caller-supplied grid.
pub fn evaluate_solution(sol: &PlvSolution, grid: &[f64], domain: SampleDomain) -> Result<SampledFunction> {
    let bound = domain.bound();
    if let Some(bad) = grid.iter().find(|t| !(t.abs() <= bound)) {
        return Err(PlvError::Domain(format!("grid point {bad} is outside [-{bound}, {bound}]")));
    }
    let values = grid
        .iter()
        .map(|&t| match domain {
            SampleDomain::X => sol.eval_x(t),
            SampleDomain::Theta => sol.eval_theta(t),
        })
        .collect();
    SampledFunction::new(domain, grid.to_vec(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{synthesize_lags, SynthesisOptions};
    use crate::model::ApsModel;
    use std::f64::consts::{FRAC_PI_6, PI};

    #[test]
    fn zero_lags_give_zero() {
        let cfg = ArrayConfig::new(4, 1.0).unwrap();
        let sol = recover(&CovarianceLags::zeros(&cfg), &cfg).unwrap();
        assert!(sol.coeffs().as_slice().iter().all(|&v| v == 0.0));
        assert_eq!(sol.constraint_residual(), 0.0);
    }

    #[test]
    fn flat_spectrum_is_exact() {
        for m in 1..=8 {
            let cfg = ArrayConfig::new(m, 1.0).unwrap();
            let r = synthesize_lags(&ApsModel::full_uniform(1.0), &cfg, &SynthesisOptions::default()).unwrap();
            let sol = recover(&r, &cfg).unwrap();
            assert!(sol.coeffs().max_abs_diff(&TrigCoeffs::unit(&cfg, 0)) < 1e-10, "M={m}");
        }
    }

    #[test]
    fn length_mismatch() {
        let cfg = ArrayConfig::new(3, 1.0).unwrap();
        let r = CovarianceLags::new(vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!(matches!(recover(&r, &cfg), Err(PlvError::InvalidInput(_))));
    }

    #[test]
    fn matrix_input() {
        let cfg = ArrayConfig::new(2, 1.0).unwrap();
        let from_matrix = recover_from_matrix(&DMatrix::identity(2, 2), &cfg, 1e-12).unwrap();
        let from_lags = recover(
            &CovarianceLags::new(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap(),
            &cfg,
        )
        .unwrap();
        assert_eq!(from_matrix, from_lags);

        let bad = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ]));
        assert!(matches!(recover_from_matrix(&bad, &cfg, 1e-12), Err(PlvError::Structure { .. })));
    }

    #[test]
    fn projection_is_identity_on_span() {
        let cfg = ArrayConfig::new(3, 1.0).unwrap();
        let b = TrigCoeffs::new(vec![0.5, -0.2, 0.1, 0.3, -0.4]).unwrap();
        let rule = QuadratureRule::chebyshev_gauss(128);
        let c = project_onto_nperp(|x| evaluate_trig(&cfg, &b, x), &cfg, &rule).unwrap();
        assert!(c.max_abs_diff(&b) < 1e-9);
    }

    #[test]
    fn projection_of_even_function_has_no_sine_part() {
        let cfg = ArrayConfig::new(2, 1.0).unwrap();
        let rule = QuadratureRule::chebyshev_gauss(128);
        let g = |x: f64| (PI * x / 2.0).cos();
        let c = project_onto_nperp(g, &cfg, &rule).unwrap();
        assert!(c.cos_block().iter().all(|v| v.abs() > 1e-3));
        assert!(c.sin_block()[0].abs() < 1e-14);

        // normal equations assembled from quadrature moments
        let gram = |i: usize, j: usize| weighted_inner(|x| basis(&cfg, i, x), |x| basis(&cfg, j, x), &rule);
        let v0 = weighted_inner(g, |x| basis(&cfg, 0, x), &rule);
        let v1 = weighted_inner(g, |x| basis(&cfg, 1, x), &rule);
        let det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
        let c0 = (gram(1, 1) * v0 - gram(0, 1) * v1) / det;
        let c1 = (gram(0, 0) * v1 - gram(1, 0) * v0) / det;
        assert!((c.as_slice()[0] - c0).abs() < 1e-10);
        assert!((c.as_slice()[1] - c1).abs() < 1e-10);
    }

    #[test]
    fn projection_annihilates_complement() {
        let cfg = ArrayConfig::new(3, 1.0).unwrap();
        let rule = QuadratureRule::chebyshev_gauss(256);
        let g = |x: f64| (-(x - 0.3).powi(2) / 0.01).exp();
        let c = project_onto_nperp(g, &cfg, &rule).unwrap();
        let residual = |x: f64| g(x) - evaluate_trig(&cfg, &c, x);
        let again = project_onto_nperp(residual, &cfg, &rule).unwrap();
        assert!(again.as_slice().iter().all(|v| v.abs() < 1e-8));
    }

    #[test]
    fn evaluation_domains() {
        let cfg = ArrayConfig::new(3, 1.0).unwrap();
        let r = synthesize_lags(&ApsModel::full_uniform(1.0), &cfg, &SynthesisOptions::default()).unwrap();
        let sol = recover(&r, &cfg).unwrap();
        let s = evaluate_solution(&sol, &SampleDomain::Theta.uniform_grid(11), SampleDomain::Theta).unwrap();
        assert!(s.values().iter().all(|v| (v - 1.0).abs() < 1e-10));
        assert!(evaluate_solution(&sol, &[0.0, 1.2], SampleDomain::X).is_err());

        let unit = PlvSolution {
            coeffs: TrigCoeffs::unit(&cfg, 1),
            measurements: sol.measurements().clone(),
            constraint_residual: 0.0,
            cfg,
        };
        assert_eq!(unit.eval_x(0.0), 1.0);
        let b = TrigCoeffs::new(vec![0.2, 0.7, -1.1, 0.4, 0.9]).unwrap();
        let any = PlvSolution { coeffs: b, ..unit };
        let xs = evaluate_solution(&any, &[0.5], SampleDomain::X).unwrap();
        let ts = evaluate_solution(&any, &[FRAC_PI_6], SampleDomain::Theta).unwrap();
        assert!((xs.values()[0] - ts.values()[0]).abs() < 1e-15);
    }
}
