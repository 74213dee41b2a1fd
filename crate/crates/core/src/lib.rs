//! Angular power spectrum recovery from uniform-linear-array covariance lags.
//!
//! The lags `r_m` of a ULA covariance are weighted Fourier measurements of
//! the transformed spectrum `g(x) = ρ(arcsin x)`. This crate computes the
//! minimum-norm spectrum consistent with those lags in closed form
//! (`b = G⁻¹ y` over a trigonometric basis with Bessel-function Gram
//! entries), and certifies it with exact energy and error identities.
//!
//! ```
//! use plv_core::{recover, synthesize_lags, ApsModel, ArrayConfig, SynthesisOptions};
//!
//! let cfg = ArrayConfig::new(4, 1.0).unwrap();
//! let lags = synthesize_lags(&ApsModel::full_uniform(1.0), &cfg, &SynthesisOptions::default()).unwrap();
//! let sol = recover(&lags, &cfg).unwrap();
//! assert!((sol.coeffs().as_slice()[0] - 1.0).abs() < 1e-10);
//! ```

// Negated comparisons reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod array;
pub mod error;
pub mod forward;
pub mod gram;
pub mod model;
pub mod plv;
pub mod quad;
pub mod specfun;
pub mod trig;

pub use analysis::{
    certify, certify_with, energy_of_solution, membership_verdict, resolution_sweep, resolution_sweep_with,
    CertifyOptions, ErrorCertificate, SweepPoint,
};
pub use array::{kappa, lags_from_toeplitz, toeplitz_from_lags, ArrayConfig, CovarianceLags};
pub use error::{PlvError, Result};
pub use forward::{synthesize_covariance, synthesize_lags, DomainPath, SynthesisOptions};
pub use gram::{assemble_gram, assemble_gram_with, measurement_vector, solve, GramMatrix, MeasurementVector};
pub use model::{transform_aps, ApsModel, MixtureComponent, PointSource, SampleDomain, SampledFunction};
pub use plv::{evaluate_solution, project_onto_nperp, recover, recover_from_matrix, recover_with, PlvSolution, RecoveryOptions};
pub use quad::{integrate_theta, weighted_inner, weighted_inner_complex, QuadratureRule, RuleKind};
pub use specfun::bessel_j0;
pub use trig::{evaluate_trig, TrigCoeffs};

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;
