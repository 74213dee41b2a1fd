//! Trigonometric polynomials spanning the recoverable subspace.
//!
//! Coefficient layout for an `M`-antenna array (length `2M - 1`):
//!
//! ```text
//! [ b_0 | b_1 … b_{M-1} | b_M … b_{2M-2} ]
//!  const  cos(κ_m x)      sin(κ_m x), m = 1 … M-1
//! ```

use crate::array::ArrayConfig;
use crate::error::{PlvError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TrigCoeffs {
    values: Vec<f64>,
}

impl TrigCoeffs {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len().is_multiple_of(2) {
            return Err(PlvError::InvalidInput(format!(
                "coefficient vector must have odd length 2M-1, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PlvError::InvalidInput("coefficients must be finite".into()));
        }
        Ok(Self { values })
    }

    /// Checks the length against a specific array.
    pub fn for_array(cfg: &ArrayConfig, values: Vec<f64>) -> Result<Self> {
        if values.len() != cfg.dof() {
            return Err(PlvError::InvalidInput(format!(
                "expected {} coefficients for M = {}, got {}",
                cfg.dof(),
                cfg.antennas(),
                values.len()
            )));
        }
        Self::new(values)
    }

    pub fn zeros(cfg: &ArrayConfig) -> Self {
        Self { values: vec![0.0; cfg.dof()] }
    }

    /// Unit vector `e_k`.
    pub fn unit(cfg: &ArrayConfig, k: usize) -> Self {
        let mut values = vec![0.0; cfg.dof()];
        values[k] = 1.0;
        Self { values }
    }

    /// Antenna count implied by the length.
    pub fn antennas(&self) -> usize {
        self.values.len().div_ceil(2)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }

    /// Constant and cosine coefficients, `b[0..M]`.
    pub fn cos_block(&self) -> &[f64] {
        &self.values[..self.antennas()]
    }

    /// Sine coefficients, `b[M..2M-1]`.
    pub fn sin_block(&self) -> &[f64] {
        &self.values[self.antennas()..]
    }

    pub fn max_abs_diff(&self, other: &TrigCoeffs) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn from_blocks(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        let mut values = cos;
        values.extend(sin);
        Self { values }
    }
}

/// Basis function `φ_k(x)` in the coefficient layout above.
pub fn basis(cfg: &ArrayConfig, k: usize, x: f64) -> f64 {
    let m = cfg.antennas();
    if k < m {
        (cfg.kappa(k) * x).cos()
    } else {
        (cfg.kappa(k - m + 1) * x).sin()
    }
}

/// `b_0 + Σ_{m=1}^{M-1} b_m cos(κ_m x) + b_{M-1+m} sin(κ_m x)`.
///
/// Defined for any real `x`; only `|x| <= 1` has a physical meaning.
pub fn evaluate_trig(cfg: &ArrayConfig, b: &TrigCoeffs, x: f64) -> f64 {
    let m = b.antennas();
    debug_assert_eq!(m, cfg.antennas(), "coefficient length does not match the array");
    let v = b.as_slice();
    let mut sum = v[0];
    for k in 1..m {
        let (s, c) = (cfg.kappa(k) * x).sin_cos();
        sum += v[k] * c + v[m - 1 + k] * s;
    }
    sum
}
