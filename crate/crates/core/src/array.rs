//! Uniform linear array geometry and covariance lags.
//!
//! A ULA with `M` antennas and spacing ratio `gamma = 2d/λ` has spatial
//! frequencies `kappa(m) = gamma·π·m`. Its covariance is Hermitian Toeplitz,
//! so the first column (the lags `r_0 … r_{M-1}`) determines it completely.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{PlvError, Result};

/// Antenna count and element spacing of a uniform linear array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    antennas: usize,
    gamma: f64,
}

impl ArrayConfig {
    /// `gamma` is the spacing ratio `2d/λ`; any positive value is accepted,
    /// including the spatially aliased regime `gamma > 1`.
    pub fn new(antennas: usize, gamma: f64) -> Result<Self> {
        if antennas == 0 {
            return Err(PlvError::InvalidInput("antenna count must be at least 1".into()));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(PlvError::InvalidInput(format!("gamma must be a positive finite number, got {gamma}")));
        }
        Ok(Self { antennas, gamma })
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Number of real degrees of freedom in the lags, `2M - 1`.
    pub fn dof(&self) -> usize {
        2 * self.antennas - 1
    }

    /// Spatial frequency `gamma·π·m`. Defined for every `m`, not only
    /// `m < M`, because Gram entries need indices up to `2M - 2`.
    pub fn kappa(&self, m: usize) -> f64 {
        self.gamma * PI * m as f64
    }

    /// Signed variant used for conjugate lags `r_{-m}`.
    pub fn kappa_signed(&self, m: i64) -> f64 {
        self.gamma * PI * m as f64
    }

    /// Largest frequency appearing in a Gram entry, `kappa(2M - 2)`.
    pub fn max_gram_kappa(&self) -> f64 {
        self.kappa(2 * self.antennas - 2)
    }

    /// Steering vector `a(θ)` with entries `exp(i·kappa(m)·sin θ)`.
    pub fn steering_vector(&self, theta: f64) -> Vec<Complex64> {
        let s = theta.sin();
        (0..self.antennas)
            .map(|m| Complex64::from_polar(1.0, self.kappa(m) * s))
            .collect()
    }
}

/// Free-function form of [`ArrayConfig::kappa`].
pub fn kappa(cfg: &ArrayConfig, m: usize) -> f64 {
    cfg.kappa(m)
}

/// First column `r_0 … r_{M-1}` of a ULA covariance matrix.
///
/// `r_0` is real (its imaginary part is exactly zero); negative lags follow
/// `r_{-m} = conj(r_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceLags {
    values: Vec<Complex64>,
}

impl CovarianceLags {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(PlvError::InvalidInput("lag vector must not be empty".into()));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(PlvError::InvalidInput("lags must be finite".into()));
        }
        if values[0].im != 0.0 {
            return Err(PlvError::InvalidInput(format!(
                "imaginary part of r_0 must be zero, got {:e}",
                values[0].im
            )));
        }
        Ok(Self { values })
    }

    /// Like [`CovarianceLags::new`] but accepts `|Im r_0| <= tol` and zeroes it.
    pub fn with_tolerance(mut values: Vec<Complex64>, tol: f64) -> Result<Self> {
        if let Some(first) = values.first_mut() {
            if first.im.abs() <= tol {
                first.im = 0.0;
            }
        }
        Self::new(values)
    }

    pub fn zeros(cfg: &ArrayConfig) -> Self {
        Self { values: vec![Complex64::new(0.0, 0.0); cfg.antennas()] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.values
    }

    /// Lag at a signed index, using `r_{-m} = conj(r_m)`.
    pub fn get(&self, m: i64) -> Option<Complex64> {
        let v = *self.values.get(m.unsigned_abs() as usize)?;
        Some(if m < 0 { v.conj() } else { v })
    }

    /// Max modulus over all lags.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn check_len(&self, cfg: &ArrayConfig) -> Result<()> {
        if self.len() != cfg.antennas() {
            return Err(PlvError::InvalidInput(format!(
                "lag vector has length {} but the array has {} antennas",
                self.len(),
                cfg.antennas()
            )));
        }
        Ok(())
    }
}

/// Hermitian Toeplitz completion: `R[i][j] = r[i-j]` for `i >= j`, conjugated above the diagonal.
pub fn toeplitz_from_lags(r: &CovarianceLags) -> DMatrix<Complex64> {
    let n = r.len();
    DMatrix::from_fn(n, n, |i, j| if i >= j { r.values[i - j] } else { r.values[j - i].conj() })
}

/// Extracts the first column of `R`, checking Hermitian Toeplitz structure within `tol`.
pub fn lags_from_toeplitz(matrix: &DMatrix<Complex64>, tol: f64) -> Result<CovarianceLags> {
    if !matrix.is_square() || matrix.nrows() == 0 {
        return Err(PlvError::InvalidInput(format!(
            "covariance must be a non-empty square matrix, got {}x{}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let n = matrix.nrows();
    let column: Vec<Complex64> = (0..n).map(|i| matrix[(i, 0)]).collect();

    let mut deviation = column[0].im.abs();
    for i in 0..n {
        for j in 0..n {
            let expected = if i >= j { column[i - j] } else { column[j - i].conj() };
            deviation = deviation.max((matrix[(i, j)] - expected).norm());
        }
    }
    if !(deviation <= tol) {
        return Err(PlvError::Structure { deviation, tolerance: tol });
    }
    CovarianceLags::with_tolerance(column, tol)
}
