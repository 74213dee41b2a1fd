//! Gram matrix of the trigonometric basis under `⟨·,·⟩_w`.
//!
//! `G` is block diagonal: cosine/constant functions are orthogonal to sines
//! under the even weight, so
//!
//! ```text
//! [G_re]_{m,n}     = (π/2)(J0(κ_{|m-n|}) + J0(κ_{m+n})),   0 <= m,n <= M-1
//! [G_im]_{m-1,n-1} = (π/2)(J0(κ_{|m-n|}) - J0(κ_{m+n})),   1 <= m,n <= M-1
//! ```
//!
//! Both blocks are symmetric positive definite for any `gamma > 0`, but
//! become numerically singular when the spacing is small relative to `M`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::array::{ArrayConfig, CovarianceLags};
use crate::error::{PlvError, Result};
use crate::specfun::bessel_j0;
use crate::trig::TrigCoeffs;

/// Default ceiling on the 1-norm condition number.
pub const DEFAULT_CONDITION_CEILING: f64 = 1e12;

/// The two Gram blocks without factorization. Never fails.
pub fn gram_blocks(cfg: &ArrayConfig) -> (DMatrix<f64>, DMatrix<f64>) {
    let m = cfg.antennas();
    let j = |k: usize| bessel_j0(cfg.kappa(k));
    let re = DMatrix::from_fn(m, m, |a, b| FRAC_PI_2 * (j(a.abs_diff(b)) + j(a + b)));
    let im = DMatrix::from_fn(m - 1, m - 1, |a, b| {
        let (a, b) = (a + 1, b + 1);
        FRAC_PI_2 * (j(a.abs_diff(b)) - j(a + b))
    });
    (re, im)
}

/// Entry `(i, j)` of the full `(2M-1)×(2M-1)` matrix in coefficient layout.
pub fn gram_entry(cfg: &ArrayConfig, i: usize, j: usize) -> f64 {
    let m = cfg.antennas();
    let jk = |k: usize| bessel_j0(cfg.kappa(k));
    match (i < m, j < m) {
        (true, true) => FRAC_PI_2 * (jk(i.abs_diff(j)) + jk(i + j)),
        (false, false) => {
            let (a, b) = (i - m + 1, j - m + 1);
            FRAC_PI_2 * (jk(a.abs_diff(b)) - jk(a + b))
        }
        _ => 0.0,
    }
}

/// Real measurement vector `[Re r_0 … Re r_{M-1} | Im r_1 … Im r_{M-1}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementVector {
    values: Vec<f64>,
}

impl MeasurementVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len().is_multiple_of(2) {
            return Err(PlvError::InvalidInput(format!(
                "measurement vector must have odd length 2M-1, got {}",
                values.len()
            )));
        }
        Ok(Self { values })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn antennas(&self) -> usize {
        self.values.len().div_ceil(2)
    }

    pub fn dot(&self, b: &TrigCoeffs) -> f64 {
        self.values.iter().zip(b.as_slice()).map(|(y, b)| y * b).sum()
    }
}

pub fn measurement_vector(r: &CovarianceLags) -> MeasurementVector {
    let lags = r.as_slice();
    let mut values: Vec<f64> = lags.iter().map(|v| v.re).collect();
    values.extend(lags[1..].iter().map(|v| v.im));
    MeasurementVector { values }
}

/// Assembled and factorized Gram matrix for one array.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    cfg: ArrayConfig,
    g_re: DMatrix<f64>,
    g_im: DMatrix<f64>,
    chol_re: Cholesky<f64, Dyn>,
    chol_im: Option<Cholesky<f64, Dyn>>,
    cond_estimate: f64,
}

pub fn assemble_gram(cfg: &ArrayConfig) -> Result<GramMatrix> {
    assemble_gram_with(cfg, DEFAULT_CONDITION_CEILING)
}

/// Assembles `G`, factorizes both blocks, and rejects condition numbers above `ceiling`.
pub fn assemble_gram_with(cfg: &ArrayConfig, ceiling: f64) -> Result<GramMatrix> {
    let (g_re, g_im) = gram_blocks(cfg);

    let not_pd = |block: &str| PlvError::Conditioning {
        reason: format!("Cholesky factorization of the {block} block failed"),
        cond: f64::INFINITY,
    };
    let chol_re = Cholesky::new(g_re.clone()).ok_or_else(|| not_pd("cosine"))?;
    let chol_im = if g_im.nrows() > 0 {
        Some(Cholesky::new(g_im.clone()).ok_or_else(|| not_pd("sine"))?)
    } else {
        None
    };

    // Block diagonal: ||G||_1 and ||G^-1||_1 are maxima over the blocks.
    let mut norm = one_norm(&g_re);
    let mut inv_norm = one_norm(&chol_re.inverse());
    if let Some(ch) = &chol_im {
        norm = norm.max(one_norm(&g_im));
        inv_norm = inv_norm.max(one_norm(&ch.inverse()));
    }
    let cond_estimate = norm * inv_norm;
    if !(cond_estimate.is_finite() && cond_estimate <= ceiling) {
        return Err(PlvError::Conditioning {
            reason: format!("condition estimate exceeds ceiling {ceiling:e}"),
            cond: cond_estimate,
        });
    }

    Ok(GramMatrix { cfg: *cfg, g_re, g_im, chol_re, chol_im, cond_estimate })
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

impl GramMatrix {
    pub fn config(&self) -> &ArrayConfig {
        &self.cfg
    }

    pub fn g_re(&self) -> &DMatrix<f64> {
        &self.g_re
    }

    pub fn g_im(&self) -> &DMatrix<f64> {
        &self.g_im
    }

    pub fn chol_re(&self) -> &DMatrix<f64> {
        self.chol_re.l_dirty()
    }

    pub fn chol_im(&self) -> Option<&DMatrix<f64>> {
        self.chol_im.as_ref().map(|c| c.l_dirty())
    }

    /// 1-norm condition number of the full block-diagonal matrix.
    pub fn cond_estimate(&self) -> f64 {
        self.cond_estimate
    }

    /// Smallest Cholesky pivot, `min_k L_kk²`.
    pub fn min_pivot(&self) -> f64 {
        let diag_min = |l: &DMatrix<f64>| {
            (0..l.nrows()).map(|k| l[(k, k)] * l[(k, k)]).fold(f64::INFINITY, f64::min)
        };
        let mut p = diag_min(&self.chol_re.l());
        if let Some(ch) = &self.chol_im {
            p = p.min(diag_min(&ch.l()));
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.cfg.dof()
    }

    /// Entry of the full matrix in coefficient layout.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let m = self.cfg.antennas();
        match (i < m, j < m) {
            (true, true) => self.g_re[(i, j)],
            (false, false) => self.g_im[(i - m, j - m)],
            _ => 0.0,
        }
    }

    /// `G b`.
    pub fn apply(&self, b: &[f64]) -> Vec<f64> {
        let m = self.cfg.antennas();
        let mut out = (&self.g_re * DVector::from_column_slice(&b[..m])).as_slice().to_vec();
        if m > 1 {
            out.extend_from_slice((&self.g_im * DVector::from_column_slice(&b[m..])).as_slice());
        }
        out
    }

    /// `bᵀ G b`.
    pub fn quadratic_form(&self, b: &TrigCoeffs) -> f64 {
        self.apply(b.as_slice()).iter().zip(b.as_slice()).map(|(g, b)| g * b).sum()
    }

    /// Solves `G b = y`, one block at a time.
    pub fn solve(&self, y: &MeasurementVector) -> Result<TrigCoeffs> {
        if y.len() != self.dim() {
            return Err(PlvError::InvalidInput(format!(
                "measurement vector has length {} but G is {}x{}",
                y.len(),
                self.dim(),
                self.dim()
            )));
        }
        let m = self.cfg.antennas();
        let cos = self.chol_re.solve(&DVector::from_column_slice(&y.as_slice()[..m]));
        let sin = match &self.chol_im {
            Some(ch) => ch.solve(&DVector::from_column_slice(&y.as_slice()[m..])).as_slice().to_vec(),
            None => Vec::new(),
        };
        Ok(TrigCoeffs::from_blocks(cos.as_slice().to_vec(), sin))
    }
}

/// Free-function form of [`GramMatrix::solve`].
pub fn solve(gram: &GramMatrix, y: &MeasurementVector) -> Result<TrigCoeffs> {
    gram.solve(y)
}
