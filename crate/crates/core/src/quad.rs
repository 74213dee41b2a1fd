//! Quadrature rules for the weighted inner product on `[-1, 1]` and for
//! plain integrals over the angle domain `[-π/2, π/2]`.
//!
//! The weighted inner product is `⟨f, g⟩_w = ∫ f g w dx` with the Chebyshev
//! weight `w(x) = 1/sqrt(1 - x²)`. Chebyshev–Gauss nodes absorb `w` exactly,
//! so no endpoint singularity is ever evaluated.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::array::ArrayConfig;

/// Default node count for forward synthesis.
pub const DEFAULT_SYNTHESIS_NODES: usize = 256;
/// Default node count for test oracles.
pub const DEFAULT_ORACLE_NODES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    /// `x_k = cos((2k-1)π/2n)`, `w_k = π/n`; integrates `f·w` over `[-1, 1]`.
    ChebyshevGauss,
    /// Gauss–Legendre on an interval; integrates `f` with unit weight.
    GaussLegendre,
    /// Composite rule for `f·w` over `[-1, 1]`: Gauss–Legendre in
    /// `t = arccos x`, optionally split at breakpoints. Used for integrands
    /// that are not smooth in `x` (segment edges, cusps, arcsin endpoints).
    ChebyshevPanels,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    abscissae: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn chebyshev_gauss(nodes: usize) -> Self {
        let n = nodes.max(1);
        let h = PI / n as f64;
        let abscissae = (1..=n).map(|k| ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos()).collect();
        Self { kind: RuleKind::ChebyshevGauss, abscissae, weights: vec![h; n] }
    }

    /// Gauss–Legendre on `[-1, 1]`.
    pub fn gauss_legendre(nodes: usize) -> Self {
        let (abscissae, weights) = legendre_nodes(nodes.max(1));
        Self { kind: RuleKind::GaussLegendre, abscissae, weights }
    }

    /// Gauss–Legendre mapped onto `[a, b]`.
    pub fn gauss_legendre_on(nodes: usize, a: f64, b: f64) -> Self {
        Self::composite_gauss_legendre(nodes, a, b, &[])
    }

    /// Gauss–Legendre with `nodes` points on each panel of `[a, b]` split at `breaks`.
    pub fn composite_gauss_legendre(nodes: usize, a: f64, b: f64, breaks: &[f64]) -> Self {
        let (ref_x, ref_w) = legendre_nodes(nodes.max(1));
        let edges = panel_edges(a, b, breaks);
        let mut abscissae = Vec::with_capacity(ref_x.len() * (edges.len() - 1));
        let mut weights = Vec::with_capacity(abscissae.capacity());
        for pair in edges.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for (x, w) in ref_x.iter().zip(&ref_w) {
                abscissae.push(mid + half * x);
                weights.push(half * w);
            }
        }
        Self { kind: RuleKind::GaussLegendre, abscissae, weights }
    }

    /// Weighted rule on `[-1, 1]`: Gauss–Legendre in `t = arccos x` on panels
    /// split at `breaks_x`. Unlike Chebyshev–Gauss (the midpoint rule in `t`)
    /// it stays spectrally accurate when `g(cos t)` is not smooth and even at
    /// `t = 0, π`, which is the case for any `ρ` not vanishing at `±π/2`.
    pub fn chebyshev_panels(nodes_per_panel: usize, breaks_x: &[f64]) -> Self {
        let breaks_t: Vec<f64> = breaks_x.iter().filter(|x| x.abs() < 1.0).map(|x| x.acos()).collect();
        let inner = Self::composite_gauss_legendre(nodes_per_panel, 0.0, PI, &breaks_t);
        let abscissae = inner.abscissae.iter().map(|t| t.cos()).collect();
        Self { kind: RuleKind::ChebyshevPanels, abscissae, weights: inner.weights }
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn nodes(&self) -> usize {
        self.abscissae.len()
    }

    pub fn abscissae(&self) -> &[f64] {
        &self.abscissae
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// True when the rule already carries the Chebyshev weight.
    pub fn is_weighted(&self) -> bool {
        matches!(self.kind, RuleKind::ChebyshevGauss | RuleKind::ChebyshevPanels)
    }

    /// `Σ w_k f(x_k)`, summed in node order.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.abscissae.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.abscissae
            .iter()
            .zip(&self.weights)
            .fold(Complex64::new(0.0, 0.0), |acc, (&x, &w)| acc + f(x) * w)
    }
}

fn panel_edges(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let mut edges = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (b - a));
    edges.extend(inner);
    edges.push(b);
    edges
}

/// Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // ascending order: negative node first
        xs[i] = -x;
        xs[n - 1 - i] = x;
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        xs[n / 2] = 0.0;
    }
    (xs, ws)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Node count that resolves `e^{iκx}` on `[-1, 1]` (or `e^{iκ sin θ}` on `Θ`)
/// to roughly machine precision.
pub fn nodes_for_frequency(kappa: f64) -> usize {
    let k = kappa.abs();
    (0.8 * k + 5.0 * k.cbrt() + 16.0).ceil() as usize
}

/// `⟨f, g⟩_w ≈ Σ w_k f(x_k) g(x_k)`; exact for polynomial `f·g` of degree `< 2n`
/// under Chebyshev–Gauss.
///
/// Panics if `rule` does not carry the Chebyshev weight.
pub fn weighted_inner<F, G>(f: F, g: G, rule: &QuadratureRule) -> f64
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    assert!(rule.is_weighted(), "weighted_inner requires a Chebyshev-weighted rule");
    rule.integrate(|x| f(x) * g(x))
}

pub fn weighted_norm_sq<F: Fn(f64) -> f64>(f: F, rule: &QuadratureRule) -> f64 {
    assert!(rule.is_weighted(), "weighted_norm_sq requires a Chebyshev-weighted rule");
    rule.integrate(|x| {
        let v = f(x);
        v * v
    })
}

/// `⟨f, e^{iκ_m(·)}⟩_w = ∫ f(x) e^{iκ_m x} w(x) dx` for real `f`.
///
/// The exponential enters unconjugated, so `r_m = ⟨g, e^{iκ_m(·)}⟩_w` matches
/// `r_m = ∫ ρ(θ) e^{iκ_m sin θ} dθ`. Negative `m` gives `conj` of the positive lag.
pub fn weighted_inner_complex<F: Fn(f64) -> f64>(f: F, m: i64, cfg: &ArrayConfig, rule: &QuadratureRule) -> Complex64 {
    assert!(rule.is_weighted(), "weighted_inner_complex requires a Chebyshev-weighted rule");
    let kappa = cfg.kappa_signed(m);
    rule.integrate_complex(|x| Complex64::from_polar(f(x), kappa * x))
}

/// `∫_{-π/2}^{π/2} f(θ) dθ` by Gauss–Legendre.
pub fn integrate_theta<F: Fn(f64) -> f64>(f: F, nodes: usize) -> f64 {
    theta_rule(nodes, &[]).integrate(f)
}

pub fn integrate_theta_complex<F: Fn(f64) -> Complex64>(f: F, nodes: usize) -> Complex64 {
    theta_rule(nodes, &[]).integrate_complex(f)
}

/// Composite Gauss–Legendre over the angle domain, `nodes` per panel.
pub fn theta_rule(nodes: usize, breaks: &[f64]) -> QuadratureRule {
    QuadratureRule::composite_gauss_legendre(nodes, -FRAC_PI_2, FRAC_PI_2, breaks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel_j0_quadrature_oracle;

    #[test]
    fn chebyshev_constant() {
        for n in [1, 2, 7, 64] {
            let r = QuadratureRule::chebyshev_gauss(n);
            assert!((weighted_inner(|_| 1.0, |_| 1.0, &r) - PI).abs() < 1e-13);
            assert!(r.weights().iter().all(|&w| w > 0.0));
            assert!(r.abscissae().iter().all(|x| x.abs() < 1.0));
        }
    }

    #[test]
    fn cos_sin_orthogonal() {
        let cfg = ArrayConfig::new(2, 1.0).unwrap();
        let k = cfg.kappa(1);
        let r = QuadratureRule::chebyshev_gauss(64);
        assert!(weighted_inner(|x| (k * x).cos(), |x| (k * x).sin(), &r).abs() < 1e-13);
    }

    #[test]
    fn cos_cos_closed_form() {
        // (π/2)(1 + J0(2π)) with J0 from the independent oracle
        let expected = 0.5 * PI * (1.0 + bessel_j0_quadrature_oracle(2.0 * PI, 200));
        let r = QuadratureRule::chebyshev_gauss(64);
        let got = weighted_inner(|x| (PI * x).cos(), |x| (PI * x).cos(), &r);
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 1.9168064856).abs() < 1e-9);
    }

    #[test]
    fn complex_inner_products() {
        let cfg = ArrayConfig::new(2, 1.0).unwrap();
        let r = QuadratureRule::chebyshev_gauss(128);
        let z0 = weighted_inner_complex(|_| 1.0, 0, &cfg, &r);
        assert!((z0.re - PI).abs() < 1e-13 && z0.im == 0.0);

        let j_pi = bessel_j0_quadrature_oracle(PI, 200);
        let z1 = weighted_inner_complex(|_| 1.0, 1, &cfg, &r);
        assert!((z1.re - PI * j_pi).abs() < 1e-12);
        assert!(z1.im.abs() < 1e-13);

        let j_2pi = bessel_j0_quadrature_oracle(2.0 * PI, 200);
        let zs = weighted_inner_complex(|x| (PI * x).sin(), 1, &cfg, &r);
        assert!(zs.re.abs() < 1e-13);
        assert!((zs.im - 0.5 * PI * (1.0 - j_2pi)).abs() < 1e-12);

        let zneg = weighted_inner_complex(|x| (PI * x).sin(), -1, &cfg, &r);
        assert!((zneg - zs.conj()).norm() < 1e-13);
    }

    #[test]
    fn theta_integrals() {
        assert!((integrate_theta(|_| 1.0, 5) - PI).abs() < 1e-13);
        let j_pi = bessel_j0_quadrature_oracle(PI, 200);
        let lag = integrate_theta_complex(|t| Complex64::from_polar(1.0, PI * t.sin()), 128);
        assert!((lag.re - PI * j_pi).abs() < 1e-12);
        assert!(lag.im.abs() < 1e-13);
    }

    fn double_factorial(n: i64) -> f64 {
        if n <= 0 {
            1.0
        } else {
            n as f64 * double_factorial(n - 2)
        }
    }

    #[test]
    fn chebyshev_monomial_exactness() {
        let n = 12;
        let r = QuadratureRule::chebyshev_gauss(n);
        for p in 0..n as i32 {
            for q in 0..(2 * n as i32 - p) {
                let s = (p + q) as i64;
                let exact = if s % 2 == 1 { 0.0 } else { PI * double_factorial(s - 1) / double_factorial(s) };
                let got = weighted_inner(|x| x.powi(p), |x| x.powi(q), &r);
                assert!((got - exact).abs() < 1e-13, "p={p} q={q}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn legendre_exactness() {
        let r = QuadratureRule::gauss_legendre(9);
        // exact through degree 17
        assert!((r.integrate(|x| x.powi(16)) - 2.0 / 17.0).abs() < 1e-14);
        assert!(r.integrate(|x| x.powi(17)).abs() < 1e-14);
        let odd = QuadratureRule::gauss_legendre(4);
        assert!((odd.integrate(|_| 1.0) - 2.0).abs() < 1e-14);
        let on = QuadratureRule::gauss_legendre_on(6, 1.0, 3.0);
        assert!((on.integrate(|x| x * x) - 26.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn panels_handle_discontinuity() {
        // ∫_{0.2}^{1} w dx = arccos(0.2)
        let indicator = |x: f64| if x >= 0.2 { 1.0 } else { 0.0 };
        let panels = QuadratureRule::chebyshev_panels(32, &[0.2]);
        assert_eq!(panels.kind(), RuleKind::ChebyshevPanels);
        assert!((panels.integrate(indicator) - 0.2f64.acos()).abs() < 1e-13);
        let single = QuadratureRule::chebyshev_panels(32, &[]);
        assert_eq!(single.nodes(), 32);
        assert!((single.integrate(|_| 1.0) - PI).abs() < 1e-13);
    }

    #[test]
    fn node_doubling_smooth() {
        let f = |x: f64| (-(x - 0.3).powi(2) / 0.02).exp();
        let a = weighted_norm_sq(f, &QuadratureRule::chebyshev_gauss(256));
        let b = weighted_norm_sq(f, &QuadratureRule::chebyshev_gauss(512));
        assert!((a - b).abs() < 1e-10);
    }
}
