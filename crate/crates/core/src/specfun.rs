//! Bessel function of the first kind, order zero.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::quad::QuadratureRule;

const SERIES_LIMIT: f64 = 4.0;
const RECURRENCE_LIMIT: f64 = 25.0;

/// `J0(z)` for real `z`, absolute error around 1e-15 on `[0, 200]`.
///
/// Three regimes: the Maclaurin series for `|z| <= 4`, Miller's backward
/// recurrence normalized by `J0 + 2ΣJ_2k = 1` for `|z| <= 25`, and the
/// Hankel asymptotic expansion beyond. The asymptotic series cannot reach
/// 1e-12 below roughly `|z| = 12`, so the recurrence covers the middle band.
pub fn bessel_j0(z: f64) -> f64 {
    let x = z.abs();
    if x <= SERIES_LIMIT {
        series(x)
    } else if x <= RECURRENCE_LIMIT {
        miller(x)
    } else {
        hankel(x)
    }
}

fn series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

fn miller(x: f64) -> f64 {
    let start = 2 * ((x as usize + 40) / 2 + 1);
    let mut next = 0.0; // J_{k+1}
    let mut current = 1e-300; // J_k
    let mut norm = 0.0;
    let mut j0 = 0.0;
    for k in (1..=start).rev() {
        let prev = 2.0 * k as f64 / x * current - next;
        next = current;
        current = prev;
        if current.abs() > 1e250 {
            next *= 1e-250;
            current *= 1e-250;
            norm *= 1e-250;
        }
        // `current` now holds J_{k-1}
        if k == 1 {
            j0 = current;
        } else if (k - 1) % 2 == 0 {
            norm += 2.0 * current;
        }
    }
    j0 / (norm + j0)
}

fn hankel(x: f64) -> f64 {
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= -odd * odd / (k as f64 * eight_x);
        if term.abs() > last || term.abs() < 1e-20 {
            break;
        }
        last = term.abs();
        // term_k = prod(-(2j-1)^2) / (k! (8x)^k), alternating into P and Q
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// `(1/π)∫_0^π cos(z cos θ) dθ` by Gauss–Legendre with `nodes` points.
///
/// Test oracle only: independent of every code path in [`bessel_j0`].
pub fn bessel_j0_quadrature_oracle(z: f64, nodes: usize) -> f64 {
    let rule = QuadratureRule::gauss_legendre_on(nodes.max(2), 0.0, PI);
    rule.integrate(|t| (z * t.cos()).cos()) / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert!((bessel_j0_quadrature_oracle(0.0, 7) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reference_values() {
        // values from the quadrature oracle at 200 nodes
        let at_pi = bessel_j0_quadrature_oracle(PI, 200);
        let at_two_pi = bessel_j0_quadrature_oracle(2.0 * PI, 200);
        assert!((at_pi - (-0.3042421776)).abs() < 1e-9);
        assert!((at_two_pi - 0.2202769085).abs() < 1e-9);
        assert!((bessel_j0(PI) - at_pi).abs() <= 1e-12);
        assert!((bessel_j0(2.0 * PI) - at_two_pi).abs() <= 1e-12);
        assert!((bessel_j0(50.0) - bessel_j0_quadrature_oracle(50.0, 400)).abs() <= 1e-10);
    }

    #[test]
    fn even_and_bounded() {
        for i in 0..2000 {
            let z = i as f64 * 0.1;
            assert_eq!(bessel_j0(z), bessel_j0(-z));
            assert!(bessel_j0(z).abs() <= 1.0);
        }
    }

    #[test]
    fn regime_boundaries_are_continuous() {
        for &b in &[SERIES_LIMIT, RECURRENCE_LIMIT] {
            let lo = bessel_j0(b);
            let hi = bessel_j0(b + 1e-12);
            assert!((lo - hi).abs() < 1e-12, "jump at {b}: {lo} vs {hi}");
            assert!((lo - bessel_j0_quadrature_oracle(b, 200)).abs() < 1e-13);
        }
    }

    #[test]
    fn oracle_agreement_dense() {
        let worst = (0..=1000)
            .map(|i| {
                let z = i as f64 * 0.1;
                (bessel_j0(z) - bessel_j0_quadrature_oracle(z, 400)).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst <= 1e-12, "worst deviation {worst:e}");
    }

    #[test]
    fn large_arguments() {
        for &z in &[120.0, 150.5, 188.5, 250.0] {
            let err = (bessel_j0(z) - bessel_j0_quadrature_oracle(z, 600)).abs();
            assert!(err <= 1e-12, "z={z}: {err:e}");
        }
    }
}
