use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::log_gamma::theta_unchecked;
use super::{EvalResult, Method};
use crate::error::{Error, Result};
use num_complex::Complex64;

/// Constant c in the error bound c·t^{-3/4} of the one-correction formula,
/// calibrated against Euler-Maclaurin on [50, 10^4].
pub const RS_ERROR_CONSTANT: f64 = 3.0;

/// Smallest t accepted by [`riemann_siegel_z`].
pub const RS_MIN_T: f64 = 20.0;

/// Half-width of the windows around ξ = 1/4 and ξ = 3/4 where h(ξ) is taken
/// from its Taylor expansion instead of the quotient.
const H_SERIES_RADIUS: f64 = 1e-3;

/// The pieces of one Riemann-Siegel evaluation of Z(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RSDecomposition {
    pub t: f64,
    /// ⌊√(t/2π)⌋
    pub m: u64,
    /// √(t/2π) − m
    pub xi: f64,
    /// ξ − ξ² + 1/16
    pub phi: f64,
    /// 2 Σ_{n≤m} cos(θ − t ln n)/√n
    pub main_sum: f64,
    /// (−1)^{m−1} (t/2π)^{−1/4} h(ξ)
    pub correction_g: f64,
    pub theta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannSiegelZ {
    pub result: EvalResult,
    pub decomposition: RSDecomposition,
}

/// h(ξ) = cos(2πφ)/cos(2πξ).
pub fn rs_h(xi: f64) -> f64 {
    for (xi0, c) in [(0.25, 1.0), (0.75, -1.0)] {
        let u = xi - xi0;
        if u.abs() < H_SERIES_RADIUS {
            let p2 = PI * PI;
            return 0.5 - c * u + 0.25 * p2 * u * u - c * p2 / 6.0 * u * u * u;
        }
    }
    let phi = xi - xi * xi + 1.0 / 16.0;
    (2.0 * PI * phi).cos() / (2.0 * PI * xi).cos()
}

pub fn rs_error_bound(t: f64) -> f64 {
    RS_ERROR_CONSTANT * t.powf(-0.75)
}

/// Hardy's Z(t) by the Riemann-Siegel formula with the single correction g(t).
pub fn riemann_siegel_z(t: f64) -> Result<RiemannSiegelZ> {
    if !t.is_finite() || t < RS_MIN_T {
        return Err(Error::Range(format!(
            "Riemann-Siegel needs t >= {RS_MIN_T}, got {t}; use the dispatcher below that"
        )));
    }
    let theta = theta_unchecked(t);
    let a = (t / (2.0 * PI)).sqrt();
    let m = a.floor() as u64;
    let xi = a - m as f64;
    let phi = xi - xi * xi + 1.0 / 16.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=m {
        let l = (n as f64).ln();
        let p = t * l;
        let e = t.mul_add(l, -p);
        let v = ((theta - p) - e).cos() / (n as f64).sqrt();
        let y = v - comp;
        let s2 = sum + y;
        comp = (s2 - sum) - y;
        sum = s2;
    }
    let main_sum = 2.0 * sum;
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let correction_g = sign * (t / (2.0 * PI)).powf(-0.25) * rs_h(xi);
    let value = main_sum + correction_g;
    // Phase rounding: θ and t ln n are both O(t log t).
    let rounding = 4.0 * f64::EPSILON * t * t.ln() * (2.0 * (m as f64).sqrt() + 1.0);
    let result = EvalResult::new(Complex64::new(value, 0.0), rs_error_bound(t) + rounding, Method::RiemannSiegel);
    Ok(RiemannSiegelZ { result, decomposition: RSDecomposition { t, m, xi, phi, main_sum, correction_g, theta } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_fields() {
        let r = riemann_siegel_z(7005.0).unwrap();
        assert_eq!(r.decomposition.m, 33);
        assert!(r.decomposition.xi >= 0.0 && r.decomposition.xi < 1.0);
        let d = r.decomposition;
        assert!((d.phi - (d.xi - d.xi * d.xi + 1.0 / 16.0)).abs() < 1e-15);
        assert!(((d.main_sum + d.correction_g) - r.result.value.re).abs() < 1e-15);
    }

    #[test]
    fn rejects_small_t() {
        assert!(matches!(riemann_siegel_z(19.9), Err(Error::Range(_))));
    }

    #[test]
    fn h_series_matches_quotient_outside_window() {
        // Just outside the window the quotient is still well conditioned.
        let direct = |xi: f64| {
            let phi = xi - xi * xi + 1.0 / 16.0;
            (2.0 * PI * phi).cos() / (2.0 * PI * xi).cos()
        };
        for xi0 in [0.25, 0.75] {
            for u in [-H_SERIES_RADIUS, H_SERIES_RADIUS] {
                let x = xi0 + 1.0001 * u;
                let a = direct(x);
                let u2 = x - xi0;
                let c = if xi0 < 0.5 { 1.0 } else { -1.0 };
                let p2 = PI * PI;
                let b = 0.5 - c * u2 + 0.25 * p2 * u2 * u2 - c * p2 / 6.0 * u2 * u2 * u2;
                assert!((a - b).abs() < 1e-11, "{x}: {a} {b}");
            }
            assert!((rs_h(xi0) - 0.5).abs() < 1e-15);
        }
        // Continuity across the window edge.
        for xi0 in [0.25, 0.75] {
            let e = H_SERIES_RADIUS;
            assert!((rs_h(xi0 + e * 0.999_999) - rs_h(xi0 + e * 1.000_001)).abs() < 1e-8);
        }
    }
}
