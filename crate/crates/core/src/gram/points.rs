use std::f64::consts::{E, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::{hardy_z, theta_prime, theta_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quality {
    Good,
    Bad,
}

impl std::fmt::Display for Quality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Quality::Good => "good",
            Quality::Bad => "bad",
        })
    }
}

/// The Gram point g_n, where θ(g_n) = nπ, with Z(g_n) and its quality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramPoint {
    pub index: i64,
    pub t: f64,
    pub z_value: f64,
    pub quality: Quality,
}

impl GramPoint {
    /// (−1)^n Z(g_n), which is ζ(1/2 + i g_n).
    pub fn zeta_value(&self) -> f64 {
        if self.index.rem_euclid(2) == 0 {
            self.z_value
        } else {
            -self.z_value
        }
    }
}

const MAX_NEWTON: usize = 50;

/// Residual tolerance for θ(g_n) = nπ: 1e-9, or a few ulps of nπ once that
/// is coarser than 1e-9 (n beyond ~10^6).
pub fn gram_tolerance(n: i64) -> f64 {
    let target = (n as f64 * PI).abs();
    1e-9f64.max(8.0 * f64::EPSILON * target)
}

/// Inverts θ(t) ≈ t/2 log(t/2π) − t/2 − π/8 = nπ by two fixed-point steps on
/// u = t/2π, u (log u − 1) = n + 1/8.
fn seed(n: i64) -> f64 {
    let a = n as f64 + 0.125;
    let mut u;
    if a < E * E {
        u = E;
        for _ in 0..2 {
            u = (1.0 + a / u).exp();
        }
    } else {
        u = a / a.ln();
        for _ in 0..2 {
            u = a / (u.ln() - 1.0);
        }
    }
    2.0 * PI * u
}

/// t with θ(t) = nπ, without evaluating Z.
pub fn gram_abscissa(n: i64) -> Result<f64> {
    if n < -1 {
        return Err(Error::Domain(format!("Gram index must be >= -1, got {n}")));
    }
    let target = n as f64 * PI;
    let tol = gram_tolerance(n);
    let mut t = seed(n);
    for _ in 0..MAX_NEWTON {
        let r = theta_unchecked(t) - target;
        let step = r / theta_prime(t);
        t -= step;
        if step.abs() <= 4.0 * f64::EPSILON * t {
            break;
        }
    }
    let r = theta_unchecked(t) - target;
    if r.abs() >= tol || !t.is_finite() {
        return Err(Error::NonConvergence(format!("Gram point {n}: residual {r:e} after Newton")));
    }
    Ok(t)
}

/// The Gram point g_n (n ≥ −1), Z(g_n) and its good/bad classification.
pub fn gram_point(n: i64) -> Result<GramPoint> {
    let t = gram_abscissa(n)?;
    let z = hardy_z(t)?.value.re;
    let signed = if n.rem_euclid(2) == 0 { z } else { -z };
    let quality = if signed > 0.0 { Quality::Good } else { Quality::Bad };
    Ok(GramPoint { index: n, t, z_value: z, quality })
}

/// Smallest n ≥ −1 with g_n > t.
pub(crate) fn first_gram_index_above(t: f64) -> Result<i64> {
    let mut n = if t < 10.0 { -1 } else { (theta_unchecked(t) / PI).floor() as i64 + 1 };
    n = n.max(-1);
    while n > -1 && gram_abscissa(n - 1)? > t {
        n -= 1;
    }
    while gram_abscissa(n)? <= t {
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_gram_points() {
        // Oracle: bisection on θ over [10, 30] for g_0.
        let (mut lo, mut hi) = (10.0, 30.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if theta_unchecked(m) < 0.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        let g0 = gram_point(0).unwrap();
        assert!((g0.t - lo).abs() < 1e-9);
        assert!((g0.t - 17.8456).abs() < 1e-4);
        assert_eq!(g0.quality, Quality::Good);
        let gm1 = gram_point(-1).unwrap();
        assert!((gm1.t - 9.666_908_056).abs() < 1e-8);
        assert!(gram_point(-2).is_err());
    }

    #[test]
    fn reference_abscissae() {
        for (n, t) in
            [(6707, 7004.502_597_093_171), (1_000_000, 600_270.459_834_343_7), (13_999_527, 6_820_051.889_114_701)]
        {
            let g = gram_abscissa(n).unwrap();
            assert!((g - t).abs() < 2e-8 * (1.0 + t / 1e6), "{n}: {g}");
            assert!((theta_unchecked(g) - n as f64 * PI).abs() < gram_tolerance(n));
        }
    }

    #[test]
    fn residuals_small_indices() {
        for n in -1..600 {
            let t = gram_abscissa(n).unwrap();
            assert!((theta_unchecked(t) - n as f64 * PI).abs() < 1e-9, "{n}");
        }
    }

    #[test]
    fn first_index_above() {
        assert_eq!(first_gram_index_above(9.0).unwrap(), -1);
        assert_eq!(first_gram_index_above(10.0).unwrap(), 0);
        let g5 = gram_abscissa(5).unwrap();
        assert_eq!(first_gram_index_above(g5).unwrap(), 6);
        assert_eq!(first_gram_index_above(g5 - 1e-6).unwrap(), 5);
    }
}
