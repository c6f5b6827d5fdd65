//! ζ(s), θ(t) and Hardy's Z(t).

mod bernoulli;
mod euler_maclaurin;
mod log_gamma;
mod riemann_siegel;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{check_finite, ComplexPoint};

pub use bernoulli::{bernoulli_even, MAX_K as BERNOULLI_MAX_K};
pub use euler_maclaurin::{em_params, zeta_euler_maclaurin, zeta_euler_maclaurin_with, EulerMaclaurinParams, MAX_M};
pub use log_gamma::{cos_pi, log_gamma, sin_pi, sin_pi_c, theta};
pub use riemann_siegel::{
    riemann_siegel_z, rs_error_bound, rs_h, RSDecomposition, RiemannSiegelZ, RS_ERROR_CONSTANT, RS_MIN_T,
};

pub(crate) use euler_maclaurin::zeta_minus_one_real;
pub(crate) use log_gamma::{is_nonpositive_integer, log_gamma_c, theta_prime, theta_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    EulerMaclaurin,
    RiemannSiegel,
    Series,
    Reflection,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::RiemannSiegel => "riemann_siegel",
            Method::Series => "series",
            Method::Reflection => "reflection",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalWarning {
    /// |s − 1| is tiny; the value is dominated by 1/(s − 1).
    NearPole,
    /// The parameter caps were hit before the requested accuracy.
    AccuracyNotMet,
}

/// A value with an absolute error bound and the method that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub error_bound: f64,
    pub method: Method,
    pub warning: Option<EvalWarning>,
}

impl EvalResult {
    pub fn new(value: Complex64, error_bound: f64, method: Method) -> Self {
        Self { value, error_bound: error_bound.max(0.0), method, warning: None }
    }
}

/// Default accuracy used by callers that do not ask for one.
pub const DEFAULT_TARGET: f64 = 1e-12;

const NEAR_POLE: f64 = 1e-6;

/// ζ(s) with automatic method choice: Riemann-Siegel on the critical line for
/// t ≥ 20 when its error bound is within the target, Euler-Maclaurin (with the
/// functional equation for Re s < 0) otherwise.
pub fn zeta(s: ComplexPoint, target_accuracy: f64) -> Result<EvalResult> {
    let z = s.to_complex();
    check_finite(z)?;
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("s = 1".into()));
    }
    if z.re == 0.5 && z.im.abs() >= RS_MIN_T && rs_error_bound(z.im.abs()) <= target_accuracy {
        let t = z.im.abs();
        let rs = riemann_siegel_z(t)?;
        let v = Complex64::from_polar(rs.result.value.re, -rs.decomposition.theta);
        let v = if z.im < 0.0 { v.conj() } else { v };
        return Ok(EvalResult { value: v, ..rs.result });
    }
    let mut r = zeta_euler_maclaurin(s, target_accuracy)?;
    if (z - 1.0).norm() < NEAR_POLE {
        r.warning = Some(EvalWarning::NearPole);
    }
    Ok(r)
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t > 0.
///
/// Riemann-Siegel for t ≥ 20; whenever |Z| does not clear the Riemann-Siegel
/// error bound (so even its sign is uncertain), Euler-Maclaurin is used instead.
pub fn hardy_z(t: f64) -> Result<EvalResult> {
    hardy_z_with(t, 1e-10)
}

pub(crate) fn hardy_z_with(t: f64, em_target: f64) -> Result<EvalResult> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("Z(t) requires t > 0, got {t}")));
    }
    if t >= RS_MIN_T {
        let rs = riemann_siegel_z(t)?;
        if rs.result.value.re.abs() > rs.result.error_bound {
            return Ok(rs.result);
        }
    }
    hardy_z_em(t, em_target)
}

/// Z(t) from the Euler-Maclaurin value of ζ(1/2 + it).
pub fn hardy_z_em(t: f64, target_accuracy: f64) -> Result<EvalResult> {
    let th = theta(t)?;
    let r = zeta_euler_maclaurin(ComplexPoint { re: 0.5, im: t }, target_accuracy)?;
    let z = Complex64::from_polar(1.0, th) * r.value;
    Ok(EvalResult { value: Complex64::new(z.re, 0.0), ..r })
}

/// ζ(1/2 + it) = e^{−iθ(t)} Z(t).
pub fn zeta_critical(t: f64) -> Result<Complex64> {
    let z = hardy_z(t)?;
    Ok(Complex64::from_polar(z.value.re, -theta(t)?))
}

/// Asymptotic main term t/2·log(t/2π) − t/2 − π/8 of θ(t).
pub fn theta_asymptotic(t: f64) -> f64 {
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    #[test]
    fn dispatcher_basics() {
        let r = zeta(pt(2.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(matches!(zeta(pt(1.0, 0.0), 1e-10), Err(Error::Pole(_))));
        let r = zeta(pt(1.0 + 1e-9, 0.0), 1e-10).unwrap();
        assert_eq!(r.warning, Some(EvalWarning::NearPole));
        assert!((r.value.re * 1e-9 - 1.0).abs() < 1e-6);
        let r = zeta(pt(0.5, 1e4), 1e-2).unwrap();
        assert_eq!(r.method, Method::RiemannSiegel);
        let r = zeta(pt(0.5, 1e4), 1e-10).unwrap();
        assert_eq!(r.method, Method::EulerMaclaurin);
    }

    #[test]
    fn first_zero_small() {
        let z = hardy_z(14.134725).unwrap();
        assert!(z.value.re.abs() < 1e-3);
        assert!(zeta_critical(14.134725).unwrap().norm() < 2e-3);
        assert!(hardy_z(0.0).is_err());
    }

    #[test]
    fn zeta_critical_dual_route() {
        let a = zeta_critical(100.0).unwrap();
        let b = zeta_euler_maclaurin(pt(0.5, 100.0), 1e-12).unwrap();
        let bound = rs_error_bound(100.0) + b.error_bound;
        assert!((a.norm() - b.value.norm()).abs() <= bound);
    }

    #[test]
    fn z_at_lehmer_maximum() {
        let z = hardy_z(7005.0819).unwrap();
        assert!((z.value.re - 0.0039675).abs() < 5e-4, "{}", z.value.re);
    }
}
