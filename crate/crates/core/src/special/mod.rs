//! Gallery functions and the oracle interface consumed by the X-ray tracer.

mod dd;
mod functions;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{ComplexPoint, Rectangle};
use crate::zeta::{self, EvalResult, Method};

pub use functions::{airy_ai, bessel_j7, gamma, hermite7, AIRY_MAX_ABS, BESSEL_MAX_ABS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleId {
    Zeta,
    Hermite7,
    BesselJ7,
    AiryAi,
    Gamma,
    UserPolynomial,
}

/// A complex function the tracer can sample: deterministic evaluation plus
/// the list of poles inside any rectangle.
pub trait FunctionOracle: Send + Sync {
    fn id(&self) -> OracleId;

    /// Registry name, e.g. `zeta` or `poly:1,0,-1`.
    fn name(&self) -> String;

    fn eval(&self, s: Complex64) -> Result<EvalResult>;

    fn poles(&self, rect: &Rectangle) -> Vec<ComplexPoint>;

    /// The rectangle the function is usually drawn on.
    fn default_rect(&self) -> Rectangle;
}

impl fmt::Debug for dyn FunctionOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionOracle({})", self.name())
    }
}

fn rect(a: f64, b: f64, c: f64, d: f64) -> Rectangle {
    Rectangle { sigma_min: a, sigma_max: b, t_min: c, t_max: d }
}

fn pt(z: Complex64) -> Result<ComplexPoint> {
    ComplexPoint::try_from(z)
}

#[derive(Debug, Clone, Copy)]
pub struct ZetaOracle {
    pub target_accuracy: f64,
}

impl Default for ZetaOracle {
    fn default() -> Self {
        Self { target_accuracy: zeta::DEFAULT_TARGET }
    }
}

impl FunctionOracle for ZetaOracle {
    fn id(&self) -> OracleId {
        OracleId::Zeta
    }
    fn name(&self) -> String {
        "zeta".into()
    }
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        zeta::zeta(pt(s)?, self.target_accuracy)
    }
    fn poles(&self, r: &Rectangle) -> Vec<ComplexPoint> {
        let one = Complex64::new(1.0, 0.0);
        if r.contains(one) {
            vec![ComplexPoint { re: 1.0, im: 0.0 }]
        } else {
            vec![]
        }
    }
    fn default_rect(&self) -> Rectangle {
        rect(-30.0, 10.0, -10.0, 40.0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Hermite7Oracle;

impl FunctionOracle for Hermite7Oracle {
    fn id(&self) -> OracleId {
        OracleId::Hermite7
    }
    fn name(&self) -> String {
        "hermite7".into()
    }
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        let v = hermite7(pt(s)?);
        // Horner rounding: a few ulps of the largest monomial.
        let err = 16.0 * f64::EPSILON * 3360.0 * (1.0 + s.norm()).powi(7);
        Ok(EvalResult::new(v, err, Method::Series))
    }
    fn poles(&self, _: &Rectangle) -> Vec<ComplexPoint> {
        vec![]
    }
    fn default_rect(&self) -> Rectangle {
        rect(-17.0, 17.0, -17.0, 17.0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BesselJ7Oracle;

impl FunctionOracle for BesselJ7Oracle {
    fn id(&self) -> OracleId {
        OracleId::BesselJ7
    }
    fn name(&self) -> String {
        "bessel_j7".into()
    }
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        bessel_j7(pt(s)?)
    }
    fn poles(&self, _: &Rectangle) -> Vec<ComplexPoint> {
        vec![]
    }
    fn default_rect(&self) -> Rectangle {
        rect(-28.0, 28.0, -20.0, 20.0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AiryAiOracle;

impl FunctionOracle for AiryAiOracle {
    fn id(&self) -> OracleId {
        OracleId::AiryAi
    }
    fn name(&self) -> String {
        "airy_ai".into()
    }
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        airy_ai(pt(s)?)
    }
    fn poles(&self, _: &Rectangle) -> Vec<ComplexPoint> {
        vec![]
    }
    fn default_rect(&self) -> Rectangle {
        rect(-15.0, 15.0, -10.0, 10.0)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GammaOracle;

impl FunctionOracle for GammaOracle {
    fn id(&self) -> OracleId {
        OracleId::Gamma
    }
    fn name(&self) -> String {
        "gamma".into()
    }
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        gamma(pt(s)?)
    }
    fn poles(&self, r: &Rectangle) -> Vec<ComplexPoint> {
        if r.t_min > 0.0 || r.t_max < 0.0 {
            return vec![];
        }
        let hi = r.sigma_max.min(0.0).floor() as i64;
        let lo = r.sigma_min.ceil() as i64;
        (lo..=hi).map(|k| ComplexPoint { re: k as f64, im: 0.0 }).collect()
    }
    fn default_rect(&self) -> Rectangle {
        rect(-10.0, 10.0, -10.0, 10.0)
    }
}

/// Polynomial with real coefficients, highest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialOracle {
    coeffs: Vec<f64>,
}

impl PolynomialOracle {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        let first = coeffs.iter().position(|c| *c != 0.0);
        match first {
            Some(i) if coeffs.iter().all(|c| c.is_finite()) => Ok(Self { coeffs: coeffs[i..].to_vec() }),
            _ => Err(Error::Domain("polynomial needs finite coefficients, not all zero".into())),
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl FunctionOracle for PolynomialOracle {
    fn id(&self) -> OracleId {
        OracleId::UserPolynomial
    }
    fn name(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| format!("{c}")).collect();
        format!("poly:{}", cs.join(","))
    }
    fn eval(&self, s: Complex64) -> Result<EvalResult> {
        pt(s)?;
        let mut v = Complex64::new(0.0, 0.0);
        let mut a = 0.0;
        for &c in &self.coeffs {
            v = v * s + c;
            a = a * s.norm() + c.abs();
        }
        Ok(EvalResult::new(v, 4.0 * (self.coeffs.len() as f64) * f64::EPSILON * a, Method::Series))
    }
    fn poles(&self, _: &Rectangle) -> Vec<ComplexPoint> {
        vec![]
    }
    fn default_rect(&self) -> Rectangle {
        rect(-2.0, 2.0, -2.0, 2.0)
    }
}

/// Names accepted by [`oracle_by_name`].
pub const ORACLE_NAMES: [&str; 6] = ["zeta", "hermite7", "bessel_j7", "airy_ai", "gamma", "poly:<c_n>,...,<c_0>"];

/// Looks an oracle up by registry name. Polynomials are written
/// `poly:c_n,...,c_1,c_0` (highest degree first).
pub fn oracle_by_name(name: &str) -> Result<Arc<dyn FunctionOracle>> {
    let o: Arc<dyn FunctionOracle> = match name {
        "zeta" => Arc::new(ZetaOracle::default()),
        "hermite7" => Arc::new(Hermite7Oracle),
        "bessel_j7" => Arc::new(BesselJ7Oracle),
        "airy_ai" => Arc::new(AiryAiOracle),
        "gamma" => Arc::new(GammaOracle),
        other => {
            let Some(list) = other.strip_prefix("poly:") else {
                return Err(Error::Domain(format!("unknown function '{other}'; known: {}", ORACLE_NAMES.join(", "))));
            };
            let coeffs = list
                .split(',')
                .map(|c| c.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Domain(format!("bad polynomial coefficient in '{list}': {e}")))?;
            Arc::new(PolynomialOracle::new(coeffs)?)
        }
    };
    Ok(o)
}
