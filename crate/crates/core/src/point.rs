use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point s = σ + it of the complex plane with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    /// σ
    pub re: f64,
    /// t
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self { re, im })
        } else {
            Err(Error::Domain(format!("non-finite point {re}+{im}i")))
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl TryFrom<Complex64> for ComplexPoint {
    type Error = Error;

    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.to_complex()
    }
}

pub(crate) fn check_finite(s: Complex64) -> Result<()> {
    ComplexPoint::try_from(s).map(|_| ())
}

/// Lossy conversion used for records produced from already validated values.
pub(crate) fn point(z: Complex64) -> ComplexPoint {
    ComplexPoint { re: z.re, im: z.im }
}

/// Axis-aligned rectangle [σ_min, σ_max] × [t_min, t_max].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Rectangle {
    pub fn new(sigma_min: f64, sigma_max: f64, t_min: f64, t_max: f64) -> Result<Self> {
        let finite = [sigma_min, sigma_max, t_min, t_max].iter().all(|v| v.is_finite());
        if !finite || sigma_min >= sigma_max || t_min >= t_max {
            return Err(Error::Domain(format!("invalid rectangle ({sigma_min},{sigma_max})x({t_min},{t_max})")));
        }
        Ok(Self { sigma_min, sigma_max, t_min, t_max })
    }

    pub fn width(&self) -> f64 {
        self.sigma_max - self.sigma_min
    }

    pub fn height(&self) -> f64 {
        self.t_max - self.t_min
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.sigma_min && z.re <= self.sigma_max && z.im >= self.t_min && z.im <= self.t_max
    }
}
