use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{Cdd, Dd, DD_EPS};
use crate::error::{Error, Result};
use crate::point::{check_finite, ComplexPoint};
use crate::zeta::{is_nonpositive_integer, log_gamma_c, sin_pi_c, EvalResult, Method};

/// Extra terms summed after the relative stopping test first passes.
const SAFETY_TERMS: usize = 5;
const MAX_TERMS: usize = 2000;

pub const BESSEL_MAX_ABS: f64 = 60.0;
pub const AIRY_MAX_ABS: f64 = 20.0;

/// H₇(z) = 128z⁷ − 1344z⁵ + 3360z³ − 1680z.
pub fn hermite7(z: ComplexPoint) -> Complex64 {
    hermite7_c(z.to_complex())
}

pub(crate) fn hermite7_c(z: Complex64) -> Complex64 {
    let z2 = z * z;
    z * (((z2 * 128.0 - 1344.0) * z2 + 3360.0) * z2 - 1680.0)
}

/// Sums `first, first·r_0, first·r_0·r_1, …` in double-double until the term
/// falls below 1e-16 of the partial sum, plus a fixed safety margin.
/// Returns the sum, Σ|term| and the last term magnitude.
fn series<F>(first: Cdd, mut ratio: F, extra: usize) -> (Cdd, f64, f64)
where
    F: FnMut(usize, Cdd) -> Cdd,
{
    let mut term = first;
    let mut sum = first;
    let mut abs_sum = first.norm();
    let mut remaining: Option<usize> = None;
    let mut last = first.norm();
    for k in 0..MAX_TERMS {
        term = ratio(k, term);
        sum = sum + term;
        last = term.norm();
        abs_sum += last;
        match remaining.as_mut() {
            Some(0) => break,
            Some(r) => *r -= 1,
            None => {
                if last < 1e-16 * sum.norm() || (last == 0.0 && sum.norm() == 0.0) {
                    remaining = Some(SAFETY_TERMS + extra);
                }
            }
        }
    }
    (sum, abs_sum, last)
}

fn bessel_j7_terms(z: Complex64, extra: usize) -> (Complex64, f64) {
    let h = Cdd::from_c64(z).scale(0.5);
    let w = h * h;
    // 1/7! as double-double.
    let first = Cdd::from_dd(Dd::new(0.000_198_412_698_412_698_4, 1.720_955_829_342_070_5e-22));
    let (sum, abs_sum, last) = series(first, |k, t| -(t * w).div_f64(((k + 1) * (k + 8)) as f64), extra);
    let h2 = h * h;
    let h7 = h2 * h2 * h2 * h;
    let value = (sum * h7).to_c64();
    let scale = h7.norm();
    let err = scale * (DD_EPS * 8.0 * abs_sum + last) + f64::EPSILON * value.norm();
    (value, err)
}

/// J₇(z) = (z/2)⁷ Σ_k (−1)^k (z/2)^{2k} / (k!(k+7)!), for |z| ≤ 60.
pub fn bessel_j7(z: ComplexPoint) -> Result<EvalResult> {
    let z = z.to_complex();
    check_finite(z)?;
    if z.norm() > BESSEL_MAX_ABS {
        return Err(Error::Range(format!("J₇ series limited to |z| <= {BESSEL_MAX_ABS}, got |z| = {}", z.norm())));
    }
    let (value, err) = bessel_j7_terms(z, 0);
    Ok(EvalResult::new(value, err, Method::Series))
}

// Ai(0) = 3^{-2/3}/Γ(2/3) and −Ai'(0) = 3^{-1/3}/Γ(1/3), as double-doubles.
const AI0: Dd = Dd::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const MINUS_AIP0: Dd = Dd::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

fn airy_terms(z: Complex64, extra: usize) -> (Complex64, f64) {
    let zd = Cdd::from_c64(z);
    let z3 = zd * zd * zd;
    let one = Cdd::from_dd(Dd::from_f64(1.0));
    // f = Σ 3^k (1/3)_k z^{3k}/(3k)!, g = Σ 3^k (2/3)_k z^{3k+1}/(3k+1)!.
    let (f, fa, fl) = series(one, |k, t| (t * z3).div_f64(((3 * k + 2) * (3 * k + 3)) as f64), extra);
    let (g, ga, gl) = series(zd, |k, t| (t * z3).div_f64(((3 * k + 3) * (3 * k + 4)) as f64), extra);
    let value = (f.mul_dd(AI0) - g.mul_dd(MINUS_AIP0)).to_c64();
    let err = 0.36 * (DD_EPS * 8.0 * fa + fl) + 0.26 * (DD_EPS * 8.0 * ga + gl) + f64::EPSILON * value.norm();
    (value, err)
}

/// Airy Ai(z) from its Maclaurin series, for |z| ≤ 20.
pub fn airy_ai(z: ComplexPoint) -> Result<EvalResult> {
    let z = z.to_complex();
    check_finite(z)?;
    if z.norm() > AIRY_MAX_ABS {
        return Err(Error::Range(format!("Ai series limited to |z| <= {AIRY_MAX_ABS}, got |z| = {}", z.norm())));
    }
    let (value, err) = airy_terms(z, 0);
    Ok(EvalResult::new(value, err, Method::Series))
}

/// Γ(z): exp(log Γ(z)) for Re z > 0, reflection Γ(z) = π/(sin(πz) Γ(1−z)) otherwise.
pub fn gamma(z: ComplexPoint) -> Result<EvalResult> {
    let z = z.to_complex();
    check_finite(z)?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Γ has a pole at {}", z.re)));
    }
    if z.re > 0.0 {
        let (lg, err) = log_gamma_c(z)?;
        let v = lg.exp();
        return Ok(EvalResult::new(v, v.norm() * (err + f64::EPSILON * (1.0 + lg.norm())), Method::Series));
    }
    let (lg, err) = log_gamma_c(1.0 - z)?;
    let v = PI / (sin_pi_c(z) * lg.exp());
    let rel = err + 4.0 * f64::EPSILON * (1.0 + lg.norm() + PI * z.im.abs());
    Ok(EvalResult::new(v, v.norm() * rel, Method::Reflection))
}

#[cfg(test)]
pub(crate) fn bessel_j7_with_extra(z: Complex64, extra: usize) -> (Complex64, f64) {
    bessel_j7_terms(z, extra)
}

#[cfg(test)]
pub(crate) fn airy_with_extra(z: Complex64, extra: usize) -> (Complex64, f64) {
    airy_terms(z, extra)
}
