use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_even_f64;
use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::point::{check_finite, ComplexPoint};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_MIN_RE: f64 = 10.0;
const STIRLING_MIN_IM: f64 = 20.0;

/// sin(πx) with exact argument reduction, so integers give exactly 0.
pub fn sin_pi(x: f64) -> f64 {
    if x.fract() == 0.0 {
        return 0.0;
    }
    let n = (2.0 * x).round();
    let y = x - 0.5 * n;
    match (n as i64).rem_euclid(4) {
        0 => (PI * y).sin(),
        1 => (PI * y).cos(),
        2 => -(PI * y).sin(),
        _ => -(PI * y).cos(),
    }
}

/// cos(πx) with exact argument reduction, so half-integers give exactly 0.
pub fn cos_pi(x: f64) -> f64 {
    if (x - 0.5).fract() == 0.0 {
        return 0.0;
    }
    let n = (2.0 * x).round();
    let y = x - 0.5 * n;
    match (n as i64).rem_euclid(4) {
        0 => (PI * y).cos(),
        1 => -(PI * y).sin(),
        2 => -(PI * y).cos(),
        _ => (PI * y).sin(),
    }
}

/// sin(πz) for complex z.
pub fn sin_pi_c(z: Complex64) -> Complex64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    Complex64::new(sin_pi(z.re) * ch, cos_pi(z.re) * sh)
}

/// log sin(πz) modulo 2πi, safe for large |Im z|.
pub(crate) fn ln_sin_pi_c(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return sin_pi_c(z).ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi_c(z.conj()).conj();
    }
    // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz}), and |e^{2iπz}| = e^{-2π Im z}.
    let i = Complex64::i();
    let e2 = Complex64::from_polar((-2.0 * PI * z.im).exp(), 2.0 * PI * (z.re - 2.0 * (z.re / 2.0).floor()));
    -i * PI * z + Complex64::new(0.5f64.ln(), PI / 2.0) + (Complex64::new(1.0, 0.0) - e2).ln()
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Stirling series for log Γ(z), valid once |z| is large and Re z > 0.
fn stirling(z: Complex64) -> (Complex64, f64) {
    let mut sum = (z - 0.5) * z.ln() - z + LN_SQRT_2PI;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut last = f64::INFINITY;
    for k in 1..=20u32 {
        let c = bernoulli_even_f64(k) / ((2 * k) as f64 * (2 * k - 1) as f64);
        let term = pow * c;
        let mag = term.norm();
        if mag > last {
            break;
        }
        sum += term;
        last = mag;
        if mag < 1e-18 * sum.norm().max(1.0) {
            break;
        }
        pow *= inv2;
    }
    let rounding = 4.0 * f64::EPSILON * ((z.norm() + 1.0) * z.ln().norm() + z.norm());
    (sum, last + rounding)
}

pub(crate) fn log_gamma_c(z: Complex64) -> Result<(Complex64, f64)> {
    check_finite(z)?;
    if is_nonpositive_integer(z) {
        return Err(Error::Domain(format!("log Γ has a pole at {}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut shift_err = 0.0;
    while w.re < STIRLING_MIN_RE && !(w.re >= 0.0 && w.im.abs() >= STIRLING_MIN_IM) {
        let l = w.ln();
        shift += l;
        shift_err += 2.0 * f64::EPSILON * (l.norm() + 1.0);
        w += 1.0;
    }
    let (s, err) = stirling(w);
    Ok((s - shift, err + shift_err + f64::EPSILON * shift.norm()))
}

/// Principal branch of log Γ(s): shift recurrence up to Re s ≥ 10 (or into the
/// |Im s| ≥ 20 region), then the Stirling series.
pub fn log_gamma(s: ComplexPoint) -> Result<EvalResult> {
    let (value, error_bound) = log_gamma_c(s.to_complex())?;
    Ok(EvalResult::new(value, error_bound, Method::Series))
}

/// Riemann-Siegel theta function θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn theta(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("θ(t) requires t > 0, got {t}")));
    }
    Ok(theta_unchecked(t))
}

pub(crate) fn theta_unchecked(t: f64) -> f64 {
    let (lg, _) = log_gamma_c(Complex64::new(0.25, 0.5 * t)).expect("1/4 + it/2 is never a pole");
    lg.im - 0.5 * t * PI.ln()
}

/// θ'(t), used as the Newton slope for Gram points.
pub(crate) fn theta_prime(t: f64) -> f64 {
    0.5 * (t / (2.0 * PI)).ln() - 1.0 / (48.0 * t * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg(re: f64, im: f64) -> Complex64 {
        log_gamma_c(Complex64::new(re, im)).unwrap().0
    }

    // Oracle: push the argument far right, where the Stirling series alone is
    // extremely accurate, and undo the shift with principal logarithms.
    fn shifted(z: Complex64, depth: usize) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..depth {
            acc += (z + j as f64).ln();
        }
        stirling(z + depth as f64).0 - acc
    }

    #[test]
    fn classical_values() {
        assert!(lg(1.0, 0.0).norm() < 1e-14);
        assert!(lg(2.0, 0.0).norm() < 1e-14);
        assert!((lg(0.5, 0.0).re - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((lg(5.0, 0.0).re - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn shift_depth_agreement() {
        let z = Complex64::new(5.0, 3.0);
        let a = lg(5.0, 3.0);
        assert!((a - shifted(z, 20)).norm() < 1e-12);
        assert!((a - shifted(z, 40)).norm() < 1e-12);
        for &(re, im) in &[(-3.7, 0.2), (-12.5, -4.0), (0.25, 7.0), (0.25, 30.0), (1e-3, 1e-3)] {
            let z = Complex64::new(re, im);
            let v = lg(re, im);
            let o = shifted(z, 60);
            assert!((v - o).norm() < 1e-11 * (1.0 + v.norm()), "{z}: {v} vs {o}");
        }
    }

    #[test]
    fn poles_rejected() {
        for x in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(ComplexPoint::new(x, 0.0).unwrap()), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn sin_cos_pi_exact() {
        for k in -40..40 {
            assert_eq!(sin_pi(k as f64), 0.0);
            assert_eq!(cos_pi(k as f64 + 0.5), 0.0);
        }
        assert!((sin_pi(0.25) - 0.5f64.sqrt()).abs() < 1e-16);
        assert!((cos_pi(1.0 / 3.0) - 0.5).abs() < 1e-15);
        assert!((sin_pi(-2.5) + 1.0).abs() < 1e-16);
    }

    #[test]
    fn ln_sin_pi_large_imaginary() {
        for &(re, im) in &[(0.3, 19.0), (-4.2, 25.0), (7.9, -33.0)] {
            let z = Complex64::new(re, im);
            let a = ln_sin_pi_c(z).exp();
            let b = sin_pi_c(z);
            assert!((a / b - 1.0).norm() < 1e-12, "{z}");
        }
    }

    #[test]
    fn theta_zero_at_first_gram_point() {
        // Oracle: bisection on θ over [10, 30].
        let (mut lo, mut hi) = (10.0, 30.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if theta(mid).unwrap() < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 17.8455995404).abs() < 1e-8);
    }

    #[test]
    fn theta_asymptotics() {
        let asym = |t: f64| 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
        for t in [10.0, 20.0, 50.0, 1e3] {
            assert!((theta(t).unwrap() - asym(t)).abs() < 0.02);
        }
        let t = 1e4;
        assert!((theta(t).unwrap() - asym(t)).abs() < 1e-5);
        let mut prev = theta(10.0).unwrap();
        let mut t = 11.0;
        while t < 1e6 {
            let v = theta(t).unwrap();
            assert!(v > prev);
            prev = v;
            t *= 1.07;
        }
        assert!(theta(0.0).is_err());
    }

    #[test]
    fn theta_prime_matches_difference() {
        for t in [20.0f64, 300.0, 7005.0, 6.8e6] {
            let h = 1e-3 * t.sqrt();
            let fd = (theta(t + h).unwrap() - theta(t - h).unwrap()) / (2.0 * h);
            assert!((fd - theta_prime(t)).abs() < 1e-6, "{t}");
        }
    }
}
