use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bernoulli::bernoulli_even_f64;
use super::log_gamma::{ln_sin_pi_c, log_gamma_c, sin_pi_c};
use super::{EvalResult, EvalWarning, Method};
use crate::error::{Error, Result};
use crate::point::{check_finite, ComplexPoint};

/// Truncation parameters of the Euler-Maclaurin formula: the direct sum runs
/// over `n < N` and `M` Bernoulli correction terms are added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerMaclaurinParams {
    pub n: u64,
    pub m: u32,
}

pub const MAX_M: u32 = 30;
const CHUNK: u64 = 1 << 14;

impl EulerMaclaurinParams {
    pub fn new(n: u64, m: u32) -> Result<Self> {
        if n < 2 || m < 1 || m > 59 {
            return Err(Error::Domain(format!("Euler-Maclaurin needs N >= 2 and 1 <= M <= 59, got N={n}, M={m}")));
        }
        Ok(Self { n, m })
    }
}

/// Largest N the policy reaches before scaling up further on failure.
fn policy_n(s: Complex64) -> u64 {
    10u64.max((s.im.abs() / PI).ceil() as u64 + 10)
}

/// |T_k| for k = 1..=k_max, with N^{-s} supplied.
fn correction_terms(s: Complex64, n: u64, k_max: u32, n_pow: Complex64) -> Vec<Complex64> {
    let nf = n as f64;
    let inv_n2 = 1.0 / (nf * nf);
    // P_1 = s N^{-s-1} / 2!, P_{k+1} = P_k (s+2k-1)(s+2k) / ((2k+1)(2k+2) N^2).
    let mut p = s * n_pow / (2.0 * nf);
    let mut out = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        out.push(p * bernoulli_even_f64(k));
        let kf = k as f64;
        p *= (s + (2.0 * kf - 1.0)) * (s + 2.0 * kf) * (inv_n2 / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0)));
    }
    out
}

/// Remainder bound after M correction terms: |s+2M+1|/(σ+2M+1) |T_{M+1}|.
fn remainder_bound(s: Complex64, m: u32, next_term: Complex64) -> f64 {
    let d = s.re + 2.0 * m as f64 + 1.0;
    if d <= 0.0 {
        return f64::INFINITY;
    }
    (s + (2.0 * m as f64 + 1.0)).norm() / d * next_term.norm()
}

/// Smallest M in 1..=MAX_M meeting the target, or the M with the least bound.
fn choose_m(s: Complex64, n: u64, target: f64) -> (u32, f64) {
    let n_pow = Complex64::new(n as f64, 0.0).powc(-s);
    let terms = correction_terms(s, n, MAX_M + 1, n_pow);
    let mut best = (1, f64::INFINITY);
    for m in 1..=MAX_M {
        let b = remainder_bound(s, m, terms[m as usize]);
        if b <= target {
            return (m, b);
        }
        if b < best.1 {
            best = (m, b);
        }
    }
    best
}

/// Parameters chosen for `s` and `target`: N climbs a doubling ladder from 10
/// to max(10, ⌈|t|/π⌉ + 10), stopping at the first N whose best M meets the
/// target; if none does, N keeps doubling a few more times.
pub fn em_params(s: ComplexPoint, target_accuracy: f64) -> EulerMaclaurinParams {
    let s = s.to_complex();
    let cap = policy_n(s);
    let mut n = 10u64.min(cap);
    loop {
        let (m, b) = choose_m(s, n, target_accuracy);
        if b <= target_accuracy || n >= 8 * cap {
            return EulerMaclaurinParams { n, m };
        }
        n = if n < cap { (2 * n).min(cap) } else { 2 * n };
    }
}

#[inline]
fn term(s: Complex64, k: u64) -> Complex64 {
    let l = (k as f64).ln();
    let mag = (-s.re * l).exp();
    // t ln k with the product's rounding error folded back in.
    let p = s.im * l;
    let e = s.im.mul_add(l, -p);
    let (sn, cs) = (p + e).sin_cos();
    Complex64::new(mag * cs, -mag * sn)
}

/// Neumaier-compensated sum of k^{-s} for k in [a, b).
fn chunk_sum(s: Complex64, a: u64, b: u64) -> (Complex64, f64, f64) {
    let (mut sr, mut cr, mut si, mut ci) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut abs_sum = 0.0;
    let mut phase_var = 0.0;
    for k in a..b {
        let v = term(s, k);
        let nt = sr + v.re;
        cr += if sr.abs() >= v.re.abs() { (sr - nt) + v.re } else { (v.re - nt) + sr };
        sr = nt;
        let nt = si + v.im;
        ci += if si.abs() >= v.im.abs() { (si - nt) + v.im } else { (v.im - nt) + si };
        si = nt;
        let m = v.norm();
        abs_sum += m;
        let ph = m * (4.0 + (s.im * (k as f64).ln()).abs());
        phase_var += ph * ph;
    }
    (Complex64::new(sr + cr, si + ci), abs_sum, phase_var)
}

/// Σ_{k=start}^{n-1} k^{-s} with a heuristic rounding bound.
fn direct_sum(s: Complex64, start: u64, n: u64) -> (Complex64, f64) {
    if n <= start {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    let parts: Vec<(Complex64, f64, f64)> = if n - start <= CHUNK {
        vec![chunk_sum(s, start, n)]
    } else {
        let chunks: Vec<(u64, u64)> = (start..n).step_by(CHUNK as usize).map(|a| (a, (a + CHUNK).min(n))).collect();
        chunks.par_iter().map(|&(a, b)| chunk_sum(s, a, b)).collect()
    };
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    let mut var = 0.0;
    for (v, a, p) in parts {
        acc += v;
        abs_sum += a;
        var += p;
    }
    (acc, 4.0 * f64::EPSILON * abs_sum + 3.0 * f64::EPSILON * var.sqrt())
}

/// Euler-Maclaurin evaluation with explicit parameters; returns the value and
/// (truncation bound, rounding estimate).
fn em_core(s: Complex64, p: EulerMaclaurinParams, start: u64) -> (Complex64, f64, f64) {
    let n = p.n;
    let nf = n as f64;
    let (direct, direct_err) = direct_sum(s, start, n);
    let n_pow = Complex64::new(nf, 0.0).powc(-s);
    let terms = correction_terms(s, n, p.m + 1, n_pow);
    let mut corr = Complex64::new(0.0, 0.0);
    let mut corr_abs = 0.0;
    for t in &terms[..p.m as usize] {
        corr += t;
        corr_abs += t.norm();
    }
    let head = 0.5 * n_pow + n_pow * nf / (s - 1.0);
    let value = direct + head + corr;
    let bound = remainder_bound(s, p.m, terms[p.m as usize]);
    let rounding = direct_err + 8.0 * f64::EPSILON * (corr_abs + head.norm() * (1.0 + s.norm()));
    (value, bound, rounding)
}

/// ζ(s) by the Euler-Maclaurin formula with fixed N and M (no reflection).
pub fn zeta_euler_maclaurin_with(s: ComplexPoint, params: EulerMaclaurinParams) -> Result<EvalResult> {
    let z = s.to_complex();
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("s = 1".into()));
    }
    let (value, bound, rounding) = em_core(z, params, 1);
    Ok(EvalResult::new(value, bound + rounding, Method::EulerMaclaurin))
}

fn em_direct(s: Complex64, target: f64) -> EvalResult {
    let p = em_params(ComplexPoint { re: s.re, im: s.im }, target);
    let (value, bound, rounding) = em_core(s, p, 1);
    let mut r = EvalResult::new(value, bound + rounding, Method::EulerMaclaurin);
    if bound > target {
        r.warning = Some(EvalWarning::AccuracyNotMet);
    }
    r
}

/// ζ(s) by Euler-Maclaurin. For Re s < 0 the formula is applied at 1 − s and
/// carried over by the functional equation (method `Reflection`).
pub fn zeta_euler_maclaurin(s: ComplexPoint, target_accuracy: f64) -> Result<EvalResult> {
    let z = s.to_complex();
    check_finite(z)?;
    if !(target_accuracy > 0.0) {
        return Err(Error::Domain(format!("target accuracy must be positive, got {target_accuracy}")));
    }
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("s = 1".into()));
    }
    if z.re >= 0.0 {
        return Ok(em_direct(z, target_accuracy));
    }
    reflect(z, target_accuracy)
}

/// ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s).
fn reflect(s: Complex64, target: f64) -> Result<EvalResult> {
    let w = 1.0 - s;
    let sp = sin_pi_c(s / 2.0);
    if sp == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult::new(Complex64::new(0.0, 0.0), 0.0, Method::Reflection));
    }
    let (lg, lg_err) = log_gamma_c(w)?;
    let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin_pi_c(s / 2.0) + lg;
    let factor = log_factor.exp();
    let fnorm = factor.norm();
    // Relative target for ζ(1−s), which is close to 1 for Re(1−s) > 1.
    let inner_target = if fnorm > 0.0 { (target / fnorm).clamp(1e-300, 1e-2) } else { 1e-2 };
    let inner = em_direct(w, inner_target);
    let value = factor * inner.value;
    let rel = lg_err + 16.0 * f64::EPSILON * (1.0 + log_factor.norm());
    let err = fnorm * inner.error_bound + value.norm() * rel;
    let mut r = EvalResult::new(value, err, Method::Reflection);
    if err > target {
        r.warning = Some(EvalWarning::AccuracyNotMet);
    }
    Ok(r)
}

/// ζ(x) − 1 for real x ≥ 2 without cancellation against the leading 1.
pub(crate) fn zeta_minus_one_real(x: f64) -> f64 {
    let s = Complex64::new(x, 0.0);
    let p = EulerMaclaurinParams { n: 12, m: 12 };
    em_core(s, p, 2).0.re
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    #[test]
    fn classical_values() {
        let r = zeta_euler_maclaurin(pt(2.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(r.value.im.abs() < 1e-15);
        assert!(r.error_bound <= 1e-14);
        let r = zeta_euler_maclaurin(pt(0.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re + 0.5).abs() < 1e-14);
        let r = zeta_euler_maclaurin(pt(4.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re - PI.powi(4) / 90.0).abs() < 1e-14);
        let r = zeta_euler_maclaurin(pt(-1.0, 0.0), 1e-14).unwrap();
        assert!((r.value.re + 1.0 / 12.0).abs() < 1e-14);
        assert_eq!(r.method, Method::Reflection);
    }

    #[test]
    fn trivial_zeros() {
        for k in 1..=14 {
            let r = zeta_euler_maclaurin(pt(-2.0 * k as f64, 0.0), 1e-12).unwrap();
            assert!(r.value.norm() < 1e-10, "ζ(-{})", 2 * k);
        }
    }

    #[test]
    fn pole() {
        assert!(matches!(zeta_euler_maclaurin(pt(1.0, 0.0), 1e-10), Err(Error::Pole(_))));
    }

    #[test]
    fn known_critical_line_value() {
        // ζ(1/2 + 100i), reference value to 15 digits.
        let r = zeta_euler_maclaurin(pt(0.5, 100.0), 1e-13).unwrap();
        let want = Complex64::new(2.692619885681324, -0.020386029602598);
        assert!((r.value - want).norm() < 1e-12, "{}", r.value);
        assert!(r.error_bound < 1e-12);
    }

    #[test]
    fn reflection_matches_direct_formula_near_zero() {
        // For -1 < σ < 0 the direct formula is still valid; both routes agree.
        for &(re, im) in &[(-0.3, 5.0), (-0.7, 23.0), (-0.1, -40.0)] {
            let z = Complex64::new(re, im);
            let direct = em_direct(z, 1e-13);
            let refl = zeta_euler_maclaurin(pt(re, im), 1e-13).unwrap();
            assert!((direct.value - refl.value).norm() < 1e-11 * (1.0 + direct.value.norm()), "{z}");
        }
    }

    #[test]
    fn params_policy_bounds() {
        let p = em_params(pt(0.5, 7005.0), 1e-10);
        assert!(p.n <= 7005 / 3 + 11 && p.m <= MAX_M);
        let p = em_params(pt(2.0, 0.0), 1e-15);
        assert_eq!(p.n, 10);
    }

    #[test]
    fn zeta_minus_one() {
        let v = zeta_minus_one_real(2.0);
        assert!((v - (PI * PI / 6.0 - 1.0)).abs() < 1e-15);
        let v = zeta_minus_one_real(40.0);
        let want = 2f64.powi(-40) + 3f64.powi(-40) + 4f64.powi(-40);
        assert!((v / want - 1.0).abs() < 1e-14);
    }
}
