use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::zeta::{zeta_euler_maclaurin, zeta_minus_one_real};

/// Primes summed explicitly; the rest enters through the prime zeta function.
const PRIME_LIMIT: usize = 1000;
/// Odd powers kept in the arcsin series for the tail, where p^{-σ} < 10^{-3}.
const ARCSIN_TERMS: usize = 6;
const BRACKET: (f64, f64) = (1.05, 1.5);

pub(crate) fn primes_up_to(n: usize) -> Vec<u64> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

fn mobius(mut k: u64) -> i64 {
    let mut m = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            m = -m;
        }
        p += 1;
    }
    if k > 1 {
        m = -m;
    }
    m
}

/// log ζ(x) for real x > 1.
fn ln_zeta(x: f64) -> f64 {
    if x >= 2.0 {
        zeta_minus_one_real(x).ln_1p()
    } else {
        let v = zeta_euler_maclaurin(ComplexPoint { re: x, im: 0.0 }, 1e-15).expect("x > 1").value.re;
        v.ln()
    }
}

/// Prime zeta P(s) = Σ_p p^{-s} = Σ_k μ(k)/k log ζ(ks), real s > 1.
pub(crate) fn prime_zeta(s: f64) -> f64 {
    let mut sum = 0.0;
    for k in 1..=200u64 {
        let x = k as f64 * s;
        if x * std::f64::consts::LN_2 > 60.0 {
            break;
        }
        let mu = mobius(k);
        if mu != 0 {
            sum += mu as f64 / k as f64 * ln_zeta(x);
        }
    }
    sum
}

/// Σ_{p ≤ limit} arcsin(p^{-σ}).
pub fn van_de_lune_partial(sigma: f64, prime_limit: usize) -> f64 {
    primes_up_to(prime_limit).iter().map(|&p| (p as f64).powf(-sigma).asin()).sum()
}

fn arcsin_coefficients() -> [f64; ARCSIN_TERMS] {
    // c_j = (2j)! / (4^j (j!)^2 (2j+1)).
    let mut c = [0.0; ARCSIN_TERMS];
    let mut central = 1.0;
    for (j, cj) in c.iter_mut().enumerate() {
        if j > 0 {
            central *= (2 * j - 1) as f64 / (2 * j) as f64;
        }
        *cj = central / (2 * j + 1) as f64;
    }
    c
}

/// F(σ) = Σ_p arcsin(p^{-σ}) over all primes, σ > 1.
pub fn van_de_lune_sum(sigma: f64) -> Result<f64> {
    if !(sigma > 1.0) {
        return Err(Error::Domain(format!("Σ arcsin(p^-σ) diverges for σ <= 1, got {sigma}")));
    }
    let primes = primes_up_to(PRIME_LIMIT);
    let head: f64 = primes.iter().map(|&p| (p as f64).powf(-sigma).asin()).sum();
    let mut tail = 0.0;
    for (j, c) in arcsin_coefficients().iter().enumerate() {
        let e = (2 * j + 1) as f64 * sigma;
        let small: f64 = primes.iter().map(|&p| (p as f64).powf(-e)).sum();
        tail += c * (prime_zeta(e) - small);
    }
    Ok(head + tail)
}

/// The root σ₀ > 1 of Σ_p arcsin(p^{-σ}) = π/2, rounded to `digits`
/// significant digits (1 ≤ digits ≤ 14).
pub fn van_de_lune_sigma0(digits: u32) -> Result<f64> {
    if !(1..=14).contains(&digits) {
        return Err(Error::Range(format!("sigma0 digits must lie in 1..=14, got {digits}")));
    }
    let (mut lo, mut hi) = BRACKET;
    while hi - lo > 1e-16 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if van_de_lune_sum(mid)? > FRAC_PI_2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let scale = 10f64.powi(digits as i32 - 1);
    Ok((root * scale).round() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_zeta_matches_direct_sum() {
        // Oracle: direct sum over primes plus an integral tail bound.
        let s = 3.0;
        let primes = primes_up_to(2_000_000);
        let direct: f64 = primes.iter().rev().map(|&p| (p as f64).powf(-s)).sum();
        assert!((prime_zeta(s) - direct).abs() < 1e-12);
        assert!((prime_zeta(2.0) - 0.452_247_420_041_065_5).abs() < 1e-14);
    }

    #[test]
    fn mobius_values() {
        let want = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(mobius(k as u64 + 1), *w);
        }
    }

    #[test]
    fn sigma0() {
        let v = van_de_lune_sigma0(14).unwrap();
        assert!((v - 1.192_347_337_186_2).abs() < 1e-13, "{v}");
        assert_eq!(van_de_lune_sigma0(3).unwrap(), 1.19);
        assert!(van_de_lune_sigma0(0).is_err());
        assert!(van_de_lune_sigma0(15).is_err());
    }

    #[test]
    fn bracket_and_monotonicity() {
        assert!(van_de_lune_sum(BRACKET.0).unwrap() > FRAC_PI_2);
        assert!(van_de_lune_sum(BRACKET.1).unwrap() < FRAC_PI_2);
        let mut prev = f64::INFINITY;
        for i in 0..=45 {
            let v = van_de_lune_sum(1.05 + 0.01 * i as f64).unwrap();
            assert!(v < prev);
            prev = v;
        }
        let mut prev = 0.0;
        for limit in [10, 100, 1000, 10_000] {
            let v = van_de_lune_partial(1.2, limit);
            assert!(v > prev);
            prev = v;
        }
    }
}
