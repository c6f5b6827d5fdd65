use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest `k` for which `B_{2k}` is tabulated.
pub const MAX_K: u32 = 60;

fn table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Akiyama-Tanigawa: row m starts at 1/(m+1), collapses to B_n in a[0].
        let n_max = 2 * MAX_K as usize;
        let mut a: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        let mut out = Vec::with_capacity(MAX_K as usize + 1);
        for m in 0..=n_max {
            a.push(BigRational::new(BigInt::from(1), BigInt::from(m as u64 + 1)));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * BigRational::from_integer(BigInt::from(j as u64));
            }
            if m % 2 == 0 {
                out.push(a[0].clone());
            }
        }
        out
    })
}

/// Exact `B_{2k}` for `1 <= k <= 60`.
pub fn bernoulli_even(k: u32) -> Result<BigRational> {
    if !(1..=MAX_K).contains(&k) {
        return Err(Error::Range(format!("Bernoulli index k={k} outside 1..={MAX_K}")));
    }
    Ok(table()[k as usize].clone())
}

/// `B_{2k}` rounded to f64.
pub(crate) fn bernoulli_even_f64(k: u32) -> f64 {
    static F: OnceLock<Vec<f64>> = OnceLock::new();
    F.get_or_init(|| table().iter().map(rational_to_f64).collect())[k as usize]
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    // Scale so the quotient has 64+ significant bits before the float conversion.
    let n = r.numer();
    let d = r.denom();
    let shift = d.bits() as i64 - n.bits() as i64 + 64;
    let q = if shift >= 0 { (n << shift as usize) / d } else { n / (d << (-shift) as usize) };
    q.to_f64().unwrap() * 2f64.powi(-shift as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    // Independent oracle: sum_{j=0}^{n} C(n+1, j) B_j = 0.
    fn recurrence(n_max: usize) -> Vec<BigRational> {
        let mut b = vec![rat(1, 1)];
        for n in 1..=n_max {
            let mut s = BigRational::zero();
            for (j, bj) in b.iter().enumerate() {
                let c = binomial(BigInt::from(n + 1), BigInt::from(j));
                s += bj * BigRational::from_integer(c);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(n + 1)));
        }
        b
    }

    #[test]
    fn classical_values() {
        assert_eq!(bernoulli_even(1).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_even(2).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_even(6).unwrap(), rat(691, -2730));
    }

    #[test]
    fn matches_recurrence() {
        let b = recurrence(2 * MAX_K as usize);
        for k in 1..=MAX_K {
            assert_eq!(bernoulli_even(k).unwrap(), b[2 * k as usize], "k={k}");
        }
        assert_eq!(bernoulli_even(10).unwrap(), BigRational::new(BigInt::from(-174611), BigInt::from(330)));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(bernoulli_even(0), Err(Error::Range(_))));
        assert!(matches!(bernoulli_even(61), Err(Error::Range(_))));
    }

    #[test]
    fn float_conversion() {
        assert_eq!(bernoulli_even_f64(1), 1.0 / 6.0);
        assert_eq!(bernoulli_even_f64(2), -1.0 / 30.0);
        let b60 = rational_to_f64(&bernoulli_even(60).unwrap());
        assert!((b60 / -2.2122776912707835e103 - 1.0).abs() < 1e-14, "{b60}");
    }
}
