use std::f64::consts::PI;

use crate::error::{Error, Result};

/// 2t/π log(t/2π) − 2t/π + 1/2, the (real) number of the X-ray line through −1 + it.
pub fn line_number_value(t: f64) -> f64 {
    2.0 * t / PI * (t / (2.0 * PI)).ln() - 2.0 * t / PI + 0.5
}

/// Number of the line through −1 + it, for t > 5.
pub fn line_number(t: f64) -> Result<i64> {
    if !(t > 5.0) || !t.is_finite() {
        return Err(Error::Range(format!("line numbering needs t > 5, got {t}")));
    }
    Ok(line_number_value(t).round() as i64)
}

/// T/2π log(T/2π) − T/2π + 7/8: zeros below a zero-free parallel at height T.
pub fn zeros_below_zero_free(t: f64) -> f64 {
    let u = t / (2.0 * PI);
    u * u.ln() - u + 0.875
}

/// T/2π log(T/2π) − T/2π + 11/8: zeros up to and including the one on a
/// zero-carrying parallel at height T.
pub fn zeros_below_zero_carrying(t: f64) -> f64 {
    zeros_below_zero_free(t) + 0.5
}

/// Zeros below parallel line number `n`: (N+3)/4 if the line is zero-free
/// (N ≡ 1 mod 4), (N+5)/4 counting its own zero if zero-carrying (N ≡ 3 mod 4).
pub fn zeros_below_parallel(n: i64) -> Result<i64> {
    match n.rem_euclid(4) {
        1 => Ok((n + 3) / 4),
        3 => Ok((n + 5) / 4),
        _ => Err(Error::Domain(format!("parallel lines are thick and carry odd numbers, got {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbering() {
        assert!(line_number(5.0).is_err());
        // Near t = 10 the line through −1 + it is line −3.
        assert_eq!(line_number(10.0).unwrap(), -3);
        assert_eq!(zeros_below_parallel(1).unwrap(), 1);
        assert_eq!(zeros_below_parallel(3).unwrap(), 2);
        assert_eq!(zeros_below_parallel(-3).unwrap(), 0);
        assert!(zeros_below_parallel(4).is_err());
    }

    #[test]
    fn eq2_tracks_eq1() {
        // (Eq1 + 3)/4 equals Eq2 identically in t.
        for t in [20.0, 113.0, 999.0] {
            assert!(((line_number_value(t) + 3.0) / 4.0 - zeros_below_zero_free(t)).abs() < 1e-12);
        }
    }
}
