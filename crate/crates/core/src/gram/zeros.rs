use serde::{Deserialize, Serialize};

use super::points::{first_gram_index_above, gram_abscissa};
use super::sfunc::{count_n, MIN_COUNT_T};
use crate::error::{Error, Result};
use crate::zeta::hardy_z;

/// Panels per interval in the first subdivision round.
pub const PANELS: usize = 64;
/// Bracket width after bisection.
pub const REFINE_WIDTH: f64 = 1e-6;

/// A located zero 1/2 + iγ of ζ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// 1-based position by height.
    pub ordinal: i64,
    /// Bracket [a, b] with Z(a) Z(b) < 0.
    pub bracket: (f64, f64),
    pub t: f64,
    pub refinement_width: f64,
}

/// Result of [`find_zeros`]: the zeros in (t_lo, t_hi] and the count check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSearch {
    pub t_lo: f64,
    pub t_hi: f64,
    pub zeros: Vec<ZeroRecord>,
    /// N(t_lo), the ordinal offset.
    pub count_below: i64,
    /// N(t_hi) − N(t_lo) from the argument walk.
    pub expected: i64,
    /// Set when the sign-change census disagrees with `expected`.
    pub warning: Option<String>,
}

impl ZeroSearch {
    pub fn is_complete(&self) -> bool {
        self.warning.is_none()
    }

    /// Number of located zeros in (a, b].
    pub fn count_in(&self, a: f64, b: f64) -> usize {
        self.zeros.iter().filter(|z| z.t > a && z.t <= b).count()
    }
}

pub(crate) fn z(t: f64) -> Result<f64> {
    Ok(hardy_z(t)?.value.re)
}

fn bisect(mut a: f64, mut b: f64, mut za: f64) -> Result<(f64, f64)> {
    while b - a > REFINE_WIDTH {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let zm = z(m)?;
        if zm == 0.0 {
            return Ok((m - 0.25 * REFINE_WIDTH, m + 0.25 * REFINE_WIDTH));
        }
        if (zm > 0.0) == (za > 0.0) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    Ok((a, b))
}

/// Sign-change brackets of Z in [a, b] using `panels` equal panels.
fn panel_brackets(a: f64, za: f64, b: f64, zb: f64, panels: usize) -> Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::new();
    let mut prev = (a, za);
    for i in 1..=panels {
        let t = if i == panels { b } else { a + (b - a) * i as f64 / panels as f64 };
        let zt = if i == panels { zb } else { z(t)? };
        if (prev.1 > 0.0) != (zt > 0.0) {
            out.push((prev.0, t, prev.1));
        }
        prev = (t, zt);
    }
    Ok(out)
}

/// Zeros on a partition `(t, Z(t))` of [t_lo, t_hi]. Each piece without a sign
/// change is split into [`PANELS`] panels; if the census then falls short of
/// `expected`, every piece is split into 64 and then 128 panels.
pub(crate) fn zeros_on_partition(
    nodes: &[(f64, f64)],
    count_below: i64,
    expected: i64,
) -> Result<(Vec<ZeroRecord>, Option<String>)> {
    let mut brackets = Vec::new();
    for w in nodes.windows(2) {
        let ((a, za), (b, zb)) = (w[0], w[1]);
        if (za > 0.0) != (zb > 0.0) {
            brackets.push((a, b, za));
        } else {
            brackets.extend(panel_brackets(a, za, b, zb, PANELS)?);
        }
    }
    let mut warning = None;
    if brackets.len() as i64 != expected {
        let mut resolved = false;
        for panels in [PANELS, 2 * PANELS] {
            let mut all = Vec::new();
            for w in nodes.windows(2) {
                let ((a, za), (b, zb)) = (w[0], w[1]);
                all.extend(panel_brackets(a, za, b, zb, panels)?);
            }
            if all.len() > brackets.len() {
                brackets = all;
            }
            if brackets.len() as i64 == expected {
                resolved = true;
                break;
            }
        }
        if !resolved {
            warning = Some(format!(
                "found {} sign changes but the argument count gives {expected}; \
                 possible unresolved close pair or zero off the critical line",
                brackets.len()
            ));
        }
    }
    let mut zeros = Vec::with_capacity(brackets.len());
    for (i, (a, b, za)) in brackets.into_iter().enumerate() {
        let (a, b) = bisect(a, b, za)?;
        zeros.push(ZeroRecord {
            ordinal: count_below + i as i64 + 1,
            bracket: (a, b),
            t: 0.5 * (a + b),
            refinement_width: b - a,
        });
    }
    Ok((zeros, warning))
}

/// Counting height near `t` that is safely away from a zero of Z.
pub(crate) fn safe_count(t: f64) -> Result<i64> {
    let mut last = None;
    for k in 0..6 {
        let tt = t + 1e-6 * k as f64 * if k % 2 == 0 { 1.0 } else { -1.0 };
        if z(tt)?.abs() < 1e-9 {
            continue;
        }
        match count_n(tt) {
            Ok(n) => return Ok(n),
            Err(e @ Error::Precision(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Precision(format!("cannot count zeros at t = {t}"))))
}

/// Critical-line zeros with t_lo < γ ≤ t_hi, located by sign changes of Z
/// across Gram intervals, refined by bisection to width ≤ 1e-6 and checked
/// against N(t_hi) − N(t_lo).
pub fn find_zeros(t_lo: f64, t_hi: f64) -> Result<ZeroSearch> {
    if !(t_lo.is_finite() && t_hi.is_finite()) || t_lo < MIN_COUNT_T || t_lo >= t_hi {
        return Err(Error::Domain(format!("find_zeros needs {MIN_COUNT_T} <= t_lo < t_hi, got [{t_lo}, {t_hi}]")));
    }
    let mut nodes = vec![(t_lo, z(t_lo)?)];
    let mut n = first_gram_index_above(t_lo)?;
    loop {
        let g = gram_abscissa(n)?;
        if g >= t_hi {
            break;
        }
        nodes.push((g, z(g)?));
        n += 1;
    }
    nodes.push((t_hi, z(t_hi)?));
    let count_below = safe_count(t_lo)?;
    let expected = safe_count(t_hi)? - count_below;
    let (zeros, warning) = zeros_on_partition(&nodes, count_below, expected)?;
    Ok(ZeroSearch { t_lo, t_hi, zeros, count_below, expected, warning })
}

/// Location and value of the extremum of Z on [a, b] (Z assumed unimodal in
/// |Z| there), by golden-section search with the given Z evaluator.
pub fn z_extremum(a: f64, b: f64, eval: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let sign = if eval(0.5 * (a + b))? >= 0.0 { 1.0 } else { -1.0 };
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = sign * eval(c)?;
    let mut fd = sign * eval(d)?;
    while b - a > 1e-7 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = sign * eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = sign * eval(d)?;
        }
    }
    let t = 0.5 * (a + b);
    Ok((t, eval(t)?))
}
