use serde::{Deserialize, Serialize};

use super::{CurvePolyline, SingularityType};
use crate::error::{Error, Result};
use crate::point::{point, ComplexPoint};
use crate::special::FunctionOracle;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub monotone: bool,
    /// Points where the varying component turns back.
    pub violations: Vec<ComplexPoint>,
    /// Pieces checked separately (the curve is cut at its saddles).
    pub pieces: usize,
}

/// Checks that the component that does not vanish on the curve (Re f on
/// thick lines, Im f on thin ones) is strictly monotone between consecutive
/// attached saddles. Steps smaller than the evaluation error are ignored.
pub fn monotonicity_check(curve: &CurvePolyline, oracle: &dyn FunctionOracle) -> Result<MonotonicityReport> {
    if curve.attached_singularities.iter().any(|s| s.kind == SingularityType::Pole) {
        return Err(Error::Domain("monotonicity is undefined along a curve through a pole".into()));
    }
    let pts: Vec<_> = curve.points.iter().map(|p| p.to_complex()).collect();
    let mut cuts: Vec<usize> = curve
        .attached_singularities
        .iter()
        .filter(|s| s.kind == SingularityType::Saddle)
        .filter_map(|s| {
            let z = s.point.to_complex();
            (0..pts.len()).min_by(|&a, &b| (pts[a] - z).norm().total_cmp(&(pts[b] - z).norm()))
        })
        .collect();
    cuts.sort_unstable();
    cuts.dedup();

    let evals: Vec<(f64, f64)> = pts
        .iter()
        .map(|&s| oracle.eval(s).map(|r| (curve.kind.other_component(r.value), r.error_bound)))
        .collect::<Result<_>>()?;

    let mut bounds = vec![0];
    bounds.extend(cuts.iter().copied().filter(|&c| c > 0 && c + 1 < pts.len()));
    bounds.push(pts.len().saturating_sub(1));
    let mut violations = Vec::new();
    let mut pieces = 0;
    for w in bounds.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        pieces += 1;
        let steps: Vec<(usize, f64)> = (lo..hi)
            .map(|k| (k, evals[k + 1].0 - evals[k].0))
            .filter(|&(k, d)| d.abs() > 2.0 * (evals[k].1 + evals[k + 1].1))
            .collect();
        let up = steps.iter().filter(|s| s.1 > 0.0).count();
        let dir = if 2 * up >= steps.len() { 1.0 } else { -1.0 };
        violations.extend(steps.iter().filter(|s| s.1 * dir < 0.0).map(|&(k, _)| point(0.5 * (pts[k] + pts[k + 1]))));
    }
    Ok(MonotonicityReport { monotone: violations.is_empty(), violations, pieces })
}
