use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::points::{gram_point, GramPoint, Quality};
use super::sfunc::MIN_COUNT_T;
use super::zeros::{safe_count, zeros_on_partition, ZeroSearch};
use crate::error::{Error, Result};

/// A maximal run of bad Gram points fenced by the good points
/// `start_index` and `end_index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramBlock {
    pub start_index: i64,
    pub end_index: i64,
    pub interval_count: i64,
    pub zero_count: i64,
}

/// Zero count of the Gram interval (g_n, g_{n+1}].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramInterval {
    pub index: i64,
    pub zero_count: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramClassification {
    pub points: Vec<GramPoint>,
    pub blocks: Vec<GramBlock>,
    pub intervals: Vec<GramInterval>,
    pub zeros: ZeroSearch,
}

impl GramClassification {
    /// Block containing the Gram interval (g_n, g_{n+1}), if any.
    pub fn block_of_interval(&self, n: i64) -> Option<&GramBlock> {
        self.blocks.iter().find(|b| b.start_index <= n && n < b.end_index)
    }

    fn block_id_of_point(&self, n: i64) -> Option<usize> {
        self.blocks.iter().position(|b| b.start_index < n && n < b.end_index)
    }
}

fn check_range(n_lo: i64, n_hi: i64) -> Result<()> {
    if n_lo < -1 || n_lo >= n_hi {
        return Err(Error::Domain(format!("Gram range needs -1 <= n_lo < n_hi, got {n_lo}..{n_hi}")));
    }
    Ok(())
}

/// Gram points `n_lo..=n_hi` in parallel, merged by index.
pub fn gram_points(n_lo: i64, n_hi: i64) -> Result<Vec<GramPoint>> {
    (n_lo..=n_hi).into_par_iter().map(gram_point).collect()
}

/// Gram points `n_lo..=n_hi`, the Gram blocks lying inside the range, and the
/// zero count of every Gram interval.
pub fn classify_gram_range(n_lo: i64, n_hi: i64) -> Result<GramClassification> {
    check_range(n_lo, n_hi)?;
    let points = gram_points(n_lo, n_hi)?;
    classify_points(points)
}

pub(crate) fn classify_points(points: Vec<GramPoint>) -> Result<GramClassification> {
    let t_lo = points[0].t;
    let t_hi = points[points.len() - 1].t;
    if t_lo < MIN_COUNT_T {
        return Err(Error::Domain(format!("Gram range starts below t = {MIN_COUNT_T}")));
    }
    let nodes: Vec<(f64, f64)> = points.iter().map(|p| (p.t, p.z_value)).collect();
    let count_below = safe_count(t_lo)?;
    let expected = safe_count(t_hi)? - count_below;
    let (zeros, warning) = zeros_on_partition(&nodes, count_below, expected)?;
    let zeros = ZeroSearch { t_lo, t_hi, zeros, count_below, expected, warning };

    let intervals: Vec<GramInterval> = points
        .windows(2)
        .map(|w| GramInterval { index: w[0].index, zero_count: zeros.count_in(w[0].t, w[1].t) as i64 })
        .collect();

    let mut blocks = Vec::new();
    let mut i = 0;
    while i < points.len() {
        if points[i].quality == Quality::Bad && i > 0 && points[i - 1].quality == Quality::Good {
            let start = i - 1;
            let mut j = i;
            while j < points.len() && points[j].quality == Quality::Bad {
                j += 1;
            }
            if j < points.len() {
                let zero_count = zeros.count_in(points[start].t, points[j].t) as i64;
                blocks.push(GramBlock {
                    start_index: points[start].index,
                    end_index: points[j].index,
                    interval_count: points[j].index - points[start].index,
                    zero_count,
                });
            }
            i = j;
        } else {
            i += 1;
        }
    }
    Ok(GramClassification { points, blocks, intervals, zeros })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramLawViolation {
    pub interval: GramInterval,
    /// Nearby intervals whose excess or deficit balances this one.
    pub compensated_by: Vec<GramInterval>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_lo: i64,
    pub n_hi: i64,
    pub classification: GramClassification,
    pub gram_violations: Vec<GramLawViolation>,
    pub rosser_violations: Vec<GramBlock>,
}

const COMPENSATION_REACH: i64 = 4;

/// Audits Gram's law (one zero per Gram interval) and Rosser's rule (a block
/// of k intervals holds k zeros) over Gram indices `n_lo..=n_hi`.
pub fn audit_laws(n_lo: i64, n_hi: i64) -> Result<AuditReport> {
    let classification = classify_gram_range(n_lo, n_hi)?;
    Ok(audit_classification(n_lo, n_hi, classification))
}

/// Audits already computed Gram points, which must carry consecutive indices
/// starting at −1 or above. Lets a caller compute the points in chunks (for
/// progress reporting) and still get the same report as [`audit_laws`].
pub fn audit_gram_points(points: Vec<GramPoint>) -> Result<AuditReport> {
    let (n_lo, n_hi) = match (points.first(), points.last()) {
        (Some(a), Some(b)) => (a.index, b.index),
        _ => return Err(Error::Domain("no Gram points to audit".into())),
    };
    check_range(n_lo, n_hi)?;
    if points.windows(2).any(|w| w[1].index != w[0].index + 1) {
        return Err(Error::Domain("Gram points must have consecutive indices".into()));
    }
    Ok(audit_classification(n_lo, n_hi, classify_points(points)?))
}

pub(crate) fn audit_classification(n_lo: i64, n_hi: i64, classification: GramClassification) -> AuditReport {
    let iv = &classification.intervals;
    let mut gram_violations = Vec::new();
    for (k, v) in iv.iter().enumerate() {
        if v.zero_count == 1 {
            continue;
        }
        let excess = v.zero_count - 1;
        let mut compensated_by = Vec::new();
        let mut balance = excess;
        for d in 1..=COMPENSATION_REACH {
            for j in [k as i64 - d, k as i64 + d] {
                if balance.signum() != excess.signum() || j < 0 || j as usize >= iv.len() {
                    continue;
                }
                let other = iv[j as usize];
                let e = other.zero_count - 1;
                if e != 0 && e.signum() == -balance.signum() {
                    compensated_by.push(other);
                    balance += e;
                }
            }
        }
        gram_violations.push(GramLawViolation { interval: *v, compensated_by });
    }
    let rosser_violations =
        classification.blocks.iter().filter(|b| b.zero_count != b.interval_count).copied().collect();
    AuditReport { n_lo, n_hi, classification, gram_violations, rosser_violations }
}

impl AuditReport {
    /// One row per Gram point: index, t, Z, quality, block id ("-" if none).
    pub fn table(&self) -> String {
        let c = &self.classification;
        let mut out = String::from("# index t Z quality block\n");
        for p in &c.points {
            let block = c.block_id_of_point(p.index).map_or_else(|| "-".to_string(), |b| b.to_string());
            let _ = writeln!(out, "{} {:.9} {:.9e} {} {}", p.index, p.t, p.z_value, p.quality, block);
        }
        out
    }

    /// Human-readable violation summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Gram indices {}..={}: {} points, {} blocks, {} zeros (argument count {})",
            self.n_lo,
            self.n_hi,
            self.classification.points.len(),
            self.classification.blocks.len(),
            self.classification.zeros.zeros.len(),
            self.classification.zeros.expected
        );
        if let Some(w) = &self.classification.zeros.warning {
            let _ = writeln!(out, "warning: {w}");
        }
        if self.gram_violations.is_empty() {
            let _ = writeln!(out, "Gram's law: no violations");
        }
        for v in &self.gram_violations {
            let comp: Vec<String> = v
                .compensated_by
                .iter()
                .map(|c| format!("({}, {}) with {}", c.index, c.index + 1, c.zero_count))
                .collect();
            let _ = write!(
                out,
                "Gram's law violated: interval ({}, {}) has {} zeros",
                v.interval.index,
                v.interval.index + 1,
                v.interval.zero_count
            );
            if comp.is_empty() {
                let _ = writeln!(out);
            } else {
                let _ = writeln!(out, "; balanced by {}", comp.join(", "));
            }
        }
        if self.rosser_violations.is_empty() {
            let _ = writeln!(out, "Rosser's rule: no violations");
        }
        for b in &self.rosser_violations {
            let _ = writeln!(
                out,
                "Rosser's rule violated: block ({}, {}) spans {} intervals but holds {} zeros",
                b.start_index, b.end_index, b.interval_count, b.zero_count
            );
        }
        out
    }
}
