use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::SignFields;
use super::march::Extraction;
use super::{AttachedSingularity, CurveKind, Singularity, SingularityType};
use crate::error::{Error, Result};
use crate::point::{point, Rectangle};
use crate::special::FunctionOracle;

/// Offset, in cells, of the lattice used for winding boxes, so box sides
/// avoid grid nodes (where trivial zeros and poles tend to sit).
const SHIFT: f64 = 0.437;
const SPLIT: f64 = 0.5371;
const SPLIT_ALT: f64 = 0.4581;

fn value(oracle: &dyn FunctionOracle, s: Complex64) -> Result<Complex64> {
    let v = oracle.eval(s)?.value;
    if v == Complex64::new(0.0, 0.0) || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Precision(format!("f vanishes or overflows on a winding contour at {s}")));
    }
    Ok(v)
}

/// Phase change of f along the segment a → b. Steps are kept below
/// 0.3/|f'/f|, so a zero close to the segment cannot be stepped over.
fn edge_phase(oracle: &dyn FunctionOracle, a: Complex64, b: Complex64, size: f64) -> Result<f64> {
    let len = (b - a).norm();
    let dir = (b - a) / len;
    let d = 1e-6 * size;
    let (mut s, mut z, mut fz) = (0.0, a, value(oracle, a)?);
    let mut total = 0.0;
    while s < len {
        let g = (value(oracle, z + dir * d)? - value(oracle, z - dir * d)?) / (2.0 * d * fz);
        let mut h = (len / 16.0).min(0.3 / g.norm()).min(len - s);
        loop {
            let next = if s + h >= len { b } else { a + dir * (s + h) };
            let fnext = value(oracle, next)?;
            let delta = (fnext / fz).arg();
            if delta.abs() <= PI / 4.0 || h < 1e-14 * len {
                total += delta;
                s += h;
                z = next;
                fz = fnext;
                break;
            }
            h *= 0.5;
        }
    }
    Ok(total)
}

/// Winding number of f around the boundary of [lo.re, hi.re]×[lo.im, hi.im]
/// (zeros minus poles inside), by an adaptive phase walk.
fn winding_box(oracle: &dyn FunctionOracle, lo: Complex64, hi: Complex64) -> Result<i64> {
    let corners = [lo, Complex64::new(hi.re, lo.im), hi, Complex64::new(lo.re, hi.im)];
    let size = (hi - lo).norm();
    let mut total = 0.0;
    for k in 0..4 {
        total += edge_phase(oracle, corners[k], corners[(k + 1) % 4], size)?;
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

/// Argument-principle count (zeros minus poles, with multiplicity) of f inside
/// `rect`, by the same adaptive phase walk the tracer uses internally.
pub fn boundary_winding(oracle: &dyn FunctionOracle, rect: &Rectangle) -> Result<i64> {
    winding_box(oracle, Complex64::new(rect.sigma_min, rect.t_min), Complex64::new(rect.sigma_max, rect.t_max))
}

/// f' and f'' by the Cauchy formula on a circle of radius r (8 nodes).
fn cauchy_derivatives(oracle: &dyn FunctionOracle, s: Complex64, r: f64) -> Result<(Complex64, Complex64)> {
    const N: usize = 8;
    let (mut d1, mut d2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for k in 0..N {
        let w = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / N as f64);
        let v = oracle.eval(s + w * r)?.value;
        d1 += v / w;
        d2 += v / (w * w);
    }
    Ok((d1 / (N as f64 * r), d2 * 2.0 / (N as f64 * r * r)))
}

fn in_box(z: Complex64, lo: Complex64, hi: Complex64, margin: f64) -> bool {
    z.re >= lo.re - margin && z.re <= hi.re + margin && z.im >= lo.im - margin && z.im <= hi.im + margin
}

/// Newton for a zero of multiplicity m started inside a box.
fn newton_zero(oracle: &dyn FunctionOracle, s0: Complex64, m: u32, lo: Complex64, hi: Complex64) -> Option<Complex64> {
    let size = (hi - lo).norm();
    let mut s = s0;
    for _ in 0..60 {
        let (fp, _) = cauchy_derivatives(oracle, s, 0.05 * size).ok()?;
        let f = oracle.eval(s).ok()?.value;
        if f == Complex64::new(0.0, 0.0) {
            return Some(s);
        }
        if fp.norm() == 0.0 {
            return None;
        }
        let step = f / fp * m as f64;
        s -= step;
        if !in_box(s, lo, hi, 0.25 * size) {
            return None;
        }
        if step.norm() <= 1e-13 * (1.0 + s.norm()) {
            return Some(s);
        }
    }
    None
}

struct Found {
    point: Complex64,
    multiplicity: u32,
    refined: bool,
}

/// Splits a box until each piece holds a single zero (or is tiny), then
/// polishes with Newton. `count` is the number of zeros in the box.
fn isolate(
    oracle: &dyn FunctionOracle,
    lo: Complex64,
    hi: Complex64,
    count: i64,
    poles: &[Complex64],
    min_size: f64,
    depth: u32,
    out: &mut Vec<Found>,
) {
    if count <= 0 {
        return;
    }
    let size = (hi - lo).norm();
    let center = 0.5 * (lo + hi);
    if count == 1 || size < min_size || depth >= 40 {
        let m = count as u32;
        match newton_zero(oracle, center, m, lo, hi) {
            Some(z) => out.push(Found { point: z, multiplicity: m, refined: true }),
            None => out.push(Found { point: center, multiplicity: m, refined: false }),
        }
        return;
    }
    for frac in [SPLIT, SPLIT_ALT] {
        let mid = lo + Complex64::new((hi.re - lo.re) * frac, (hi.im - lo.im) * frac);
        let quads = [
            (lo, mid),
            (Complex64::new(mid.re, lo.im), Complex64::new(hi.re, mid.im)),
            (mid, hi),
            (Complex64::new(lo.re, mid.im), Complex64::new(mid.re, hi.im)),
        ];
        let counts: Result<Vec<i64>> = quads
            .iter()
            .map(|&(a, b)| {
                let inside = poles.iter().filter(|p| in_box(**p, a, b, 0.0)).count() as i64;
                Ok(winding_box(oracle, a, b)? + inside)
            })
            .collect();
        if let Ok(c) = counts {
            if c.iter().sum::<i64>() == count && c.iter().all(|&v| v >= 0) {
                for (q, n) in quads.iter().zip(c) {
                    isolate(oracle, q.0, q.1, n, poles, min_size, depth + 1, out);
                }
                return;
            }
        }
    }
    out.push(Found { point: center, multiplicity: count as u32, refined: false });
}

/// Number of lines of each kind through `z`: half the sign changes of the
/// component around a small circle.
fn branches(oracle: &dyn FunctionOracle, z: Complex64, r: f64, samples: usize) -> (u32, u32) {
    let vals: Vec<Option<Complex64>> = (0..samples)
        .map(|k| {
            let a = 2.0 * PI * (k as f64 + 0.5) / samples as f64;
            oracle.eval(z + Complex64::from_polar(r, a)).ok().map(|r| r.value)
        })
        .collect();
    let count = |kind: CurveKind, base: f64| {
        let mut changes = 0;
        for k in 0..samples {
            if let (Some(a), Some(b)) = (vals[k], vals[(k + 1) % samples]) {
                if (kind.component(a) - base).signum() != (kind.component(b) - base).signum() {
                    changes += 1;
                }
            }
        }
        changes / 2
    };
    (count(CurveKind::Thick, 0.0), count(CurveKind::Thin, 0.0))
}

/// Connected clusters (8-neighbour) of cells where both kinds are present.
fn clusters(ex: &Extraction, nx: usize, ny: usize) -> Vec<(usize, usize, usize, usize)> {
    let both: Vec<bool> = ex.active[0].iter().zip(&ex.active[1]).map(|(a, b)| *a && *b).collect();
    let mut seen = vec![false; both.len()];
    let mut out = Vec::new();
    for start in 0..both.len() {
        if !both[start] || seen[start] {
            continue;
        }
        let (mut i0, mut i1, mut j0, mut j1) = (usize::MAX, 0, usize::MAX, 0);
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            let (i, j) = (c % nx, c / nx);
            i0 = i0.min(i);
            i1 = i1.max(i);
            j0 = j0.min(j);
            j1 = j1.max(j);
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || b < 0 || a >= nx as i64 || b >= ny as i64 {
                        continue;
                    }
                    let n = b as usize * nx + a as usize;
                    if both[n] && !seen[n] {
                        seen[n] = true;
                        stack.push(n);
                    }
                }
            }
        }
        out.push((i0, i1, j0, j1));
    }
    out
}

/// Finds zeros (winding count, quadrant splitting, Newton), records declared
/// poles, locates saddles from ambiguous cells (Newton on f'), measures the
/// branches meeting at each point and attaches the points to nearby curves.
pub fn detect_singularities(
    ex: &mut Extraction,
    fields: &SignFields,
    oracle: &dyn FunctionOracle,
) -> Result<Vec<Singularity>> {
    let (nx, ny) = (fields.grid.nx, fields.grid.ny);
    let (dx, dy) = (fields.dx(), fields.dy());
    let diag = fields.cell_diagonal();
    let rect = fields.rect;
    let poles: Vec<Complex64> = fields.poles.clone();
    let lattice = |i: f64, j: f64| {
        Complex64::new(
            (rect.sigma_min + i * dx).clamp(rect.sigma_min, rect.sigma_max),
            (rect.t_min + j * dy).clamp(rect.t_min, rect.t_max),
        )
    };

    let mut boxes: Vec<(Complex64, Complex64)> = clusters(ex, nx, ny)
        .into_iter()
        .map(|(i0, i1, j0, j1)| {
            (
                lattice(i0 as f64 - 1.0 + SHIFT, j0 as f64 - 1.0 + SHIFT),
                lattice(i1 as f64 + 1.0 + SHIFT, j1 as f64 + 1.0 + SHIFT),
            )
        })
        .collect();
    boxes.sort_by(|a, b| (a.0.im, a.0.re).partial_cmp(&(b.0.im, b.0.re)).unwrap());

    let found: Vec<Vec<Found>> = boxes
        .par_iter()
        .map(|&(lo, hi)| {
            let inside = poles.iter().filter(|p| in_box(**p, lo, hi, 0.0)).count() as i64;
            let mut out = Vec::new();
            if let Ok(w) = winding_box(oracle, lo, hi) {
                isolate(oracle, lo, hi, w + inside, &poles, 1e-4 * diag, 0, &mut out);
            }
            out
        })
        .collect();

    let mut diagnostics = Vec::new();
    let mut zeros: Vec<Found> = Vec::new();
    for f in found.into_iter().flatten() {
        if !rect.contains(f.point) {
            continue;
        }
        if zeros.iter().any(|z| (z.point - f.point).norm() < 1e-3 * diag) {
            continue;
        }
        if !f.refined {
            diagnostics.push(format!("zero near {} kept at box accuracy", f.point));
        }
        zeros.push(f);
    }

    let mut sings: Vec<Singularity> = Vec::new();
    let special: Vec<Complex64> = zeros.iter().map(|z| z.point).chain(poles.iter().copied()).collect();
    let radius_at = |z: Complex64, others: &[Complex64]| {
        let near =
            others.iter().filter(|o| (**o - z).norm() > 0.0).map(|o| (*o - z).norm()).fold(f64::INFINITY, f64::min);
        (0.25 * diag).min(0.4 * near)
    };
    for z in &zeros {
        let r = radius_at(z.point, &special);
        let (tk, tn) = branches(oracle, z.point, r, 64 * z.multiplicity as usize);
        sings.push(Singularity {
            point: point(z.point),
            kind: SingularityType::Zero,
            multiplicity: z.multiplicity,
            thick_branches: tk,
            thin_branches: tn,
            curve_kind: None,
            refined: z.refined,
        });
    }
    for &p in &poles {
        let r = radius_at(p, &special);
        let (tk, tn) = branches(oracle, p, r, 64);
        sings.push(Singularity {
            point: point(p),
            kind: SingularityType::Pole,
            multiplicity: 1,
            thick_branches: tk,
            thin_branches: tn,
            curve_kind: None,
            refined: true,
        });
    }

    // Saddles: zeros of f' seeded from ambiguous cells.
    let seeds: Vec<_> = ex.flagged.clone();
    let saddles: Vec<Option<(Complex64, CurveKind, bool)>> = seeds
        .par_iter()
        .map(|cell| {
            let c0 = cell.center.to_complex();
            let r = 0.05 * diag;
            let mut s = c0;
            let mut ok = false;
            for _ in 0..40 {
                let Ok((d1, d2)) = cauchy_derivatives(oracle, s, r) else { break };
                if d2.norm() == 0.0 {
                    break;
                }
                let step = d1 / d2;
                s -= step;
                if (s - c0).norm() > diag {
                    break;
                }
                if step.norm() <= 1e-12 * (1.0 + s.norm()) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                s = c0;
            }
            if special.iter().any(|z| (*z - s).norm() < 0.5 * diag) {
                return None;
            }
            Some((s, cell.kind, ok))
        })
        .collect();
    let mut saddle_pts: Vec<(Complex64, CurveKind, bool)> = Vec::new();
    for (s, kind, ok) in saddles.into_iter().flatten() {
        if !rect.contains(s) {
            continue;
        }
        let tol = if ok { 1e-6 * diag } else { 0.5 * diag };
        if saddle_pts.iter().any(|p| p.1 == kind && (p.0 - s).norm() < tol.max(1e-6 * diag)) {
            continue;
        }
        saddle_pts.push((s, kind, ok));
    }
    for (s, kind, ok) in saddle_pts {
        let r = radius_at(s, &special).min(0.25 * diag);
        let (tk, tn) = branches(oracle, s, r, 64);
        let b = match kind {
            CurveKind::Thick => tk,
            CurveKind::Thin => tn,
        };
        if !ok {
            diagnostics.push(format!("saddle near {s} kept at grid accuracy"));
        }
        sings.push(Singularity {
            point: point(s),
            kind: SingularityType::Saddle,
            multiplicity: b.saturating_sub(1).max(1),
            thick_branches: tk,
            thin_branches: tn,
            curve_kind: Some(kind),
            refined: ok,
        });
    }

    sings.sort_by(|a, b| {
        (a.kind as u8, a.point.im, a.point.re).partial_cmp(&(b.kind as u8, b.point.im, b.point.re)).unwrap()
    });

    let reach = 0.5 * diag;
    for c in ex.curves.iter_mut() {
        for s in &sings {
            let applies = match (s.kind, s.curve_kind) {
                (SingularityType::Saddle, Some(k)) => k == c.kind,
                _ => true,
            };
            if applies && c.distance_to(s.point.to_complex()) <= reach {
                c.attached_singularities.push(AttachedSingularity { point: s.point, kind: s.kind });
            }
        }
    }
    ex.diagnostics.extend(diagnostics);
    Ok(sings)
}
