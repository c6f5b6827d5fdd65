use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::continuation::newton_project;
use super::grid::{eval_node, Node, SignFields};
use super::{CurveKind, CurvePolyline};
use crate::error::Result;
use crate::point::{point, ComplexPoint};
use crate::special::FunctionOracle;

const KINDS: [CurveKind; 2] = [CurveKind::Thick, CurveKind::Thin];

/// A (sub)cell whose sign pattern stayed ambiguous at the deepest refinement:
/// curves stop at its boundary instead of being joined through it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlaggedCell {
    pub kind: CurveKind,
    pub center: ComplexPoint,
    pub half_width: f64,
    pub half_height: f64,
    pub level: u32,
}

/// Output of curve extraction.
#[derive(Debug, Clone)]
pub struct Extraction {
    pub curves: Vec<CurvePolyline>,
    pub flagged: Vec<FlaggedCell>,
    pub diagnostics: Vec<String>,
    /// Per kind (thick, thin) and coarse cell: does a curve of that kind pass?
    pub(crate) active: [Vec<bool>; 2],
}

/// Vertex identity. Crossings on coarse edges are numbered along the edge so
/// that neighbours refined to different depths still agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum VKey {
    Edge { h: bool, i: u32, j: u32, ord: u32 },
    Inner { h: bool, x: u32, y: u32 },
}

#[derive(Debug, Clone, Copy)]
struct VGeom {
    pos: Complex64,
    len: u32,
}

struct Lattice<'a> {
    f: &'a SignFields,
    /// Fine-lattice nodes per coarse cell side.
    scale: u32,
    cache: HashMap<(u32, u32), Node>,
    fx: f64,
    fy: f64,
}

impl<'a> Lattice<'a> {
    fn new(f: &'a SignFields) -> Self {
        let scale = 1u32 << (f.grid.max_refinement_depth + 1);
        let fx = (f.grid.nx as u64 * scale as u64) as f64;
        let fy = (f.grid.ny as u64 * scale as u64) as f64;
        Self { f, scale, cache: HashMap::new(), fx, fy }
    }

    fn pos(&self, x: u32, y: u32) -> Complex64 {
        let r = &self.f.rect;
        let s = if x as f64 == self.fx { r.sigma_max } else { r.sigma_min + r.width() * (x as f64 / self.fx) };
        let t = if y as f64 == self.fy { r.t_max } else { r.t_min + r.height() * (y as f64 / self.fy) };
        Complex64::new(s, t)
    }

    fn node(&self, x: u32, y: u32) -> &Node {
        if x % self.scale == 0 && y % self.scale == 0 {
            self.f.node((x / self.scale) as usize, (y / self.scale) as usize)
        } else {
            &self.cache[&(x, y)]
        }
    }

    fn step(&self, level: u32) -> u32 {
        self.scale >> level
    }

    /// Fine coordinates of sub-node (a, b) of cell (i, j) at `level`.
    fn sub(&self, i: usize, j: usize, level: u32, a: u32, b: u32) -> (u32, u32) {
        let st = self.step(level);
        (i as u32 * self.scale + a * st, j as u32 * self.scale + b * st)
    }

    fn ensure(&mut self, oracle: &dyn FunctionOracle, cells: &[(usize, usize, u32)]) {
        let mut missing = BTreeSet::new();
        for &(i, j, level) in cells {
            let n = 1u32 << level;
            for b in 0..=n {
                for a in 0..=n {
                    let (x, y) = self.sub(i, j, level, a, b);
                    if (x % self.scale != 0 || y % self.scale != 0) && !self.cache.contains_key(&(x, y)) {
                        missing.insert((x, y));
                    }
                }
            }
        }
        let delta = self.f.nudge() / self.scale as f64;
        let todo: Vec<(u32, u32)> = missing.into_iter().collect();
        let vals: Vec<Node> = todo.par_iter().map(|&(x, y)| eval_node(oracle, self.pos(x, y), delta)).collect();
        self.cache.extend(todo.into_iter().zip(vals));
    }

    fn sign(&self, kind: CurveKind, x: u32, y: u32) -> Option<bool> {
        let n = self.node(x, y);
        n.valid.then(|| n.sign(kind))
    }

    /// Sub-edge indices along a coarse edge, at `level`, where the sign flips.
    fn edge_crossings(&self, kind: CurveKind, h: bool, i: usize, j: usize, level: u32) -> Vec<u32> {
        let n = 1u32 << level;
        let st = self.step(level);
        let (x0, y0) = (i as u32 * self.scale, j as u32 * self.scale);
        let at = |k: u32| if h { self.sign(kind, x0 + k * st, y0) } else { self.sign(kind, x0, y0 + k * st) };
        (0..n).filter(|&k| matches!((at(k), at(k + 1)), (Some(a), Some(b)) if a != b)).collect()
    }

    fn interpolate(&self, kind: CurveKind, (x0, y0): (u32, u32), (x1, y1): (u32, u32)) -> Complex64 {
        let (c0, c1) = (kind.component(self.node(x0, y0).value), kind.component(self.node(x1, y1).value));
        let frac = if c0 == c1 { 0.5 } else { (c0 / (c0 - c1)).clamp(0.0, 1.0) };
        let (p0, p1) = (self.pos(x0, y0), self.pos(x1, y1));
        p0 + (p1 - p0) * frac
    }
}

/// Result of marching one cell at one level.
#[derive(Default)]
struct CellMarch {
    segments: Vec<(VKey, VKey)>,
    ambiguous: Vec<(u32, u32)>,
}

fn march_cell(
    lat: &Lattice,
    kind: CurveKind,
    i: usize,
    j: usize,
    level: u32,
    geom: Option<&mut BTreeMap<VKey, VGeom>>,
) -> CellMarch {
    let n = 1u32 << level;
    let st = lat.step(level);
    // Crossing ordinals along the four coarse edges: bottom, top, left, right.
    let bottom = lat.edge_crossings(kind, true, i, j, level);
    let top = lat.edge_crossings(kind, true, i, j + 1, level);
    let left = lat.edge_crossings(kind, false, i, j, level);
    let right = lat.edge_crossings(kind, false, i + 1, j, level);
    let ord = |v: &[u32], k: u32| v.iter().position(|&q| q == k).unwrap_or(0) as u32;
    let (ci, cj) = (i as u32, j as u32);
    // Key of the sub-edge starting at sub-node (a, b).
    let key = |h: bool, a: u32, b: u32| -> VKey {
        if h && b == 0 {
            VKey::Edge { h, i: ci, j: cj, ord: ord(&bottom, a) }
        } else if h && b == n {
            VKey::Edge { h, i: ci, j: cj + 1, ord: ord(&top, a) }
        } else if !h && a == 0 {
            VKey::Edge { h, i: ci, j: cj, ord: ord(&left, b) }
        } else if !h && a == n {
            VKey::Edge { h, i: ci + 1, j: cj, ord: ord(&right, b) }
        } else {
            let (x, y) = lat.sub(i, j, level, a, b);
            VKey::Inner { h, x, y }
        }
    };
    let mut out = CellMarch::default();
    let mut geom = geom;
    for b in 0..n {
        for a in 0..n {
            let corners = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)];
            let fine: Vec<(u32, u32)> = corners.iter().map(|&(p, q)| lat.sub(i, j, level, p, q)).collect();
            let signs: Vec<Option<bool>> = fine.iter().map(|&(x, y)| lat.sign(kind, x, y)).collect();
            if signs.iter().any(|s| s.is_none()) {
                continue;
            }
            let s: Vec<bool> = signs.into_iter().map(|s| s.unwrap()).collect();
            // Edges in order bottom, right, top, left, each with its key.
            let edges = [
                (s[0] != s[1], key(true, a, b), (fine[0], fine[1])),
                (s[1] != s[2], key(false, a + 1, b), (fine[1], fine[2])),
                (s[3] != s[2], key(true, a, b + 1), (fine[3], fine[2])),
                (s[0] != s[3], key(false, a, b), (fine[0], fine[3])),
            ];
            let hits: Vec<_> = edges.iter().filter(|e| e.0).collect();
            if let Some(g) = geom.as_deref_mut() {
                for e in &hits {
                    let pos = lat.interpolate(kind, e.2 .0, e.2 .1);
                    let entry = g.entry(e.1).or_insert(VGeom { pos, len: st });
                    if st < entry.len {
                        *entry = VGeom { pos, len: st };
                    }
                }
            }
            match hits.len() {
                2 => out.segments.push((hits[0].1, hits[1].1)),
                4 => out.ambiguous.push((a, b)),
                _ => {}
            }
        }
    }
    out
}

/// Marching squares on both sign fields with progressive uniform refinement
/// of ambiguous cells, neighbour-consistent crossing counts, chaining into
/// polylines and Newton projection of every vertex.
pub fn extract_curves(fields: &SignFields, oracle: &dyn FunctionOracle) -> Result<Extraction> {
    let (nx, ny) = (fields.grid.nx, fields.grid.ny);
    let depth = fields.grid.max_refinement_depth;
    let ncell = nx * ny;
    let mut lat = Lattice::new(fields);

    let cell_rect = |i: usize, j: usize| (fields.position(i, j), fields.position(i + 1, j + 1));
    let pole_cell: Vec<bool> = (0..ncell)
        .map(|c| {
            let (lo, hi) = cell_rect(c % nx, c / nx);
            fields.poles.iter().any(|p| p.re >= lo.re && p.re <= hi.re && p.im >= lo.im && p.im <= hi.im)
        })
        .collect();
    let cap = |c: usize| if pole_cell[c] { depth + 1 } else { depth };

    // Cells near a zero of f' are refined to full depth up front: a level
    // curve bending sharply next to a saddle can cross a coarse edge twice
    // and hide the saddle's sign pattern.
    let suspects = derivative_zero_cells(fields);
    let mut saddle_cell = vec![false; ncell];
    for &c in &suspects {
        let (i, j) = ((c % nx) as i64, (c / nx) as i64);
        for dj in -1..=1 {
            for di in -1..=1 {
                let (a, b) = (i + di, j + dj);
                if a >= 0 && b >= 0 && (a as usize) < nx && (b as usize) < ny {
                    saddle_cell[b as usize * nx + a as usize] = true;
                }
            }
        }
    }

    let mut levels: [Vec<u32>; 2] = [vec![0; ncell], vec![0; ncell]];
    for (k, &kind) in KINDS.iter().enumerate() {
        for c in 0..ncell {
            if pole_cell[c] {
                levels[k][c] = depth + 1;
            } else if saddle_cell[c] {
                levels[k][c] = depth;
            } else if cap(c) > 0 && march_cell(&lat, kind, c % nx, c / nx, 0, None).ambiguous.len() == 1 {
                levels[k][c] = 1;
            }
        }
    }

    loop {
        let mut needs: BTreeSet<(usize, usize, u32)> = BTreeSet::new();
        for lv in &levels {
            for (c, &l) in lv.iter().enumerate() {
                if l > 0 {
                    needs.insert((c % nx, c / nx, l));
                }
            }
        }
        lat.ensure(oracle, &needs.into_iter().collect::<Vec<_>>());
        let mut changed = false;
        for (k, &kind) in KINDS.iter().enumerate() {
            let refined: Vec<usize> = (0..ncell).filter(|&c| levels[k][c] > 0).collect();
            for &c in &refined {
                let (i, j, l) = (c % nx, c / nx, levels[k][c]);
                if l < cap(c) && !march_cell(&lat, kind, i, j, l, None).ambiguous.is_empty() {
                    levels[k][c] = l + 1;
                    changed = true;
                }
            }
            if changed {
                // New levels need their nodes before edges can be compared.
                continue;
            }
            for &c in &refined {
                let (i, j) = (c % nx, c / nx);
                let l = levels[k][c];
                // (neighbour cell, edge orientation, edge origin)
                let mut nbs = Vec::new();
                if j > 0 {
                    nbs.push((c - nx, true, i, j));
                }
                if j + 1 < ny {
                    nbs.push((c + nx, true, i, j + 1));
                }
                if i > 0 {
                    nbs.push((c - 1, false, i, j));
                }
                if i + 1 < nx {
                    nbs.push((c + 1, false, i + 1, j));
                }
                for (nb, h, ei, ej) in nbs {
                    let ln = levels[k][nb];
                    if ln < l
                        && lat.edge_crossings(kind, h, ei, ej, ln).len() != lat.edge_crossings(kind, h, ei, ej, l).len()
                    {
                        levels[k][nb] = l;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut curves = Vec::new();
    let mut flagged = Vec::new();
    let mut active: [Vec<bool>; 2] = [vec![false; ncell], vec![false; ncell]];
    let mut unprojected = 0usize;
    let mut dangling = 0usize;
    for (k, &kind) in KINDS.iter().enumerate() {
        let mut geom: BTreeMap<VKey, VGeom> = BTreeMap::new();
        let mut segments: Vec<(VKey, VKey)> = Vec::new();
        for c in 0..ncell {
            let (i, j, l) = (c % nx, c / nx, levels[k][c]);
            let m = march_cell(&lat, kind, i, j, l, Some(&mut geom));
            active[k][c] = !m.segments.is_empty() || !m.ambiguous.is_empty();
            let st = lat.step(l);
            for &(a, b) in &m.ambiguous {
                let (x, y) = lat.sub(i, j, l, a, b);
                let (lo, hi) = (lat.pos(x, y), lat.pos(x + st, y + st));
                let mid = 0.5 * (lo + hi);
                flagged.push(FlaggedCell {
                    kind,
                    center: point(mid),
                    half_width: 0.5 * (hi.re - lo.re),
                    half_height: 0.5 * (hi.im - lo.im),
                    level: l,
                });
            }
            segments.extend(m.segments);
        }

        let chains = chain(&segments);
        let used: BTreeSet<VKey> = chains.iter().flat_map(|(c, _)| c.iter().copied()).collect();
        let keys: Vec<VKey> = used.into_iter().collect();
        let diag0 = fields.cell_diagonal();
        let unit = diag0 / lat.scale as f64;
        let projected: Vec<(VKey, Complex64, bool)> = keys
            .par_iter()
            .map(|key| {
                let g = geom[key];
                let sd = unit * g.len as f64;
                match newton_project(oracle, kind, g.pos, sd, 0.5 * sd) {
                    Some(p) => (*key, p.point, true),
                    None => (*key, g.pos, false),
                }
            })
            .collect();
        unprojected += projected.iter().filter(|p| !p.2).count();
        let pos: HashMap<VKey, Complex64> = projected.into_iter().map(|(k, p, _)| (k, p)).collect();
        for (chain, closed) in chains {
            if !closed {
                for end in [chain[0], chain[chain.len() - 1]] {
                    if !on_boundary(fields, pos[&end]) {
                        dangling += 1;
                    }
                }
            }
            let pts: Vec<ComplexPoint> = chain.iter().map(|key| point(pos[key])).collect();
            curves.push(CurvePolyline::new(kind, pts, closed));
        }
    }

    let mut diagnostics = Vec::new();
    if unprojected > 0 {
        diagnostics
            .push(format!("{unprojected} curve vertices kept at interpolated positions (Newton projection failed)"));
    }
    if !flagged.is_empty() {
        diagnostics.push(format!(
            "{} cells left ambiguous at maximum depth for singularity detection; {dangling} curve ends stop inside the rectangle",
            flagged.len()
        ));
    }
    Ok(Extraction { curves, flagged, diagnostics, active })
}

/// Coarse cells around which a finite-difference estimate of f' winds
/// positively, i.e. cells likely to hold a zero of f'.
fn derivative_zero_cells(f: &SignFields) -> Vec<usize> {
    let (nx, ny) = (f.grid.nx, f.grid.ny);
    let d = |i: usize, j: usize| -> Option<Complex64> {
        let (a, b) = (i.saturating_sub(1), (i + 1).min(nx));
        let (va, vb) = (f.value(a, j)?, f.value(b, j)?);
        let dx = f.position(b, j).re - f.position(a, j).re;
        Some((vb - va) / dx)
    };
    let mut dv = vec![None; (nx + 1) * (ny + 1)];
    for j in 0..=ny {
        for i in 0..=nx {
            dv[f.idx(i, j)] = d(i, j);
        }
    }
    let mut out = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let corners = [f.idx(i, j), f.idx(i + 1, j), f.idx(i + 1, j + 1), f.idx(i, j + 1)];
            let vals: Option<Vec<Complex64>> = corners.iter().map(|&c| dv[c]).collect();
            let Some(v) = vals else { continue };
            if v.iter().any(|z| z.norm() == 0.0 || !z.re.is_finite()) {
                continue;
            }
            let turn: f64 = (0..4).map(|k| (v[(k + 1) % 4] / v[k]).arg()).sum();
            if turn > std::f64::consts::PI {
                out.push(j * nx + i);
            }
        }
    }
    out
}

fn on_boundary(f: &SignFields, z: Complex64) -> bool {
    let eps = 1e-9 * f.cell_diagonal();
    let r = &f.rect;
    (z.re - r.sigma_min).abs() < eps
        || (z.re - r.sigma_max).abs() < eps
        || (z.im - r.t_min).abs() < eps
        || (z.im - r.t_max).abs() < eps
}

/// Links segments sharing vertices into chains; returns (vertices, closed).
fn chain(segments: &[(VKey, VKey)]) -> Vec<(Vec<VKey>, bool)> {
    let mut adj: BTreeMap<VKey, Vec<usize>> = BTreeMap::new();
    for (n, &(a, b)) in segments.iter().enumerate() {
        adj.entry(a).or_default().push(n);
        adj.entry(b).or_default().push(n);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    let walk = |start: VKey, used: &mut Vec<bool>| -> (Vec<VKey>, bool) {
        let mut path = vec![start];
        let mut cur = start;
        loop {
            let Some(&n) = adj[&cur].iter().find(|&&n| !used[n]) else { break };
            used[n] = true;
            let (a, b) = segments[n];
            cur = if a == cur { b } else { a };
            path.push(cur);
            if cur == start || adj[&cur].len() != 2 {
                break;
            }
        }
        let closed = path.len() > 2 && path[0] == path[path.len() - 1];
        if closed {
            path.pop();
        }
        (path, closed)
    };
    let ends: Vec<VKey> = adj.iter().filter(|(_, v)| v.len() != 2).map(|(k, _)| *k).collect();
    for v in ends {
        while adj[&v].iter().any(|&n| !used[n]) {
            out.push(walk(v, &mut used));
        }
    }
    for n in 0..segments.len() {
        if !used[n] {
            out.push(walk(segments[n].0, &mut used));
        }
    }
    out.retain(|(p, _)| p.len() >= 2);
    out
}
