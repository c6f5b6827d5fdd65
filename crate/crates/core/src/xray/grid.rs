use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CurveKind;
use crate::error::{Error, Result};
use crate::point::Rectangle;
use crate::special::FunctionOracle;

/// Cells per axis and the deepest subdivision used for ambiguous cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub max_refinement_depth: u32,
}

impl GridSpec {
    pub const CELLS_PER_UNIT: f64 = 8.0;
    pub const DEFAULT_DEPTH: u32 = 5;

    pub fn new(nx: usize, ny: usize, max_refinement_depth: u32) -> Result<Self> {
        if nx < 8 || ny < 8 || max_refinement_depth > 8 {
            return Err(Error::Domain(format!(
                "grid needs nx, ny >= 8 and depth <= 8, got {nx}x{ny} depth {max_refinement_depth}"
            )));
        }
        Ok(Self { nx, ny, max_refinement_depth })
    }

    /// 8 cells per unit length, depth 5.
    pub fn default_for(rect: &Rectangle) -> Self {
        let nx = ((rect.width() * Self::CELLS_PER_UNIT).ceil() as usize).max(8);
        let ny = ((rect.height() * Self::CELLS_PER_UNIT).ceil() as usize).max(8);
        Self { nx, ny, max_refinement_depth: Self::DEFAULT_DEPTH }
    }
}

/// A sampled node: value (possibly taken at a nudged position) and flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Node {
    pub pos: Complex64,
    pub value: Complex64,
    pub valid: bool,
    pub nudged: bool,
    pub indeterminate: bool,
}

impl Node {
    pub fn sign(&self, kind: CurveKind) -> bool {
        kind.component(self.value) >= 0.0
    }
}

/// Evaluates at `s`; if the oracle fails or a component is not clearly away
/// from zero, re-evaluates at s + δ(1+i) with δ growing tenfold (up to 10⁶
/// times the initial nudge) until both signs are clear.
pub(crate) fn eval_node(oracle: &dyn FunctionOracle, s: Complex64, delta: f64) -> Node {
    let usable = |v: Complex64| v.re.is_finite() && v.im.is_finite();
    let clear = |v: Complex64, e: f64| v.re.abs() > e && v.im.abs() > e;
    let first = oracle.eval(s);
    if let Ok(r) = &first {
        if usable(r.value) && clear(r.value, r.error_bound) {
            return Node { pos: s, value: r.value, valid: true, nudged: false, indeterminate: false };
        }
    }
    let mut fallback = None;
    let mut d = delta;
    for _ in 0..7 {
        let p = s + Complex64::new(d, d);
        if let Ok(r) = oracle.eval(p) {
            if usable(r.value) {
                if clear(r.value, r.error_bound) {
                    return Node { pos: p, value: r.value, valid: true, nudged: true, indeterminate: false };
                }
                fallback.get_or_insert(Node { pos: p, value: r.value, valid: true, nudged: true, indeterminate: true });
            }
        }
        d *= 10.0;
    }
    if let Some(n) = fallback {
        return n;
    }
    match first {
        Ok(r) if usable(r.value) => Node { pos: s, value: r.value, valid: true, nudged: false, indeterminate: true },
        _ => Node { pos: s, value: Complex64::new(0.0, 0.0), valid: false, nudged: true, indeterminate: true },
    }
}

/// Values of f on the (nx+1)×(ny+1) lattice with the sign of both components.
#[derive(Debug, Clone)]
pub struct SignFields {
    pub rect: Rectangle,
    pub grid: GridSpec,
    pub(crate) nodes: Vec<Node>,
    pub(crate) poles: Vec<Complex64>,
}

impl SignFields {
    pub fn dx(&self) -> f64 {
        self.rect.width() / self.grid.nx as f64
    }

    pub fn dy(&self) -> f64 {
        self.rect.height() / self.grid.ny as f64
    }

    pub fn cell_diagonal(&self) -> f64 {
        self.dx().hypot(self.dy())
    }

    pub(crate) fn idx(&self, i: usize, j: usize) -> usize {
        j * (self.grid.nx + 1) + i
    }

    pub(crate) fn node(&self, i: usize, j: usize) -> &Node {
        &self.nodes[self.idx(i, j)]
    }

    pub fn position(&self, i: usize, j: usize) -> Complex64 {
        lattice_point(&self.rect, &self.grid, i, j)
    }

    pub fn value(&self, i: usize, j: usize) -> Option<Complex64> {
        let n = self.node(i, j);
        n.valid.then_some(n.value)
    }

    /// Sign (true for ≥ 0) of the component vanishing on `kind` curves.
    pub fn sign(&self, kind: CurveKind, i: usize, j: usize) -> Option<bool> {
        let n = self.node(i, j);
        n.valid.then(|| n.sign(kind))
    }

    pub fn nudged_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.nudged && n.valid).count()
    }

    pub fn invalid_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.valid).count()
    }

    pub(crate) fn nudge(&self) -> f64 {
        1e-7 * self.dx().min(self.dy())
    }

    pub(crate) fn diagnostics(&self) -> Vec<String> {
        let mut d = Vec::new();
        let bad = self.invalid_count();
        if bad > 0 {
            d.push(format!("coverage: {bad} grid nodes could not be evaluated; incident cells skipped"));
        }
        let ind = self.nodes.iter().filter(|n| n.indeterminate && n.valid).count();
        if ind > 0 {
            d.push(format!("{ind} grid nodes have a component within its error bound even after nudging"));
        }
        d
    }
}

pub(crate) fn lattice_point(rect: &Rectangle, grid: &GridSpec, i: usize, j: usize) -> Complex64 {
    // Endpoints exact; interior points by linear interpolation.
    let sx = if i == grid.nx { rect.sigma_max } else { rect.sigma_min + rect.width() * i as f64 / grid.nx as f64 };
    let ty = if j == grid.ny { rect.t_max } else { rect.t_min + rect.height() * j as f64 / grid.ny as f64 };
    Complex64::new(sx, ty)
}

/// Samples the oracle on the lattice in parallel. Nodes where the oracle fails
/// even after nudging are marked invalid.
pub fn sample_grid(oracle: &dyn FunctionOracle, rect: Rectangle, grid: GridSpec) -> Result<SignFields> {
    let rect = Rectangle::new(rect.sigma_min, rect.sigma_max, rect.t_min, rect.t_max)?;
    let grid = GridSpec::new(grid.nx, grid.ny, grid.max_refinement_depth)?;
    let delta = 1e-7 * (rect.width() / grid.nx as f64).min(rect.height() / grid.ny as f64);
    let n = (grid.nx + 1) * (grid.ny + 1);
    let nodes: Vec<Node> = (0..n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % (grid.nx + 1), k / (grid.nx + 1));
            eval_node(oracle, lattice_point(&rect, &grid, i, j), delta)
        })
        .collect();
    let poles = oracle.poles(&rect).into_iter().map(|p| p.to_complex()).collect();
    Ok(SignFields { rect, grid, nodes, poles })
}
