//! Level sets Re f = 0 (thin) and Im f = 0 (thick) of a function oracle:
//! sampling, extraction, singular points, line numbers, sheets and rendering.

mod continuation;
mod grid;
mod march;
mod monotone;
mod number;
mod render;
mod sheet;
mod singular;

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::point::{ComplexPoint, Rectangle};
use crate::special::FunctionOracle;

pub use continuation::{newton_project, trace_curve, Control, TraceConfig, TracePoint};
pub use grid::{sample_grid, GridSpec, SignFields};
pub use march::{extract_curves, Extraction, FlaggedCell};
pub use monotone::{monotonicity_check, MonotonicityReport};
pub use number::{classify_and_number, real_axis_crossings, sigma_crossings};
pub use render::{inventory_jsonl, point_dump, render_svg, RenderStyle};
pub use sheet::{sheet_permutation, trace_parallel, trace_sheet, ParallelTrace, Sheet};
pub use singular::{boundary_winding, detect_singularities};

/// Which component vanishes along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// Im f = 0: f is real.
    Thick,
    /// Re f = 0: f is purely imaginary.
    Thin,
}

impl CurveKind {
    /// The component that vanishes on curves of this kind.
    pub fn component(self, v: Complex64) -> f64 {
        match self {
            CurveKind::Thick => v.im,
            CurveKind::Thin => v.re,
        }
    }

    /// The component that varies along curves of this kind.
    pub fn other_component(self, v: Complex64) -> f64 {
        match self {
            CurveKind::Thick => v.re,
            CurveKind::Thin => v.im,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Thick => "thick",
            CurveKind::Thin => "thin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityType {
    Zero,
    Pole,
    Saddle,
}

/// A zero, pole or saddle (zero of f') found in the traced rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Singularity {
    pub point: ComplexPoint,
    pub kind: SingularityType,
    /// Order of the zero or pole; for saddles, the order of the zero of f'.
    pub multiplicity: u32,
    /// Thick and thin branches meeting at the point.
    pub thick_branches: u32,
    pub thin_branches: u32,
    /// For saddles, the curve kind whose lines cross there.
    pub curve_kind: Option<CurveKind>,
    /// False when Newton refinement failed and the grid estimate is kept.
    pub refined: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttachedSingularity {
    pub point: ComplexPoint,
    #[serde(rename = "type")]
    pub kind: SingularityType,
}

/// One connected piece of Re f = 0 or Im f = 0, as an ordered chain of points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePolyline {
    pub kind: CurveKind,
    pub points: Vec<ComplexPoint>,
    /// Lowest line number carried by the curve.
    pub line_number: Option<i64>,
    /// All line numbers (a sheet carries two).
    pub line_numbers: Vec<i64>,
    pub attached_singularities: Vec<AttachedSingularity>,
    pub closed: bool,
}

impl CurvePolyline {
    pub(crate) fn new(kind: CurveKind, points: Vec<ComplexPoint>, closed: bool) -> Self {
        Self { kind, points, line_number: None, line_numbers: vec![], attached_singularities: vec![], closed }
    }

    /// Distance from `z` to the polyline.
    pub fn distance_to(&self, z: Complex64) -> f64 {
        let pts = &self.points;
        if pts.len() == 1 {
            return (pts[0].to_complex() - z).norm();
        }
        let mut best = f64::INFINITY;
        let n = pts.len();
        let segs = if self.closed { n } else { n - 1 };
        for k in 0..segs {
            let a = pts[k].to_complex();
            let b = pts[(k + 1) % n].to_complex();
            best = best.min(segment_distance(a, b, z));
        }
        best
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1].to_complex() - w[0].to_complex()).norm()).sum()
    }
}

pub(crate) fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let d = b - a;
    let l2 = d.norm_sqr();
    if l2 == 0.0 {
        return (z - a).norm();
    }
    let u = ((z - a) * d.conj()).re / l2;
    (a + d * u.clamp(0.0, 1.0) - z).norm()
}

/// Everything known about one traced X-ray.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XRay {
    pub function: String,
    pub rect: Rectangle,
    pub grid: GridSpec,
    pub curves: Vec<CurvePolyline>,
    pub singularities: Vec<Singularity>,
    pub flagged_cells: Vec<FlaggedCell>,
    pub diagnostics: Vec<String>,
}

impl XRay {
    pub fn zeros(&self) -> impl Iterator<Item = &Singularity> {
        self.singularities.iter().filter(|s| s.kind == SingularityType::Zero)
    }

    pub fn saddles(&self) -> impl Iterator<Item = &Singularity> {
        self.singularities.iter().filter(|s| s.kind == SingularityType::Saddle)
    }

    pub fn poles(&self) -> impl Iterator<Item = &Singularity> {
        self.singularities.iter().filter(|s| s.kind == SingularityType::Pole)
    }
}

/// Full pipeline: sample, extract, find singular points, number the lines.
pub fn xray(oracle: Arc<dyn FunctionOracle>, rect: Rectangle, grid: GridSpec) -> Result<XRay> {
    let fields = sample_grid(oracle.as_ref(), rect, grid)?;
    let mut ex = extract_curves(&fields, oracle.as_ref())?;
    let singularities = detect_singularities(&mut ex, &fields, oracle.as_ref())?;
    let mut diagnostics = fields.diagnostics();
    diagnostics.append(&mut ex.diagnostics);
    let mut curves = ex.curves;
    diagnostics.extend(classify_and_number(&mut curves, oracle.as_ref(), &singularities, &fields));
    Ok(XRay { function: oracle.name(), rect, grid, curves, singularities, flagged_cells: ex.flagged, diagnostics })
}
