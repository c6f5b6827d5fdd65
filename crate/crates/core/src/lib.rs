//! Numerical toolkit for the Riemann zeta function and its "X-ray": the
//! level sets `Re f = 0` (thin lines) and `Im f = 0` (thick lines) of a
//! meromorphic function.
//!
//! * [`zeta`] evaluates ζ(s), θ(t) and Hardy's Z(t) with the Euler-Maclaurin
//!   and Riemann-Siegel formulas.
//! * [`special`] holds the gallery functions (Hermite H₇, Bessel J₇, Airy Ai,
//!   Γ) and the [`special::FunctionOracle`] abstraction used by the tracer.
//! * [`gram`] computes Gram points, critical-line zeros, N(T) and S(T), Gram
//!   blocks, and audits Gram's law and Rosser's rule.
//! * [`xray`] samples, extracts, classifies and renders the level curves.

pub mod error;
pub mod gram;
mod point;
pub mod special;
pub mod xray;
pub mod zeta;

pub use error::{Error, Result};
pub use point::{ComplexPoint, Rectangle};

pub use num_complex::Complex64;
