//! Gram points, critical-line zeros, N(T) and S(T), Gram blocks, the Gram's
//! law / Rosser's rule audit, line numbering and the constant σ₀.

mod blocks;
mod lines;
mod points;
mod sfunc;
mod sigma0;
mod zeros;

pub use blocks::{
    audit_gram_points, audit_laws, classify_gram_range, gram_points, AuditReport, GramBlock, GramClassification,
    GramInterval, GramLawViolation,
};
pub use lines::{
    line_number, line_number_value, zeros_below_parallel, zeros_below_zero_carrying, zeros_below_zero_free,
};
pub use points::{gram_abscissa, gram_point, gram_tolerance, GramPoint, Quality};
pub use sfunc::{count_n, s_of_t, SReport, MIN_COUNT_T};
pub use sigma0::{van_de_lune_partial, van_de_lune_sigma0, van_de_lune_sum};
pub use zeros::{find_zeros, z_extremum, ZeroRecord, ZeroSearch, PANELS, REFINE_WIDTH};
