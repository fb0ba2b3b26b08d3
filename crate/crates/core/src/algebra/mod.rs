//! Polynomials and truncated power series over 𝔽₂.

mod forms;
mod poly;
mod series;

pub use forms::{classify_form, pattern_polynomial, FormClassification, PolyForm};
pub use poly::{parse_poly, BivarPoly};
pub use series::{series_residue, verify_functional, TruncSeries, Verification};
