//! Truncated formal power series with exact integer coefficients, the
//! four-parameter partition weight, and product formulas for bounded
//! partition generating functions.

mod coeff;
pub mod identities;
mod product;
mod series;
mod weight;

pub use coeff::Coeff;
pub use identities::{closed_form, enumerated_sides, Identity};
pub use product::{product_series, FactorSpec, Indices, Placement};
pub use series::{series_equal, Grading, Monomial, Series, SeriesComparison, Substitution};
pub use weight::{enumerated_series, omega, WeightVariant};
