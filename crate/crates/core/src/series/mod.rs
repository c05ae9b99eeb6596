//! Truncated power series and `h`-graded symbols.

mod bivariate;
mod borel;
mod graded;
mod univariate;

pub use bivariate::ComplexSeries2;
pub use borel::{borel_realize, truncation_index, Realization};
pub use graded::{json, GradedSeries1, GradedSeries2, HGradedSymbol};
pub use univariate::{ode_g_from_f, ComplexSeries1};
