//! Birkhoff normal form at the barrier top and the QNM symbol `G(x; h)`.

mod assemble;
mod bnf;
mod homological;
mod moyal;
mod quadratic;
mod result;
mod spectral;

pub use assemble::{principal_part, qnm_symbol, qnm_symbol_scaled, scaled_weyl_symbol, spectral_symbol, MIN_BARRIER_HEIGHT};
pub use bnf::{classical_bnf, normalize_symbol, quantum_average, QuantumAverage, SymbolNormalForm};
pub use homological::{euler_operator, homological_solve, HomologicalSolution};
pub use moyal::{moyal_bracket, moyal_product};
pub use quadratic::{quad_reduce, QuadraticReduction};
pub use result::NormalFormResult;
pub use spectral::{classical_to_spectral, weyl_to_classical, weyl_to_spectral};
