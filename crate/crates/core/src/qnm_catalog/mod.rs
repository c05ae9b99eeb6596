//! The Bohr–Sommerfeld QNM lattice `λ_{ℓ,n} = h⁻¹ G(2π(n+½)h; h)` and the
//! cubic counting law in sectors.

mod counting;
mod lattice;

pub use counting::{
    asymptotic_check, count_in_sector, count_modes, counting_constant, counting_constant_from_prediction, interval_length,
    AsymptoticRow, CountResult,
};
pub use lattice::{lattice, validity_radius, CoverageGap, LatticeResult, QnmEntry, SectorSpec, VALIDITY_FRACTION};
