//! Complex scaling `x ↦ x0 + (1+iθ) y` of the Regge–Wheeler operator and a
//! Hermite–Galerkin eigensolver for its resonances near the barrier top.

mod config;
mod direct;
mod eigen;
pub mod hermite;
mod operator;
mod symbol;

pub use config::{ScalingConfig, MAX_DIM, MAX_THETA, MIN_BASIS};
pub use direct::{qnm_direct, DirectResult};
pub use eigen::{eigenpairs, eigensolve, eigenvalues, EigenPair};
pub use operator::{build_operator, build_scaled_operator, DenseComplexMatrix, HermiteBasis};
pub use symbol::{ellipticity_scan, potential_on_ray, scaled_symbol, EllipticityReport, ScanGrid};
