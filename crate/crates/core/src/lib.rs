//! Quasinormal modes of Schwarzschild and Schwarzschild–de Sitter black holes.
//!
//! The library builds the Bohr–Sommerfeld symbol `G(x;h)` of the
//! Regge–Wheeler operator from a truncated Birkhoff normal form at the top
//! of the potential barrier, evaluates the lattice
//! `λ_{ℓ,n} = h⁻¹ G(2π(n+½)h; h)` with `h = (ℓ+½)⁻¹`, and cross-checks it
//! against a complex-scaled Hermite–Galerkin eigensolver.
//!
//! Series and symbol algebra is generic over [`Scalar`]; the physics layers
//! work in double precision.

#![allow(non_camel_case_types)]

pub mod complex_scaling;
pub mod error;
pub mod normal_form;
pub mod pseudospectrum;
pub mod qnm_catalog;
pub mod scalar;
pub mod series;
pub mod spacetime;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision complex scalar.
pub type c64 = num_complex::Complex<f64>;
/// Single-precision complex scalar.
pub type c32 = num_complex::Complex<f32>;
/// Exact complex rationals, for oracle computations.
pub type CRational = num_complex::Complex<num_rational::BigRational>;

pub type Series1 = series::ComplexSeries1<c64>;
pub type Series2 = series::ComplexSeries2<c64>;
pub type Graded1 = series::GradedSeries1<c64>;
pub type Graded2 = series::GradedSeries2<c64>;
pub type RationalSeries1 = series::ComplexSeries1<CRational>;
pub type RationalSeries2 = series::ComplexSeries2<CRational>;
