use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spacetime::{critical_data, BlackHoleParams};

/// Largest admissible scaling angle.
pub const MAX_THETA: f64 = 0.4;
/// Smallest Galerkin basis accepted by the black-hole discretization.
pub const MIN_BASIS: usize = 64;
/// Largest matrix handed to the dense eigensolver.
pub const MAX_DIM: usize = 2000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    pub theta: f64,
    pub h: f64,
    pub basis_size: usize,
    /// Hermite width in `x`.
    pub basis_scale: f64,
    /// Eigenvalues `z` with `|z − E0| < window · E0` are kept.
    pub window: f64,
}

impl ScalingConfig {
    pub const DEFAULT_THETA: f64 = 0.3;
    pub const DEFAULT_WINDOW: f64 = 0.5;

    /// Defaults for angular momentum `ell`: width `2√h · c0^{−1/4}`.
    pub fn for_ell(p: &BlackHoleParams, ell: u32, theta: f64, basis_size: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidParams("ℓ must be ≥ 1".into()));
        }
        let h = 1.0 / (ell as f64 + 0.5);
        let cd = critical_data(p)?;
        let cfg = Self { theta, h, basis_size, basis_scale: 2.0 * h.sqrt() * cd.c0.powf(-0.25), window: Self::DEFAULT_WINDOW };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `θ = 0` is accepted for unscaled checks.
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=MAX_THETA).contains(&self.theta) {
            return Err(Error::InvalidParams(format!("θ = {} outside [0, {MAX_THETA}]", self.theta)));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidParams(format!("h = {} must be positive", self.h)));
        }
        if self.basis_size < MIN_BASIS || self.basis_size > MAX_DIM {
            return Err(Error::InvalidParams(format!("basis size {} outside [{MIN_BASIS}, {MAX_DIM}]", self.basis_size)));
        }
        if !(self.basis_scale > 0.0 && self.basis_scale.is_finite()) {
            return Err(Error::InvalidParams("basis scale must be positive".into()));
        }
        if !(self.window > 0.0) {
            return Err(Error::InvalidParams("window must be positive".into()));
        }
        Ok(())
    }
}
