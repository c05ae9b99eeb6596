//! The rotated harmonic oscillator `−h²∂² + i x²`: closed-form spectrum
//! against Hermite–Galerkin eigenvalues, which drift away deep in the
//! complex plane.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex_scaling::hermite::t_squared;
use crate::complex_scaling::{eigensolve, DenseComplexMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotatedHOConfig {
    pub h: f64,
    pub basis_size: usize,
}

impl Default for RotatedHOConfig {
    fn default() -> Self {
        Self { h: 0.05, basis_size: 151 }
    }
}

impl RotatedHOConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidParams(format!("h = {} must be positive", self.h)));
        }
        if self.basis_size < 8 {
            return Err(Error::InvalidParams(format!("basis size {} < 8", self.basis_size)));
        }
        Ok(())
    }
}

/// `e^{iπ/4} h (2n+1)` for `n < count`.
pub fn exact_rotated_ho_eigs(cfg: &RotatedHOConfig, count: usize) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    if count > cfg.basis_size {
        return Err(Error::Precondition(format!("{count} values requested from a basis of {}", cfg.basis_size)));
    }
    let rot = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
    Ok((0..count).map(|n| rot * (cfg.h * (2 * n + 1) as f64)).collect())
}

/// `diag((2n+1)h) + (i − 1)[x²]` in the eigenbasis of `−h²∂² + x²`,
/// where `[x²] = h [t²]`.
pub fn hermite_galerkin_matrix(cfg: &RotatedHOConfig) -> Result<DenseComplexMatrix> {
    cfg.validate()?;
    let n = cfg.basis_size;
    let t2 = t_squared(n);
    let c = Complex64::new(-1.0, 1.0) * cfg.h;
    let m = DMatrix::from_fn(n, n, |a, b| {
        let d = if a == b { cfg.h * (2 * a + 1) as f64 } else { 0.0 };
        Complex64::new(d, 0.0) + c * t2[(a, b)]
    });
    DenseComplexMatrix::new(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstabilityRow {
    pub n: usize,
    pub exact: Complex64,
    pub computed: Complex64,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstabilityReport {
    pub rows: Vec<InstabilityRow>,
    /// First `n` with `distance > 0.1 |λ_exact|`.
    pub divergence_index: Option<usize>,
}

/// Greedy nearest-neighbour matching in increasing `|λ_exact|`.
pub fn instability_report(cfg: &RotatedHOConfig) -> Result<InstabilityReport> {
    let m = hermite_galerkin_matrix(cfg)?;
    let mut computed = eigensolve(&m)?;
    let exact = exact_rotated_ho_eigs(cfg, cfg.basis_size)?;
    let mut rows = Vec::with_capacity(exact.len());
    for (n, &ex) in exact.iter().enumerate() {
        let (k, _) = computed
            .iter()
            .enumerate()
            .map(|(k, z)| (k, (z - ex).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite eigenvalues"))
            .expect("one eigenvalue per exact value");
        let z = computed.swap_remove(k);
        rows.push(InstabilityRow { n, exact: ex, computed: z, distance: (z - ex).norm() });
    }
    let divergence_index = rows.iter().find(|r| r.distance > 0.1 * r.exact.norm()).map(|r| r.n);
    Ok(InstabilityReport { rows, divergence_index })
}
