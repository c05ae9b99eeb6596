use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnm_catalog::QnmEntry;
use crate::spacetime::{critical_data, BlackHoleParams};

use super::config::ScalingConfig;
use super::eigen::eigenpairs;
use super::operator::build_scaled_operator;

#[derive(Clone, Debug)]
pub struct DirectResult {
    /// Sorted by decreasing `Im λ`; `n` is the rank in that order.
    pub entries: Vec<QnmEntry>,
    /// Window eigenvalues `z` of the discretized `P_θ`, same order.
    pub eigenvalues: Vec<Complex64>,
    pub max_residual: f64,
}

/// QNM of angular momentum `ell` from the complex-scaled operator:
/// `λ = h⁻¹ √z` for eigenvalues `z` with `|z − E0| < window · E0`,
/// `Re λ > 0` and `arg λ > −θ`.
pub fn qnm_direct(ell: u32, cfg: &ScalingConfig, p: &BlackHoleParams) -> Result<DirectResult> {
    cfg.validate()?;
    if ell == 0 {
        return Err(Error::InvalidParams("ℓ must be ≥ 1".into()));
    }
    let h = 1.0 / (ell as f64 + 0.5);
    if (h - cfg.h).abs() > 1e-12 * h {
        return Err(Error::Precondition(format!("config h = {} does not match ℓ = {ell}", cfg.h)));
    }
    if cfg.theta <= 0.0 {
        return Err(Error::Precondition("resonances need θ > 0".into()));
    }
    let cd = critical_data(p)?;
    let m = build_scaled_operator(cfg, p)?;
    let to_lambda = |z: Complex64| {
        let l = z.sqrt() / h;
        if l.re < 0.0 {
            -l
        } else {
            l
        }
    };
    let accept = |z: Complex64| (z - cd.e0).norm() < cfg.window * cd.e0 && to_lambda(z).arg() > -cfg.theta;
    let mut pairs = eigenpairs(&m.entries, accept)?;
    if pairs.is_empty() {
        return Err(Error::Numerical(format!("no eigenvalues in the window around E0 for ℓ = {ell}")));
    }
    pairs.sort_by(|a, b| to_lambda(b.value).im.partial_cmp(&to_lambda(a.value).im).expect("finite"));
    let max_residual = pairs.iter().map(|p| p.residual).fold(0.0, f64::max);
    let entries = pairs
        .iter()
        .enumerate()
        .map(|(n, pr)| QnmEntry::new(ell, n as u32, to_lambda(pr.value)))
        .collect();
    Ok(DirectResult { entries, eigenvalues: pairs.iter().map(|p| p.value).collect(), max_residual })
}
