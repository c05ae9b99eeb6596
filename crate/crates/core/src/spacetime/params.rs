use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Mass `m > 0` and cosmological constant `0 ≤ Λ < 1/(9m²)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlackHoleParams {
    pub m: f64,
    pub lambda: f64,
}

impl BlackHoleParams {
    pub fn new(m: f64, lambda: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidParams(format!("mass must be positive and finite, got {m}")));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParams(format!("Λ must be ≥ 0 and finite, got {lambda}")));
        }
        if 9.0 * lambda * m * m >= 1.0 {
            return Err(Error::InvalidParams(format!("9Λm² = {} must be < 1", 9.0 * lambda * m * m)));
        }
        Ok(Self { m, lambda })
    }

    pub fn schwarzschild(m: f64) -> Result<Self> {
        Self::new(m, 0.0)
    }

    /// `9Λm²`, the dimensionless subextremality parameter.
    pub fn sigma(&self) -> f64 {
        9.0 * self.lambda * self.m * self.m
    }

    pub fn is_de_sitter(&self) -> bool {
        self.lambda > 0.0
    }
}

/// `α(r)² = 1 − 2m/r − Λr²/3`.
pub fn alpha_squared(r: Complex64, p: &BlackHoleParams) -> Result<Complex64> {
    if r == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("α² is singular at r = 0".into()));
    }
    Ok(1.0 - 2.0 * p.m / r - p.lambda * r * r / 3.0)
}

/// `r ∂_r α² = 2m/r − (2/3)Λr²`.
pub(crate) fn r_dalpha2(r: Complex64, p: &BlackHoleParams) -> Complex64 {
    2.0 * p.m / r - 2.0 / 3.0 * p.lambda * r * r
}

/// Roots of `r α²(r)` for `Λ > 0` and the residues of `1/α²` there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorizonData {
    pub r0: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    pub a0: f64,
    pub a_minus: f64,
    pub a_plus: f64,
}

impl HorizonData {
    pub fn roots(&self) -> [f64; 3] {
        [self.r0, self.r_minus, self.r_plus]
    }
}

/// Roots `r0 < 0 < r₋ < r₊` of `(Λ/3) r³ − r + 2m` and residues
/// `a_i = r_i / (1 − Λ r_i²)` of `1/α²`.
pub fn horizon_roots(p: &BlackHoleParams) -> Result<HorizonData> {
    if !p.is_de_sitter() {
        return Err(Error::Precondition("horizon_roots needs Λ > 0; use the Λ = 0 closed forms".into()));
    }
    if 1.0 - p.sigma() < 1e-10 {
        return Err(Error::Degenerate(format!(
            "near-extremal 9Λm² = {}: r₋ and r₊ are not separable in double precision",
            p.sigma()
        )));
    }
    let (m, lam) = (p.m, p.lambda);
    // r³ + P r + Q = 0 with P = −3/Λ, Q = 6m/Λ.
    let pp = -3.0 / lam;
    let qq = 6.0 * m / lam;
    let amp = 2.0 * (-pp / 3.0).sqrt();
    let phi = ((3.0 * qq / (2.0 * pp)) * (-3.0 / pp).sqrt()).clamp(-1.0, 1.0).acos();
    let mut roots: Vec<f64> =
        (0..3).map(|k| amp * (phi / 3.0 - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos()).collect();
    let cubic = |r: f64| lam / 3.0 * r * r * r - r + 2.0 * m;
    let dcubic = |r: f64| lam * r * r - 1.0;
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = dcubic(*r);
            if d == 0.0 {
                break;
            }
            let step = cubic(*r) / d;
            *r -= step;
            if step.abs() <= 1e-17 * r.abs() {
                break;
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let [r0, r_minus, r_plus] = [roots[0], roots[1], roots[2]];
    if !(r0 < 0.0 && 0.0 < r_minus && r_minus < r_plus) {
        return Err(Error::Numerical(format!("unexpected root ordering {r0}, {r_minus}, {r_plus}")));
    }
    let res = |r: f64| r / (1.0 - lam * r * r);
    Ok(HorizonData { r0, r_minus, r_plus, a0: res(r0), a_minus: res(r_minus), a_plus: res(r_plus) })
}

/// Barrier-top data: `r_crit = 3m`, its tortoise coordinate `x0`, the height
/// `E0 = α²/r²` and the curvature `c0 = −½ V''(0) = E0²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalData {
    pub r_crit: f64,
    pub x0: f64,
    pub e0: f64,
    pub c0: f64,
}

pub fn critical_data(p: &BlackHoleParams) -> Result<CriticalData> {
    let r_crit = 3.0 * p.m;
    let e0 = (1.0 - p.sigma()) / (27.0 * p.m * p.m);
    let direct = alpha_squared(Complex64::new(r_crit, 0.0), p)?.re / (r_crit * r_crit);
    if (direct - e0).abs() > 1e-13 / (27.0 * p.m * p.m) {
        return Err(Error::Numerical(format!("barrier height mismatch: {direct} vs {e0}")));
    }
    let x0 = super::tortoise(r_crit, p)?;
    Ok(CriticalData { r_crit, x0, e0, c0: e0 * e0 })
}
