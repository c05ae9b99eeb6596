use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Graded1, Series1};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QnmEntry {
    pub ell: u32,
    pub n: u32,
    pub lambda: Complex64,
    pub multiplicity: u32,
}

impl QnmEntry {
    pub fn new(ell: u32, n: u32, lambda: Complex64) -> Self {
        Self { ell, n, lambda, multiplicity: 2 * ell + 1 }
    }

    pub fn h(&self) -> f64 {
        1.0 / (self.ell as f64 + 0.5)
    }

    /// `h⁻¹ G(2π(n+½)h; h)`.
    pub fn from_symbol(ell: u32, n: u32, g: &Graded1) -> Self {
        let h = 1.0 / (ell as f64 + 0.5);
        let x = 2.0 * std::f64::consts::PI * (n as f64 + 0.5) * h;
        let lam = g.eval(&Complex64::new(x, 0.0), &Complex64::new(h, 0.0)) / h;
        Self::new(ell, n, lam)
    }
}

/// `A_t(r) = {λ : 1 ≤ |λ| ≤ r, arg λ > −t}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorSpec {
    pub r: f64,
    pub t: f64,
}

impl SectorSpec {
    pub fn new(r: f64, t: f64) -> Result<Self> {
        if !(r >= 1.0 && r.is_finite()) {
            return Err(Error::InvalidParams(format!("sector radius {r} must be ≥ 1")));
        }
        if !(t > 0.0 && t <= 0.3) {
            return Err(Error::InvalidParams(format!("sector aperture {t} outside (0, 0.3]")));
        }
        Ok(Self { r, t })
    }

    pub fn contains(&self, lam: Complex64) -> bool {
        let a = lam.norm();
        a >= 1.0 && a <= self.r && lam.arg() > -self.t
    }

    /// Beyond the sector in the direction of growing `n` or `ℓ`.
    pub(crate) fn passed(&self, lam: Complex64) -> bool {
        lam.norm() > self.r || lam.arg() <= -self.t
    }
}

/// Share of the last retained term in the validity criterion.
pub const VALIDITY_FRACTION: f64 = 0.05;

/// Largest `x` up to which the last nonzero term of `g0` stays below 5% of
/// `|g0(x)|`.
pub fn validity_radius(g0: &Series1) -> Result<f64> {
    let c = g0.coeffs();
    let d = match c.iter().rposition(|z| z.norm() > 0.0) {
        Some(d) if d >= 1 => d,
        _ => return Ok(f64::INFINITY),
    };
    let bad = |x: f64| {
        let z = Complex64::new(x, 0.0);
        (c[d] * z.powu(d as u32)).norm() >= VALIDITY_FRACTION * g0.eval(&z).norm()
    };
    if c[0].norm() == 0.0 {
        return Err(Error::Precondition("validity radius needs g0(0) ≠ 0".into()));
    }
    let guess = (VALIDITY_FRACTION * c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
    let steps = 4000;
    let top = 10.0 * guess;
    let mut prev = 0.0;
    for k in 1..=steps {
        let x = top * k as f64 / steps as f64;
        if bad(x) {
            let (mut lo, mut hi) = (prev, x);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if bad(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(lo);
        }
        prev = x;
    }
    Ok(top)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoverageGap {
    pub ell: u32,
    /// Validity radius reached while still inside the sector.
    pub x_limit: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeResult {
    pub entries: Vec<QnmEntry>,
    pub gaps: Vec<CoverageGap>,
}

/// The `n`-range of one `ℓ` inside the sector; entries with `|λ| < 1` are
/// skipped but do not end the scan.
pub(crate) fn scan_ell<F: FnMut(QnmEntry)>(ell: u32, g: &Graded1, sector: &SectorSpec, radius: f64, mut visit: F) -> Option<CoverageGap> {
    let h = 1.0 / (ell as f64 + 0.5);
    for n in 0u32.. {
        let x = 2.0 * std::f64::consts::PI * (n as f64 + 0.5) * h;
        if x > radius {
            return Some(CoverageGap { ell, x_limit: radius });
        }
        let e = QnmEntry::from_symbol(ell, n, g);
        if sector.passed(e.lambda) {
            return None;
        }
        if sector.contains(e.lambda) {
            visit(e);
        }
    }
    None
}

/// All lattice points in the sector for `1 ≤ ℓ ≤ ell_max`.
pub fn lattice(g: &Graded1, ell_max: u32, sector: &SectorSpec, radius: f64) -> Result<LatticeResult> {
    if ell_max < 1 {
        return Err(Error::InvalidParams("ell_max must be ≥ 1".into()));
    }
    let mut entries = Vec::new();
    let mut gaps = Vec::new();
    for ell in 1..=ell_max {
        let first = QnmEntry::from_symbol(ell, 0, g);
        if first.lambda.norm() > sector.r {
            break;
        }
        if let Some(gap) = scan_ell(ell, g, sector, radius, |e| entries.push(e)) {
            gaps.push(gap);
        }
    }
    Ok(LatticeResult { entries, gaps })
}
