use crate::error::{Error, Result};

use super::lambert::lambert_w0_exp;
use super::params::{horizon_roots, BlackHoleParams, HorizonData};

/// Tortoise coordinate `x(r)` with `dx/dr = 1/α²`.
///
/// `Λ = 0`: `x = r + 2m ln(r − 2m)` on `r > 2m`.
/// `Λ > 0`: `x = a0 ln(r − r0) + a₋ ln(r − r₋) + a₊ ln(r₊ − r)` on `r₋ < r < r₊`.
pub fn tortoise(r: f64, p: &BlackHoleParams) -> Result<f64> {
    if !p.is_de_sitter() {
        if !(r > 2.0 * p.m) {
            return Err(Error::Domain(format!("tortoise needs r > 2m, got r = {r}")));
        }
        return Ok(r + 2.0 * p.m * (r - 2.0 * p.m).ln());
    }
    let hd = horizon_roots(p)?;
    if !(r > hd.r_minus && r < hd.r_plus) {
        return Err(Error::Domain(format!("tortoise needs {} < r < {}, got r = {r}", hd.r_minus, hd.r_plus)));
    }
    Ok(hd.a0 * (r - hd.r0).ln() + hd.a_minus * (r - hd.r_minus).ln() + hd.a_plus * (hd.r_plus - r).ln())
}

/// A point of the exterior region with `α²` evaluated without cancellation
/// near the horizons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealPoint {
    pub r: f64,
    pub alpha2: f64,
}

/// `r(x)`; see [`inverse_tortoise_point`] for the accompanying `α²`.
pub fn inverse_tortoise(x: f64, p: &BlackHoleParams) -> Result<f64> {
    inverse_tortoise_point(x, p).map(|pt| pt.r)
}

pub fn inverse_tortoise_point(x: f64, p: &BlackHoleParams) -> Result<RealPoint> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("inverse_tortoise needs finite x, got {x}")));
    }
    if !p.is_de_sitter() {
        // r = 2m + 2m W₀(e^{x/2m − 1}/2m), with the exponential kept in log form.
        let m = p.m;
        let l = x / (2.0 * m) - 1.0 - (2.0 * m).ln();
        let w = lambert_w0_exp(l)?;
        let r = 2.0 * m * (1.0 + w);
        return Ok(RealPoint { r, alpha2: w / (1.0 + w) });
    }
    let hd = horizon_roots(p)?;
    desitter_inverse(x, p, &hd)
}

fn softplus(u: f64) -> f64 {
    if u > 30.0 {
        u + (-u).exp().ln_1p()
    } else {
        u.exp().ln_1p()
    }
}

/// `r = r₋ + Δ σ(t)` with logistic `σ`; `x(t)` is smooth and increasing.
fn desitter_inverse(x: f64, p: &BlackHoleParams, hd: &HorizonData) -> Result<RealPoint> {
    let delta = hd.r_plus - hd.r_minus;
    let ln_delta = delta.ln();
    // x(t), x'(t); offsets r − r₋ = Δσ, r₊ − r = Δ(1 − σ) computed directly.
    let eval = |t: f64| {
        let sig = 1.0 / (1.0 + (-t).exp());
        let one_minus = 1.0 / (1.0 + t.exp());
        let r = if t < 0.0 { hd.r_minus + delta * sig } else { hd.r_plus - delta * one_minus };
        let sp = softplus(-t);
        let xt = hd.a0 * (r - hd.r0).ln() + hd.a_minus * (ln_delta - sp) + hd.a_plus * (ln_delta - t - sp);
        let dxt = hd.a0 * delta * sig * one_minus / (r - hd.r0) + hd.a_minus * one_minus - hd.a_plus * sig;
        (xt, dxt, r, delta * sig, delta * one_minus)
    };
    let (mut lo, mut hi) = (-1.0, 1.0);
    let mut expand = 0;
    while eval(lo).0 > x {
        lo *= 2.0;
        expand += 1;
        if expand > 60 {
            return Err(Error::NoConvergence(format!("inverse tortoise: no lower bracket for x = {x}")));
        }
    }
    while eval(hi).0 < x {
        hi *= 2.0;
        expand += 1;
        if expand > 120 {
            return Err(Error::NoConvergence(format!("inverse tortoise: no upper bracket for x = {x}")));
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (xt, dxt, ..) = eval(t);
        let f = xt - x;
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let mut next = t - f / dxt;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        let done = (next - t).abs() <= 4e-16 * t.abs().max(1.0) || hi - lo <= 4e-16 * t.abs().max(1.0);
        t = next;
        if done {
            let (_, _, r, d_minus, d_plus) = eval(t);
            let alpha2 = p.lambda / (3.0 * r) * (r - hd.r0) * d_minus * d_plus;
            return Ok(RealPoint { r, alpha2 });
        }
    }
    Err(Error::NoConvergence(format!("inverse tortoise: Newton stalled in bracket [{lo}, {hi}] for x = {x}")))
}

/// `(W₀, W₁)` at a real tortoise coordinate:
/// `W₀ = α²/r²`, `W₁ = W₀ (r∂_rα² − ¼)`.
pub fn potential_parts(x: f64, p: &BlackHoleParams) -> Result<(f64, f64)> {
    let pt = inverse_tortoise_point(x, p)?;
    let r = pt.r;
    let w0 = pt.alpha2 / (r * r);
    let w1 = w0 * (2.0 * p.m / r - 2.0 / 3.0 * p.lambda * r * r - 0.25);
    Ok((w0, w1))
}

/// `W(x, h) = W₀(x) + h² W₁(x)`; real on the real axis.
pub fn potential_w(x: f64, h: f64, p: &BlackHoleParams) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::Precondition(format!("h must be ≥ 0, got {h}")));
    }
    let (w0, w1) = potential_parts(x, p)?;
    Ok(w0 + h * h * w1)
}
