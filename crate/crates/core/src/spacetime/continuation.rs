//! Holomorphic continuation of `r(x)` to the scaled contour
//! `x = x0 + (1 + iθ) y`, `y ∈ ℝ`.
//!
//! Newton continuation from the barrier top. Toward a horizon the unknown is
//! `s = log(r − r_h)` (or `log(r_h − r)`), so that the logarithm in the
//! tortoise map is followed continuously across sheets.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::params::{horizon_roots, r_dalpha2, BlackHoleParams, HorizonData};
use super::tortoise::tortoise;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexPoint {
    pub y: f64,
    pub r: Complex64,
    pub alpha2: Complex64,
}

impl ComplexPoint {
    /// `(W₀, W₁)` at this point.
    pub fn potentials(&self, p: &BlackHoleParams) -> (Complex64, Complex64) {
        let w0 = self.alpha2 / (self.r * self.r);
        (w0, w0 * (r_dalpha2(self.r, p) - 0.25))
    }
}

#[derive(Clone, Copy)]
enum Chart {
    /// Λ = 0, unknown r.
    Direct,
    /// Λ = 0, r = 2m + e^s.
    SchwLeft,
    /// Λ > 0, r = r₋ + e^s.
    DsLeft,
    /// Λ > 0, r = r₊ − e^s.
    DsRight,
}

struct Ctx<'a> {
    p: &'a BlackHoleParams,
    hd: Option<HorizonData>,
    chart: Chart,
}

impl Ctx<'_> {
    /// `(x(u) , dx/du, r, α²)` in the chart variable `u`.
    fn eval(&self, u: Complex64) -> (Complex64, Complex64, Complex64, Complex64) {
        let m = self.p.m;
        match self.chart {
            Chart::Direct => {
                let d = u - 2.0 * m;
                (u + 2.0 * m * d.ln(), u / d, u, d / u)
            }
            Chart::SchwLeft => {
                let e = u.exp();
                let r = 2.0 * m + e;
                (r + 2.0 * m * u, e + 2.0 * m, r, e / r)
            }
            Chart::DsLeft => {
                let hd = self.hd.unwrap();
                let e = u.exp();
                let r = hd.r_minus + e;
                let (d0, dp) = (r - hd.r0, hd.r_plus - r);
                let x = hd.a0 * d0.ln() + hd.a_minus * u + hd.a_plus * dp.ln();
                let dx = e * (hd.a0 / d0 - hd.a_plus / dp) + hd.a_minus;
                (x, dx, r, self.p.lambda / (3.0 * r) * d0 * e * dp)
            }
            Chart::DsRight => {
                let hd = self.hd.unwrap();
                let e = u.exp();
                let r = hd.r_plus - e;
                let (d0, dm) = (r - hd.r0, r - hd.r_minus);
                let x = hd.a0 * d0.ln() + hd.a_minus * dm.ln() + hd.a_plus * u;
                let dx = -e * (hd.a0 / d0 + hd.a_minus / dm) + hd.a_plus;
                (x, dx, r, self.p.lambda / (3.0 * r) * d0 * dm * e)
            }
        }
    }

    fn newton(&self, mut u: Complex64, target: Complex64) -> Option<(Complex64, usize)> {
        for it in 0..40 {
            let (x, dx, ..) = self.eval(u);
            let step = (x - target) / dx;
            if !step.re.is_finite() || !step.im.is_finite() {
                return None;
            }
            u -= step;
            if step.norm() <= 1e-15 * u.norm().max(1.0) {
                return Some((u, it));
            }
        }
        None
    }
}

/// Continues `r` to `x0 + (1 + iθ) y` for every `y` in `ys`; results are
/// returned in input order.
pub fn continue_on_ray(p: &BlackHoleParams, x0: f64, theta: f64, ys: &[f64]) -> Result<Vec<ComplexPoint>> {
    let hd = if p.is_de_sitter() { Some(horizon_roots(p)?) } else { None };
    let r_start = 3.0 * p.m;
    if (tortoise(r_start, p)? - x0).abs() > 1e-9 * x0.abs().max(1.0) {
        return Err(Error::Precondition("continue_on_ray must start at the barrier top x0".into()));
    }
    let scale = Complex64::new(1.0, theta);
    let mut out = vec![None; ys.len()];
    for side in [1.0f64, -1.0] {
        let (chart, u0) = match (hd, side > 0.0) {
            (None, true) => (Chart::Direct, Complex64::new(r_start, 0.0)),
            (None, false) => (Chart::SchwLeft, Complex64::new((r_start - 2.0 * p.m).ln(), 0.0)),
            (Some(h), true) => (Chart::DsRight, Complex64::new((h.r_plus - r_start).ln(), 0.0)),
            (Some(h), false) => (Chart::DsLeft, Complex64::new((r_start - h.r_minus).ln(), 0.0)),
        };
        let ctx = Ctx { p, hd, chart };
        let mut order: Vec<usize> = (0..ys.len()).filter(|&i| (ys[i] >= 0.0) == (side > 0.0)).collect();
        order.sort_by(|&a, &b| ys[a].abs().partial_cmp(&ys[b].abs()).unwrap());
        let (mut y, mut u) = (0.0f64, u0);
        let mut dy = 0.25 * p.m;
        for i in order {
            let target_y = ys[i];
            if !target_y.is_finite() {
                return Err(Error::Domain("non-finite contour parameter".into()));
            }
            while y != target_y {
                let step = (target_y - y).abs().min(dy);
                let y_new = y + side * step;
                let y_new = if (target_y - y_new) * side < 0.0 { target_y } else { y_new };
                let target = x0 + scale * y_new;
                let (_, dx, ..) = ctx.eval(u);
                let guess = u + scale * (y_new - y) / dx;
                match ctx.newton(guess, target) {
                    Some((next, iters)) => {
                        u = next;
                        y = y_new;
                        if iters <= 4 {
                            dy *= 1.5;
                        }
                    }
                    None => {
                        dy *= 0.5;
                        if dy < 1e-10 * p.m {
                            return Err(Error::NoConvergence(format!(
                                "complex continuation stalled at y = {y} (θ = {theta})"
                            )));
                        }
                    }
                }
            }
            let (_, _, r, alpha2) = ctx.eval(u);
            out[i] = Some(ComplexPoint { y: target_y, r, alpha2 });
        }
    }
    Ok(out.into_iter().map(|o| o.expect("every y visited")).collect())
}
