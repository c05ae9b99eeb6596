//! Principal branch of the Lambert W function on the reals.

use crate::error::{Error, Result};

const MAX_ITER: usize = 6;

/// `W_0(y)` for `y ≥ −1/e`, by Halley iteration on `w e^w = y`.
pub fn lambert_w0(y: f64) -> Result<f64> {
    let branch = -1.0 / std::f64::consts::E;
    if !(y >= branch) || !y.is_finite() {
        return Err(Error::Domain(format!("lambert_w0 needs y ≥ −1/e, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y > 1e2 {
        return lambert_w0_exp(y.ln());
    }
    // Seeds: branch-point expansion near −1/e, log(1+y) elsewhere.
    let mut w = if y < -0.3 {
        let p = (2.0 * (std::f64::consts::E * y + 1.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        y.ln_1p() * (1.0 - y.ln_1p().ln_1p() / (2.0 + y.ln_1p()))
    };
    for _ in 0..2 * MAX_ITER {
        let ew = w.exp();
        let f = w * ew - y;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-300 {
            break;
        }
        let dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= dw;
        if dw.abs() <= 1e-16 * w.abs().max(1e-300) {
            break;
        }
    }
    Ok(w)
}

/// `W_0(e^L)`, i.e. the solution of `w + ln w = L`, without forming `e^L`.
pub fn lambert_w0_exp(l: f64) -> Result<f64> {
    if !l.is_finite() {
        return Err(Error::Domain(format!("lambert_w0_exp needs finite L, got {l}")));
    }
    if l < -30.0 {
        // w = e^{L − w}; the fixed point converges immediately for tiny w.
        let mut w = l.exp();
        for _ in 0..3 {
            w = (l - w).exp();
        }
        return Ok(w);
    }
    // Log-asymptotic seed L − ln L for large L.
    let mut w = if l > 1.0 { l - l.ln() + l.ln() / l } else { l.exp().ln_1p().max(1e-300) };
    for _ in 0..MAX_ITER + 2 {
        let f = w + w.ln() - l;
        let d1 = 1.0 + 1.0 / w;
        let d2 = -1.0 / (w * w);
        let dw = 2.0 * f * d1 / (2.0 * d1 * d1 - f * d2);
        let next = if w - dw > 0.0 { w - dw } else { w / 2.0 };
        let done = (next - w).abs() <= 1e-16 * w;
        w = next;
        if done {
            break;
        }
    }
    Ok(w)
}
