use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{ComplexSeries1, ComplexSeries2, GradedSeries1, GradedSeries2};
use crate::spacetime::{critical_data, potential_taylor, BlackHoleParams, MAX_TAYLOR_DEGREE};
use crate::{c64, Graded1, Graded2};

use super::bnf::normalize_symbol;
use super::result::NormalFormResult;
use super::spectral::weyl_to_spectral;

/// Below this `E0` the barrier is too flat for the normal form.
pub const MIN_BARRIER_HEIGHT: f64 = 1e-6;

/// Weyl symbol of `P_θ − E0` at the barrier top, in the shifted variable,
/// through weight `n`:
/// `(1+iθ)⁻² ξ² + V((1+iθ)x) + h² W₁((1+iθ)x)`.
pub fn scaled_weyl_symbol<T: Scalar>(m: &T, lambda: &T, theta: &T, n: usize) -> GradedSeries2<T> {
    let pt = potential_taylor(m, lambda, n);
    let s = T::one() + T::i() * theta.clone();
    let v = pt.v.rescale_arg(&s);
    let w1 = pt.w1.rescale_arg(&s);
    let mut sym = GradedSeries2::zero_weighted(n);
    let lv = &mut sym.levels_mut()[0];
    for (j, c) in v.coeffs().iter().enumerate() {
        lv.set_coeff(j, 0, c.clone());
    }
    lv.set_coeff(0, 2, T::one() / (s.clone() * s));
    if n >= 4 {
        let l2 = &mut sym.levels_mut()[2];
        for j in 0..=n - 4 {
            l2.set_coeff(j, 0, w1.coeff(j));
        }
    }
    sym
}

/// Normal form of the Regge–Wheeler symbol and the QNM symbol
/// `G(x; h) = √(E0 + g_spec(−ix/2π; h))`.
///
/// `degree` is the total weight; levels `0..=h_order` of `G` are returned.
pub fn qnm_symbol(p: &BlackHoleParams, degree: usize, h_order: usize) -> Result<NormalFormResult<c64>> {
    qnm_symbol_scaled(p, degree, h_order, 0.0)
}

/// [`qnm_symbol`] computed from the complex-scaled symbol `p_θ`.
pub fn qnm_symbol_scaled(p: &BlackHoleParams, degree: usize, h_order: usize, theta: f64) -> Result<NormalFormResult<c64>> {
    if degree < 2 * h_order + 4 {
        return Err(Error::Precondition(format!("degree {degree} < 2·h_order + 4 = {}", 2 * h_order + 4)));
    }
    if degree > MAX_TAYLOR_DEGREE {
        return Err(Error::Precondition(format!("degree {degree} exceeds {MAX_TAYLOR_DEGREE}")));
    }
    let cd = critical_data(p)?;
    if cd.e0 < MIN_BARRIER_HEIGHT {
        return Err(Error::Degenerate(format!("barrier height E0 = {:.3e} is too small for the normal form", cd.e0)));
    }
    let sym: Graded2 = scaled_weyl_symbol(&c64::new(p.m, 0.0), &c64::new(p.lambda, 0.0), &c64::new(theta, 0.0), degree);
    let (mut res, g_spec) = spectral_symbol(&sym, degree)?;
    let z = g_spec.truncate_h(h_order);
    let calib = c64::new(0.0, -1.0 / (2.0 * std::f64::consts::PI));
    let mut levels: Vec<ComplexSeries1<c64>> = z.levels().iter().map(|l| l.rescale_arg(&calib)).collect();
    let c = levels[0].coeff(0);
    levels[0].set_coeff(0, c + c64::new(cd.e0, 0.0));
    let g: Graded1 = GradedSeries1::new(levels).sqrt(c64::new(cd.e0.sqrt(), 0.0))?;
    res.g_qnm = Some(g);
    Ok(res)
}

/// Normal form and spectral function of a Weyl symbol through weight `weight`.
pub fn spectral_symbol<T: Scalar>(sym: &GradedSeries2<T>, weight: usize) -> Result<(NormalFormResult<T>, GradedSeries1<T>)> {
    let nf = normalize_symbol(sym, weight)?;
    let weyl = &nf.average.weyl;
    let res = NormalFormResult::from_diagonal(nf.reduction.mu.clone(), &weyl.levels()[0])?;
    Ok((res, weyl_to_spectral(weyl)?))
}

/// `p(x, ξ)` of a Weyl symbol at `h = 0`, as a plain series.
pub fn principal_part<T: Scalar>(sym: &GradedSeries2<T>) -> ComplexSeries2<T> {
    sym.levels()[0].clone()
}
