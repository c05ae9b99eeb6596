use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::ComplexSeries1;
use crate::{c64, Series1};

use super::params::BlackHoleParams;

/// Largest Taylor degree accepted by [`shifted_potential_taylor`].
pub const MAX_TAYLOR_DEGREE: usize = 24;

/// Taylor data at the barrier top in the shifted tortoise variable
/// `x ↦ x0 + x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTaylor<T> {
    /// `V(x) = W₀(x0 + x) − E0`.
    pub v: ComplexSeries1<T>,
    /// `W₁(x0 + x)`.
    pub w1: ComplexSeries1<T>,
    /// `r(x0 + x)`.
    pub r: ComplexSeries1<T>,
    pub e0: T,
}

/// Series of `V` and `W₁` to degree `n` over any coefficient field, from the
/// series solution of `dr/dx = α²(r)`, `r(0) = 3m`.
pub fn potential_taylor<T: Scalar>(m: &T, lambda: &T, n: usize) -> PotentialTaylor<T> {
    let three = T::from_int(3);
    let two_m = T::from_int(2) * m.clone();
    let lam3 = lambda.clone() / three.clone();
    let alpha2 = |r: &ComplexSeries1<T>| -> ComplexSeries1<T> {
        let inv = r.reciprocal().expect("r(0) = 3m ≠ 0");
        let one = ComplexSeries1::constant(T::one(), r.trunc_order());
        &(&one - &inv.scale(&two_m)) - &r.mul_series(r).scale(&lam3)
    };
    let mut r = ComplexSeries1::constant(three.clone() * m.clone(), n);
    for k in 0..n {
        let a = alpha2(&r.truncate(k));
        r.set_coeff(k + 1, a.coeff(k) * T::from_ratio(1, (k + 1) as i64));
    }
    let inv = r.reciprocal().expect("r(0) = 3m ≠ 0");
    let a2 = alpha2(&r);
    let w0 = a2.mul_series(&inv.mul_series(&inv));
    let e0 = (T::one() - T::from_int(9) * lambda.clone() * m.clone() * m.clone()) / (T::from_int(27) * m.clone() * m.clone());
    let mut v = &w0 - &ComplexSeries1::constant(e0.clone(), n);
    v.set_coeff(0, T::zero());
    if n >= 1 {
        v.set_coeff(1, T::zero());
    }
    let rd = &inv.scale(&two_m) - &r.mul_series(&r).scale(&(lam3.clone() * T::from_int(2)));
    let w1 = w0.mul_series(&(&rd - &ComplexSeries1::constant(T::from_ratio(1, 4), n)));
    PotentialTaylor { v, w1, r, e0 }
}

/// Taylor coefficients of `V(x) = W₀(x0 + x) − E0` to degree `n`.
pub fn shifted_potential_taylor(p: &BlackHoleParams, n: usize) -> Result<Series1> {
    if n > MAX_TAYLOR_DEGREE {
        return Err(Error::Precondition(format!("Taylor degree {n} exceeds {MAX_TAYLOR_DEGREE}")));
    }
    Ok(potential_taylor(&c64::new(p.m, 0.0), &c64::new(p.lambda, 0.0), n).v)
}
