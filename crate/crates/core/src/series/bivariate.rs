use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{binomial, Scalar};
use crate::series::ComplexSeries1;

/// Truncated power series `Σ c_{mn} z^m ζ^n` over `m + n ≤ N`.
///
/// Storage is dense over the triangle, grouped by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSeries2<T> {
    order: usize,
    coeffs: Vec<T>,
}

#[inline]
fn idx(m: usize, n: usize) -> usize {
    let d = m + n;
    d * (d + 1) / 2 + n
}

impl<T: Scalar> ComplexSeries2<T> {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![T::zero(); idx(0, order + 1)] }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from `(m, n, c)` triples; terms above `order` are
    /// dropped, repeated keys accumulate.
    pub fn from_terms<I: IntoIterator<Item = (usize, usize, T)>>(order: usize, terms: I) -> Self {
        let mut s = Self::zero(order);
        for (m, n, c) in terms {
            if m + n <= order {
                let i = idx(m, n);
                s.coeffs[i] = s.coeffs[i].clone() + c;
            }
        }
        s
    }

    /// The monomial `c z^m ζ^n`.
    pub fn monomial(m: usize, n: usize, c: T, order: usize) -> Self {
        Self::from_terms(order, [(m, n, c)])
    }

    pub fn trunc_order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, m: usize, n: usize) -> T {
        if m + n > self.order {
            T::zero()
        } else {
            self.coeffs[idx(m, n)].clone()
        }
    }

    pub fn coeff_ref(&self, m: usize, n: usize) -> &T {
        &self.coeffs[idx(m, n)]
    }

    /// Sets a coefficient; panics above the truncation order.
    pub fn set_coeff(&mut self, m: usize, n: usize, c: T) {
        assert!(m + n <= self.order, "coefficient ({m},{n}) above truncation {}", self.order);
        self.coeffs[idx(m, n)] = c;
    }

    pub fn add_to_coeff(&mut self, m: usize, n: usize, c: T) {
        let i = idx(m, n);
        self.coeffs[i] = self.coeffs[i].clone() + c;
    }

    /// Nonzero terms in order of increasing total degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        (0..=self.order).flat_map(move |d| {
            (0..=d).filter_map(move |n| {
                let c = &self.coeffs[idx(d - n, n)];
                if c.is_zero() {
                    None
                } else {
                    Some((d - n, n, c))
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order);
        Self { order: n, coeffs: self.coeffs[..idx(0, n + 1)].to_vec() }
    }

    /// Same coefficients, carried at a higher declared order. Only valid when
    /// the caller knows the missing terms vanish (e.g. exact polynomials).
    pub fn extend_exact(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(idx(0, order.max(self.order) + 1), T::zero());
        Self { order: order.max(self.order), coeffs: c }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// Part of total degree exactly `d` (order unchanged).
    pub fn homogeneous(&self, d: usize) -> Self {
        let mut s = Self::zero(self.order);
        if d <= self.order {
            for n in 0..=d {
                s.coeffs[idx(d - n, n)] = self.coeffs[idx(d - n, n)].clone();
            }
        }
        s
    }

    /// Diagonal coefficients `c_{kk}` as a series in `w = zζ`.
    pub fn diagonal(&self) -> ComplexSeries1<T> {
        ComplexSeries1::new((0..=self.order / 2).map(|k| self.coeff(k, k)).collect())
    }

    /// Embeds a series in `w` as `Σ c_k (zζ)^k`.
    pub fn from_diagonal(f: &ComplexSeries1<T>, order: usize) -> Self {
        Self::from_terms(order, f.coeffs().iter().enumerate().map(|(k, c)| (k, k, c.clone())))
    }

    pub fn off_diagonal_is_zero(&self) -> bool {
        self.terms().all(|(m, n, _)| m == n)
    }

    pub fn max_off_diagonal(&self) -> f64 {
        self.terms().filter(|(m, n, _)| m != n).map(|(_, _, c)| c.abs_f64()).fold(0.0, f64::max)
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order.min(other.order);
        let mut out = Self::zero(n);
        for (m1, n1, a) in self.terms() {
            let d1 = m1 + n1;
            if d1 > n {
                break;
            }
            for (m2, n2, b) in other.terms() {
                if d1 + m2 + n2 > n {
                    break;
                }
                out.add_to_coeff(m1 + m2, n1 + n2, a.clone() * b.clone());
            }
        }
        out
    }

    /// `∂_z`; order drops by one.
    pub fn d_z(&self) -> Self {
        let n = self.order.saturating_sub(1);
        let mut out = Self::zero(n);
        if self.order == 0 {
            return out;
        }
        for (m, k, c) in self.terms() {
            if m > 0 {
                out.add_to_coeff(m - 1, k, c.clone() * T::from_int(m as i64));
            }
        }
        out
    }

    /// `∂_ζ`; order drops by one.
    pub fn d_zeta(&self) -> Self {
        let n = self.order.saturating_sub(1);
        let mut out = Self::zero(n);
        if self.order == 0 {
            return out;
        }
        for (m, k, c) in self.terms() {
            if k > 0 {
                out.add_to_coeff(m, k - 1, c.clone() * T::from_int(k as i64));
            }
        }
        out
    }

    /// `∂_ζ^p ∂_z^q`; order drops by `p + q` (saturating at the zero series).
    pub fn partial(&self, dz: usize, dzeta: usize) -> Option<Self> {
        if dz + dzeta > self.order {
            return None;
        }
        let mut out = Self::zero(self.order - dz - dzeta);
        for (m, k, c) in self.terms() {
            if m >= dz && k >= dzeta {
                let f = falling(m, dz) * falling(k, dzeta);
                out.add_to_coeff(m - dz, k - dzeta, c.clone() * T::from_int(f));
            }
        }
        Some(out)
    }

    pub fn eval(&self, z: &T, zeta: &T) -> T {
        let mut acc = T::zero();
        for (m, n, c) in self.terms() {
            acc = acc + c.clone() * crate::scalar::powi(z, m) * crate::scalar::powi(zeta, n);
        }
        acc
    }

    /// Pull-back by a linear map: returns `q(x, ξ)` with
    /// `x = l[0][0] z + l[0][1] ζ`, `ξ = l[1][0] z + l[1][1] ζ`.
    pub fn linear_substitute(&self, l: &[[T; 2]; 2]) -> Self {
        let n = self.order;
        let x = Self::from_terms(n, [(1, 0, l[0][0].clone()), (0, 1, l[0][1].clone())]);
        let xi = Self::from_terms(n, [(1, 0, l[1][0].clone()), (0, 1, l[1][1].clone())]);
        let mut xp = vec![Self::constant(T::one(), n)];
        let mut xip = vec![Self::constant(T::one(), n)];
        for k in 1..=n {
            xp.push(xp[k - 1].mul_series(&x));
            xip.push(xip[k - 1].mul_series(&xi));
        }
        let mut out = Self::zero(n);
        for (m, k, c) in self.terms() {
            let t = xp[m].mul_series(&xip[k]).scale(c);
            out = &out + &t;
        }
        out
    }

    /// Poisson bracket `{f, g} = ∂_ζ f ∂_z g − ∂_z f ∂_ζ g`.
    pub fn poisson(&self, g: &Self) -> Self {
        let a = self.d_zeta().mul_series(&g.d_z());
        let b = self.d_z().mul_series(&g.d_zeta());
        &a - &b
    }

    /// Substitutes `(z, ζ) ↦ (z e^{it}, ζ e^{−it})` for a scalar phase
    /// `e^{it}` and its inverse.
    pub fn rotate(&self, phase: &T, inv_phase: &T) -> Self {
        let mut out = Self::zero(self.order);
        for (m, n, c) in self.terms() {
            let f = crate::scalar::powi(phase, m) * crate::scalar::powi(inv_phase, n);
            out.set_coeff(m, n, c.clone() * f);
        }
        out
    }
}

fn falling(n: usize, k: usize) -> i64 {
    (0..k).map(|j| (n - j) as i64).product()
}

/// `C(n, k)` re-exported for callers working with bivariate expansions.
#[allow(dead_code)]
pub fn choose<T: Scalar>(n: usize, k: usize) -> T {
    binomial(n, k)
}

impl<T: Scalar> Add for &ComplexSeries2<T> {
    type Output = ComplexSeries2<T>;
    fn add(self, rhs: Self) -> ComplexSeries2<T> {
        let n = self.order.min(rhs.order);
        let len = idx(0, n + 1);
        ComplexSeries2 {
            order: n,
            coeffs: (0..len).map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &ComplexSeries2<T> {
    type Output = ComplexSeries2<T>;
    fn sub(self, rhs: Self) -> ComplexSeries2<T> {
        let n = self.order.min(rhs.order);
        let len = idx(0, n + 1);
        ComplexSeries2 {
            order: n,
            coeffs: (0..len).map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &ComplexSeries2<T> {
    type Output = ComplexSeries2<T>;
    fn mul(self, rhs: Self) -> ComplexSeries2<T> {
        self.mul_series(rhs)
    }
}

impl<T: Scalar> Neg for &ComplexSeries2<T> {
    type Output = ComplexSeries2<T>;
    fn neg(self) -> ComplexSeries2<T> {
        ComplexSeries2 { order: self.order, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}
