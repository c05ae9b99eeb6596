//! Functions of `w = zζ`: Weyl symbol → classical (left) symbol → function of
//! the operator `s = z hD_z + h/2i`.

use crate::error::{Error, Result};
use crate::scalar::{inv_factorial, powi, Scalar};
use crate::series::{ComplexSeries1, GradedSeries1};

fn check_orders<T: Scalar>(f: &GradedSeries1<T>) -> Result<usize> {
    let m = f.levels()[0].trunc_order();
    for (k, l) in f.levels().iter().enumerate() {
        if l.trunc_order() + k < m {
            return Err(Error::Shape(format!("level {k} is stored to w^{} but weight needs w^{}", l.trunc_order(), m - k)));
        }
    }
    if f.h_order() > m {
        return Err(Error::Shape("more h-levels than the weight supports".into()));
    }
    Ok(m)
}

// Both conversions return levels `0..=M` with level `k` stored to `w^{M−k}`,
// where `M` is the order of level 0; missing input levels count as zero.

/// `exp((h/2i) ∂_z ∂_ζ)` on functions of `w`:
/// `w^n ↦ Σ_j (h/2i)^j / j! · (n!/(n−j)!)² w^{n−j}`.
pub fn weyl_to_classical<T: Scalar>(f: &GradedSeries1<T>) -> Result<GradedSeries1<T>> {
    let m = check_orders(f)?;
    let kmax = m;
    let half_over_i = T::from_ratio(1, 2) / T::i();
    let mut out: Vec<ComplexSeries1<T>> = (0..=kmax).map(|k| ComplexSeries1::zero(m - k)).collect();
    for (l, lvl) in f.levels().iter().enumerate() {
        for (n, c) in lvl.coeffs().iter().enumerate().take(m - l + 1) {
            if c.is_zero() {
                continue;
            }
            let mut fall = T::one();
            for j in 0..=n {
                let k = l + j;
                if k > kmax {
                    break;
                }
                if j > 0 {
                    fall = fall * T::from_int((n + 1 - j) as i64);
                }
                let coef = c.clone() * powi(&half_over_i, j) * inv_factorial(j) * fall.clone() * fall.clone();
                let cur = out[k].coeff(n - j);
                out[k].set_coeff(n - j, cur + coef);
            }
        }
    }
    Ok(GradedSeries1::new(out))
}

/// Classical `z^n ζ^n ↦ Π_{j<n} (s − (j+½) h/i)`.
pub fn classical_to_spectral<T: Scalar>(f: &GradedSeries1<T>) -> Result<GradedSeries1<T>> {
    let m = check_orders(f)?;
    let kmax = m;
    // prod[i] = coefficient of h^i as a polynomial in s, for the current n.
    let mut prod: Vec<Vec<T>> = vec![vec![T::one()]];
    let mut out: Vec<ComplexSeries1<T>> = (0..=kmax).map(|k| ComplexSeries1::zero(m - k)).collect();
    for n in 0..=m {
        if n > 0 {
            let shift = -(T::from_ratio(2 * n as i64 - 1, 2) / T::i());
            let mut next: Vec<Vec<T>> = vec![vec![T::zero(); n + 1]; n + 1];
            for (i, poly) in prod.iter().enumerate() {
                for (d, c) in poly.iter().enumerate() {
                    next[i][d + 1] = next[i][d + 1].clone() + c.clone();
                    next[i + 1][d] = next[i + 1][d].clone() + c.clone() * shift.clone();
                }
            }
            prod = next;
        }
        for l in 0..=f.h_order().min(m - n) {
            let c = f.levels()[l].coeff(n);
            if c.is_zero() {
                continue;
            }
            for (i, poly) in prod.iter().enumerate() {
                let k = l + i;
                if k > kmax {
                    break;
                }
                for (d, p) in poly.iter().enumerate() {
                    if d + k <= m && !p.is_zero() {
                        let cur = out[k].coeff(d);
                        out[k].set_coeff(d, cur + c.clone() * p.clone());
                    }
                }
            }
        }
    }
    Ok(GradedSeries1::new(out))
}

/// Spectral function `g_spec` with `Op^w(F(zζ; h)) = g_spec(z hD_z + h/2i; h)`.
pub fn weyl_to_spectral<T: Scalar>(f: &GradedSeries1<T>) -> Result<GradedSeries1<T>> {
    classical_to_spectral(&weyl_to_classical(f)?)
}
