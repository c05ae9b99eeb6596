use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::ComplexSeries2;

/// Linear symplectic reduction of a quadratic form to `μ zζ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticReduction<T> {
    pub mu: T,
    /// `(x, ξ) = linmap · (z, ζ)`; determinant 1.
    pub linmap: [[T; 2]; 2],
    /// Whether `q(ℝ²∖0)` lies in an open sector of angle `< π`; the sign of
    /// `μ` then puts `−iμ` inside that sector. Otherwise the sign defaults to
    /// `Re μ > 0` (ties: `Im μ < 0`).
    pub admissible: bool,
}

impl<T: Scalar> QuadraticReduction<T> {
    pub fn det(&self) -> T {
        let l = &self.linmap;
        l[0][0].clone() * l[1][1].clone() - l[0][1].clone() * l[1][0].clone()
    }

    /// The same reduction with `(z, ζ) ↦ (ζ, −z)`, which flips the sign of `μ`.
    pub fn flipped(&self) -> Self {
        let l = &self.linmap;
        Self {
            mu: -self.mu.clone(),
            linmap: [[l[0][1].clone(), -l[0][0].clone()], [l[1][1].clone(), -l[1][0].clone()]],
            admissible: self.admissible,
        }
    }
}

/// Angular extent of `q` on the real unit circle.
enum RangeShape {
    /// Unwrapped argument interval `[lo, hi]` with `hi − lo < π` and no zeros.
    Sector(f64, f64),
    /// Zeros on the real circle or a sector of angle `≥ π`.
    Wide,
    /// The argument winds: the range is all of `ℂ`.
    Everything,
}

fn range_shape(a: Complex64, b: Complex64, c: Complex64) -> RangeShape {
    const SAMPLES: usize = 720;
    let q = |phi: f64| {
        let (s, co) = phi.sin_cos();
        a * co * co + b * co * s + c * s * s
    };
    let scale = a.norm().max(b.norm()).max(c.norm());
    let mut prev = q(0.0);
    if prev.norm() <= 1e-12 * scale {
        return RangeShape::Wide;
    }
    let start = prev.arg();
    let (mut acc, mut lo, mut hi) = (start, start, start);
    for k in 1..=SAMPLES {
        let cur = q(std::f64::consts::PI * k as f64 / SAMPLES as f64);
        if cur.norm() <= 1e-12 * scale {
            return RangeShape::Wide;
        }
        acc += (cur / prev).arg();
        lo = lo.min(acc);
        hi = hi.max(acc);
        prev = cur;
    }
    if (acc - start).abs() > 1.0 {
        return RangeShape::Everything;
    }
    if hi - lo < std::f64::consts::PI - 1e-9 {
        RangeShape::Sector(lo, hi)
    } else {
        RangeShape::Wide
    }
}

fn in_sector(w: Complex64, lo: f64, hi: f64) -> bool {
    let mid = 0.5 * (lo + hi);
    let rel = (w * Complex64::from_polar(1.0, -mid)).arg();
    rel.abs() <= 0.5 * (hi - lo) + 1e-12
}

/// Reduces `q = a x² + b xξ + c ξ²` to `μ zζ` by factoring
/// `q = a (x − r₁ξ)(x − r₂ξ)`.
pub fn quad_reduce<T: Scalar>(q: &ComplexSeries2<T>) -> Result<QuadraticReduction<T>> {
    if q.terms().any(|(m, n, _)| m + n != 2) {
        return Err(Error::Precondition("quad_reduce expects a purely quadratic form".into()));
    }
    let (a, b, c) = (q.coeff(2, 0), q.coeff(1, 1), q.coeff(0, 2));
    let base = if !a.is_zero() {
        let disc = b.clone() * b.clone() - T::from_int(4) * a.clone() * c.clone();
        if disc.is_zero() {
            return Err(Error::Degenerate("quadratic form has rank < 2".into()));
        }
        let sd = disc
            .sqrt_opt()
            .ok_or_else(|| Error::Precondition("discriminant has no square root in this field".into()))?;
        let two_a = T::from_int(2) * a.clone();
        let r1 = (-b.clone() + sd.clone()) / two_a.clone();
        let r2 = (-b.clone() - sd.clone()) / two_a;
        let d = sd;
        QuadraticReduction {
            mu: d.clone(),
            linmap: [[-(r2 / d.clone()), a.clone() * r1], [-(T::one() / d), a.clone()]],
            admissible: false,
        }
    } else {
        if b.is_zero() {
            return Err(Error::Degenerate("quadratic form has rank < 2".into()));
        }
        QuadraticReduction {
            mu: b.clone(),
            linmap: [[T::one(), -(c.clone() / b.clone())], [T::zero(), T::one()]],
            admissible: false,
        }
    };
    let mu64 = base.mu.to_c64();
    let shape = range_shape(a.to_c64(), b.to_c64(), c.to_c64());
    let minus_i = Complex64::new(0.0, -1.0);
    let out = match shape {
        RangeShape::Everything => {
            return Err(Error::Degenerate("q(ℝ²) covers all of ℂ; no admissible reduction".into()))
        }
        RangeShape::Sector(lo, hi) => {
            if in_sector(minus_i * mu64, lo, hi) {
                QuadraticReduction { admissible: true, ..base }
            } else if in_sector(-minus_i * mu64, lo, hi) {
                QuadraticReduction { admissible: true, ..base.flipped() }
            } else {
                default_sign(base)
            }
        }
        RangeShape::Wide => default_sign(base),
    };
    if T::is_exact() {
        debug_assert!(out.det() == T::one());
    }
    Ok(out)
}

fn default_sign<T: Scalar>(base: QuadraticReduction<T>) -> QuadraticReduction<T> {
    let mu = base.mu.to_c64();
    let keep = mu.re > 0.0 || (mu.re == 0.0 && mu.im < 0.0);
    if keep {
        base
    } else {
        base.flipped()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, CRational};
    use num_traits::{One, Zero};

    fn quad<T: Scalar>(a: T, b: T, c: T) -> ComplexSeries2<T> {
        ComplexSeries2::from_terms(2, [(2, 0, a), (1, 1, b), (0, 2, c)])
    }

    fn check_exact(q: &ComplexSeries2<CRational>, red: &QuadraticReduction<CRational>) {
        assert_eq!(red.det(), CRational::one());
        let pulled = q.linear_substitute(&red.linmap);
        assert_eq!(pulled, ComplexSeries2::monomial(1, 1, red.mu.clone(), 2));
    }

    #[test]
    fn x_xi_is_already_reduced() {
        let q = quad(CRational::zero(), CRational::one(), CRational::zero());
        let red = quad_reduce(&q).unwrap();
        assert_eq!(red.mu, CRational::one());
        assert_eq!(red.linmap, [[CRational::one(), CRational::zero()], [CRational::zero(), CRational::one()]]);
        assert!(!red.admissible);
        check_exact(&q, &red);
    }

    #[test]
    fn rotated_oscillator_form_gives_minus_i() {
        let half = CRational::from_ratio(-1, 2);
        let q = quad(half.clone(), CRational::zero(), half);
        let red = quad_reduce(&q).unwrap();
        assert_eq!(red.mu, -CRational::i());
        assert!(red.admissible);
        check_exact(&q, &red);
    }

    #[test]
    fn harmonic_oscillator() {
        let q = quad(CRational::one(), CRational::zero(), CRational::one());
        let red = quad_reduce(&q).unwrap();
        assert_eq!(red.mu, CRational::i() * CRational::from_int(2));
        check_exact(&q, &red);
    }

    #[test]
    fn barrier_top_gives_two_sqrt_c0() {
        // ξ² − c0 x² with c0 = 1/729: μ = 2√c0 = 2/27, also after complex scaling.
        let c0 = CRational::from_ratio(1, 729);
        let q = quad(-c0.clone(), CRational::zero(), CRational::one());
        let red = quad_reduce(&q).unwrap();
        assert_eq!(red.mu, CRational::from_ratio(2, 27));
        check_exact(&q, &red);
        let s = CRational::new(num_rational::BigRational::from_integer(1.into()), num_rational::BigRational::new(1.into(), 5.into()));
        let s2 = s.clone() * s.clone();
        let q = quad(-(c0 * s2.clone()), CRational::zero(), CRational::one() / s2);
        let red = quad_reduce(&q).unwrap();
        assert!(red.admissible);
        assert_eq!(red.mu, CRational::from_ratio(2, 27));
        check_exact(&q, &red);
    }

    #[test]
    fn float_residual_and_determinant() {
        let q = quad(c64::new(0.3, -0.2), c64::new(0.1, 0.4), c64::new(1.2, 0.5));
        let red = quad_reduce(&q).unwrap();
        assert!((red.det() - c64::new(1.0, 0.0)).norm() < 1e-14);
        let pulled = q.linear_substitute(&red.linmap);
        let target = ComplexSeries2::monomial(1, 1, red.mu, 2);
        assert!((&pulled - &target).max_abs() < 1e-14);
    }

    #[test]
    fn degenerate_forms_are_refused() {
        let q = quad(c64::new(1.0, 0.0), c64::new(2.0, 0.0), c64::new(1.0, 0.0));
        assert!(matches!(quad_reduce(&q), Err(Error::Degenerate(_))));
        let q = quad(c64::new(0.0, 0.0), c64::new(0.0, 0.0), c64::new(1.0, 0.0));
        assert!(quad_reduce(&q).is_err());
        // x² − ξ² + i·2xξ = (x + iξ)²: rank one.
        let q = quad(c64::new(1.0, 0.0), c64::new(0.0, 2.0), c64::new(-1.0, 0.0));
        assert!(quad_reduce(&q).is_err());
        // (x + iξ)(x + 2iξ): the argument winds once around the origin.
        let q = quad(c64::new(1.0, 0.0), c64::new(0.0, 3.0), c64::new(-2.0, 0.0));
        assert!(matches!(quad_reduce(&q), Err(Error::Degenerate(_))));
        // x² + 3i xξ + ξ² has positive real part: admissible.
        let q = quad(c64::new(1.0, 0.0), c64::new(0.0, 3.0), c64::new(1.0, 0.0));
        assert!(quad_reduce(&q).unwrap().admissible);
        let cubic = ComplexSeries2::from_terms(3, [(3, 0, c64::new(1.0, 0.0))]);
        assert!(quad_reduce(&cubic).is_err());
    }
}
