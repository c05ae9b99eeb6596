//! Coefficient field abstraction.
//!
//! Series and symbol arithmetic is generic over [`Scalar`], a complex field
//! with enough structure for the normal-form recursions (division by
//! integers, the imaginary unit). Floating implementations use
//! `num_complex::Complex<f64>`/`Complex<f32>`; the exact implementation uses
//! `Complex<BigRational>` and is intended for small oracle computations.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// The rational number `num/den` embedded on the real axis.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_ratio(k, 1)
    }

    /// The imaginary unit.
    fn i() -> Self;

    /// Nearest double-precision complex value.
    fn to_c64(&self) -> Complex<f64>;

    /// Embedding of a double-precision value (exact for the rational field).
    fn from_c64(z: Complex<f64>) -> Self;

    /// Principal square root when it exists in the field (always for the
    /// floating fields; for rationals only when the root is rational).
    fn sqrt_opt(&self) -> Option<Self>;

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    fn is_exact() -> bool {
        false
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for Complex<$t> {
            fn from_ratio(num: i64, den: i64) -> Self {
                Complex::new(num as $t / den as $t, 0.0)
            }
            fn i() -> Self {
                Complex::new(0.0, 1.0)
            }
            fn to_c64(&self) -> Complex<f64> {
                Complex::new(self.re as f64, self.im as f64)
            }
            fn from_c64(z: Complex<f64>) -> Self {
                Complex::new(z.re as $t, z.im as $t)
            }
            fn sqrt_opt(&self) -> Option<Self> {
                Some(self.sqrt())
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite value required for exact embedding")
}

impl Scalar for Complex<BigRational> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }
    fn i() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }
    fn to_c64(&self) -> Complex<f64> {
        Complex::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn from_c64(z: Complex<f64>) -> Self {
        Complex::new(rat_from_f64(z.re), rat_from_f64(z.im))
    }
    fn sqrt_opt(&self) -> Option<Self> {
        // x + iy with x² − y² = a, 2xy = b.
        let two = BigRational::from_integer(BigInt::from(2));
        let (a, b) = (&self.re, &self.im);
        if b.is_zero() {
            if a >= &BigRational::zero() {
                return rat_sqrt(a).map(|x| Complex::new(x, BigRational::zero()));
            }
            return rat_sqrt(&-a.clone()).map(|y| Complex::new(BigRational::zero(), y));
        }
        let modulus = rat_sqrt(&(a * a + b * b))?;
        let x = rat_sqrt(&((a + &modulus) / &two))?;
        let y = b / (&two * &x);
        Some(Complex::new(x, y))
    }
    fn is_exact() -> bool {
        true
    }
}

fn rat_sqrt(q: &BigRational) -> Option<BigRational> {
    if q < &BigRational::zero() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// `x^k` by repeated multiplication.
pub fn powi<T: Scalar>(x: &T, k: usize) -> T {
    let mut acc = T::one();
    for _ in 0..k {
        acc = acc * x.clone();
    }
    acc
}

/// Binomial coefficient as a scalar.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for j in 0..k {
        acc = acc * T::from_ratio((n - j) as i64, (j + 1) as i64);
    }
    acc
}

/// `1/k!` as a scalar.
pub fn inv_factorial<T: Scalar>(k: usize) -> T {
    let mut acc = T::one();
    for j in 2..=k {
        acc = acc * T::from_ratio(1, j as i64);
    }
    acc
}
