use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{ComplexSeries1, GradedSeries1};
use crate::c64;

/// Classical eigen-curve, Jacobian factor and action of a Birkhoff normal
/// form, plus the assembled QNM symbol when it was requested.
///
/// With `F₀(w)` the normalized principal symbol as a function of `w = zζ`:
/// `g(t) = F₀(t/μ)`, `f = (1/g') ∘ g⁻¹`, `S = (2π/μ) ∫ f`. Then
/// `g'·f(g) = 1`, `μ S' = 2π f` and `μ S(g(w)) = 2π w`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResult<T> {
    pub mu: T,
    pub g: ComplexSeries1<T>,
    pub f: ComplexSeries1<T>,
    pub action: ComplexSeries1<T>,
    pub g_qnm: Option<GradedSeries1<T>>,
}

impl<T: Scalar> NormalFormResult<T> {
    pub fn from_diagonal(mu: T, f0: &ComplexSeries1<T>) -> Result<Self> {
        if mu.is_zero() {
            return Err(Error::Degenerate("μ = 0".into()));
        }
        let g = f0.rescale_arg(&(T::one() / mu.clone()));
        if g.trunc_order() < 1 {
            return Err(Error::Precondition("normal form must reach degree 2".into()));
        }
        let ginv = g.reversion()?;
        let dg = g.derivative();
        let f = dg.reciprocal()?.compose(&ginv.truncate(dg.trunc_order()))?;
        let two_pi_over_mu = T::from_c64(c64::new(2.0 * std::f64::consts::PI, 0.0)) / mu.clone();
        let action = f.integral(T::zero()).scale(&two_pi_over_mu);
        Ok(Self { mu, g, f, action, g_qnm: None })
    }

    /// The same normal form with energies measured in units of `s`:
    /// `g(st)/s`, `f(su)`, `S(su)/s`. The three identities are unchanged, and
    /// choosing `s ≈ E0` makes the coefficients dimensionless.
    pub fn rescaled(&self, s: &T) -> Self {
        let inv = T::one() / s.clone();
        Self {
            mu: self.mu.clone(),
            g: self.g.rescale_arg(s).scale(&inv),
            f: self.f.rescale_arg(s),
            action: self.action.rescale_arg(s).scale(&inv),
            g_qnm: self.g_qnm.clone(),
        }
    }

    /// Largest coefficient of the three residuals `g'·f∘g − 1`,
    /// `μS' − 2πf` and `μS∘g − 2πw`.
    pub fn identity_residual(&self) -> Result<f64> {
        let two_pi = T::from_c64(c64::new(2.0 * std::f64::consts::PI, 0.0));
        let dg = self.g.derivative();
        let n = dg.trunc_order().min(self.f.trunc_order());
        let one = ComplexSeries1::constant(T::one(), n);
        let r1 = &dg.truncate(n).mul_series(&self.f.truncate(n).compose(&self.g.truncate(n))?) - &one;
        let r2 = &self.action.derivative().scale(&self.mu) - &self.f.scale(&two_pi);
        let n3 = self.action.trunc_order().min(self.g.trunc_order());
        let w = ComplexSeries1::variable(n3).scale(&two_pi);
        let r3 = &self.action.truncate(n3).compose(&self.g.truncate(n3))?.scale(&self.mu) - &w;
        Ok(r1.max_abs().max(r2.max_abs()).max(r3.max_abs()))
    }

    pub fn to_c64(&self) -> NormalFormResult<c64> {
        let conv = |s: &ComplexSeries1<T>| ComplexSeries1::new(s.coeffs().iter().map(|c| c.to_c64()).collect());
        NormalFormResult {
            mu: self.mu.to_c64(),
            g: conv(&self.g),
            f: conv(&self.f),
            action: conv(&self.action),
            g_qnm: self
                .g_qnm
                .as_ref()
                .map(|gq| GradedSeries1::new(gq.levels().iter().map(conv).collect())),
        }
    }
}
