use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spacetime::{critical_data, BlackHoleParams};

use super::config::ScalingConfig;
use super::hermite::{hermite_table, minus_laplacian};
use super::symbol::potential_on_ray;

/// Discretization of `P_θ` in the basis `s^{−1/2} ψ_k(y/s)`, `y` the real
/// parameter of the ray `x = x0 + (1+iθ) y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermiteBasis {
    pub center: f64,
    pub scale: f64,
    pub theta: f64,
    /// Gauss–Hermite nodes used for the potential.
    pub quadrature_nodes: usize,
    /// Largest entry change in the last quadrature doubling.
    pub quadrature_change: f64,
}

#[derive(Clone, Debug)]
pub struct DenseComplexMatrix {
    pub entries: DMatrix<Complex64>,
    pub basis: Option<HermiteBasis>,
    pub complex_symmetric: bool,
}

impl DenseComplexMatrix {
    pub fn new(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::Shape(format!("{}×{} matrix is not square", entries.nrows(), entries.ncols())));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numerical("non-finite matrix entry".into()));
        }
        let complex_symmetric = entries == entries.transpose();
        Ok(Self { entries, basis: None, complex_symmetric })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

/// Quadrature tolerance on potential entries.
const QUAD_TOL: f64 = 1e-12;
const MAX_DOUBLINGS: usize = 3;

fn potential_matrix<F>(n: usize, q: usize, scale: f64, potential: &F) -> Result<DMatrix<Complex64>>
where
    F: Fn(&[f64]) -> Result<Vec<Complex64>>,
{
    let (nodes, u) = hermite_table(q, n)?;
    let ys: Vec<f64> = nodes.iter().map(|t| scale * t).collect();
    let w = potential(&ys)?;
    let mut ur = u.clone();
    let mut ui = u.clone();
    for (j, wj) in w.iter().enumerate() {
        ur.row_mut(j).scale_mut(wj.re);
        ui.row_mut(j).scale_mut(wj.im);
    }
    let ut = u.transpose();
    let re = &ut * ur;
    let im = &ut * ui;
    Ok(DMatrix::from_fn(n, n, |a, b| Complex64::new(0.5 * (re[(a, b)] + re[(b, a)]), 0.5 * (im[(a, b)] + im[(b, a)]))))
}

/// Galerkin matrix of `−h²(1+iθ)⁻² ∂_y² + W(y)` for an arbitrary potential
/// along the ray, given as a batch function of `y`.
pub fn build_operator<F>(cfg: &ScalingConfig, center: f64, potential: F) -> Result<DenseComplexMatrix>
where
    F: Fn(&[f64]) -> Result<Vec<Complex64>>,
{
    cfg.validate()?;
    let n = cfg.basis_size;
    let s = cfg.basis_scale;
    let kin = minus_laplacian(n);
    let k_fac = Complex64::new(cfg.h * cfg.h / (s * s), 0.0) / Complex64::new(1.0, cfg.theta).powi(2);
    let mut q = 2 * n;
    let mut v = potential_matrix(n, q, s, &potential)?;
    let mut change = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        let v2 = potential_matrix(n, 2 * q, s, &potential)?;
        change = (&v2 - &v).iter().map(|z| z.norm()).fold(0.0, f64::max);
        v = v2;
        q *= 2;
        if change < QUAD_TOL {
            break;
        }
    }
    if change >= QUAD_TOL {
        return Err(Error::NoConvergence(format!("potential quadrature changed by {change:.2e} at {q} nodes")));
    }
    let entries = DMatrix::from_fn(n, n, |a, b| k_fac * kin[(a, b)] + v[(a, b)]);
    let mut m = DenseComplexMatrix::new(entries)?;
    m.basis = Some(HermiteBasis { center, scale: s, theta: cfg.theta, quadrature_nodes: q, quadrature_change: change });
    Ok(m)
}

/// Galerkin matrix of the complex-scaled Regge–Wheeler operator
/// `((1+iθ)⁻¹ hD)² + W₀ + h² W₁` centered at the barrier top.
pub fn build_scaled_operator(cfg: &ScalingConfig, p: &BlackHoleParams) -> Result<DenseComplexMatrix> {
    let cd = critical_data(p)?;
    build_operator(cfg, cd.x0, |ys: &[f64]| potential_on_ray(p, cfg.theta, cfg.h, ys))
}
