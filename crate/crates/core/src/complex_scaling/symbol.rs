use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spacetime::{continue_on_ray, critical_data, BlackHoleParams};

use super::config::ScalingConfig;

/// `W₀ + h² W₁` at `x0 + (1+iθ) y` for each `y`.
pub fn potential_on_ray(p: &BlackHoleParams, theta: f64, h: f64, ys: &[f64]) -> Result<Vec<Complex64>> {
    let cd = critical_data(p)?;
    let pts = continue_on_ray(p, cd.x0, theta, ys)?;
    Ok(pts
        .iter()
        .map(|pt| {
            let (w0, w1) = pt.potentials(p);
            w0 + h * h * w1
        })
        .collect())
}

/// `p_θ(x, ξ) = ((1+iθ)⁻¹ ξ)² + W₀(x0 + (1+iθ)x) − E0`.
pub fn scaled_symbol(x: f64, xi: f64, cfg: &ScalingConfig, p: &BlackHoleParams) -> Result<Complex64> {
    let cd = critical_data(p)?;
    let v = potential_on_ray(p, cfg.theta, 0.0, &[x])?[0];
    let s = Complex64::new(1.0, cfg.theta);
    Ok(xi * xi / (s * s) + v - cd.e0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    pub x_max: f64,
    pub xi_max: f64,
    pub nx: usize,
    pub nxi: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticityReport {
    /// `min |p_θ| / (1 + ξ²)` outside the exclusion ball.
    pub min_ratio: Option<f64>,
    pub argmin: Option<(f64, f64)>,
    /// Every grid point fell inside the exclusion ball.
    pub empty: bool,
    pub points: usize,
}

fn axis(max: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![0.0];
    }
    (0..n).map(|k| -max + 2.0 * max * k as f64 / (n - 1) as f64).collect()
}

pub fn ellipticity_scan(cfg: &ScalingConfig, p: &BlackHoleParams, eps: f64, grid: &ScanGrid) -> Result<EllipticityReport> {
    if !(eps > 0.0) {
        return Err(Error::Precondition("exclusion radius must be positive".into()));
    }
    let cd = critical_data(p)?;
    let xs = axis(grid.x_max, grid.nx);
    let xis = axis(grid.xi_max, grid.nxi);
    let vs = potential_on_ray(p, cfg.theta, 0.0, &xs)?;
    let s2 = Complex64::new(1.0, cfg.theta).powi(2);
    let mut best: Option<(f64, (f64, f64))> = None;
    let mut points = 0;
    for (x, v) in xs.iter().zip(&vs) {
        for &xi in &xis {
            if x.hypot(xi) < eps {
                continue;
            }
            points += 1;
            let val = (xi * xi / s2 + v - cd.e0).norm() / (1.0 + xi * xi);
            if best.map_or(true, |(b, _)| val < b) {
                best = Some((val, (*x, xi)));
            }
        }
    }
    Ok(EllipticityReport { min_ratio: best.map(|b| b.0), argmin: best.map(|b| b.1), empty: points == 0, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::central_derivative;

    fn cfg(theta: f64) -> ScalingConfig {
        let p = BlackHoleParams::schwarzschild(1.0).unwrap();
        ScalingConfig::for_ell(&p, 2, theta, 64).unwrap()
    }

    #[test]
    fn unscaled_symbol() {
        let p = BlackHoleParams::new(1.0, 0.02).unwrap();
        let c = cfg(0.0);
        let cd = critical_data(&p).unwrap();
        for (x, xi) in [(0.5, 0.1), (-2.0, 0.7), (4.0, -1.0)] {
            let (w0, _) = crate::spacetime::potential_parts(cd.x0 + x, &p).unwrap();
            let got = scaled_symbol(x, xi, &c, &p).unwrap();
            assert!((got - Complex64::new(xi * xi + w0 - cd.e0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn critical_point() {
        let p = BlackHoleParams::schwarzschild(1.0).unwrap();
        let c = cfg(0.2);
        assert!(scaled_symbol(0.0, 0.0, &c, &p).unwrap().norm() < 1e-15);
        let re = central_derivative(&|x| scaled_symbol(x, 0.0, &c, &p).unwrap().re, 0.0, 1, 8, 0.1);
        let im = central_derivative(&|x| scaled_symbol(x, 0.0, &c, &p).unwrap().im, 0.0, 1, 8, 0.1);
        assert!(re.abs() < 1e-9 && im.abs() < 1e-9, "{re} {im}");
    }

    #[test]
    fn negative_imaginary_part_near_top() {
        let p = BlackHoleParams::schwarzschild(1.0).unwrap();
        let theta = 0.2;
        let c = cfg(theta);
        let mut c1 = f64::INFINITY;
        for i in -10..=10 {
            for j in -10..=10 {
                let (x, xi) = (0.3 * i as f64, 0.01 * j as f64);
                if i == 0 && j == 0 {
                    continue;
                }
                let im = scaled_symbol(x, xi, &c, &p).unwrap().im;
                // x and ξ live on very different scales at the barrier top;
                // weight them by the quadratic form.
                let q = x * x / 729.0 + xi * xi;
                c1 = c1.min(-im / (theta * q));
            }
        }
        assert!(c1 > 0.5, "fitted c1 = {c1}");
    }

    #[test]
    fn ellipticity_positive_and_linear_in_theta() {
        let p = BlackHoleParams::schwarzschild(1.0).unwrap();
        let grid = ScanGrid { x_max: 8.0, xi_max: 1.0, nx: 81, nxi: 81 };
        let r = ellipticity_scan(&cfg(0.2), &p, 0.3, &grid).unwrap();
        assert!(!r.empty);
        assert!(r.min_ratio.unwrap() > 0.0);
        let small = ScanGrid { x_max: 1.0, xi_max: 0.05, nx: 101, nxi: 101 };
        let a = ellipticity_scan(&cfg(0.2), &p, 0.02, &small).unwrap().min_ratio.unwrap();
        let b = ellipticity_scan(&cfg(0.1), &p, 0.02, &small).unwrap().min_ratio.unwrap();
        let ratio = a / b;
        assert!((1.0..4.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn empty_scan() {
        let p = BlackHoleParams::schwarzschild(1.0).unwrap();
        let grid = ScanGrid { x_max: 0.1, xi_max: 0.1, nx: 5, nxi: 5 };
        let r = ellipticity_scan(&cfg(0.2), &p, 1.0, &grid).unwrap();
        assert!(r.empty);
        assert_eq!(r.min_ratio, None);
    }
}
