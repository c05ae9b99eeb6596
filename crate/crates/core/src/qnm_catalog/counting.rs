use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spacetime::BlackHoleParams;
use crate::{Graded1, Series1};

use super::lattice::{scan_ell, CoverageGap, QnmEntry, SectorSpec};

/// Multiplicity-weighted number of entries inside the sector.
pub fn count_modes(entries: &[QnmEntry], sector: &SectorSpec) -> u64 {
    entries.iter().filter(|e| sector.contains(e.lambda)).map(|e| e.multiplicity as u64).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountResult {
    pub count: u64,
    /// Largest `ℓ` that contributed.
    pub ell_max: u32,
    pub gaps: Vec<CoverageGap>,
}

/// Counts lattice modes in the sector without storing them.
pub fn count_in_sector(g: &Graded1, sector: &SectorSpec, radius: f64) -> Result<CountResult> {
    // |λ_{ℓ,0}| grows linearly in ℓ; find the first ℓ past the sector.
    let mut ell_end = 1u32;
    while QnmEntry::from_symbol(ell_end, 0, g).lambda.norm() <= sector.r {
        ell_end = ell_end.checked_mul(2).ok_or_else(|| Error::Numerical("ℓ range overflow".into()))?;
    }
    let per_ell: Vec<(u64, u32, Option<CoverageGap>)> = (1..=ell_end)
        .into_par_iter()
        .map(|ell| {
            let mut count = 0u64;
            let gap = scan_ell(ell, g, sector, radius, |e| count += e.multiplicity as u64);
            (count, ell, gap)
        })
        .collect();
    let count = per_ell.iter().map(|c| c.0).sum();
    let ell_max = per_ell.iter().filter(|c| c.0 > 0).map(|c| c.1).max().unwrap_or(0);
    let gaps = per_ell.into_iter().filter_map(|c| c.2).collect();
    Ok(CountResult { count, ell_max, gaps })
}

/// `arg g0` continued from `arg g0(0)` along `[0, x]`.
fn unwrapped_arg(g0: &Series1, x: f64) -> f64 {
    let steps = 64;
    let mut prev = g0.eval(&Complex64::new(0.0, 0.0));
    let mut acc = prev.arg();
    for k in 1..=steps {
        let cur = g0.eval(&Complex64::new(x * k as f64 / steps as f64, 0.0));
        acc += (cur / prev).arg();
        prev = cur;
    }
    acc
}

/// Length of `I_t = {x > 0 : arg G₀(x) > −t}`, from bisection on the first
/// crossing of `arg G₀ = −t` inside `[0, radius]`.
pub fn interval_length(t: f64, g0: &Series1, radius: f64) -> Result<f64> {
    let f = |x: f64| unwrapped_arg(g0, x) + t;
    if f(0.0) <= 0.0 {
        return Ok(0.0);
    }
    let steps = 2000;
    let mut lo = 0.0;
    for k in 1..=steps {
        let x = radius * k as f64 / steps as f64;
        if f(x) <= 0.0 {
            let mut hi = x;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * hi {
                    break;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        lo = x;
    }
    Err(Error::Domain(format!("arg G₀ does not reach −{t} within the validity radius {radius}")))
}

/// `c(t, m, Λ) = π⁻¹ (1 − 9Λm²)^{−3/2} 3^{7/2} m³ |I_t|`.
pub fn counting_constant(t: f64, p: &BlackHoleParams, g0: &Series1, radius: f64) -> Result<f64> {
    let len = interval_length(t, g0, radius)?;
    Ok(3f64.powf(3.5) * p.m.powi(3) * (1.0 - p.sigma()).powf(-1.5) * len / std::f64::consts::PI)
}

/// The same constant from summing `(2ℓ+1) · |I_t|/(2πh)` over
/// `ℓ + ½ ≤ r / |G₀(0)|`: `(|I_t|/3π) (3√3 m)³ (1 − 9Λm²)^{−3/2}`.
pub fn counting_constant_from_prediction(interval: f64, p: &BlackHoleParams) -> f64 {
    interval / (3.0 * std::f64::consts::PI) * (3.0 * 3f64.sqrt() * p.m).powi(3) * (1.0 - p.sigma()).powf(-1.5)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticRow {
    pub r: f64,
    pub count: u64,
    pub predicted: f64,
    pub ratio: f64,
    pub gaps: usize,
}

/// `N(r) / (c r³)` for each radius.
pub fn asymptotic_check(p: &BlackHoleParams, g: &Graded1, t: f64, r_list: &[f64], radius: f64) -> Result<Vec<AsymptoticRow>> {
    if r_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("radii must increase".into()));
    }
    let c = counting_constant(t, p, &g.levels()[0], radius)?;
    r_list
        .iter()
        .map(|&r| {
            let sector = SectorSpec::new(r, t)?;
            let res = count_in_sector(g, &sector, radius)?;
            let predicted = c * r.powi(3);
            Ok(AsymptoticRow { r, count: res.count, predicted, ratio: res.count as f64 / predicted, gaps: res.gaps.len() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::qnm_symbol;
    use crate::qnm_catalog::{lattice, validity_radius};
    use crate::series::GradedSeries1;
    use proptest::prelude::*;

    fn symbol(lambda: f64) -> Graded1 {
        qnm_symbol(&BlackHoleParams::new(1.0, lambda).unwrap(), 12, 2).unwrap().g_qnm.unwrap()
    }

    #[test]
    fn empty_and_single_entry_sectors() {
        let g = symbol(0.0);
        let radius = validity_radius(&g.levels()[0]).unwrap();
        // Everything has arg λ < 0, so a sliver sector is empty.
        let sliver = SectorSpec::new(50.0, 1e-9).unwrap();
        assert_eq!(count_in_sector(&g, &sliver, radius).unwrap().count, 0);
        // arg λ_{1,0} ≈ −1/3 lies outside every admissible aperture. With
        // m = 1/4 the fundamental ℓ = 2 mode has |λ| ≈ 1.9 and is alone in the
        // sector that ends right behind it.
        let p = BlackHoleParams::schwarzschild(0.25).unwrap();
        let g = qnm_symbol(&p, 12, 2).unwrap().g_qnm.unwrap();
        let radius = validity_radius(&g.levels()[0]).unwrap();
        let e = QnmEntry::from_symbol(2, 0, &g);
        let sector = SectorSpec::new(e.lambda.norm() + 1e-9, 0.3).unwrap();
        let lat = lattice(&g, 10, &sector, radius).unwrap();
        assert_eq!(lat.entries, vec![e]);
        assert_eq!(count_modes(&lat.entries, &sector), 5);
    }

    #[test]
    fn counts_agree_with_stored_lattice() {
        let g = symbol(0.02);
        let radius = validity_radius(&g.levels()[0]).unwrap();
        let sector = SectorSpec::new(40.0, 0.1).unwrap();
        let lat = lattice(&g, 10_000, &sector, radius).unwrap();
        let stored = count_modes(&lat.entries, &sector);
        let streamed = count_in_sector(&g, &sector, radius).unwrap();
        assert_eq!(stored, streamed.count);
        // Independent double loop.
        let mut manual = 0u64;
        for ell in 1..=1000u32 {
            for n in 0..1000u32 {
                let e = QnmEntry::from_symbol(ell, n, &g);
                if e.lambda.arg() <= -0.1 {
                    break;
                }
                if sector.contains(e.lambda) {
                    manual += (2 * ell + 1) as u64;
                }
            }
        }
        assert_eq!(manual, stored);
        assert!(streamed.gaps.is_empty());
    }

    #[test]
    fn doubling_radius_multiplies_by_eight() {
        let g = symbol(0.0);
        let radius = validity_radius(&g.levels()[0]).unwrap();
        let a = count_in_sector(&g, &SectorSpec::new(40.0, 0.05).unwrap(), radius).unwrap().count as f64;
        let b = count_in_sector(&g, &SectorSpec::new(80.0, 0.05).unwrap(), radius).unwrap().count as f64;
        assert!((b / a / 8.0 - 1.0).abs() < 0.1, "{}", b / a);
    }

    #[test]
    fn small_t_constant() {
        let p = BlackHoleParams::new(1.0, 0.03).unwrap();
        let g = qnm_symbol(&p, 12, 0).unwrap().g_qnm.unwrap();
        let radius = validity_radius(&g.levels()[0]).unwrap();
        let t = 0.002;
        let c = counting_constant(t, &p, &g.levels()[0], radius).unwrap();
        let approx = 2.0 * 3f64.powf(3.5) * (1.0 - p.sigma()).powf(-1.5) * t;
        assert!((c / approx - 1.0).abs() < 1e-3, "{}", c / approx);
        assert!(counting_constant(1e-12, &p, &g.levels()[0], radius).unwrap() < 1e-9);
    }

    #[test]
    fn bisection_matches_grid_scan() {
        let g = qnm_symbol(&BlackHoleParams::schwarzschild(1.0).unwrap(), 8, 0).unwrap().g_qnm.unwrap();
        let g0 = g.levels()[0].truncate(4);
        let radius = validity_radius(&g0).unwrap();
        let t = 0.05;
        let root = interval_length(t, &g0, radius).unwrap();
        // Dense scan with linear interpolation at the sign change.
        let dx = 1e-5;
        let mut prev = (0.0, g0.eval(&Complex64::new(0.0, 0.0)).arg() + t);
        let mut k = 1;
        let scan = loop {
            let x = k as f64 * dx;
            let f = g0.eval(&Complex64::new(x, 0.0)).arg() + t;
            if f <= 0.0 {
                break prev.0 + dx * prev.1 / (prev.1 - f);
            }
            prev = (x, f);
            k += 1;
        };
        assert!((root - scan).abs() < 1e-8, "{root} vs {scan}");
    }

    #[test]
    fn unreachable_aperture() {
        let g = qnm_symbol(&BlackHoleParams::schwarzschild(1.0).unwrap(), 8, 0).unwrap().g_qnm.unwrap();
        let g0 = g.levels()[0].clone();
        assert!(matches!(interval_length(0.3, &g0, 0.1), Err(Error::Domain(_))));
        let _ = GradedSeries1::new(vec![g0]);
    }

    proptest! {
        #[test]
        fn two_formula_paths(interval in 0.0f64..2.0, m in 0.1f64..5.0, s in 0.0f64..0.95) {
            let p = BlackHoleParams::new(m, s / (9.0 * m * m)).unwrap();
            let a = 3f64.powf(3.5) * m.powi(3) * (1.0 - p.sigma()).powf(-1.5) * interval / std::f64::consts::PI;
            let b = counting_constant_from_prediction(interval, &p);
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300));
        }
    }
}
