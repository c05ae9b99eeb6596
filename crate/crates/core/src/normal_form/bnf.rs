//! Weight-graded Lie-series normalization.
//!
//! `z^a ζ^b h^k` has weight `a + b + 2k`. The weight-2 part is `μ zζ` (plus an
//! optional `h`-constant); for `d = 3, …, W` a generator `χ_d` of pure weight
//! `d` removes the off-diagonal weight-`d` terms through
//! `Q ↦ Σ_j ad_χ^j Q / j!` with `ad_χ = (i/h)[χ, ·]_#`. Each `ad_χ` raises
//! weight by `d − 2`, so everything below weight `W` stays exact.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{ComplexSeries1, ComplexSeries2, GradedSeries1, GradedSeries2};

use super::moyal::moyal_bracket;
use super::quadratic::{quad_reduce, QuadraticReduction};
use super::result::NormalFormResult;

/// Output of [`quantum_average`].
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumAverage<T> {
    /// Levels `F_k(w)` of the normalized Weyl symbol, `w = zζ`.
    pub weyl: GradedSeries1<T>,
    /// Generator of weight `d` at index `d − 3`, in application order.
    pub generators: Vec<GradedSeries2<T>>,
    pub weight: usize,
}

fn weight_orders(weight: usize, levels: usize) -> Vec<usize> {
    (0..levels).map(|k| weight - 2 * k).collect()
}

/// Restricts `q` to the weight-`W` grid, padding missing levels with zeros.
fn to_weight_grid<T: Scalar>(q: &GradedSeries2<T>, orders: &[usize]) -> Result<GradedSeries2<T>> {
    let mut levels = Vec::with_capacity(orders.len());
    for (k, &n) in orders.iter().enumerate() {
        match q.level(k) {
            Some(s) if s.trunc_order() >= n => levels.push(s.truncate(n)),
            Some(s) if s.trunc_order() < n => {
                return Err(Error::Precondition(format!(
                    "level {k} is stored to degree {} but weight bookkeeping needs {n}",
                    s.trunc_order()
                )))
            }
            _ => levels.push(ComplexSeries2::zero(n)),
        }
    }
    Ok(GradedSeries2::new(levels))
}

fn lie_normalize<T: Scalar>(
    q: &GradedSeries2<T>,
    weight: usize,
    levels: usize,
    poisson_only: bool,
) -> Result<(GradedSeries2<T>, Vec<GradedSeries2<T>>)> {
    if weight < 2 {
        return Err(Error::Precondition("normal form needs weight ≥ 2".into()));
    }
    let orders = weight_orders(weight, levels);
    let mut q = to_weight_grid(q, &orders)?;
    let q0 = &q.levels()[0];
    if !q0.coeff(0, 0).is_zero() || !q0.coeff(1, 0).is_zero() || !q0.coeff(0, 1).is_zero() {
        return Err(Error::Precondition("symbol must vanish to second order at the origin".into()));
    }
    if !q0.coeff(2, 0).is_zero() || !q0.coeff(0, 2).is_zero() {
        return Err(Error::Precondition("quadratic part must be a multiple of zζ".into()));
    }
    let mu = q0.coeff(1, 1);
    if mu.is_zero() {
        return Err(Error::Degenerate("quadratic part vanishes".into()));
    }
    let mut gens = Vec::new();
    for d in 3..=weight {
        let r = q.weight_part(d);
        let mut chi = GradedSeries2::zero_with_orders(&orders);
        for (k, lvl) in r.levels().iter().enumerate() {
            for (a, b, c) in lvl.terms() {
                if a != b {
                    let den = mu.clone() * T::from_int(a as i64 - b as i64);
                    chi.levels_mut()[k].set_coeff(a, b, c.clone() / den);
                }
            }
        }
        if !chi.is_zero() {
            let mut term = q.clone();
            let mut acc = q.clone();
            for j in 1.. {
                term = moyal_bracket(&chi, &term, &orders, poisson_only).scale(&T::from_ratio(1, j));
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term);
            }
            q = acc;
        }
        gens.push(chi);
    }
    Ok((q, gens))
}

/// Replaces the rounded quadratic part of a pulled-back symbol by `μ zζ`.
fn snap_quadratic<T: Scalar>(q0: &mut ComplexSeries2<T>, red: &QuadraticReduction<T>, form_scale: f64) -> Result<()> {
    let mu = &red.mu;
    let lmax = red.linmap.iter().flatten().map(|c| c.abs_f64()).fold(0.0, f64::max);
    let resid = [(q0.coeff(2, 0), T::zero()), (q0.coeff(1, 1), mu.clone()), (q0.coeff(0, 2), T::zero())]
        .iter()
        .map(|(a, b)| (a.clone() - b.clone()).abs_f64())
        .fold(0.0, f64::max);
    if resid > 1e-12 * (mu.abs_f64() + form_scale * lmax * lmax) {
        return Err(Error::Numerical(format!("quadratic reduction residual {resid:.2e}")));
    }
    q0.set_coeff(2, 0, T::zero());
    q0.set_coeff(1, 1, mu.clone());
    q0.set_coeff(0, 2, T::zero());
    Ok(())
}

/// Conjugates a symbol with weight-2 part `μ zζ` to one depending on `zζ`
/// only, through total weight `weight`.
pub fn quantum_average<T: Scalar>(qsym: &GradedSeries2<T>, weight: usize) -> Result<QuantumAverage<T>> {
    let (q, generators) = lie_normalize(qsym, weight, weight / 2 + 1, false)?;
    Ok(QuantumAverage { weyl: q.diagonal(), generators, weight })
}

/// Weyl symbol in `(x, ξ)` reduced to `(z, ζ)` coordinates and normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolNormalForm<T> {
    pub reduction: QuadraticReduction<T>,
    pub average: QuantumAverage<T>,
}

/// Quadratic reduction of the principal quadratic part followed by
/// [`quantum_average`].
pub fn normalize_symbol<T: Scalar>(p: &GradedSeries2<T>, weight: usize) -> Result<SymbolNormalForm<T>> {
    let quad = p.levels()[0].homogeneous(2).truncate(2);
    let reduction = quad_reduce(&quad)?;
    let mut pulled = p.linear_substitute(&reduction.linmap);
    snap_quadratic(&mut pulled.levels_mut()[0], &reduction, quad.max_abs())?;
    let average = quantum_average(&pulled, weight)?;
    Ok(SymbolNormalForm { reduction, average })
}

/// Classical Birkhoff normal form of `p(x, ξ)` through its stored degree.
pub fn classical_bnf<T: Scalar>(p_taylor: &ComplexSeries2<T>) -> Result<NormalFormResult<T>> {
    let n = p_taylor.trunc_order();
    let quad = p_taylor.homogeneous(2).truncate(2);
    let reduction = quad_reduce(&quad)?;
    let mut pulled = p_taylor.linear_substitute(&reduction.linmap);
    snap_quadratic(&mut pulled, &reduction, quad.max_abs())?;
    let pulled = GradedSeries2::new(vec![pulled]);
    let (q, _) = lie_normalize(&pulled, n, 1, true)?;
    let f0: ComplexSeries1<T> = q.levels()[0].diagonal();
    NormalFormResult::from_diagonal(reduction.mu, &f0)
}
