use num_complex::Complex64;
use crate::error::{Error, Result};
use crate::scalar::{inv_factorial, Scalar};
use crate::series::{ComplexSeries1, ComplexSeries2};

/// Finite sum `Σ_{k ≤ K} h^k a_k` with polynomial (series) coefficients.
///
/// Each level carries its own truncation order; operations combine orders
/// the same way the underlying series do.
#[derive(Clone, Debug, PartialEq)]
pub struct HGradedSymbol<S> {
    levels: Vec<S>,
}

pub type GradedSeries1<T> = HGradedSymbol<ComplexSeries1<T>>;
pub type GradedSeries2<T> = HGradedSymbol<ComplexSeries2<T>>;

impl<S: Clone> HGradedSymbol<S> {
    /// Panics on an empty level list.
    pub fn new(levels: Vec<S>) -> Self {
        assert!(!levels.is_empty(), "a graded symbol needs level 0");
        Self { levels }
    }

    pub fn h_order(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> Option<&S> {
        self.levels.get(k)
    }

    pub fn levels(&self) -> &[S] {
        &self.levels
    }

    pub fn levels_mut(&mut self) -> &mut [S] {
        &mut self.levels
    }

    pub fn into_levels(self) -> Vec<S> {
        self.levels
    }

    /// Drops levels above `k`.
    pub fn truncate_h(&self, k: usize) -> Self {
        Self { levels: self.levels[..=k.min(self.h_order())].to_vec() }
    }
}

impl<T: Scalar> GradedSeries1<T> {
    /// Zero symbol with level `k` truncated at `orders[k]`.
    pub fn zero_with_orders(orders: &[usize]) -> Self {
        Self::new(orders.iter().map(|&n| ComplexSeries1::zero(n)).collect())
    }

    pub fn from_level0(a: ComplexSeries1<T>) -> Self {
        Self::new(vec![a])
    }

    pub fn orders(&self) -> Vec<usize> {
        self.levels.iter().map(|s| s.trunc_order()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.h_order().min(other.h_order());
        Self::new((0..=k).map(|j| &self.levels[j] + &other.levels[j]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.h_order().min(other.h_order());
        Self::new((0..=k).map(|j| &self.levels[j] - &other.levels[j]).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.levels.iter().map(|l| l.scale(s)).collect())
    }

    /// Product in `h` and in the variable.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.h_order().min(other.h_order());
        let mut out = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut acc = self.levels[0].mul_series(&other.levels[j]);
            for i in 1..=j {
                acc = &acc + &self.levels[i].mul_series(&other.levels[j - i]);
            }
            out.push(acc);
        }
        Self::new(out)
    }

    /// `Σ h^k a_k(x)`.
    pub fn eval(&self, x: &T, h: &T) -> T {
        let mut acc = T::zero();
        for l in self.levels.iter().rev() {
            acc = acc * h.clone() + l.eval(x);
        }
        acc
    }

    /// `f ∘ g` as a graded composition, requiring `g_0(0) = 0`. Higher levels
    /// of `g` may have constant terms; they enter through a finite Taylor
    /// expansion of `f` around `g_0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let k_max = self.h_order().min(g.h_order());
        let g0 = &g.levels[0];
        if !g0.coeff(0).is_zero() {
            return Err(Error::Precondition("graded compose: g_0(0) ≠ 0".into()));
        }
        // δ = g − g_0 and its graded powers.
        let mut delta_levels = g.levels[..=k_max].to_vec();
        delta_levels[0] = ComplexSeries1::zero(g0.trunc_order());
        let delta = Self::new(delta_levels);
        let mut powers = vec![Self::new(
            (0..=k_max)
                .map(|j| {
                    if j == 0 {
                        ComplexSeries1::constant(T::one(), g0.trunc_order())
                    } else {
                        ComplexSeries1::zero(g0.trunc_order())
                    }
                })
                .collect(),
        )];
        for m in 1..=k_max {
            let next = powers[m - 1].mul(&delta);
            powers.push(next);
        }
        let mut out: Vec<Option<ComplexSeries1<T>>> = vec![None; k_max + 1];
        for j in 0..=k_max {
            let mut deriv = self.levels[j].clone();
            for m in 0..=(k_max - j) {
                if m > 0 {
                    deriv = deriv.derivative();
                }
                let outer = deriv.compose(&g0.truncate(deriv.trunc_order()))?.scale(&inv_factorial(m));
                for k in (j + m)..=k_max {
                    let term = outer.mul_series(&powers[m].levels[k - j]);
                    out[k] = Some(match out[k].take() {
                        None => term,
                        Some(acc) => &acc + &term,
                    });
                }
            }
        }
        Ok(Self::new(out.into_iter().map(|o| o.expect("every level receives a term")).collect()))
    }

    /// Graded square root with `result_0(0) = branch_at_0`.
    pub fn sqrt(&self, branch_at_0: T) -> Result<Self> {
        let g0 = self.levels[0].sqrt(branch_at_0)?;
        let inv = g0.scale(&T::from_int(2)).reciprocal()?;
        let mut out = vec![g0];
        for k in 1..=self.h_order() {
            let mut r = self.levels[k].clone();
            for i in 1..k {
                r = &r - &out[i].mul_series(&out[k - i]);
            }
            out.push(r.mul_series(&inv));
        }
        Ok(Self::new(out))
    }

    /// `G` with `S(G(x;h);h) = x` to the stored orders, requiring
    /// `S_0(0) = 0` and `S_0'(0) ≠ 0`.
    pub fn functional_inverse(&self) -> Result<Self> {
        let g0 = self.levels[0].reversion()?;
        let slope = self.levels[0].derivative().compose(&g0.truncate(self.levels[0].trunc_order() - 1))?;
        let inv = slope.reciprocal()?;
        let mut out = vec![g0.clone()];
        for k in 1..=self.h_order() {
            let mut trial = out.clone();
            trial.push(ComplexSeries1::zero(g0.trunc_order()));
            let r = self.truncate_h(k).compose(&Self::new(trial))?;
            out.push(-&r.levels[k].mul_series(&inv));
        }
        Ok(Self::new(out))
    }
}

impl<T: Scalar> GradedSeries2<T> {
    pub fn zero_with_orders(orders: &[usize]) -> Self {
        Self::new(orders.iter().map(|&n| ComplexSeries2::zero(n)).collect())
    }

    /// Zero symbol truncated by weight: level `k` keeps degree `≤ weight − 2k`.
    pub fn zero_weighted(weight: usize) -> Self {
        Self::new((0..=weight / 2).map(|k| ComplexSeries2::zero(weight - 2 * k)).collect())
    }

    pub fn orders(&self) -> Vec<usize> {
        self.levels.iter().map(|s| s.trunc_order()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.h_order().min(other.h_order());
        Self::new((0..=k).map(|j| &self.levels[j] + &other.levels[j]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = self.h_order().min(other.h_order());
        Self::new((0..=k).map(|j| &self.levels[j] - &other.levels[j]).collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.levels.iter().map(|l| l.scale(s)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|l| l.is_zero())
    }

    pub fn max_abs(&self) -> f64 {
        self.levels.iter().map(|l| l.max_abs()).fold(0.0, f64::max)
    }

    pub fn linear_substitute(&self, l: &[[T; 2]; 2]) -> Self {
        Self::new(self.levels.iter().map(|s| s.linear_substitute(l)).collect())
    }

    /// Terms of weight exactly `d`, where `z^a ζ^b h^k` has weight `a + b + 2k`.
    pub fn weight_part(&self, d: usize) -> Self {
        Self::new(
            self.levels
                .iter()
                .enumerate()
                .map(|(k, s)| if d >= 2 * k { s.homogeneous(d - 2 * k) } else { ComplexSeries2::zero(s.trunc_order()) })
                .collect(),
        )
    }

    /// Diagonal parts of every level as a univariate graded symbol in `w = zζ`.
    pub fn diagonal(&self) -> GradedSeries1<T> {
        HGradedSymbol::new(self.levels.iter().map(|s| s.diagonal()).collect())
    }
}

impl GradedSeries1<Complex64> {
    /// JSON blocks `{"h_level": k, "coeffs": [[re, im], …]}`, one per level.
    pub fn to_json_levels(&self) -> json::Levels {
        json::Levels(
            self.levels
                .iter()
                .enumerate()
                .map(|(k, s)| json::Level {
                    h_level: k,
                    coeffs: s.coeffs().iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        )
    }

    pub fn from_json_levels(levels: &json::Levels) -> Result<Self> {
        let mut v: Vec<&json::Level> = levels.0.iter().collect();
        v.sort_by_key(|l| l.h_level);
        if v.is_empty() || v.iter().enumerate().any(|(k, l)| l.h_level != k || l.coeffs.is_empty()) {
            return Err(Error::Shape("levels must be 0..K without gaps".into()));
        }
        Ok(Self::new(
            v.iter().map(|l| ComplexSeries1::new(l.coeffs.iter().map(|c| Complex64::new(c[0], c[1])).collect())).collect(),
        ))
    }
}

/// Plain serde types for graded univariate symbols.
pub mod json {
    use serde::{Deserialize, Serialize};

    #[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
    pub struct Level {
        pub h_level: usize,
        pub coeffs: Vec<[f64; 2]>,
    }

    #[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
    #[serde(transparent)]
    pub struct Levels(pub Vec<Level>);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, CRational};
    use rand::{Rng, SeedableRng};

    fn r(n: i64, d: i64) -> CRational {
        CRational::from_ratio(n, d)
    }

    fn s1(v: Vec<CRational>) -> ComplexSeries1<CRational> {
        ComplexSeries1::new(v)
    }

    #[test]
    fn inverse_of_linear_map() {
        let s = GradedSeries1::from_level0(s1(vec![r(0, 1), r(2, 1), r(0, 1)]));
        let g = s.functional_inverse().unwrap();
        assert_eq!(g.levels()[0], s1(vec![r(0, 1), r(1, 2), r(0, 1)]));
    }

    #[test]
    fn inverse_of_shift() {
        let s = GradedSeries1::new(vec![s1(vec![r(0, 1), r(1, 1), r(0, 1), r(0, 1)]), s1(vec![r(-1, 1), r(0, 1), r(0, 1), r(0, 1)])]);
        let g = s.functional_inverse().unwrap();
        assert_eq!(g.levels()[0], s1(vec![r(0, 1), r(1, 1), r(0, 1), r(0, 1)]));
        assert_eq!(g.levels()[1].coeff(0), r(1, 1));
        assert!(g.levels()[1].coeffs()[1..].iter().all(|c| *c == r(0, 1)));
    }

    #[test]
    fn inverse_residual_random_float() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut rnd = || c64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let n = 10;
        let mut levels = Vec::new();
        let mut l0 = vec![c64::new(0.0, 0.0); n + 1];
        l0[1] = c64::new(1.0, 0.0);
        l0[2] = c64::new(0.3, 0.0);
        levels.push(ComplexSeries1::new(l0));
        for _ in 1..=4 {
            levels.push(ComplexSeries1::new((0..=n).map(|_| rnd()).collect()));
        }
        let s = GradedSeries1::new(levels);
        let g = s.functional_inverse().unwrap();
        let back = s.compose(&g).unwrap();
        for (k, l) in back.levels().iter().enumerate() {
            for (j, c) in l.coeffs().iter().enumerate() {
                let expect = if k == 0 && j == 1 { 1.0 } else { 0.0 };
                assert!((c - expect).norm() < 1e-11, "level {k} degree {j}: {c}");
            }
        }
    }

    #[test]
    fn graded_sqrt_squares_back() {
        let z = GradedSeries1::new(vec![
            s1(vec![r(4, 1), r(1, 1), r(0, 1)]),
            s1(vec![r(0, 1), r(1, 3), r(0, 1)]),
            s1(vec![r(1, 1), r(0, 1), r(2, 1)]),
        ]);
        let g = z.sqrt(r(-2, 1)).unwrap();
        assert_eq!(g.mul(&g), z);
        assert_eq!(g.levels()[0].coeff(0), r(-2, 1));
    }

    #[test]
    fn weight_part_picks_levels() {
        let mut q = GradedSeries2::<CRational>::zero_weighted(6);
        q.levels_mut()[0].set_coeff(2, 1, r(1, 1));
        q.levels_mut()[1].set_coeff(1, 0, r(3, 1));
        q.levels_mut()[1].set_coeff(2, 0, r(5, 1));
        let w3 = q.weight_part(3);
        assert_eq!(w3.levels()[0].coeff(2, 1), r(1, 1));
        assert_eq!(w3.levels()[1].coeff(1, 0), r(3, 1));
        assert!(w3.levels()[1].coeff(2, 0) == r(0, 1));
    }

    #[test]
    fn json_levels_round_trip() {
        let g = GradedSeries1::new(vec![
            ComplexSeries1::new(vec![c64::new(1.0, 0.5), c64::new(0.0, -1.0)]),
            ComplexSeries1::new(vec![c64::new(0.25, 0.0)]),
        ]);
        let j = serde_json::to_string(&g.to_json_levels()).unwrap();
        assert!(j.starts_with("[{\"h_level\":0,\"coeffs\":[[1.0,0.5]"));
        let back: json::Levels = serde_json::from_str(&j).unwrap();
        assert_eq!(GradedSeries1::from_json_levels(&back).unwrap(), g);
    }
}
