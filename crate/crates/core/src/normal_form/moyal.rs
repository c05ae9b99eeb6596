//! Weyl (Moyal) calculus on `h`-graded symbols in `(z, ζ)`.
//!
//! `a # b = Σ_l (−ih/2)^l / l! · Σ_p C(l,p) (−1)^{l−p} (∂_ζ^p ∂_z^{l−p} a)(∂_z^p ∂_ζ^{l−p} b)`.

use crate::scalar::{binomial, inv_factorial, powi, Scalar};
use crate::series::{ComplexSeries2, GradedSeries2};

/// `Σ_p C(l,p) (−1)^{l−p} (∂_ζ^p ∂_z^{l−p} a)(∂_z^p ∂_ζ^{l−p} b)` truncated at
/// `order`, treating both inputs as exact polynomials.
pub(crate) fn bidifferential<T: Scalar>(
    a: &ComplexSeries2<T>,
    b: &ComplexSeries2<T>,
    l: usize,
    order: usize,
) -> ComplexSeries2<T> {
    let mut out = ComplexSeries2::zero(order);
    for p in 0..=l {
        let (Some(da), Some(db)) = (a.partial(l - p, p), b.partial(p, l - p)) else {
            continue;
        };
        let mut coef: T = binomial(l, p);
        if (l - p) % 2 == 1 {
            coef = -coef;
        }
        accumulate_product(&mut out, &da, &db, &coef);
    }
    out
}

/// `out += coef · a · b`, keeping degrees up to `out`'s order.
pub(crate) fn accumulate_product<T: Scalar>(
    out: &mut ComplexSeries2<T>,
    a: &ComplexSeries2<T>,
    b: &ComplexSeries2<T>,
    coef: &T,
) {
    let order = out.trunc_order();
    let bt: Vec<(usize, usize, T)> = b.terms().map(|(m, n, c)| (m, n, c.clone())).collect();
    for (m1, n1, x) in a.terms() {
        if m1 + n1 > order {
            break;
        }
        let xc = x.clone() * coef.clone();
        for (m2, n2, y) in &bt {
            if m1 + n1 + m2 + n2 > order {
                break;
            }
            out.add_to_coeff(m1 + m2, n1 + n2, xc.clone() * y.clone());
        }
    }
}

/// `(−i/2)^l / l!`.
fn moyal_coefficient<T: Scalar>(l: usize) -> T {
    powi(&(-(T::i() * T::from_ratio(1, 2))), l) * inv_factorial(l)
}

/// Graded Weyl product. Level `k` is kept to degree
/// `min_{i+j+l=k} (min(N_i, N_j) − l)`, and levels above
/// `min(K_a, K_b, h_order)` are dropped, so only determined coefficients are
/// returned.
pub fn moyal_product<T: Scalar>(a: &GradedSeries2<T>, b: &GradedSeries2<T>, h_order: Option<usize>) -> GradedSeries2<T> {
    let mut k_max = a.h_order().min(b.h_order());
    if let Some(k) = h_order {
        k_max = k_max.min(k);
    }
    let na = a.orders();
    let nb = b.orders();
    let mut levels = Vec::new();
    for k in 0..=k_max {
        let mut order: i64 = i64::MAX;
        for i in 0..=k {
            for j in 0..=(k - i) {
                let l = k - i - j;
                order = order.min(na[i].min(nb[j]) as i64 - l as i64);
            }
        }
        if order < 0 {
            break;
        }
        let order = order as usize;
        let mut acc = ComplexSeries2::zero(order);
        for i in 0..=k {
            for j in 0..=(k - i) {
                let l = k - i - j;
                let term = bidifferential(&a.levels()[i], &b.levels()[j], l, order);
                acc = &acc + &term.scale(&moyal_coefficient(l));
            }
        }
        levels.push(acc);
    }
    GradedSeries2::new(levels)
}

/// `(i/h)(a # b − b # a) = Σ_{l odd} κ_l h^{l−1} B_l(a, b)` with
/// `κ_l = 2i(−i/2)^l / l!`; the leading term is the Poisson bracket.
///
/// Output level `k` is truncated at `orders[k]`; inputs are treated as exact
/// polynomials, which is valid when the caller's weight bookkeeping says the
/// missing terms cannot reach those orders. With `poisson_only` just the
/// `l = 1` term is used.
pub fn moyal_bracket<T: Scalar>(
    a: &GradedSeries2<T>,
    b: &GradedSeries2<T>,
    orders: &[usize],
    poisson_only: bool,
) -> GradedSeries2<T> {
    let k_out = orders.len() - 1;
    let mut levels: Vec<ComplexSeries2<T>> = orders.iter().map(|&n| ComplexSeries2::zero(n)).collect();
    let two_i = T::i() * T::from_int(2);
    for (i, ai) in a.levels().iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.levels().iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let mut l = 1;
            while i + j + l - 1 <= k_out {
                if poisson_only && l > 1 {
                    break;
                }
                let k = i + j + l - 1;
                let kappa: T = two_i.clone() * moyal_coefficient(l);
                let term = bidifferential(ai, bj, l, orders[k]);
                if !term.is_zero() {
                    levels[k] = &levels[k] + &term.scale(&kappa);
                }
                l += 2;
            }
        }
    }
    GradedSeries2::new(levels)
}
