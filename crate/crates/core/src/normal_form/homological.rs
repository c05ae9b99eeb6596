use crate::scalar::Scalar;
use crate::series::{ComplexSeries1, ComplexSeries2};

/// Solution of `i(z∂_z − ζ∂_ζ) a = −r + ⟨r⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologicalSolution<T> {
    /// Off-diagonal solution, `a_{mn} = i r_{mn} / (m − n)`.
    pub a: ComplexSeries2<T>,
    /// Diagonal part `⟨r⟩ = Σ r_{mm} w^m` as a series in `w = zζ`.
    pub r_avg: ComplexSeries1<T>,
}

pub fn homological_solve<T: Scalar>(r: &ComplexSeries2<T>) -> HomologicalSolution<T> {
    let mut a = ComplexSeries2::zero(r.trunc_order());
    for (m, n, c) in r.terms() {
        if m != n {
            let k = m as i64 - n as i64;
            a.set_coeff(m, n, T::i() * c.clone() * T::from_ratio(1, k));
        }
    }
    HomologicalSolution { a, r_avg: r.diagonal() }
}

/// `i(z∂_z − ζ∂_ζ) a`.
pub fn euler_operator<T: Scalar>(a: &ComplexSeries2<T>) -> ComplexSeries2<T> {
    let mut out = ComplexSeries2::zero(a.trunc_order());
    for (m, n, c) in a.terms() {
        out.set_coeff(m, n, T::i() * c.clone() * T::from_int(m as i64 - n as i64));
    }
    out
}
