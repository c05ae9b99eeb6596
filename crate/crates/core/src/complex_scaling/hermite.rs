//! Gauss–Hermite nodes and orthonormal Hermite functions at those nodes.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Eigenvalues of a symmetric tridiagonal matrix (implicit QL).
fn tridiagonal_eigenvalues(mut d: Vec<f64>, off: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence("tridiagonal QL".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(d)
}

const RESCALE: f64 = 1e150;

/// `(p_{n−1}(t), p_n(t))` of the orthonormal Hermite polynomials up to a
/// common positive factor.
fn last_two(n: usize, t: f64) -> (f64, f64) {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = (2.0 / (k + 1) as f64).sqrt() * t * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            prev /= RESCALE;
            cur /= RESCALE;
        }
    }
    (prev, cur)
}

/// Nodes of the `q`-point Gauss–Hermite rule (weight `e^{−t²}`), ascending.
pub fn gauss_hermite_nodes(q: usize) -> Result<Vec<f64>> {
    if q == 0 {
        return Err(Error::Precondition("Gauss–Hermite rule needs at least one node".into()));
    }
    if q == 1 {
        return Ok(vec![0.0]);
    }
    let off: Vec<f64> = (1..q).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut t = tridiagonal_eigenvalues(vec![0.0; q], &off)?;
    let slope = (2.0 * q as f64).sqrt();
    for x in t.iter_mut() {
        for _ in 0..3 {
            let (pm, pq) = last_two(q, *x);
            let step = pq / (slope * pm);
            *x -= step;
            if step.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
    }
    t.sort_by(|a, b| a.partial_cmp(b).expect("finite nodes"));
    // Exact symmetry.
    for i in 0..q / 2 {
        let v = 0.5 * (t[q - 1 - i] - t[i]);
        t[i] = -v;
        t[q - 1 - i] = v;
    }
    if q % 2 == 1 {
        t[q / 2] = 0.0;
    }
    Ok(t)
}

/// Nodes and the `q × n` table `u_{jk} = ψ_k(t_j) √ω_j e^{t_j²/2}` with
/// `ω_j` the Gauss weights, so that `∫ψ_k ψ_l f dt ≈ Σ_j u_{jk} u_{jl} f(t_j)`.
pub fn hermite_table(q: usize, n: usize) -> Result<(Vec<f64>, DMatrix<f64>)> {
    if n > q {
        return Err(Error::Precondition(format!("{n} basis functions need at least {n} nodes")));
    }
    let nodes = gauss_hermite_nodes(q)?;
    let mut u = DMatrix::zeros(q, n);
    let mut vals = vec![0.0; n];
    for (j, &t) in nodes.iter().enumerate() {
        // p_k(t) / sqrt(Σ_{k<q} p_k(t)²), with running rescaling.
        let (mut prev, mut cur) = (0.0, 1.0);
        let mut sum = 0.0;
        for k in 0..q {
            if k < n {
                vals[k] = cur;
            }
            sum += cur * cur;
            let next = (2.0 / (k + 1) as f64).sqrt() * t * cur - (k as f64 / (k + 1) as f64).sqrt() * prev;
            prev = cur;
            cur = next;
            if cur.abs() > RESCALE {
                prev /= RESCALE;
                cur /= RESCALE;
                sum /= RESCALE * RESCALE;
                for v in vals.iter_mut().take(k.min(n - 1) + 1) {
                    *v /= RESCALE;
                }
            }
        }
        let norm = sum.sqrt();
        for k in 0..n {
            u[(j, k)] = vals[k] / norm;
        }
    }
    Ok((nodes, u))
}

/// Matrix of `t²` in the Hermite-function basis: `(k + ½)` on the diagonal and
/// `√((k+1)(k+2))/2` two places off it.
pub fn t_squared(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        m[(k, k)] = k as f64 + 0.5;
        if k + 2 < n {
            let v = (((k + 1) * (k + 2)) as f64).sqrt() / 2.0;
            m[(k, k + 2)] = v;
            m[(k + 2, k)] = v;
        }
    }
    m
}

/// Matrix of `−∂_t²` in the Hermite-function basis.
pub fn minus_laplacian(n: usize) -> DMatrix<f64> {
    let mut m = -t_squared(n);
    for k in 0..n {
        m[(k, k)] += (2 * k + 1) as f64;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rules() {
        let t = gauss_hermite_nodes(2).unwrap();
        assert!((t[1] - 0.5f64.sqrt()).abs() < 1e-15);
        let t = gauss_hermite_nodes(3).unwrap();
        assert!((t[2] - 1.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(t[1], 0.0);
    }

    #[test]
    fn orthonormality_and_moments() {
        for q in [10, 57, 400, 1500] {
            let n = q / 2;
            let (nodes, u) = hermite_table(q, n).unwrap();
            let g = u.transpose() * &u;
            let err = (&g - DMatrix::<f64>::identity(n, n)).abs().max();
            assert!(err < 1e-11 * (q as f64).sqrt(), "q={q}: {err:e}");
            // t² from quadrature against the closed form.
            let mut w = u.clone();
            for (j, &t) in nodes.iter().enumerate() {
                for k in 0..n {
                    w[(j, k)] *= t * t;
                }
            }
            let t2 = u.transpose() * w;
            let err = (&t2 - t_squared(n)).abs().max();
            assert!(err < 1e-10 * q as f64, "q={q}: {err:e}");
        }
    }

    #[test]
    fn nodes_are_roots() {
        let q = 900;
        let t = gauss_hermite_nodes(q).unwrap();
        for &x in t.iter().step_by(37) {
            let (pm, pq) = last_two(q, x);
            assert!((pq / pm).abs() < 1e-12, "{x}");
        }
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }
}
