use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::config::MAX_DIM;
use super::operator::DenseComplexMatrix;

const SCHUR_EPS: f64 = 1e-15;
/// Iteration cap per matrix row.
const SCHUR_ITER_PER_ROW: usize = 200;

fn schur(m: &DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    if m.nrows() > MAX_DIM {
        return Err(Error::Precondition(format!("dimension {} exceeds {MAX_DIM}", m.nrows())));
    }
    let s = nalgebra::Schur::try_new(m.clone(), SCHUR_EPS, SCHUR_ITER_PER_ROW * m.nrows().max(1))
        .ok_or_else(|| Error::NoConvergence("complex Schur iteration".into()))?;
    Ok(s.unpack())
}

/// All eigenvalues, via Hessenberg reduction and shifted QR.
pub fn eigensolve(m: &DenseComplexMatrix) -> Result<Vec<Complex64>> {
    eigenvalues(&m.entries)
}

pub fn eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let (_, t) = schur(m)?;
    Ok(t.diagonal().iter().copied().collect())
}

#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: DVector<Complex64>,
    /// `‖M v − λ v‖ / ‖v‖`.
    pub residual: f64,
}

/// Eigenpairs for the eigenvalues accepted by `select`, with eigenvectors from
/// back substitution in the Schur form.
pub fn eigenpairs<F: Fn(Complex64) -> bool>(m: &DMatrix<Complex64>, select: F) -> Result<Vec<EigenPair>> {
    let (q, t) = schur(m)?;
    let n = t.nrows();
    let tiny = SCHUR_EPS * t.norm().max(1.0);
    let mut out = Vec::new();
    for k in 0..n {
        let lam = t[(k, k)];
        if !select(lam) {
            continue;
        }
        let mut y = DVector::<Complex64>::zeros(n);
        y[k] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in (j + 1)..=k {
                acc += t[(j, l)] * y[l];
            }
            let mut d = t[(j, j)] - lam;
            if d.norm() < tiny {
                d = Complex64::new(tiny, 0.0);
            }
            y[j] = -acc / d;
        }
        let mut v = &q * y;
        let nv = v.norm();
        v /= Complex64::new(nv, 0.0);
        let r = m * &v - &v * lam;
        out.push(EigenPair { value: lam, vector: v, residual: r.norm() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal() {
        let d = [c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0)];
        let m = DMatrix::from_diagonal(&DVector::from_column_slice(&d));
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert_eq!(ev, vec![d[1], d[2], d[0]]);
    }

    #[test]
    fn rotation_generator() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]);
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-15);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn trace_identity_and_residuals() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
        let m = DMatrix::from_fn(50, 50, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let ev = eigenvalues(&m).unwrap();
        let sum: Complex64 = ev.iter().sum();
        assert!((sum - m.trace()).norm() < 1e-9);
        let pairs = eigenpairs(&m, |_| true).unwrap();
        assert_eq!(pairs.len(), 50);
        assert!(pairs.iter().all(|p| p.residual < 1e-8), "{:?}", pairs.iter().map(|p| p.residual).fold(0.0, f64::max));
    }
}
