//! Helpers shared by unit tests.

/// Finite-difference weights for the `k`-th derivative at 0 on the given
/// nodes (Fornberg's recursion).
pub fn fd_weights(nodes: &[f64], k: usize) -> Vec<f64> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; k + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(k);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for s in (1..=mn).rev() {
                    c[i][s] = c1 * (s as f64 * c[i - 1][s - 1] - c5 * c[i - 1][s]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for s in (1..=mn).rev() {
                c[j][s] = (c4 * c[j][s] - s as f64 * c[j][s - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.iter().map(|row| row[k]).collect()
}

/// Central `k`-th derivative of `f` at `x` on `2·half + 1` nodes of spacing `d`.
pub fn central_derivative(f: &dyn Fn(f64) -> f64, x: f64, k: usize, half: usize, d: f64) -> f64 {
    let nodes: Vec<f64> = (-(half as i64)..=half as i64).map(|j| j as f64).collect();
    let w = fd_weights(&nodes, k);
    nodes.iter().zip(&w).map(|(&t, &wi)| wi * f(x + t * d)).sum::<f64>() / d.powi(k as i32)
}

#[test]
fn weights_reproduce_monomials() {
    let nodes: Vec<f64> = (-4..=4).map(|j| j as f64).collect();
    let w = fd_weights(&nodes, 2);
    let second: f64 = nodes.iter().zip(&w).map(|(x, wi)| wi * x * x).sum();
    assert!((second - 2.0).abs() < 1e-12);
    let fourth: f64 = nodes.iter().zip(&w).map(|(x, wi)| wi * x.powi(4)).sum();
    assert!(fourth.abs() < 1e-10);
}
