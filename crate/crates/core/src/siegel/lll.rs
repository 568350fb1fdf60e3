use super::symplectic::{IMat3, I3};

fn gram(y: &[[f64; 3]; 3], u: &IMat3) -> [[f64; 3]; 3] {
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    g[i][j] += u[k][i] as f64 * y[k][l] * u[l][j] as f64;
                }
            }
        }
    }
    g
}

fn gram_schmidt(g: &[[f64; 3]; 3]) -> ([[f64; 3]; 3], [f64; 3]) {
    let mut mu = [[0.0; 3]; 3];
    let mut b = [0.0; 3];
    for i in 0..3 {
        for j in 0..i {
            let mut s = g[i][j];
            for l in 0..j {
                s -= mu[j][l] * mu[i][l] * b[l];
            }
            mu[i][j] = s / b[j];
        }
        b[i] = g[i][i] - (0..i).map(|l| mu[i][l] * mu[i][l] * b[l]).sum::<f64>();
    }
    (mu, b)
}

/// LLL reduction of the positive definite quadratic form `y`.
///
/// Returns a unimodular `u` whose columns form a reduced basis, so that
/// `u^T y u` is LLL-reduced with parameter `delta`.
pub fn lll_gram(y: &[[f64; 3]; 3], delta: f64) -> IMat3 {
    let mut u = I3;
    let mut k = 1;
    for _ in 0..10_000 {
        if k >= 3 {
            break;
        }
        for j in (0..k).rev() {
            let (mu, _) = gram_schmidt(&gram(y, &u));
            let q = mu[k][j].round();
            if q != 0.0 {
                let q = q as i64;
                for row in u.iter_mut() {
                    row[k] -= q * row[j];
                }
            }
        }
        let (mu, b) = gram_schmidt(&gram(y, &u));
        if b[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            k += 1;
        } else {
            for row in u.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::det3_i64;

    #[test]
    fn reduces_skewed_form() {
        // Identity form in the skewed basis w = [[1,5,7],[0,1,3],[0,0,1]].
        let w: [[f64; 3]; 3] = [[1.0, 5.0, 7.0], [0.0, 1.0, 3.0], [0.0, 0.0, 1.0]];
        let mut y = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                y[i][j] = (0..3).map(|k| w[k][i] * w[k][j]).sum();
            }
        }
        let u = lll_gram(&y, 0.99);
        assert_eq!(det3_i64(&u).abs(), 1);
        let g = gram(&y, &u);
        for (i, row) in g.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9, "{g:?}");
            }
        }
    }
}
