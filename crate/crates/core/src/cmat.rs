//! Small dense complex and real matrix helpers at MPFR precision.

use rug::{Assign, Complex, Float};

use crate::error::{Error, Result};

pub type CMat3 = [[Complex; 3]; 3];
pub type RMat3 = [[Float; 3]; 3];

pub fn czero3(bits: u32) -> CMat3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Complex::new(bits)))
}

pub fn cidentity3(bits: u32) -> CMat3 {
    let mut m = czero3(bits);
    for (i, row) in m.iter_mut().enumerate() {
        row[i].assign(1);
    }
    m
}

pub fn cmul3(a: &CMat3, b: &CMat3, bits: u32) -> CMat3 {
    let mut out = czero3(bits);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += Complex::with_val(bits, &a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

pub fn cadd3(a: &CMat3, b: &CMat3, bits: u32) -> CMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| Complex::with_val(bits, &a[i][j] + &b[i][j])))
}

/// Integer matrix embedded at precision `bits`.
pub fn cfrom_int3(m: &[[i64; 3]; 3], bits: u32) -> CMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| Complex::with_val(bits, m[i][j])))
}

pub fn cdet3(a: &CMat3, bits: u32) -> Complex {
    let m = |i: usize, j: usize, k: usize, l: usize| {
        Complex::with_val(bits, &a[i][k] * &a[j][l]) - Complex::with_val(bits, &a[i][l] * &a[j][k])
    };
    Complex::with_val(bits, &a[0][0] * m(1, 2, 1, 2)) - Complex::with_val(bits, &a[0][1] * m(1, 2, 0, 2))
        + Complex::with_val(bits, &a[0][2] * m(1, 2, 0, 1))
}

fn log2_abs(z: &Complex) -> f64 {
    let a = Float::with_val(64, z.abs_ref());
    if a.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = a.to_f64_exp();
    m.log2() + e as f64
}

/// Inverse by Gauss-Jordan elimination with partial pivoting. Fails when a
/// pivot drops below `2^-(bits/2)` relative to the largest entry.
pub fn cinverse3(a: &CMat3, bits: u32) -> Result<CMat3> {
    let mut m = a.clone();
    let mut inv = cidentity3(bits);
    let scale = a.iter().flatten().map(log2_abs).fold(f64::NEG_INFINITY, f64::max);
    if scale == f64::NEG_INFINITY {
        return Err(Error::Precision("matrix is zero".into()));
    }
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&x, &y| log2_abs(&m[x][col]).partial_cmp(&log2_abs(&m[y][col])).unwrap())
            .unwrap();
        if log2_abs(&m[piv][col]) < scale - bits as f64 / 2.0 {
            return Err(Error::Precision("matrix is numerically singular at this precision".into()));
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..3 {
            m[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..3 {
            if r == col {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..3 {
                let t = Complex::with_val(bits, &f * &m[col][j]);
                m[r][j] -= t;
                let t = Complex::with_val(bits, &f * &inv[col][j]);
                inv[r][j] -= t;
            }
        }
    }
    Ok(inv)
}

pub fn cimag3(a: &CMat3) -> RMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].imag().clone()))
}

pub fn creal3(a: &CMat3) -> RMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].real().clone()))
}

pub fn rdet3(a: &RMat3, bits: u32) -> Float {
    let m = |i: usize, j: usize, k: usize, l: usize| {
        Float::with_val(bits, &a[i][k] * &a[j][l]) - Float::with_val(bits, &a[i][l] * &a[j][k])
    };
    Float::with_val(bits, &a[0][0] * m(1, 2, 1, 2)) - Float::with_val(bits, &a[0][1] * m(1, 2, 0, 2))
        + Float::with_val(bits, &a[0][2] * m(1, 2, 0, 1))
}

/// Cholesky factorization test: true iff every pivot is strictly positive.
pub fn is_positive_definite(a: &RMat3, bits: u32) -> bool {
    let mut l: RMat3 = std::array::from_fn(|_| std::array::from_fn(|_| Float::new(bits)));
    for i in 0..3 {
        for j in 0..=i {
            let mut s = Float::with_val(bits, &a[i][j]);
            for k in 0..j {
                s -= Float::with_val(bits, &l[i][k] * &l[j][k]);
            }
            if i == j {
                if s <= 0 {
                    return false;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / &l[j][j];
            }
        }
    }
    true
}

pub fn rto_f64(a: &RMat3) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].to_f64()))
}

/// Eigenvalues of a symmetric 3 x 3 matrix by cyclic Jacobi rotations,
/// ascending.
pub fn sym_eigenvalues(a: &[[f64; 3]; 3]) -> [f64; 3] {
    let mut m = *a;
    for _ in 0..100 {
        let off = m[0][1].abs() + m[0][2].abs() + m[1][2].abs();
        if off < 1e-300 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if m[p][q].abs() < 1e-300 {
                continue;
            }
            let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let mut r = m;
            for k in 0..3 {
                r[k][p] = c * m[k][p] - s * m[k][q];
                r[k][q] = s * m[k][p] + c * m[k][q];
            }
            let mut out = r;
            for k in 0..3 {
                out[p][k] = c * r[p][k] - s * r[q][k];
                out[q][k] = s * r[p][k] + c * r[q][k];
            }
            m = out;
        }
    }
    let mut e = [m[0][0], m[1][1], m[2][2]];
    e.sort_by(|x, y| x.partial_cmp(y).unwrap());
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let bits = 200;
        let a: CMat3 = std::array::from_fn(|i| {
            std::array::from_fn(|j| Complex::with_val(bits, ((i * 3 + j) as f64 + if i == j { 5.0 } else { 0.0 }, (i + 2 * j) as f64)))
        });
        let inv = cinverse3(&a, bits).unwrap();
        let prod = cmul3(&a, &inv, bits);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                let d = Complex::with_val(bits, &prod[i][j] - expect);
                assert!(Float::with_val(bits, d.abs_ref()) < 1e-50);
            }
        }
        let d = cdet3(&a, bits) * cdet3(&inv, bits);
        assert!((d.real().to_f64() - 1.0).abs() < 1e-40);
        assert!(cinverse3(&czero3(bits), bits).is_err());
    }

    #[test]
    fn eigenvalues_and_definiteness() {
        let e = sym_eigenvalues(&[[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]]);
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12 && (e[2] - 5.0).abs() < 1e-12);
        let f = |m: [[f64; 3]; 3]| -> RMat3 { std::array::from_fn(|i| std::array::from_fn(|j| Float::with_val(64, m[i][j]))) };
        assert!(is_positive_definite(&f([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]]), 64));
        assert!(!is_positive_definite(&f([[1.0, 2.0, 0.0], [2.0, 1.0, 0.0], [0.0, 0.0, 1.0]]), 64));
    }
}
