use std::fmt;

use rug::{Complex, Float};

use crate::arith::{bits_for_digits, BigComplex};
use crate::cmat::{cimag3, is_positive_definite, rdet3, rto_f64, sym_eigenvalues, CMat3};
use crate::error::{Error, Result};

/// Point of the Siegel upper half space of degree 3: a symmetric complex
/// 3 x 3 matrix with positive definite imaginary part.
#[derive(Clone, Debug)]
pub struct SiegelPoint {
    tau: [[BigComplex; 3]; 3],
}

impl SiegelPoint {
    /// Validates exact symmetry of the stored entries and positive
    /// definiteness of the imaginary part.
    pub fn new(tau: [[BigComplex; 3]; 3]) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if tau[i][j].value() != tau[j][i].value() {
                    return Err(Error::InvalidTau(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        let point = SiegelPoint { tau };
        let bits = bits_for_digits(point.digits());
        if !is_positive_definite(&cimag3(&point.matrix(bits)), bits) {
            return Err(Error::InvalidTau("imaginary part is not positive definite".into()));
        }
        Ok(point)
    }

    /// Builds the symmetric matrix from its upper triangle
    /// `(1,1), (1,2), (1,3), (2,2), (2,3), (3,3)`.
    pub fn from_upper(upper: [BigComplex; 6]) -> Result<Self> {
        let [a, b, c, d, e, f] = upper;
        Self::new([[a, b.clone(), c.clone()], [b, d, e.clone()], [c, e, f]])
    }

    /// Symmetrizes `(m + m^T)/2` and validates.
    pub fn from_matrix(m: &CMat3, digits: u32) -> Result<Self> {
        let bits = bits_for_digits(digits);
        let tau = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let v = if i == j {
                    Complex::with_val(bits, &m[i][i])
                } else {
                    let (a, b) = if i < j { (i, j) } else { (j, i) };
                    Complex::with_val(bits, &m[a][b] + &m[b][a]) / 2u32
                };
                BigComplex::new(v, digits)
            })
        });
        Self::new(tau)
    }

    /// `i * scale * Identity`.
    pub fn scaled_identity(scale: f64, digits: u32) -> Self {
        let z = || BigComplex::zero(digits);
        let d = || BigComplex::from_f64(0.0, scale, digits);
        Self::new([[d(), z(), z()], [z(), d(), z()], [z(), z(), d()]]).expect("i*I is a Siegel point")
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigComplex {
        &self.tau[i][j]
    }

    pub fn entries(&self) -> &[[BigComplex; 3]; 3] {
        &self.tau
    }

    pub fn digits(&self) -> u32 {
        self.tau.iter().flatten().map(BigComplex::digits).min().unwrap()
    }

    pub fn with_digits(&self, digits: u32) -> Self {
        SiegelPoint {
            tau: self.tau.clone().map(|r| r.map(|z| z.with_digits(digits))),
        }
    }

    /// Entries at working precision `bits`.
    pub fn matrix(&self, bits: u32) -> CMat3 {
        std::array::from_fn(|i| std::array::from_fn(|j| Complex::with_val(bits, self.tau[i][j].value())))
    }

    pub fn imag_f64(&self) -> [[f64; 3]; 3] {
        rto_f64(&cimag3(&self.matrix(128)))
    }

    pub fn det_im(&self) -> Float {
        let bits = bits_for_digits(self.digits());
        rdet3(&cimag3(&self.matrix(bits)), bits)
    }

    /// Smallest eigenvalue of `Im tau` (double precision estimate).
    pub fn lambda_min(&self) -> f64 {
        sym_eigenvalues(&self.imag_f64())[0]
    }

    /// Parses the six-line text format `i j (re,im)@p` (1-based, `i <= j`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut upper: [Option<BigComplex>; 6] = Default::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.splitn(3, char::is_whitespace);
            let (Some(i), Some(j), Some(z)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::parse(n + 1, "expected `i j (re,im)@p`"));
            };
            let (i, j): (usize, usize) = match (i.parse(), j.parse()) {
                (Ok(i), Ok(j)) if (1..=3).contains(&i) && (i..=3).contains(&j) => (i, j),
                _ => return Err(Error::parse(n + 1, "indices must satisfy 1 <= i <= j <= 3")),
            };
            let z: BigComplex = z.trim().parse().map_err(|e: Error| Error::parse(n + 1, e.to_string()))?;
            let slot = match (i, j) {
                (1, 1) => 0,
                (1, 2) => 1,
                (1, 3) => 2,
                (2, 2) => 3,
                (2, 3) => 4,
                _ => 5,
            };
            upper[slot] = Some(z);
        }
        if upper.iter().any(Option::is_none) {
            return Err(Error::parse(0, "all six upper-triangle entries are required"));
        }
        Self::from_upper(upper.map(Option::unwrap))
    }
}

impl fmt::Display for SiegelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..3 {
            for j in i..3 {
                writeln!(f, "{} {} {}", i + 1, j + 1, self.tau[i][j])?;
            }
        }
        Ok(())
    }
}
