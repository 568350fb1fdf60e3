use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type IMat3 = [[i64; 3]; 3];

pub(crate) const I3: IMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
const Z3: IMat3 = [[0; 3]; 3];

fn checked_mul3(a: &IMat3, b: &IMat3) -> Result<IMat3> {
    let mut out = Z3;
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0i64;
            for k in 0..3 {
                acc = a[i][k]
                    .checked_mul(b[k][j])
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("symplectic matrix entries"))?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

fn checked_add3(a: &IMat3, b: &IMat3) -> Result<IMat3> {
    let mut out = Z3;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][j].checked_add(b[i][j]).ok_or(Error::Overflow("symplectic matrix entries"))?;
        }
    }
    Ok(out)
}

fn transpose3(a: &IMat3) -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

fn neg3(a: &IMat3) -> IMat3 {
    a.map(|r| r.map(|x| -x))
}

/// Inverse of a unimodular integer matrix via the adjugate.
pub(crate) fn unimodular_inverse(u: &IMat3) -> Result<IMat3> {
    let det = crate::quartic::det3_i64(u);
    if det.abs() != 1 {
        return Err(Error::InvalidArgument(format!("matrix has determinant {det}, expected +-1")));
    }
    let c = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        u[r0][c0] * u[r1][c1] - u[r0][c1] * u[r1][c0]
    };
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) * det)))
}

/// Element of `Sp6(Z)` stored as integer blocks `[[A, B], [C, D]]`, acting
/// by `tau -> (A tau + B)(C tau + D)^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    pub a: IMat3,
    pub b: IMat3,
    pub c: IMat3,
    pub d: IMat3,
}

impl SymplecticMatrix {
    /// Checks `g^T J g = J` with `J = [[0, I], [-I, 0]]`.
    pub fn new(a: IMat3, b: IMat3, c: IMat3, d: IMat3) -> Result<Self> {
        let g = SymplecticMatrix { a, b, c, d };
        if !g.is_symplectic() {
            return Err(Error::InvalidArgument("matrix is not symplectic".into()));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        SymplecticMatrix { a: I3, b: Z3, c: Z3, d: I3 }
    }

    /// `J = [[0, I], [-I, 0]]`, acting as `tau -> -tau^-1` with cocycle `det(-tau)`.
    pub fn j() -> Self {
        SymplecticMatrix { a: Z3, b: I3, c: neg3(&I3), d: Z3 }
    }

    /// Translation `tau -> tau + s` for symmetric integral `s`.
    pub fn shift(s: IMat3) -> Result<Self> {
        if s != transpose3(&s) {
            return Err(Error::InvalidArgument("shift must be symmetric".into()));
        }
        Ok(SymplecticMatrix { a: I3, b: s, c: Z3, d: I3 })
    }

    /// `tau -> u tau u^T` for unimodular `u`.
    pub fn embed_gl3(u: IMat3) -> Result<Self> {
        let d = transpose3(&unimodular_inverse(&u)?);
        Ok(SymplecticMatrix { a: u, b: Z3, c: Z3, d })
    }

    /// Inversion in the `i`-th coordinate; its cocycle is `tau_ii`.
    pub fn partial_inversion(i: usize) -> Self {
        let mut a = I3;
        a[i][i] = 0;
        let mut b = Z3;
        b[i][i] = -1;
        let mut c = Z3;
        c[i][i] = 1;
        SymplecticMatrix { a, b, c, d: a }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Block criteria `A^T C`, `B^T D` symmetric and `A^T D - C^T B = I`.
    pub fn is_symplectic(&self) -> bool {
        let sym = |m: Result<IMat3>| m.map(|m| m == transpose3(&m)).unwrap_or(false);
        let at = transpose3(&self.a);
        let ct = transpose3(&self.c);
        sym(checked_mul3(&at, &self.c))
            && sym(checked_mul3(&transpose3(&self.b), &self.d))
            && matches!(
                (checked_mul3(&at, &self.d), checked_mul3(&ct, &self.b)),
                (Ok(x), Ok(y)) if checked_add3(&x, &neg3(&y)).ok() == Some(I3)
            )
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn compose(&self, other: &SymplecticMatrix) -> Result<Self> {
        let m = |x: &IMat3, y: &IMat3, z: &IMat3, w: &IMat3| -> Result<IMat3> {
            checked_add3(&checked_mul3(x, y)?, &checked_mul3(z, w)?)
        };
        Ok(SymplecticMatrix {
            a: m(&self.a, &other.a, &self.b, &other.c)?,
            b: m(&self.a, &other.b, &self.b, &other.d)?,
            c: m(&self.c, &other.a, &self.d, &other.c)?,
            d: m(&self.c, &other.b, &self.d, &other.d)?,
        })
    }

    /// `[[D^T, -B^T], [-C^T, A^T]]`.
    pub fn inverse(&self) -> Self {
        SymplecticMatrix {
            a: transpose3(&self.d),
            b: neg3(&transpose3(&self.b)),
            c: neg3(&transpose3(&self.c)),
            d: transpose3(&self.a),
        }
    }

    pub fn to_grid(&self) -> [[i64; 6]; 6] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let blk = match (i < 3, j < 3) {
                    (true, true) => &self.a,
                    (true, false) => &self.b,
                    (false, true) => &self.c,
                    (false, false) => &self.d,
                };
                blk[i % 3][j % 3]
            })
        })
    }

    pub fn from_grid(g: &[[i64; 6]; 6]) -> Result<Self> {
        let blk = |r: usize, c: usize| -> IMat3 { std::array::from_fn(|i| std::array::from_fn(|j| g[r + i][c + j])) };
        Self::new(blk(0, 0), blk(0, 3), blk(3, 0), blk(3, 3))
    }

    /// Parses six rows of six whitespace-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        if rows.len() != 6 {
            return Err(Error::parse(0, format!("expected 6 rows, found {}", rows.len())));
        }
        let mut g = [[0i64; 6]; 6];
        for (r, (n, line)) in rows.iter().enumerate() {
            let vals: Vec<i64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::parse(n + 1, format!("{e}")))?;
            if vals.len() != 6 {
                return Err(Error::parse(n + 1, "expected 6 integers"));
            }
            g[r].copy_from_slice(&vals);
        }
        Self::from_grid(&g)
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_grid() {
            let s: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Deterministic pseudo-random word in `J`, shifts with entries in
/// `{-1, 0, 1}` and elementary `GL3(Z)` embeddings.
pub fn random_symplectic(word_length: usize, seed: u64) -> SymplecticMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SymplecticMatrix::identity();
    for _ in 0..word_length {
        let letter = match rng.gen_range(0..3) {
            0 => SymplecticMatrix::j(),
            1 => {
                let mut s = Z3;
                for i in 0..3 {
                    for j in i..3 {
                        let v = rng.gen_range(-1..=1);
                        s[i][j] = v;
                        s[j][i] = v;
                    }
                }
                SymplecticMatrix::shift(s).expect("symmetric by construction")
            }
            _ => {
                let mut u = I3;
                let i = rng.gen_range(0..3);
                if rng.gen_bool(0.25) {
                    u[i][i] = -1;
                } else {
                    let j = (i + rng.gen_range(1..3)) % 3;
                    u[i][j] = if rng.gen_bool(0.5) { 1 } else { -1 };
                }
                SymplecticMatrix::embed_gl3(u).expect("elementary matrices are unimodular")
            }
        };
        g = letter.compose(&g).expect("short words stay small");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_symplectic() {
        assert!(SymplecticMatrix::identity().is_symplectic());
        assert!(SymplecticMatrix::j().is_symplectic());
        for i in 0..3 {
            assert!(SymplecticMatrix::partial_inversion(i).is_symplectic());
        }
        assert!(SymplecticMatrix::embed_gl3([[1, 2, 0], [0, 1, 0], [0, -3, 1]]).unwrap().is_symplectic());
        assert!(SymplecticMatrix::shift([[1, 2, 0], [0, 1, 0], [0, 0, 1]]).is_err());
        let not = SymplecticMatrix { a: I3, b: Z3, c: I3, d: [[2, 0, 0], [0, 1, 0], [0, 0, 1]] };
        assert!(!not.is_symplectic());
    }

    #[test]
    fn words() {
        assert!(random_symplectic(0, 7).is_identity());
        for seed in 0..50 {
            let g = random_symplectic(5, seed);
            assert!(g.is_symplectic());
            assert_eq!(g, random_symplectic(5, seed));
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn grid_round_trip() {
        let g = random_symplectic(6, 3);
        assert_eq!(SymplecticMatrix::parse(&g.to_string()).unwrap(), g);
        assert!(SymplecticMatrix::parse("1 0\n").is_err());
    }
}
