use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};

use super::form::{monomial_count, monomial_index, monomials, random_sl3, TernaryForm};
use super::linalg::{det_bareiss, eliminate_mod, rank_bareiss, reduce_mod, word_primes, Crt};
use crate::error::{Error, Result};

const CUBIC: u32 = 3;
/// Degree of the multiplier monomials: `7 - 3`.
const MULT_DEGREE: u32 = 4;
/// Critical degree `3 + 3 + 3 - 2` of the Macaulay construction.
const TARGET_DEGREE: u32 = 7;
const SQUARE_ATTEMPTS: u64 = 32;

/// The 45 x 36 matrix of the map `I_4^3 -> I_7`, `(a, b, c) -> a G_1 + b G_2 + c G_3`.
///
/// Row `15 * k + i` holds the coefficients of `mu_i * G_k`, where `mu_i` is the
/// `i`-th degree-4 monomial; columns follow the degree-7 monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayMatrix {
    rows: Vec<Vec<Rational>>,
}

impl MacaulayMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let ints = self
            .rows
            .iter()
            .map(|r| {
                let mut lcm = Integer::from(1);
                for c in r {
                    lcm.lcm_mut(c.denom());
                }
                r.iter().map(|c| Integer::from(c.numer() * Integer::from(&lcm / c.denom()))).collect()
            })
            .collect();
        rank_bareiss(ints)
    }
}

fn expect_cubics(g: &[TernaryForm; 3]) -> Result<()> {
    g.iter().try_for_each(|f| f.expect_degree(CUBIC))
}

fn multiplication_rows<T: Clone + Default>(g: &[Vec<T>; 3], mul: impl Fn(&T) -> T) -> Vec<Vec<T>> {
    let cubics = monomials(CUBIC);
    let mut rows = Vec::with_capacity(3 * monomial_count(MULT_DEGREE));
    for form in g {
        for mu in monomials(MULT_DEGREE) {
            let mut row = vec![T::default(); monomial_count(TARGET_DEGREE)];
            for (e, c) in cubics.iter().zip(form) {
                row[monomial_index([mu[0] + e[0], mu[1] + e[1], mu[2] + e[2]])] = mul(c);
            }
            rows.push(row);
        }
    }
    rows
}

/// Builds the Macaulay matrix of three ternary cubics.
pub fn macaulay_matrix(g: &[TernaryForm; 3]) -> Result<MacaulayMatrix> {
    expect_cubics(g)?;
    let coeffs = [g[0].coeffs().to_vec(), g[1].coeffs().to_vec(), g[2].coeffs().to_vec()];
    Ok(MacaulayMatrix {
        rows: multiplication_rows(&coeffs, Clone::clone),
    })
}

/// Row selection of the square Macaulay matrix: degree-7 monomial `b` is
/// produced by the first variable `k` with `b_k >= 3`, using the multiplier
/// `b - 3 e_k` on the `k`-th form. Also returns the columns of the
/// non-reduced monomials (at least two exponents `>= 3`), which index the
/// extraneous minor.
fn square_selection() -> (Vec<usize>, Vec<usize>) {
    let mut rows = Vec::new();
    let mut nonreduced = Vec::new();
    for (col, b) in monomials(TARGET_DEGREE).into_iter().enumerate() {
        let k = (0..3).find(|&k| b[k] >= CUBIC).expect("degree 7 forces an exponent >= 3");
        let mut mu = b;
        mu[k] -= CUBIC;
        rows.push(k * monomial_count(MULT_DEGREE) + monomial_index(mu));
        if b.iter().filter(|&&x| x >= CUBIC).count() >= 2 {
            nonreduced.push(col);
        }
    }
    (rows, nonreduced)
}

fn submatrix<T: Clone>(full: &[Vec<T>], rows: &[usize], cols: &[usize]) -> Vec<Vec<T>> {
    rows.iter().map(|&r| cols.iter().map(|&c| full[r][c].clone()).collect()).collect()
}

/// Integral forms `G_k = c_k g_k` and the product `c_1 c_2 c_3`.
fn integral_forms(g: &[TernaryForm; 3]) -> ([Vec<Integer>; 3], Integer) {
    let cleared = g.clone().map(|f| f.clear_denominators());
    let scale = Integer::from(&cleared[0].1 * &cleared[1].1) * &cleared[2].1;
    (cleared.map(|c| c.0), scale)
}

/// Deterministic sequence of unimodular coordinate changes tried when the
/// extraneous minor vanishes; `Res(G o B) = det(B)^27 Res(G) = Res(G)`.
fn transformed(g: &[TernaryForm; 3], attempt: u64) -> [TernaryForm; 3] {
    if attempt == 0 {
        return g.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + attempt);
    let b = random_sl3(&mut rng, 3 + attempt as usize, 1);
    g.clone().map(|f| f.substitute_integer(&b))
}

fn integer_rows(g: &[Vec<Integer>; 3]) -> Vec<Vec<Integer>> {
    multiplication_rows(g, Clone::clone)
}

/// Exact path: `Res = det(M_square) / det(E)`, normalized so that
/// `Res(X^3, Y^3, Z^3) = 1`.
fn exact_integer_resultant(g: &[TernaryForm; 3]) -> Result<Integer> {
    let (rows, nonreduced) = square_selection();
    let all: Vec<usize> = (0..monomial_count(TARGET_DEGREE)).collect();
    for attempt in 0..SQUARE_ATTEMPTS {
        let (ints, _) = integral_forms(&transformed(g, attempt));
        let full = integer_rows(&ints);
        let sq = submatrix(&full, &rows, &all);
        let extraneous = submatrix(&sq, &nonreduced, &nonreduced);
        let det_e = det_bareiss(extraneous);
        if det_e != 0 {
            let det_m = det_bareiss(sq);
            if !det_m.is_divisible(&det_e) {
                return Err(Error::Consistency("extraneous factor does not divide the Macaulay determinant".into()));
            }
            return Ok(det_m.div_exact(&det_e));
        }
        if attempt == 0 && rank_bareiss(full) < monomial_count(TARGET_DEGREE) {
            return Ok(Integer::new());
        }
    }
    Err(Error::Consistency("no unimodular change made the extraneous minor invertible".into()))
}

fn unscale(res: Integer, scale: &Integer) -> Rational {
    Rational::from((res, Integer::from(scale.pow(9u32))))
}

/// Macaulay resultant of three ternary cubics, exact.
///
/// Rational inputs are cleared to integral forms first and the result divided
/// by the ninth power of each clearing factor.
pub fn resultant(g: &[TernaryForm; 3]) -> Result<Rational> {
    expect_cubics(g)?;
    let (_, scale) = integral_forms(g);
    let res = exact_integer_resultant(g)?;
    Ok(unscale(res, &scale))
}

fn log2_hadamard(rows: &[Vec<Integer>]) -> f64 {
    rows.iter()
        .map(|r| {
            let s: Integer = r.iter().map(|x| Integer::from(x * x)).sum();
            if s == 0 {
                0.0
            } else {
                0.5 * (s.significant_bits() as f64)
            }
        })
        .sum()
}

fn modular_from_forms(ints: &[Vec<Integer>; 3]) -> Result<Integer> {
    let (rows, nonreduced) = square_selection();
    let all: Vec<usize> = (0..monomial_count(TARGET_DEGREE)).collect();
    let sq = submatrix(&integer_rows(ints), &rows, &all);
    let bound_bits = log2_hadamard(&sq) + 2.0;
    let mut crt = Crt::default();
    for p in word_primes().take(10_000) {
        let sqp: Vec<Vec<u64>> = sq.iter().map(|r| r.iter().map(|x| reduce_mod(x, p)).collect()).collect();
        let (_, det_e) = eliminate_mod(submatrix(&sqp, &nonreduced, &nonreduced), p);
        if det_e == 0 {
            continue;
        }
        let (_, det_m) = eliminate_mod(sqp, p);
        let res = super::linalg::mul_mod(det_m, super::linalg::inv_mod(det_e, p), p);
        crt.add(res, p);
        if crt.modulus().significant_bits() as f64 > bound_bits {
            return Ok(crt.symmetric());
        }
    }
    Err(Error::Consistency("ran out of primes during modular resultant".into()))
}

/// Independent multi-modular evaluation of the same resultant: the ratio of
/// the two determinants is computed modulo word-size primes by Gaussian
/// elimination and lifted by Chinese remaindering up to the Hadamard bound.
pub fn resultant_multimodular(g: &[TernaryForm; 3]) -> Result<Rational> {
    expect_cubics(g)?;
    let (_, scale) = integral_forms(g);
    let (rows, nonreduced) = square_selection();
    let all: Vec<usize> = (0..monomial_count(TARGET_DEGREE)).collect();
    for attempt in 0..SQUARE_ATTEMPTS {
        let (ints, _) = integral_forms(&transformed(g, attempt));
        let full = integer_rows(&ints);
        if attempt == 0 {
            // A rank drop at three independent primes certifies Res = 0 (the
            // rank modulo p never exceeds the rank over Q, so three drops
            // agree with the exact rank test unless all three primes are unlucky).
            let drops = word_primes()
                .take(3)
                .filter(|&p| {
                    let fp = full.iter().map(|r| r.iter().map(|x| reduce_mod(x, p)).collect()).collect();
                    eliminate_mod(fp, p).0 < all.len()
                })
                .count();
            if drops == 3 {
                return Ok(Rational::new());
            }
        }
        let sq = submatrix(&full, &rows, &all);
        let e = submatrix(&sq, &nonreduced, &nonreduced);
        // The extraneous minor is invertible iff it is non-zero modulo some prime.
        let invertible = word_primes().take(4).any(|p| {
            let ep = e.iter().map(|r| r.iter().map(|x| reduce_mod(x, p)).collect()).collect();
            eliminate_mod(ep, p).1 != 0
        });
        if invertible {
            return Ok(unscale(modular_from_forms(&ints)?, &scale));
        }
    }
    Err(Error::Consistency("no unimodular change made the extraneous minor invertible".into()))
}

/// Exact resultant cross-checked against the multi-modular evaluation.
pub fn verified_resultant(g: &[TernaryForm; 3]) -> Result<Rational> {
    let exact = resultant(g)?;
    let modular = resultant_multimodular(g)?;
    if exact != modular {
        return Err(Error::Consistency(format!(
            "exact resultant {exact} disagrees with modular value {modular}"
        )));
    }
    Ok(exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(terms: &[([u32; 3], i64)]) -> TernaryForm {
        TernaryForm::from_terms(3, terms.iter().map(|&(e, c)| (e, Rational::from(c)))).unwrap()
    }

    fn coordinate_cubes(c: i64) -> [TernaryForm; 3] {
        [cubic(&[([3, 0, 0], c)]), cubic(&[([0, 3, 0], c)]), cubic(&[([0, 0, 3], c)])]
    }

    #[test]
    fn shape() {
        let m = macaulay_matrix(&coordinate_cubes(1)).unwrap();
        assert_eq!((m.row_count(), m.col_count()), (45, 36));
        let zero = [TernaryForm::zero(3), TernaryForm::zero(3), TernaryForm::zero(3)];
        let z = macaulay_matrix(&zero).unwrap();
        assert!(z.rows().iter().flatten().all(|c| *c == 0));
        assert!(macaulay_matrix(&[TernaryForm::zero(3), TernaryForm::zero(2), TernaryForm::zero(3)]).is_err());
    }

    #[test]
    fn coordinate_cubes_give_unit_rows_of_full_rank() {
        let m = macaulay_matrix(&coordinate_cubes(1)).unwrap();
        for row in m.rows() {
            assert_eq!(row.iter().filter(|c| **c != 0).count(), 1);
            assert!(row.iter().all(|c| *c == 0 || *c == 1));
        }
        // Within each block the images are distinct monomials.
        for block in m.rows().chunks(15) {
            let mut cols: Vec<usize> = block.iter().map(|r| r.iter().position(|c| *c == 1).unwrap()).collect();
            cols.sort();
            cols.dedup();
            assert_eq!(cols.len(), 15);
        }
        assert_eq!(m.rank(), 36);
    }

    #[test]
    fn anchor_and_scaling() {
        assert_eq!(resultant(&coordinate_cubes(1)).unwrap(), 1);
        assert_eq!(verified_resultant(&coordinate_cubes(4)).unwrap(), Rational::from(Integer::from(1) << 54));
        let half = [cubic(&[([3, 0, 0], 1)]).scale(&Rational::from((1, 2))), cubic(&[([0, 3, 0], 1)]), cubic(&[([0, 0, 3], 1)])];
        assert_eq!(verified_resultant(&half).unwrap(), Rational::from((1, 512)));
    }

    #[test]
    fn common_zero_gives_zero() {
        // All three vanish at [0:0:1].
        let g = [cubic(&[([3, 0, 0], 1), ([1, 0, 2], 1)]), cubic(&[([0, 3, 0], 1), ([0, 1, 2], 2)]), cubic(&[([2, 0, 1], 1), ([0, 1, 2], 1)])];
        assert_eq!(verified_resultant(&g).unwrap(), 0);
    }
}
