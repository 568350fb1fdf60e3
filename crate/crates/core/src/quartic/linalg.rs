//! Exact determinants and ranks over Z, and the same over word-size primes.

use rug::Integer;

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det_bareiss(mut a: Vec<Vec<Integer>>) -> Integer {
    let n = a.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = Integer::from(&a[i][j] * &a[k][k]) - Integer::from(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev);
            }
            a[i][k] = Integer::new();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_bareiss(mut a: Vec<Vec<Integer>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = Integer::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let t = Integer::from(&a[i][j] * &a[rank][col]) - Integer::from(&a[i][col] * &a[rank][j]);
                a[i][j] = t.div_exact(&prev);
            }
            a[i][col] = Integer::new();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn reduce_mod(x: &Integer, p: u64) -> u64 {
    let mut r = Integer::from(x % p);
    if r < 0 {
        r += p;
    }
    r.to_u64().unwrap()
}

/// Gaussian elimination modulo a prime: returns `(rank, det)` where `det` is
/// only meaningful for square input.
pub fn eliminate_mod(mut a: Vec<Vec<u64>>, p: u64) -> (usize, u64) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut det = 1u64;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r][col] != 0) else {
            det = 0;
            continue;
        };
        if piv != rank {
            a.swap(piv, rank);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[rank][col], p);
        let inv = inv_mod(a[rank][col], p);
        for i in rank + 1..rows {
            if a[i][col] == 0 {
                continue;
            }
            let f = mul_mod(a[i][col], inv, p);
            for j in col..cols {
                let t = mul_mod(f, a[rank][j], p);
                a[i][j] = (a[i][j] + p - t) % p;
            }
        }
        rank += 1;
    }
    if rank < cols {
        det = 0;
    }
    (rank, det)
}

/// Primes just below `2^62`, in decreasing order.
pub fn word_primes() -> impl Iterator<Item = u64> {
    let mut candidate = Integer::from(1u64 << 62);
    std::iter::from_fn(move || {
        candidate = Integer::from(&candidate - 1).prev_prime_or_same();
        let p = candidate.to_u64().unwrap();
        Some(p)
    })
}

trait PrevPrime {
    fn prev_prime_or_same(self) -> Integer;
}

impl PrevPrime for Integer {
    fn prev_prime_or_same(mut self) -> Integer {
        while self.is_probably_prime(30) == rug::integer::IsPrime::No {
            self -= 1;
        }
        self
    }
}

/// Chinese remaindering accumulator returning the symmetric representative.
pub struct Crt {
    value: Integer,
    modulus: Integer,
}

impl Default for Crt {
    fn default() -> Self {
        Crt {
            value: Integer::new(),
            modulus: Integer::from(1),
        }
    }
}

impl Crt {
    pub fn add(&mut self, residue: u64, p: u64) {
        // x = value + modulus * t with t = (residue - value) / modulus mod p
        let v = reduce_mod(&self.value, p);
        let m = reduce_mod(&self.modulus, p);
        let t = mul_mod((residue + p - v) % p, inv_mod(m, p), p);
        self.value += Integer::from(&self.modulus * t);
        self.modulus *= p;
    }

    pub fn modulus(&self) -> &Integer {
        &self.modulus
    }

    pub fn symmetric(&self) -> Integer {
        let half = Integer::from(&self.modulus >> 1);
        if self.value > half {
            Integer::from(&self.value - &self.modulus)
        } else {
            self.value.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Integer>> {
        rows.iter().map(|r| r.iter().map(|&x| Integer::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_bareiss(m(&[&[2, 1], &[1, 3]])), 5);
        assert_eq!(det_bareiss(m(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(det_bareiss(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 0);
        assert_eq!(det_bareiss(m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 4]])), -21);
        assert_eq!(rank_bareiss(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank_bareiss(m(&[&[0, 0], &[0, 0], &[1, 0]])), 1);
    }

    #[test]
    fn modular_agrees_with_exact() {
        let a = m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 4]]);
        let p = word_primes().next().unwrap();
        let am: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| reduce_mod(x, p)).collect()).collect();
        let (rank, det) = eliminate_mod(am, p);
        assert_eq!(rank, 3);
        assert_eq!(det, p - 21);
    }

    #[test]
    fn crt_recovers_negative_values() {
        let target = Integer::from(-123456789) * Integer::from(987654321u64) * Integer::from(1u64 << 40);
        let mut crt = Crt::default();
        for p in word_primes().take(3) {
            crt.add(reduce_mod(&target, p), p);
        }
        assert_eq!(crt.symmetric(), target);
    }
}
