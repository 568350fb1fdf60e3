use rayon::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float};

use super::{SiegelPoint, ThetaCharacteristic};
use crate::arith::{bits_for_digits, BigComplex, CompensatedSum};
use crate::cmat::{sym_eigenvalues, CMat3};
use crate::error::{Error, Result};
use crate::siegel::{lll_gram, IMat3};

const LLL_DELTA: f64 = 0.99;
const RADIUS_CAP: u32 = 100_000;

/// Which series defines `theta[m; m'](tau)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    /// `sum_n exp(pi i (n+m')^T tau (n+m') + 2 pi i (n+m').m)`.
    #[default]
    Classical,
    /// The plain theta series evaluated at `z = m + tau m'`.
    PaperLiteral,
}

/// Number of lattice points with sup-norm exactly `k` in dimension `dim`.
fn shell_count(k: u32, dim: i32) -> f64 {
    (2.0 * k as f64 + 1.0).powi(dim) - (2.0 * k as f64 - 1.0).powi(dim)
}

/// Smallest `R` with `sum_{k > R} shell(k) exp(-pi lambda (k - 1/2)^2) < 10^-target`.
///
/// Consecutive shell ratios `shell(k+1)/shell(k) * exp(-2 pi lambda k)` are
/// decreasing, so the tail past `R` is at most `t_{R+1} / (1 - ratio_{R+1})`.
fn radius_for(lambda: f64, target: f64, dim: i32) -> Result<u32> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda_min must be positive, got {lambda}")));
    }
    let ln10 = std::f64::consts::LN_10;
    let pi = std::f64::consts::PI;
    for r in 1..RADIUS_CAP {
        let k = r + 1;
        let log_t = shell_count(k, dim).ln() - pi * lambda * (k as f64 - 0.5).powi(2);
        let log_ratio = (shell_count(k + 1, dim) / shell_count(k, dim)).ln() - 2.0 * pi * lambda * k as f64;
        if log_ratio >= 0.0 {
            continue;
        }
        let log_tail = log_t - (-log_ratio.exp()).ln_1p();
        if log_tail / ln10 < -target {
            return Ok(r);
        }
    }
    Err(Error::Precision(format!("no truncation radius below {RADIUS_CAP} for lambda_min = {lambda}")))
}

/// Box radius `R` such that all terms of a genus-3 theta null with
/// `||n||_inf > R` sum to less than `10^-(p+5)` in absolute value, given the
/// smallest eigenvalue of `Im tau`.
pub fn truncation_radius(lambda_min: f64, digits: u32) -> Result<u32> {
    radius_for(lambda_min, digits as f64 + 5.0, 3)
}

/// `sum_{k in [-R, R]^g} exp(pi i w^T tau w + 2 pi i w.lin)` with `w = base + k`.
///
/// The last coordinate runs innermost and is advanced by the ratio
/// recurrence; every row starts from a direct exponential.
fn lattice_sum(tau: &[Vec<Complex>], base: &[f64], lin: &[Complex], radius: u32, bits: u32) -> Complex {
    let g = base.len();
    let r = radius as i64;
    let pi = Float::with_val(bits, Constant::Pi);
    let pi_i = Complex::with_val(bits, (0, &pi));
    let two_pi_i = Complex::with_val(bits, &pi_i * 2u32);
    let last = g - 1;
    let step = Complex::with_val(bits, &two_pi_i * &tau[last][last]).exp();
    let mut acc = CompensatedSum::new(bits);
    let outer = (2 * r + 1).pow(last as u32);
    let mut w = vec![Float::new(bits); g];
    let mut v = vec![Complex::new(bits); g];
    for idx in 0..outer {
        let mut rem = idx;
        for i in (0..last).rev() {
            let k = rem % (2 * r + 1) - r;
            rem /= 2 * r + 1;
            w[i] = Float::with_val(bits, base[i] + k as f64);
        }
        w[last] = Float::with_val(bits, base[last] - r as f64);
        for i in 0..g {
            v[i] = Complex::new(bits);
            for j in 0..g {
                v[i] += Complex::with_val(bits, &tau[i][j] * &w[j]);
            }
        }
        let mut quad = Complex::new(bits);
        for i in 0..g {
            let t = Complex::with_val(bits, &v[i] + &lin[i]) + &lin[i];
            quad += t * &w[i];
        }
        let mut term = (quad * &pi_i).exp();
        let mut ratio = Complex::with_val(bits, &v[last] * 2u32) + &tau[last][last];
        ratio += Complex::with_val(bits, &lin[last] * 2u32);
        let mut ratio = (ratio * &pi_i).exp();
        for _ in 0..=2 * r {
            acc.add(&term);
            term *= &ratio;
            ratio *= &step;
        }
    }
    acc.total()
}

/// `Im tau` reindexed by an LLL basis: `tau' = V^T tau V`.
#[derive(Clone, Debug)]
pub(crate) struct Reindexed {
    tau: SiegelPoint,
    v: IMat3,
    v_inv: IMat3,
    y: [[f64; 3]; 3],
    lambda: f64,
}

impl Reindexed {
    pub(crate) fn new(tau: &SiegelPoint) -> Result<Self> {
        let v = lll_gram(&tau.imag_f64(), LLL_DELTA);
        let vt: IMat3 = std::array::from_fn(|i| std::array::from_fn(|j| v[j][i]));
        let embed = crate::siegel::SymplecticMatrix::embed_gl3(vt)?;
        let v_inv = crate::siegel::unimodular_inverse(&v)?;
        let tau = crate::siegel::act(&embed, tau, tau.digits())?.0;
        let y = tau.imag_f64();
        let lambda = sym_eigenvalues(&y)[0] * (1.0 - 1e-9);
        if !(lambda > 1e-12) {
            return Err(Error::Precision(format!("Im tau is too close to singular (lambda_min = {lambda:e})")));
        }
        Ok(Reindexed { tau, v, v_inv, y, lambda })
    }

    pub(crate) fn lambda_min(&self) -> f64 {
        self.lambda
    }

    fn tau_at(&self, bits: u32) -> Vec<Vec<Complex>> {
        let m: CMat3 = self.tau.matrix(bits);
        m.iter().map(|r| r.to_vec()).collect()
    }

    pub(crate) fn theta(&self, c: &ThetaCharacteristic, digits: u32, convention: Convention) -> Result<BigComplex> {
        if !c.is_even() {
            return Ok(BigComplex::zero(digits));
        }
        let mp = c.m_prime_half();
        let m = c.m_half();
        let s: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| self.v_inv[i][j] as f64 * mp[j]).sum());
        let d: [f64; 3] = std::array::from_fn(|i| (0..3).map(|j| self.v[j][i] as f64 * m[j]).sum());
        match convention {
            Convention::Classical => {
                let bits = bits_for_digits(digits + 5);
                let radius = radius_for(self.lambda, digits as f64 + 5.0, 3)?;
                let base = s.map(|x| x - x.floor());
                let lin: Vec<Complex> = d.iter().map(|&x| Complex::with_val(bits, x)).collect();
                let sum = lattice_sum(&self.tau_at(bits), &base, &lin, radius, bits);
                Ok(BigComplex::new(sum, digits))
            }
            Convention::PaperLiteral => {
                let sys: f64 = (0..3).map(|i| (0..3).map(|j| s[i] * self.y[i][j] * s[j]).sum::<f64>()).sum();
                let extra = (std::f64::consts::PI * sys / std::f64::consts::LN_10).ceil().max(0.0) as u32 + 1;
                let bits = bits_for_digits(digits + extra + 5);
                let radius = radius_for(self.lambda, (digits + extra) as f64 + 5.0, 3)?;
                let t = self.tau_at(bits);
                let lin: Vec<Complex> = (0..3)
                    .map(|i| {
                        let mut l = Complex::with_val(bits, d[i]);
                        for (j, sj) in s.iter().enumerate() {
                            l += Complex::with_val(bits, &t[i][j] * *sj);
                        }
                        l
                    })
                    .collect();
                let base = s.map(|x| (-x).round());
                let sum = lattice_sum(&t, &base, &lin, radius, bits);
                Ok(BigComplex::new(sum, digits))
            }
        }
    }
}

/// Theta null `theta[m; m'](0, tau)` to absolute error `10^-p`.
///
/// Odd characteristics return an exact zero without summation. The sum runs
/// over an LLL basis of `Im tau`, which changes only the order of terms.
pub fn theta_constant(
    c: &ThetaCharacteristic,
    tau: &SiegelPoint,
    digits: u32,
    convention: Convention,
) -> Result<BigComplex> {
    if !c.is_even() {
        return Ok(BigComplex::zero(digits));
    }
    Reindexed::new(&tau.with_digits(tau.digits().max(digits + 10)))?.theta(c, digits, convention)
}

/// Genus-1 theta null `theta[m/2; m'/2](0, tau)` by the same summation kernel.
pub fn theta_constant_1d(m: u8, m_prime: u8, tau: &BigComplex, digits: u32) -> Result<BigComplex> {
    if m > 1 || m_prime > 1 {
        return Err(Error::InvalidArgument("characteristic bits must be 0 or 1".into()));
    }
    if m * m_prime == 1 {
        return Ok(BigComplex::zero(digits));
    }
    let lambda = tau.im().to_f64();
    let bits = bits_for_digits(digits + 5);
    let radius = radius_for(lambda, digits as f64 + 5.0, 1)?;
    let t = vec![vec![Complex::with_val(bits, tau.value())]];
    let lin = [Complex::with_val(bits, m as f64 / 2.0)];
    Ok(BigComplex::new(lattice_sum(&t, &[m_prime as f64 / 2.0], &lin, radius, bits), digits))
}

pub(crate) fn par_nulls(
    r: &Reindexed,
    chars: &[ThetaCharacteristic],
    digits: u32,
    convention: Convention,
) -> Result<Vec<BigComplex>> {
    chars.par_iter().map(|c| r.theta(c, digits, convention)).collect()
}

