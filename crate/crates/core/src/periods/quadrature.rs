//! Gauss-Legendre integration of the canonical differentials along path
//! pieces, with panels adapted to the nearest branch points.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rug::{Complex, Float};

use super::curve::AffineCurve;
use super::poly::polish_roots;
use super::track::{c64, min_gap, Piece, Roots64, Tracker};
use crate::error::{Error, Result};

/// Node counts, each 1.5 times the previous.
const ORDERS: [usize; 13] = [12, 18, 27, 41, 62, 93, 140, 210, 315, 473, 710, 1065, 1598];
/// Panels are split until every singularity lies outside the Bernstein
/// ellipse of this parameter.
const MIN_RHO: f64 = 3.0;

type Nodes = Arc<Vec<(Float, Float)>>;

/// Legendre `P_n(x)` and `P_n'(x)`.
fn legendre(n: usize, x: &Float, bits: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(bits, 1);
    let mut p1 = Float::with_val(bits, x);
    for k in 2..=n {
        let t = (Float::with_val(bits, x * &p1) * (2 * k - 1) as u32 - Float::with_val(bits, &p0 * (k - 1) as u32)) / k as u32;
        p0 = p1;
        p1 = t;
    }
    let x2 = Float::with_val(bits, x * x) - 1u32;
    let dp = (Float::with_val(bits, x * &p1) - &p0) * n as u32 / x2;
    (p1, dp)
}

/// Nodes and weights on `[-1, 1]`, cached per `(n, bits)`.
fn gauss_legendre(n: usize, bits: u32) -> Nodes {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Nodes>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(n, bits)) {
        return v.clone();
    }
    let half: Vec<(Float, Float)> = (0..n.div_ceil(2))
        .into_par_iter()
        .map(|i| {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = guess;
            for _ in 0..100 {
                let (p, dp) = legendre(n, &Float::with_val(53, x), 53);
                let step = (p / dp).to_f64();
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let mut x = Float::with_val(53, x);
            let mut prec = 53;
            loop {
                prec = (prec * 2).min(bits);
                x.set_prec(prec);
                let rounds = if prec == bits { 2 } else { 1 };
                for _ in 0..rounds {
                    let (p, dp) = legendre(n, &x, prec);
                    x -= p / dp;
                }
                if prec == bits {
                    break;
                }
            }
            let (_, dp) = legendre(n, &x, bits);
            let one_minus = Float::with_val(bits, 1) - Float::with_val(bits, &x * &x);
            let w = Float::with_val(bits, 2) / (one_minus * Float::with_val(bits, &dp * &dp));
            (x, w)
        })
        .collect();
    let mut nodes = Vec::with_capacity(n);
    for (x, w) in half.iter() {
        if x.is_zero() && n % 2 == 1 {
            continue;
        }
        nodes.push((Float::with_val(bits, -x), w.clone()));
    }
    for (x, w) in half.iter().rev() {
        nodes.push((x.clone(), w.clone()));
    }
    nodes.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let nodes = Arc::new(nodes);
    cache.lock().unwrap().insert((n, bits), nodes.clone());
    nodes
}

/// Parameter of the Bernstein ellipse of `[a, b]` passing through `s`.
fn bernstein_rho(s: Complex64, a: f64, b: f64) -> f64 {
    let u = (s - (a + b) / 2.0) / ((b - a) / 2.0);
    let w = (u * u - 1.0).sqrt();
    (u + w).norm().max((u - w).norm())
}

/// Splits `[0, 1]` (or the given range) until each panel has `rho >= MIN_RHO`.
fn panels(sing: &[Complex64], a: f64, b: f64, depth: u32, out: &mut Vec<(f64, f64, f64)>) {
    let rho = sing.iter().map(|&s| bernstein_rho(s, a, b)).fold(f64::INFINITY, f64::min);
    if rho < MIN_RHO && depth < 60 {
        let m = (a + b) / 2.0;
        panels(sing, a, m, depth + 1, out);
        panels(sing, m, b, depth + 1, out);
    } else {
        out.push((a, b, rho));
    }
}

/// Integrals of `(x, y, 1) dx / f_y` over a piece, per starting sheet.
pub(crate) type SheetIntegrals = [[Complex; 3]; 4];

pub(crate) struct Integrator<'a> {
    pub tracker: Tracker<'a>,
    pub bits: u32,
    /// Required absolute accuracy, `10^-target`.
    pub target: f64,
}

impl Integrator<'_> {
    fn curve(&self) -> &AffineCurve {
        self.tracker.curve
    }

    fn zero(&self) -> SheetIntegrals {
        std::array::from_fn(|_| std::array::from_fn(|_| Complex::new(self.bits)))
    }

    /// Integrates over `piece` starting from roots `start` at `t = 0`;
    /// returns the integrals and the roots at `t = 1`.
    pub(crate) fn integrate(&self, piece: &Piece) -> impl Fn(&Roots64) -> Result<(SheetIntegrals, Roots64)> + '_ {
        let sing = piece.singularities(&self.tracker.branch);
        let mut ps = Vec::new();
        panels(&sing, 0.0, 1.0, 0, &mut ps);
        let piece = piece.clone();
        move |start: &Roots64| {
            let mut total = self.zero();
            let mut roots = *start;
            for &(a, b, rho) in &ps {
                let part = self.panel(&piece, a, b, rho, &roots)?;
                for (ts, ps) in total.iter_mut().zip(part.iter()) {
                    for (t, p) in ts.iter_mut().zip(ps) {
                        *t += p;
                    }
                }
                roots = self.tracker.track_through(&piece, a, &roots, &[b])?[0];
            }
            Ok((total, roots))
        }
    }

    fn panel(&self, piece: &Piece, a: f64, b: f64, rho: f64, start: &Roots64) -> Result<SheetIntegrals> {
        let est = (self.target * std::f64::consts::LN_10 / (2.0 * rho.ln())).ceil() as usize + 4;
        let mut idx = ORDERS.iter().position(|&n| n >= est).unwrap_or(ORDERS.len() - 2);
        loop {
            if idx + 1 >= ORDERS.len() {
                return Err(Error::Precision("quadrature did not converge near a branch point".into()));
            }
            let lo = self.fixed_order(piece, a, b, ORDERS[idx], start)?;
            let hi = self.fixed_order(piece, a, b, ORDERS[idx + 1], start)?;
            let mut worst = f64::NEG_INFINITY;
            for (l, h) in lo.iter().flatten().zip(hi.iter().flatten()) {
                let d = Complex::with_val(64, l - h);
                let m = Float::with_val(64, d.abs_ref());
                if !m.is_zero() {
                    let (mant, exp) = m.to_f64_exp();
                    worst = worst.max(mant.log10() + exp as f64 * std::f64::consts::LOG10_2);
                }
            }
            // Spectral convergence: the error at 1.5n is about the error at n to the power 1.5.
            if 1.5 * worst < -self.target {
                return Ok(hi);
            }
            idx += 1;
        }
    }

    fn fixed_order(&self, piece: &Piece, a: f64, b: f64, n: usize, start: &Roots64) -> Result<SheetIntegrals> {
        let bits = self.bits;
        let nodes = gauss_legendre(n, bits);
        let half = Float::with_val(bits, b - a) / 2u32;
        let mid = Float::with_val(bits, a + b) / 2u32;
        let ts: Vec<Float> = nodes.iter().map(|(u, _)| Float::with_val(bits, u * &half) + &mid).collect();
        let ts64: Vec<f64> = ts.iter().map(Float::to_f64).collect();
        let guesses = self.tracker.track_through(piece, a, start, &ts64)?;
        let terms: Vec<SheetIntegrals> = ts
            .par_iter()
            .zip(guesses.par_iter())
            .zip(nodes.par_iter())
            .map(|((t, guess), (_, w))| self.node(piece, t, guess, w))
            .collect::<Result<_>>()?;
        let mut total = self.zero();
        for term in &terms {
            for (ts, ps) in total.iter_mut().zip(term.iter()) {
                for (t, p) in ts.iter_mut().zip(ps) {
                    *t += p;
                }
            }
        }
        for v in total.iter_mut().flatten() {
            *v *= &half;
        }
        Ok(total)
    }

    fn node(&self, piece: &Piece, t: &Float, guess: &Roots64, w: &Float) -> Result<SheetIntegrals> {
        let bits = self.bits;
        let (x, dx) = piece.eval(t, bits);
        let start: Vec<Complex> = guess.iter().map(|y| Complex::with_val(53, (y.re, y.im))).collect();
        let ys = polish_roots(|b| self.curve().fiber_coeffs(&Complex::with_val(b, &x), b), &start, bits)?;
        let gap = min_gap(guess);
        for (y, g) in ys.iter().zip(guess) {
            if (c64(y) - g).norm() > gap / 4.0 {
                return Err(Error::Consistency("high precision root left its sheet".into()));
            }
        }
        let coeffs = self.curve().fiber_coeffs(&x, bits);
        let scale = Complex::with_val(bits, &dx * w);
        let mut out = self.zero();
        for (s, y) in ys.iter().enumerate() {
            let fy = self.curve().f_y(&coeffs, y, bits);
            let g = Complex::with_val(bits, &scale / &fy);
            out[s][0] = Complex::with_val(bits, &g * &x);
            out[s][1] = Complex::with_val(bits, &g * y);
            out[s][2] = g;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use rug::ops::Pow;

    use super::*;

    #[test]
    fn legendre_rule_is_exact_on_polynomials() {
        let bits = 256;
        let nodes = gauss_legendre(12, bits);
        assert_eq!(nodes.len(), 12);
        // integral of x^22 over [-1, 1] is 2/23
        let mut s = Float::new(bits);
        for (x, w) in nodes.iter() {
            s += Float::with_val(bits, x).pow(22u32) * w;
        }
        let err = (s - Float::with_val(bits, 2) / 23u32).abs().to_f64();
        assert!(err < 1e-70, "{err:e}");
        assert_eq!(gauss_legendre(13, bits).len(), 13);
    }

    #[test]
    fn panels_refine_toward_singularity() {
        let mut ps = Vec::new();
        panels(&[Complex64::new(1.001, 0.0)], 0.0, 1.0, 0, &mut ps);
        assert!(ps.len() > 5);
        assert!(ps.iter().all(|p| p.2 >= MIN_RHO));
        let last = ps.last().unwrap();
        assert!(last.1 - last.0 < 0.004);
    }
}
