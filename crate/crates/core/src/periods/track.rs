//! Paths in the `x`-plane and double precision continuation of the fibre.

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float};

use super::curve::AffineCurve;
use crate::error::{Error, Result};

pub(crate) type Roots64 = [Complex64; 4];

/// A parametrized piece of path, `t` in `[0, 1]`.
#[derive(Clone, Debug)]
pub(crate) enum Piece {
    /// `from + t (to - from)`.
    Segment { from: Complex, to: Complex },
    /// `center + radius exp(i (phi0 + t sweep))`.
    Arc { center: Complex, radius: Float, phi0: Float, sweep: Float },
}

impl Piece {
    pub(crate) fn segment(from: &Complex, to: &Complex) -> Self {
        Piece::Segment { from: from.clone(), to: to.clone() }
    }

    /// Arc starting at angle `phi0 + offset` and sweeping `sweep`, all in
    /// turns of `2 pi`. The two start terms are lifted to high precision
    /// separately so that consecutive arcs join exactly.
    pub(crate) fn arc(center: &Complex, radius: f64, phi0: f64, offset: f64, sweep: f64, bits: u32) -> Self {
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        let start = Float::with_val(bits, phi0) + offset;
        Piece::Arc {
            center: center.clone(),
            radius: Float::with_val(bits, radius),
            phi0: Float::with_val(bits, &two_pi * &start),
            sweep: two_pi * sweep,
        }
    }

    pub(crate) fn x64(&self, t: f64) -> Complex64 {
        match self {
            Piece::Segment { from, to } => {
                let a = c64(from);
                a + (c64(to) - a) * t
            }
            Piece::Arc { center, radius, phi0, sweep } => {
                let phi = phi0.to_f64() + t * sweep.to_f64();
                c64(center) + Complex64::from_polar(radius.to_f64(), phi)
            }
        }
    }

    /// `(x(t), dx/dt)` at precision `bits`.
    pub(crate) fn eval(&self, t: &Float, bits: u32) -> (Complex, Complex) {
        match self {
            Piece::Segment { from, to } => {
                let d = Complex::with_val(bits, to - from);
                let x = Complex::with_val(bits, &d * t) + from;
                (x, d)
            }
            Piece::Arc { center, radius, phi0, sweep } => {
                let phi = Float::with_val(bits, sweep * t) + phi0;
                let e = Complex::with_val(bits, (Float::new(bits), phi)).exp() * radius;
                let x = Complex::with_val(bits, &e + center);
                let dx = Complex::with_val(bits, (Float::new(bits), Float::with_val(bits, sweep))) * e;
                (x, dx)
            }
        }
    }

    /// Images in the `t`-plane of the branch points, except those closer
    /// than half the radius to an arc centre (the integrand is analytic
    /// there as a function of the angle).
    pub(crate) fn singularities(&self, points: &[Complex64]) -> Vec<Complex64> {
        match self {
            Piece::Segment { from, to } => {
                let (a, b) = (c64(from), c64(to));
                points.iter().map(|p| (p - a) / (b - a)).collect()
            }
            Piece::Arc { center, radius, phi0, sweep } => {
                let (c, r, p0, s) = (c64(center), radius.to_f64(), phi0.to_f64(), sweep.to_f64());
                let mut out = Vec::new();
                for p in points {
                    let w = (p - c) / r;
                    if w.norm() < 0.5 {
                        continue;
                    }
                    let phi = -Complex64::i() * w.ln();
                    for k in -2..=2 {
                        out.push((phi + 2.0 * std::f64::consts::PI * k as f64 - p0) / s);
                    }
                }
                out
            }
        }
    }
}

pub(crate) fn c64(z: &Complex) -> Complex64 {
    Complex64::new(z.real().to_f64(), z.imag().to_f64())
}

fn newton64(c: &[Complex64; 5], y0: Complex64) -> Option<Complex64> {
    let mut y = y0;
    for _ in 0..30 {
        let mut p = c[4];
        let mut dp = Complex64::new(0.0, 0.0);
        for j in (0..4).rev() {
            dp = dp * y + p;
            p = p * y + c[j];
        }
        if dp.norm() == 0.0 {
            return None;
        }
        let corr = p / dp;
        y -= corr;
        if corr.norm() <= 1e-14 * y.norm().max(1.0) {
            return Some(y);
        }
    }
    None
}

pub(crate) fn min_gap(r: &Roots64) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..4 {
        for j in 0..i {
            best = best.min((r[i] - r[j]).norm());
        }
    }
    best
}

/// One accepted step: every root moves by less than a third of the minimal
/// pairwise distance, and the continued roots stay distinct.
fn try_step(curve: &AffineCurve, x: Complex64, from: &Roots64) -> Option<Roots64> {
    let c = curve.fiber_coeffs_f64(x);
    let gap = min_gap(from);
    let mut out = *from;
    for (o, y0) in out.iter_mut().zip(from) {
        let y = newton64(&c, *y0)?;
        if (y - y0).norm() >= gap / 3.0 {
            return None;
        }
        *o = y;
    }
    if min_gap(&out) < gap / 3.0 {
        return None;
    }
    Some(out)
}

/// Double precision continuation of the fibre, aware of the branch points.
pub(crate) struct Tracker<'a> {
    pub curve: &'a AffineCurve,
    pub branch: Vec<Complex64>,
}

impl Tracker<'_> {
    fn clearance(&self, x: Complex64) -> f64 {
        self.branch.iter().map(|p| (x - p).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Continues the four roots along `piece` from `t0` through each of the
    /// increasing parameters in `ts`, returning the roots at each of them.
    ///
    /// Besides the root-motion test, a step may move `x` by at most half its
    /// distance to the nearest branch point, so no branch point is encircled
    /// within a single step.
    pub(crate) fn track_through(&self, piece: &Piece, t0: f64, start: &Roots64, ts: &[f64]) -> Result<Vec<Roots64>> {
        let mut t = t0;
        let mut roots = *start;
        let mut out = Vec::with_capacity(ts.len());
        let mut h: f64 = 1.0 / 64.0;
        for &target in ts {
            while t < target {
                let step = h.min(target - t);
                let x0 = piece.x64(t);
                let x1 = piece.x64(t + step);
                let near = (x1 - x0).norm() <= 0.5 * self.clearance(x0)
                    && (piece.x64(t + step / 2.0) - x0).norm() <= 0.5 * self.clearance(x0);
                match near.then(|| try_step(self.curve, x1, &roots)).flatten() {
                    Some(r) => {
                        roots = r;
                        t += step;
                        h = (step * 2.0).max(h).min(1.0 / 16.0);
                    }
                    None => {
                        h = step / 2.0;
                        if h < 1e-13 {
                            return Err(Error::Consistency(format!("root continuation stalled at t = {t}")));
                        }
                    }
                }
            }
            out.push(roots);
        }
        Ok(out)
    }
}

/// Sheet permutation taking roots `start` to `end`: `perm[s]` is the index
/// in `start` of the root that sheet `s` arrives at.
pub(crate) fn match_roots(start: &Roots64, end: &Roots64) -> Result<[usize; 4]> {
    let gap = min_gap(start);
    let mut perm = [usize::MAX; 4];
    for (s, y) in end.iter().enumerate() {
        let (idx, d) = start
            .iter()
            .enumerate()
            .map(|(i, z)| (i, (y - z).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if d > gap / 4.0 {
            return Err(Error::Consistency("continued roots do not return to the fibre".into()));
        }
        perm[s] = idx;
    }
    let mut seen = [false; 4];
    for &p in &perm {
        if seen[p] {
            return Err(Error::Consistency("continuation is not a permutation of sheets".into()));
        }
        seen[p] = true;
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::fermat_quartic;

    fn fermat_roots(curve: &AffineCurve, x: Complex64) -> Roots64 {
        let ys = super::super::curve::fiber_roots(curve, &crate::arith::BigComplex::from_f64(x.re, x.im, 30), 30).unwrap();
        ys.map(|y| c64(y.value()))
    }

    fn tracker(curve: &AffineCurve) -> Tracker<'_> {
        let branch = super::super::curve::discriminant_points(curve, 20).unwrap();
        Tracker { curve, branch: branch.iter().map(|p| c64(p.value())).collect() }
    }

    #[test]
    fn constant_and_reversed_paths() {
        let curve = AffineCurve::new(&fermat_quartic()).unwrap();
        let tr = tracker(&curve);
        let a = Complex::with_val(128, (0.1, 0.2));
        let b = Complex::with_val(128, (-0.4, 0.3));
        let start = fermat_roots(&curve, c64(&a));
        let same = tr.track_through(&Piece::segment(&a, &a), 0.0, &start, &[1.0]).unwrap();
        assert_eq!(match_roots(&start, &same[0]).unwrap(), [0, 1, 2, 3]);
        let there = tr.track_through(&Piece::segment(&a, &b), 0.0, &start, &[1.0]).unwrap()[0];
        let back = tr.track_through(&Piece::segment(&b, &a), 0.0, &there, &[1.0]).unwrap()[0];
        assert_eq!(match_roots(&start, &back).unwrap(), [0, 1, 2, 3]);
    }

    #[test]
    fn loop_around_fermat_branch_point_is_a_four_cycle() {
        let curve = AffineCurve::new(&fermat_quartic()).unwrap();
        let tr = tracker(&curve);
        let p = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let start_x = p + 0.3;
        let start = fermat_roots(&curve, start_x);
        let circle = Piece::arc(&Complex::with_val(128, (p.re, p.im)), 0.3, 0.0, 0.0, 1.0, 128);
        let end = tr.track_through(&circle, 0.0, &start, &[1.0]).unwrap()[0];
        let perm = match_roots(&start, &end).unwrap();
        let mut s = 0;
        for k in 1..=4 {
            s = perm[s];
            assert_eq!(s == 0, k == 4);
        }
    }
}
