use num_complex::Complex64;
use rayon::prelude::*;
use rug::Complex;

use super::curve::{discriminant_points, fiber_roots, AffineCurve};
use super::track::{c64, match_roots, Piece, Roots64, Tracker};
use crate::arith::{bits_for_digits, BigComplex};
use crate::error::{Error, Result};

pub type Permutation = [usize; 4];

const CANDIDATES: usize = 401;
const ARCS: usize = 8;

/// Geometry of the loop around one branch point: the ray from the base
/// point to `q = center + radius exp(2 pi i phi0)` followed by the full
/// counter-clockwise circle through `q`.
#[derive(Clone, Debug)]
pub struct LoopGeometry {
    pub center: Complex64,
    pub radius: f64,
    /// Direction of the centre seen from the base point, in radians.
    pub angle: f64,
    /// Angle of `q` on the circle, in turns.
    pub phi0_turns: f64,
}

impl LoopGeometry {
    pub(crate) fn ray(&self, base: &Complex, bits: u32) -> Piece {
        let q = self.arcs(bits)[0].eval(&rug::Float::new(bits), bits).0;
        Piece::segment(base, &q)
    }

    pub(crate) fn arcs(&self, bits: u32) -> Vec<Piece> {
        let c = Complex::with_val(bits, (self.center.re, self.center.im));
        (0..ARCS)
            .map(|j| {
                Piece::arc(&c, self.radius, self.phi0_turns, j as f64 / ARCS as f64, 1.0 / ARCS as f64, bits)
            })
            .collect()
    }
}

/// Branch data of the `x`-projection.
#[derive(Clone, Debug)]
pub struct MonodromyData {
    pub base_point: BigComplex,
    /// Fibre over the base point; sheet `s` is `base_roots[s]`.
    pub base_roots: [BigComplex; 4],
    /// Branch points in loop order (counter-clockwise from `cut_angle`).
    pub discriminant_points: Vec<BigComplex>,
    pub loops: Vec<LoopGeometry>,
    /// `permutations[k][s]`: sheet reached from sheet `s` around loop `k`.
    pub permutations: Vec<Permutation>,
    /// Monodromy of a large counter-clockwise circle, tracked independently.
    pub big_circle: Permutation,
    pub cut_angle: f64,
}

pub fn compose(first: &Permutation, then: &Permutation) -> Permutation {
    std::array::from_fn(|s| then[first[s]])
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut out = [0; 4];
    for (s, &t) in p.iter().enumerate() {
        out[t] = s;
    }
    out
}

pub fn cycle_count(p: &Permutation) -> usize {
    let mut seen = [false; 4];
    let mut n = 0;
    for s in 0..4 {
        if !seen[s] {
            n += 1;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = p[t];
            }
        }
    }
    n
}

impl MonodromyData {
    /// Loops composed in order, first loop first.
    pub fn product(&self) -> Permutation {
        self.permutations.iter().fold([0, 1, 2, 3], |acc, p| compose(&acc, p))
    }

    /// Monodromy at infinity, the inverse of the big circle.
    pub fn infinity(&self) -> Permutation {
        inverse(&self.big_circle)
    }

    /// The loops multiply to the inverse of the monodromy at infinity.
    pub fn sphere_relation_holds(&self) -> bool {
        compose(&self.product(), &self.infinity()) == [0, 1, 2, 3]
    }

    pub fn is_transitive(&self) -> bool {
        let mut reached = [true, false, false, false];
        loop {
            let mut changed = false;
            for p in &self.permutations {
                for s in 0..4 {
                    if reached[s] && !reached[p[s]] {
                        reached[p[s]] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return reached.iter().all(|&r| r);
            }
        }
    }

    /// Riemann-Hurwitz: `2g - 2 = 4 (-2) + sum (4 - #cycles)` over all
    /// branch points including infinity.
    pub fn genus(&self) -> i64 {
        let ram: i64 = self
            .permutations
            .iter()
            .chain(std::iter::once(&self.infinity()))
            .map(|p| 4 - cycle_count(p) as i64)
            .sum();
        (-8 + ram + 2) / 2
    }
}

/// Options controlling the base point choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MonodromyOptions {
    /// 0 selects the best base point; `k` the best one at least a quarter of
    /// the branch-point spread away from the `k` better ones.
    pub base_point_rank: usize,
}

fn seg_dist(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Loop radii for base point `b`: a third of the smallest distance from
/// each point to the other points, to the other rays and to `b`.
fn radii(b: Complex64, pts: &[Complex64]) -> Vec<f64> {
    pts.iter()
        .enumerate()
        .map(|(k, &p)| {
            let mut d = (p - b).norm();
            for (j, &q) in pts.iter().enumerate() {
                if j != k {
                    d = d.min((p - q).norm()).min(seg_dist(p, b, q));
                }
            }
            d / 3.0
        })
        .collect()
}

/// Base point maximizing the smallest loop radius; candidates lie on the
/// real axis unless every real candidate is poor, in which case two
/// horizontal lines off the axis are added.
fn choose_base_point(pts: &[Complex64], rank: usize) -> Complex64 {
    let m = pts.iter().map(|p| p.re).sum::<f64>() / pts.len() as f64;
    let span = pts.iter().map(|p| (p - m).norm()).fold(1.0, f64::max);
    let min_pair = pts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| pts[..i].iter().map(move |q| (p - q).norm()))
        .fold(span, f64::min);
    let line = |im: f64| -> Vec<(Complex64, f64)> {
        (0..CANDIDATES)
            .map(|j| {
                let b = Complex64::new(m + span * (-2.0 + 4.0 * j as f64 / (CANDIDATES - 1) as f64), im);
                let s = radii(b, pts).into_iter().fold(f64::INFINITY, f64::min);
                (b, s)
            })
            .collect()
    };
    let mut cands = line(0.0);
    let best_real = cands.iter().map(|c| c.1).fold(0.0, f64::max);
    if best_real < min_pair / 30.0 {
        cands.extend(line(0.37 * span));
        cands.extend(line(-0.61 * span));
    }
    let mut chosen: Vec<Complex64> = Vec::new();
    for _ in 0..=rank {
        let next = cands
            .iter()
            .filter(|(b, _)| chosen.iter().all(|c| (b - c).norm() > span / 4.0))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .map(|c| c.0)
            .expect("candidate grid is large");
        chosen.push(next);
    }
    *chosen.last().unwrap()
}

pub fn monodromy(curve: &AffineCurve, digits: u32) -> Result<MonodromyData> {
    monodromy_with(curve, digits, MonodromyOptions::default())
}

pub fn monodromy_with(curve: &AffineCurve, digits: u32, opts: MonodromyOptions) -> Result<MonodromyData> {
    let bits = bits_for_digits(digits);
    let points = discriminant_points(curve, digits)?;
    let pts64: Vec<Complex64> = points.iter().map(|p| c64(p.value())).collect();
    let b = choose_base_point(&pts64, opts.base_point_rank);
    let rs = radii(b, &pts64);
    let mut angles: Vec<f64> = pts64.iter().map(|p| (p - b).arg().rem_euclid(std::f64::consts::TAU)).collect();
    let mut sorted = angles.clone();
    sorted.sort_by(|a, c| a.partial_cmp(c).unwrap());
    let (mut gap, mut cut) = (0.0, 0.0);
    for i in 0..sorted.len() {
        let next = if i + 1 < sorted.len() { sorted[i + 1] } else { sorted[0] + std::f64::consts::TAU };
        if next - sorted[i] > gap {
            gap = next - sorted[i];
            cut = (sorted[i] + gap / 2.0).rem_euclid(std::f64::consts::TAU);
        }
    }
    let offset = |a: f64| (a - cut).rem_euclid(std::f64::consts::TAU);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| offset(angles[i]).partial_cmp(&offset(angles[j])).unwrap());
    angles = order.iter().map(|&i| angles[i]).collect();

    let base_point = BigComplex::from_f64(b.re, b.im, digits);
    let base_roots = fiber_roots(curve, &base_point, digits)?;
    let start: Roots64 = base_roots.clone().map(|y| c64(y.value()));
    let loops: Vec<LoopGeometry> = order
        .iter()
        .zip(&angles)
        .map(|(&i, &angle)| LoopGeometry {
            center: pts64[i],
            radius: rs[i],
            angle,
            phi0_turns: (b - pts64[i]).arg() / std::f64::consts::TAU,
        })
        .collect();
    let tracker = Tracker { curve, branch: pts64.clone() };
    let base = Complex::with_val(bits, base_point.value());
    let permutations = loops
        .par_iter()
        .map(|lp| -> Result<Permutation> {
            let at_q = tracker.track_through(&lp.ray(&base, 128), 0.0, &start, &[1.0])?[0];
            let mut roots = at_q;
            for arc in lp.arcs(128) {
                roots = tracker.track_through(&arc, 0.0, &roots, &[1.0])?[0];
            }
            match_roots(&at_q, &roots)
        })
        .collect::<Result<Vec<_>>>()?;

    let reach = pts64.iter().map(|p| (p - b).norm()).fold(0.0, f64::max) * 1.5 + 1.0;
    let far = b + Complex64::from_polar(reach, cut);
    let far_hp = Complex::with_val(128, (far.re, far.im));
    let out = tracker.track_through(&Piece::segment(&base, &far_hp), 0.0, &start, &[1.0])?[0];
    let b_hp = Complex::with_val(128, (b.re, b.im));
    let circle = Piece::arc(&b_hp, reach, cut / std::f64::consts::TAU, 0.0, 1.0, 128);
    let around = tracker.track_through(&circle, 0.0, &out, &[1.0])?[0];
    let big_circle = match_roots(&out, &around)?;

    let data = MonodromyData {
        base_point,
        base_roots,
        discriminant_points: order.iter().map(|&i| points[i].clone()).collect(),
        loops,
        permutations,
        big_circle,
        cut_angle: cut,
    };
    if !data.sphere_relation_holds() {
        return Err(Error::Consistency("monodromy violates the sphere relation".into()));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{fermat_quartic, klein_quartic};

    #[test]
    fn fermat_monodromy() {
        let c = AffineCurve::new(&fermat_quartic()).unwrap();
        let m = monodromy(&c, 30).unwrap();
        assert_eq!(m.permutations.len(), 4);
        for p in &m.permutations {
            assert_eq!(cycle_count(p), 1, "{p:?}");
        }
        assert!(m.sphere_relation_holds());
        assert!(m.is_transitive());
        assert_eq!(m.genus(), 3);
    }

    #[test]
    fn klein_monodromy() {
        let c = AffineCurve::new(&klein_quartic()).unwrap();
        let m = monodromy(&c, 30).unwrap();
        assert!(m.sphere_relation_holds());
        assert!(m.is_transitive());
        assert_eq!(m.genus(), 3);
        let other = monodromy_with(&c, 30, MonodromyOptions { base_point_rank: 1 }).unwrap();
        assert!(other.base_point.log10_dist(&m.base_point) > -5.0);
        assert_eq!(other.genus(), 3);
    }
}
