//! Cycles on the curve built from lifts of the monodromy loops, their
//! intersection pairing, and reduction to a symplectic basis.
//!
//! Edge `4k + s` is the lift of loop `k` that starts on sheet `s`; it ends on
//! sheet `sigma_k(s)`. The four sheets over the base point are the vertices.
//! Closed edge combinations form a lattice of rank `4r - 3` which surjects
//! onto `H_1` of the curve.

use std::collections::VecDeque;

use super::monodromy::{inverse, MonodromyData};
use crate::error::{Error, Result};

/// Variant of the deterministic choices made while building a basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HomologyStrategy {
    #[default]
    Standard,
    /// Different spanning tree root, edge order and pivot order.
    Alternate,
}

/// Cycle lattice with its intersection matrix.
#[derive(Clone, Debug)]
pub struct Homology {
    /// Each cycle as integer coefficients on the `4 r` edges.
    pub cycles: Vec<Vec<i64>>,
    pub intersection: Vec<Vec<i64>>,
}

/// A symplectic basis `a_1, a_2, a_3, b_1, b_2, b_3` in edge coordinates,
/// with `a_i . b_j = delta_ij` and `a_i . a_j = b_i . b_j = 0`.
#[derive(Clone, Debug)]
pub struct SymplecticBasis {
    pub cycles: Vec<Vec<i64>>,
    /// Lattice cycles pairing trivially with everything; null-homologous.
    pub radical: Vec<Vec<i64>>,
    /// Rows: the six basis cycles as combinations of the lattice cycles.
    pub change: Vec<Vec<i64>>,
}

fn edge_count(m: &MonodromyData) -> usize {
    4 * m.permutations.len()
}

/// Local intersection number at the base point.
///
/// Half-edges at every vertex are ordered counter-clockwise from the cut:
/// loop `k` leaves just clockwise of its ray and returns just
/// counter-clockwise of it. With outgoing flows counted positively,
/// `I(c1, c2) = sum_j f2(h_j) sum_{i in S(j)} f1(h_i)`, where `S(j)`
/// contains the half-edges up to and including `j` when `h_j` is outgoing
/// and strictly before `j` when it is incoming.
pub fn intersection_number(m: &MonodromyData, c1: &[i64], c2: &[i64]) -> i64 {
    let r = m.permutations.len();
    let inv: Vec<[usize; 4]> = m.permutations.iter().map(inverse).collect();
    let mut total = 0i64;
    for v in 0..4 {
        let mut prefix = 0i64;
        for k in 0..r {
            let out = 4 * k + v;
            prefix += c1[out];
            total += c2[out] * prefix;
            let inc = 4 * k + inv[k][v];
            total -= c2[inc] * prefix;
            prefix -= c1[inc];
        }
    }
    total
}

/// Cycle basis of the loop graph from a breadth-first spanning tree.
pub fn homology_basis(m: &MonodromyData, strategy: HomologyStrategy) -> Result<Homology> {
    let ne = edge_count(m);
    let edge_end = |e: usize| (e % 4, m.permutations[e / 4][e % 4]);
    let edges: Vec<usize> = match strategy {
        HomologyStrategy::Standard => (0..ne).collect(),
        HomologyStrategy::Alternate => (0..ne).rev().collect(),
    };
    let root = match strategy {
        HomologyStrategy::Standard => 0,
        HomologyStrategy::Alternate => 3,
    };
    // parent[v] = (edge, +1 if the edge points toward v, -1 otherwise)
    let mut parent: [Option<(usize, i64)>; 4] = [None; 4];
    let mut seen = [false; 4];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut tree = vec![false; ne];
    while let Some(u) = queue.pop_front() {
        for &e in &edges {
            let (a, b) = edge_end(e);
            let (next, sign) = if a == u && !seen[b] {
                (b, 1)
            } else if b == u && !seen[a] {
                (a, -1)
            } else {
                continue;
            };
            seen[next] = true;
            parent[next] = Some((e, sign));
            tree[e] = true;
            queue.push_back(next);
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Consistency("monodromy is not transitive".into()));
    }
    // Tree path from the root to v, as an edge vector.
    let path = |mut v: usize| -> Vec<i64> {
        let mut c = vec![0i64; ne];
        while let Some((e, sign)) = parent[v] {
            c[e] += sign;
            let (a, b) = edge_end(e);
            v = if sign == 1 { a } else { b };
        }
        c
    };
    let mut cycles = Vec::new();
    for &e in &edges {
        if tree[e] {
            continue;
        }
        let (a, b) = edge_end(e);
        let mut c = path(a);
        c[e] += 1;
        for (ci, pi) in c.iter_mut().zip(path(b)) {
            *ci -= pi;
        }
        cycles.push(c);
    }
    let intersection = cycles
        .iter()
        .map(|c1| cycles.iter().map(|c2| intersection_number(m, c1, c2)).collect())
        .collect();
    Ok(Homology { cycles, intersection })
}

/// Integral change of basis bringing the intersection matrix to the form
/// `[[0, I], [-I, 0]]` on six cycles and zero on the rest.
///
/// Alternating Smith reduction over `Z`: a pivot of least absolute value is
/// moved into place and used to clear its row and column by Euclidean steps.
/// Fails unless exactly three blocks appear, each with entry 1.
pub fn symplectic_basis(h: &Homology, strategy: HomologyStrategy) -> Result<SymplecticBasis> {
    let n = h.cycles.len();
    let mut a: Vec<Vec<i128>> = h.intersection.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    for i in 0..n {
        if a[i][i] != 0 || (0..n).any(|j| a[i][j] != -a[j][i]) {
            return Err(Error::Consistency("intersection matrix is not alternating".into()));
        }
    }
    // Rows of `u` are the current basis vectors in lattice coordinates.
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    let swap = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        if i != j {
            a.swap(i, j);
            for row in a.iter_mut() {
                row.swap(i, j);
            }
            u.swap(i, j);
        }
    };
    // v_k += q v_l
    let add = |a: &mut Vec<Vec<i128>>, u: &mut Vec<Vec<i128>>, k: usize, l: usize, q: i128| {
        for j in 0..n {
            let t = a[l][j];
            a[k][j] += q * t;
        }
        for i in 0..n {
            let t = a[i][l];
            a[i][k] += q * t;
        }
        for j in 0..n {
            let t = u[l][j];
            u[k][j] += q * t;
        }
    };
    let mut blocks = 0;
    let mut d = Vec::new();
    loop {
        let s = 2 * blocks;
        if s + 1 >= n {
            break;
        }
        let range: Vec<usize> = match strategy {
            HomologyStrategy::Standard => (s..n).collect(),
            HomologyStrategy::Alternate => (s..n).rev().collect(),
        };
        let mut best: Option<(i128, usize, usize)> = None;
        for &i in &range {
            for &j in &range {
                let v = a[i][j];
                if v > 0 && best.map_or(true, |(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        swap(&mut a, &mut u, s, i);
        let j = if j == s { i } else { j };
        swap(&mut a, &mut u, s + 1, j);
        let mut restart = false;
        for k in s + 2..n {
            let p = a[s][s + 1];
            // clear <v_s, v_k> using v_{s+1}, then <v_{s+1}, v_k> using v_s
            let q = a[s][k].div_euclid(p);
            if q != 0 {
                add(&mut a, &mut u, k, s + 1, -q);
            }
            let q = a[s + 1][k].div_euclid(-p);
            if q != 0 {
                add(&mut a, &mut u, k, s, -q);
            }
            if a[s][k] != 0 || a[s + 1][k] != 0 {
                restart = true;
                break;
            }
        }
        if restart {
            continue;
        }
        d.push(a[s][s + 1]);
        blocks += 1;
    }
    if blocks != 3 || d.iter().any(|&x| x != 1) {
        return Err(Error::Consistency(format!(
            "intersection form has invariants {d:?}; expected three unimodular blocks"
        )));
    }
    let to_i64 = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("homology change of basis"));
    let order = [0usize, 2, 4, 1, 3, 5];
    let change: Vec<Vec<i64>> = order
        .iter()
        .map(|&r| u[r].iter().map(|&x| to_i64(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let ne = h.cycles.first().map_or(0, Vec::len);
    let rest: Vec<Vec<i64>> = u[6..]
        .iter()
        .map(|row| row.iter().map(|&x| to_i64(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let to_edges = |rows: &[Vec<i64>]| -> Vec<Vec<i64>> {
        rows.iter()
        .map(|row| {
            let mut c = vec![0i64; ne];
            for (coef, cyc) in row.iter().zip(&h.cycles) {
                for (ci, x) in c.iter_mut().zip(cyc) {
                    *ci += coef * x;
                }
            }
            c
        })
        .collect()
    };
    Ok(SymplecticBasis { cycles: to_edges(&change), radical: to_edges(&rest), change })
}
