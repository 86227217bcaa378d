//! Dense truncated-matrix oracle, written independently of the library's
//! row oracles and sparse application.
//!
//! Matrices are built straight from the Laplacian formula on the principal
//! `N×N` section and raised to powers by full dense multiplication. Only the
//! neighbour lists and the scalar type are shared with the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use omegalap::{GraphOracle, Scalar, VertexId};

pub type Dense = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weights {
    Uniform,
    Normalized,
}

fn nbrs(g: &GraphOracle, k: usize) -> Vec<usize> {
    g.neighbors(VertexId::new(k as u64))
        .unwrap()
        .into_iter()
        .map(|v| v.index() as usize)
        .collect()
}

fn gamma(g: &GraphOracle, w: Weights, k: usize) -> Scalar {
    match w {
        Weights::Uniform => Scalar::one(),
        Weights::Normalized => Scalar::ratio(1, nbrs(g, k).len() as i64),
    }
}

pub fn zeros(n: usize) -> Dense {
    vec![vec![Scalar::zero(); n]; n]
}

pub fn identity(n: usize) -> Dense {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Scalar::one();
    }
    m
}

/// Section of `B' = β·γ` (the quasiadjacency part of `α + βΔ`).
pub fn adjacency_section(g: &GraphOracle, w: Weights, beta: &Scalar, n: usize) -> Dense {
    let mut m = zeros(n);
    for k in 1..=n {
        let gk = gamma(g, w, k);
        for l in nbrs(g, k) {
            if l <= n {
                m[k - 1][l - 1] = beta * &gk;
            }
        }
    }
    m
}

/// Section of `α·Id + β·Δ_G`, from `Δf(v) = Σ γ (f(v) - f(w))`.
pub fn affine_laplacian_section(
    g: &GraphOracle,
    w: Weights,
    alpha: &Scalar,
    beta: &Scalar,
    n: usize,
) -> Dense {
    let mut m = zeros(n);
    for k in 1..=n {
        let gk = gamma(g, w, k);
        let mut degree = Scalar::zero();
        for l in nbrs(g, k) {
            degree += &gk;
            if l <= n {
                m[k - 1][l - 1] = -(beta * &gk);
            }
        }
        m[k - 1][k - 1] = alpha + &(beta * &degree);
    }
    m
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = zeros(n);
    for i in 0..n {
        for p in 0..n {
            if a[i][p].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[p][j].is_zero() {
                    c[i][j] = &c[i][j] + &(&a[i][p] * &b[p][j]);
                }
            }
        }
    }
    c
}

/// `[A^0, A^1, ..., A^k_max]`.
pub fn powers(a: &Dense, k_max: usize) -> Vec<Dense> {
    let mut out = vec![identity(a.len())];
    for _ in 0..k_max {
        let next = matmul(out.last().unwrap(), a);
        out.push(next);
    }
    out
}

/// `[e_i A^0, e_i A^1, ..., e_i A^k_max]` for the 1-based row `i`.
pub fn row_powers(a: &Dense, i: usize, k_max: usize) -> Vec<Vec<Scalar>> {
    let n = a.len();
    let mut row = vec![Scalar::zero(); n];
    row[i - 1] = Scalar::one();
    let mut out = vec![row];
    for _ in 0..k_max {
        let prev = out.last().unwrap();
        let mut next = vec![Scalar::zero(); n];
        for (p, x) in prev.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in a[p].iter().enumerate() {
                if !y.is_zero() {
                    next[j] = &next[j] + &(x * y);
                }
            }
        }
        out.push(next);
    }
    out
}

pub fn matpow(a: &Dense, k: usize) -> Dense {
    powers(a, k).pop().unwrap()
}

/// Plain BFS distance.
pub fn bfs_distance(g: &GraphOracle, u: usize, v: usize) -> usize {
    let mut seen = BTreeSet::from([u]);
    let mut queue = VecDeque::from([(u, 0)]);
    while let Some((x, d)) = queue.pop_front() {
        if x == v {
            return d;
        }
        for y in nbrs(g, x) {
            if seen.insert(y) {
                queue.push_back((y, d + 1));
            }
        }
    }
    panic!("v{v} unreachable from v{u}");
}

/// Largest index within distance `r` of `v_1`; every walk of length `r`
/// from `v_1` stays below it.
pub fn ball_max_index(g: &GraphOracle, r: usize) -> usize {
    ball_max_index_from(g, 1, r)
}

pub fn ball_max_index_from(g: &GraphOracle, center: usize, r: usize) -> usize {
    *ball(g, center, r).iter().max().unwrap()
}

/// Vertices within distance `r` of `center`, by repeated frontier expansion.
pub fn ball(g: &GraphOracle, center: usize, r: usize) -> BTreeSet<usize> {
    let mut frontier = BTreeSet::from([center]);
    let mut all = frontier.clone();
    for _ in 0..r {
        frontier = frontier
            .iter()
            .flat_map(|&x| nbrs(g, x))
            .filter(|y| !all.contains(y))
            .collect();
        all.extend(frontier.iter().copied());
    }
    all
}

/// Walk existence by brute force enumeration of all walks of length `j`.
pub fn walk_brute(g: &GraphOracle, u: usize, v: usize, j: usize) -> bool {
    if j == 0 {
        return u == v;
    }
    nbrs(g, u).into_iter().any(|w| walk_brute(g, w, v, j - 1))
}

pub fn sign_pow(k: usize) -> Scalar {
    if k % 2 == 1 {
        Scalar::integer(-1)
    } else {
        Scalar::one()
    }
}
