//! Graph Laplacians and their splitting into diagonal and quasiadjacency parts.
//!
//! `Δ_G f(v) = Σ_{w~v} γ_{v,w} (f(v) - f(w))` splits as `Δ_G = D - B` with
//! `D` the weighted degree and `b_{v,w} = γ_{v,w}` on edges. Only for
//! normalized weights is `D` the identity; in general it is a non-constant
//! diagonal, and every operator here carries it explicitly.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{GraphOracle, VertexId};
use crate::operator::BandedOperator;
use crate::scalar::{Field, Scalar};
use crate::weights::WeightScheme;

/// A matrix `B` supported exactly on the edges of a graph whose entries all
/// lie on one ray: `b_{k,l} = c_{k,l} / α` with magnitudes `c_{k,l} > 0` on
/// edges and a fixed nonzero sign scalar `α`.
///
/// The magnitudes are the edge weights of a [`WeightScheme`].
#[derive(Debug, Clone)]
pub struct Quasiadjacency {
    graph: GraphOracle,
    weights: WeightScheme,
    sign: Scalar,
}

impl Quasiadjacency {
    pub fn new(graph: GraphOracle, weights: WeightScheme, sign: Scalar) -> Result<Self> {
        if sign.is_zero() {
            return Err(Error::SignZero);
        }
        weights.check_covers(&graph)?;
        Ok(Quasiadjacency {
            graph,
            weights,
            sign,
        })
    }

    pub fn graph(&self) -> &GraphOracle {
        &self.graph
    }

    pub fn weights(&self) -> &WeightScheme {
        &self.weights
    }

    /// The sign scalar `α` with `α·b_{k,l} ≥ 0`.
    pub fn sign(&self) -> &Scalar {
        &self.sign
    }

    /// `c_{k,l} = α·b_{k,l}`; zero off the edge set.
    pub fn magnitude(&self, k: VertexId, l: VertexId) -> Result<BigRational> {
        if self.graph.neighbors(k)?.contains(&l) {
            self.weights.gamma(&self.graph, k, l)
        } else {
            Ok(BigRational::zero())
        }
    }

    /// `b_{k,l}`.
    pub fn entry(&self, k: VertexId, l: VertexId) -> Result<Scalar> {
        let c = self.magnitude(k, l)?;
        Ok(&Scalar::real(c) / &self.sign)
    }

    /// `B` as a banded operator of hopping radius 1.
    pub fn operator(&self) -> BandedOperator {
        let weights = self.weights.clone();
        let inv = self.sign.recip().expect("sign scalar is nonzero");
        BandedOperator::from_rows(self.graph.clone(), 1, move |g, k| {
            let nb = g.neighbors(k)?;
            match &weights {
                WeightScheme::Custom(_) => nb
                    .into_iter()
                    .map(|l| Ok((l, inv.scale(&weights.gamma(g, k, l)?))))
                    .collect(),
                // constant along the row
                _ => {
                    let b = match nb.first() {
                        Some(&l) => inv.scale(&weights.gamma(g, k, l)?),
                        None => return Ok(Vec::new()),
                    };
                    Ok(nb.into_iter().map(|l| (l, b.clone())).collect())
                }
            }
        })
    }

    fn scaled(&self, beta: &Scalar) -> Self {
        Quasiadjacency {
            graph: self.graph.clone(),
            weights: self.weights.clone(),
            sign: &self.sign / beta,
        }
    }
}

/// An operator `D - B` with diagonal `D(k) = shift + scale·deg_γ(v_k)` and a
/// quasiadjacency matrix `B`. Covers `Δ_G`, `λ·Id - B` and `α·Id + β·Δ_G`.
#[derive(Debug, Clone)]
pub struct QuasiadjacencyPair {
    adjacency: Quasiadjacency,
    shift: Scalar,
    scale: Scalar,
    field: Field,
}

impl QuasiadjacencyPair {
    /// `λ·Id - B`.
    pub fn lambda_minus(lambda: Scalar, adjacency: Quasiadjacency, field: Field) -> Result<Self> {
        field.admit(&lambda)?;
        field.admit(adjacency.sign())?;
        Ok(QuasiadjacencyPair {
            adjacency,
            shift: lambda,
            scale: Scalar::zero(),
            field,
        })
    }

    pub fn adjacency(&self) -> &Quasiadjacency {
        &self.adjacency
    }

    pub fn graph(&self) -> &GraphOracle {
        self.adjacency.graph()
    }

    pub fn weights(&self) -> &WeightScheme {
        self.adjacency.weights()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `D(k)`.
    pub fn diagonal_entry(&self, k: VertexId) -> Result<Scalar> {
        if self.scale.is_zero() {
            return Ok(self.shift.clone());
        }
        let deg = self.adjacency.weights.weighted_degree(self.graph(), k)?;
        Ok(&self.shift + &self.scale.scale(&deg))
    }

    /// `D` as a constant, when it is one.
    pub fn scalar_diagonal(&self) -> Option<Scalar> {
        match self.adjacency.weights {
            _ if self.scale.is_zero() => Some(self.shift.clone()),
            WeightScheme::Normalized => Some(&self.shift + &self.scale),
            _ => None,
        }
    }

    /// `D - B` as a banded operator of hopping radius 1.
    pub fn operator(&self) -> BandedOperator {
        let b = self.adjacency.operator();
        let pair = self.clone();
        BandedOperator::from_rows(self.graph().clone(), 1, move |_, k| {
            let mut row: Vec<_> = b.row(k)?.into_iter().map(|(l, s)| (l, -s)).collect();
            row.push((k, pair.diagonal_entry(k)?));
            Ok(row)
        })
    }

    /// `D` alone.
    pub fn diagonal_operator(&self) -> BandedOperator {
        let pair = self.clone();
        BandedOperator::from_rows(self.graph().clone(), 0, move |_, k| {
            Ok(vec![(k, pair.diagonal_entry(k)?)])
        })
    }

    /// `B` alone.
    pub fn b_operator(&self) -> BandedOperator {
        self.adjacency.operator()
    }
}

/// `Δ_G` for the given weights, directly from the defining formula, together
/// with its splitting `Δ_G = D - B` (`D` the weighted degree, `α = 1`).
pub fn build_laplacian(
    g: &GraphOracle,
    w: &WeightScheme,
) -> Result<(BandedOperator, QuasiadjacencyPair)> {
    build_laplacian_in(g, w, Field::Rational)
}

/// [`build_laplacian`] over a chosen scalar field.
pub fn build_laplacian_in(
    g: &GraphOracle,
    w: &WeightScheme,
    field: Field,
) -> Result<(BandedOperator, QuasiadjacencyPair)> {
    let adjacency = Quasiadjacency::new(g.clone(), w.clone(), Scalar::one())?;
    let pair = QuasiadjacencyPair {
        adjacency,
        shift: Scalar::zero(),
        scale: Scalar::one(),
        field,
    };
    let weights = w.clone();
    let delta = BandedOperator::from_rows(g.clone(), 1, move |g, v| {
        let mut row = Vec::new();
        let mut diag = BigRational::zero();
        for u in g.neighbors(v)? {
            let gamma = weights.gamma(g, v, u)?;
            row.push((u, Scalar::real(-&gamma)));
            diag += gamma;
        }
        row.push((v, Scalar::real(diag)));
        Ok(row)
    });
    Ok((delta, pair))
}

/// Rewrites `α·Id + β·(D - B)` as `D' - B'` with `D' = α + β·D` and `B' = β·B`.
/// The sign scalar becomes `α_B / β` (for `Δ_G`, `1/β = conj(β)/|β|²`), so
/// `B'` is again a quasiadjacency matrix with the same magnitudes.
pub fn affine_reduce(
    alpha: &Scalar,
    beta: &Scalar,
    pair: &QuasiadjacencyPair,
) -> Result<QuasiadjacencyPair> {
    if beta.is_zero() {
        return Err(Error::BetaZero);
    }
    pair.field.admit(alpha)?;
    pair.field.admit(beta)?;
    Ok(QuasiadjacencyPair {
        adjacency: pair.adjacency.scaled(beta),
        shift: alpha + &(beta * &pair.shift),
        scale: beta * &pair.scale,
        field: pair.field,
    })
}
