//! Infinite matrices with finite hopping range, given row by row.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::graph::{GraphOracle, ValidationReport, VertexId, Violation};
use crate::scalar::Scalar;
use crate::vector::FinVector;

/// Nonzero entries of one matrix row, sorted by column.
pub type Row = Vec<(VertexId, Scalar)>;

type RowFn = dyn Fn(&GraphOracle, VertexId) -> Result<Row> + Send + Sync;

/// A matrix `(a_{k,l})` over the vertex enumeration of a graph whose row `k`
/// is supported in `U_r(v_k)` for a fixed radius `r`.
///
/// Only rows are stored (as an oracle). Columns are recovered from the
/// geometry: column `l` can only be nonzero in rows `k ∈ U_r(v_l)`.
#[derive(Clone)]
pub struct BandedOperator {
    graph: GraphOracle,
    radius: usize,
    rows: Arc<RowFn>,
}

impl fmt::Debug for BandedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BandedOperator")
            .field("family", &self.graph.family())
            .field("radius", &self.radius)
            .finish_non_exhaustive()
    }
}

impl BandedOperator {
    /// `rows(g, v_k)` must return the entries of row `k`, all inside
    /// `U_radius(v_k)`. Order and zero entries do not matter.
    pub fn from_rows<F>(graph: GraphOracle, radius: usize, rows: F) -> Self
    where
        F: Fn(&GraphOracle, VertexId) -> Result<Row> + Send + Sync + 'static,
    {
        BandedOperator {
            graph,
            radius,
            rows: Arc::new(rows),
        }
    }

    /// The diagonal matrix with entries `diag(v_k)`.
    pub fn diagonal<F>(graph: GraphOracle, diag: F) -> Self
    where
        F: Fn(VertexId) -> Scalar + Send + Sync + 'static,
    {
        Self::from_rows(graph, 0, move |_, v| Ok(vec![(v, diag(v))]))
    }

    pub fn graph(&self) -> &GraphOracle {
        &self.graph
    }

    pub fn hopping_radius(&self) -> usize {
        self.radius
    }

    /// Row `k`, sorted by column, without zero entries.
    pub fn row(&self, k: VertexId) -> Result<Row> {
        let mut row = (self.rows)(&self.graph, k)?;
        row.retain(|(_, s)| !s.is_zero());
        row.sort_by_key(|(l, _)| *l);
        Ok(row)
    }

    /// Entry `a_{k,l}`.
    pub fn entry(&self, k: VertexId, l: VertexId) -> Result<Scalar> {
        Ok(self
            .row(k)?
            .into_iter()
            .find(|(c, _)| *c == l)
            .map(|(_, s)| s)
            .unwrap_or_default())
    }

    /// `A x`, exactly.
    pub fn apply(&self, x: &FinVector) -> Result<FinVector> {
        let mut candidates = BTreeSet::new();
        for l in x.support() {
            candidates.extend(self.graph.n_neighborhood(l, self.radius)?);
        }
        let mut out = FinVector::zero();
        for k in candidates {
            let mut acc = Scalar::zero();
            for (l, a) in self.row(k)? {
                let xl = x.get(l);
                if !xl.is_zero() {
                    acc += &(&a * &xl);
                }
            }
            out.add_at(k, &acc);
        }
        Ok(out)
    }

    /// `yᵀ A` as a vector, i.e. `Aᵀ y`.
    pub fn apply_left(&self, y: &FinVector) -> Result<FinVector> {
        let mut out = FinVector::zero();
        for (k, yk) in y.iter() {
            for (l, a) in self.row(k)? {
                out.add_at(l, &(yk * &a));
            }
        }
        Ok(out)
    }

    /// `A^k x`.
    pub fn apply_power(&self, k: usize, x: &FinVector) -> Result<FinVector> {
        let mut x = x.clone();
        for _ in 0..k {
            if x.is_zero() {
                break;
            }
            x = self.apply(&x)?;
        }
        Ok(x)
    }

    /// `(A^k)_{i,l}`, computed by applying `A` to `e_l` `k` times.
    pub fn power_entry(&self, k: usize, i: VertexId, l: VertexId) -> Result<Scalar> {
        Ok(self.apply_power(k, &FinVector::unit(l))?.get(i))
    }

    /// Checks that row `v` is supported in `U_n(v)` for `v_1..=v_N`.
    pub fn verify_hopping(&self, n: usize, big_n: u64) -> Result<ValidationReport> {
        let mut report = ValidationReport::default();
        let upper = self.graph.vertex_count().map_or(big_n, |c| c.min(big_n));
        for k in 1..=upper {
            let v = VertexId::new(k);
            let row = self.row(v)?;
            if row.iter().all(|(l, _)| *l == v) {
                continue;
            }
            let hood = self.graph.n_neighborhood(v, n)?;
            for (l, _) in row {
                if !hood.contains(&l) {
                    report.push(Violation::Hopping {
                        at: k,
                        column: l.index(),
                    });
                }
            }
        }
        Ok(report)
    }
}
