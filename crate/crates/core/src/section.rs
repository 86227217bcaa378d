//! Principal `N×N` sections of banded operators and the truncated exponential.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::operator::BandedOperator;
use crate::scalar::Scalar;

/// Default cap on `N·terms` for [`truncated_exponential_row`].
pub const DEFAULT_EXP_BUDGET: u64 = 1_000_000;

/// The principal section `A_N = (a_{k,l})_{k,l ≤ N}` stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSection {
    n: usize,
    data: Vec<Vec<Scalar>>,
}

impl DenseSection {
    pub fn new(op: &BandedOperator, n: usize) -> Result<Self> {
        if let Some(count) = op.graph().vertex_count() {
            if n as u64 > count {
                return Err(Error::IndexOutOfRange {
                    index: n as u64,
                    count,
                });
            }
        }
        let mut data = vec![vec![Scalar::zero(); n]; n];
        for (k, row) in data.iter_mut().enumerate() {
            for (l, s) in op.row(VertexId::new(k as u64 + 1))? {
                let l = l.index() as usize;
                if l <= n {
                    row[l - 1] = s;
                }
            }
        }
        Ok(DenseSection { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry `(k, l)`, 1-based.
    pub fn get(&self, k: usize, l: usize) -> &Scalar {
        &self.data[k - 1][l - 1]
    }

    /// `y A_N` for a dense row vector `y`.
    pub fn left_mul(&self, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.n];
        for (yk, row) in y.iter().zip(&self.data) {
            if yk.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o += &(yk * a);
                }
            }
        }
        out
    }

    /// Row `i` of `A_N^k`.
    pub fn row_power(&self, i: usize, k: usize) -> Vec<Scalar> {
        let mut y = vec![Scalar::zero(); self.n];
        y[i - 1] = Scalar::one();
        for _ in 0..k {
            y = self.left_mul(&y);
        }
        y
    }
}

/// First row of the degree-`terms` Taylor polynomial of `exp(t·A_N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub t: Scalar,
    pub terms: usize,
    pub row1: Vec<Scalar>,
    pub nonzero_count: usize,
}

impl TruncationReport {
    /// Whether the series has enough terms to reach every column of a
    /// connected section from the first row.
    pub fn reaches_full_section(&self) -> bool {
        self.terms >= self.n
    }
}

/// `row1[j] = Σ_{k=0}^{terms} t^k/k! · (A_N^k)_{1,j}`, exactly.
///
/// Fails with [`Error::BudgetExceeded`] when `N·terms > budget`.
pub fn truncated_exponential_row(
    op: &BandedOperator,
    n: usize,
    t: &BigRational,
    terms: usize,
    budget: u64,
) -> Result<TruncationReport> {
    if n == 0 {
        return Err(Error::InvalidDocument(
            "section size N must be at least 1".into(),
        ));
    }
    let work = (n as u64).saturating_mul(terms as u64);
    if work > budget {
        return Err(Error::BudgetExceeded {
            what: "N*terms",
            requested: work,
            cap: budget,
        });
    }
    let section = DenseSection::new(op, n)?;
    let t = Scalar::real(t.clone());
    let mut power_row = vec![Scalar::zero(); n];
    power_row[0] = Scalar::one();
    let mut coeff = Scalar::one();
    let mut row1 = power_row.clone();
    for k in 1..=terms {
        power_row = section.left_mul(&power_row);
        coeff = (&coeff * &t).scale(&BigRational::new(1.into(), BigInt::from(k)));
        for (acc, p) in row1.iter_mut().zip(&power_row) {
            if !p.is_zero() {
                *acc += &(&coeff * p);
            }
        }
    }
    let nonzero_count = row1.iter().filter(|s| !s.is_zero()).count();
    Ok(TruncationReport {
        n,
        t,
        terms,
        row1,
        nonzero_count,
    })
}
