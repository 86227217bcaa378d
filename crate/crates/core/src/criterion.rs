//! The generation criterion on `ω` and constructive witnesses of its failure.
//!
//! An operator `A` on `ω` generates a strongly continuous semigroup iff
//!
//! ```text
//! ∀n ∃m ∀k ≥ 0, x ∈ ω:  π_m(x) = 0  ⇒  π_n(A^k x) = 0.
//! ```
//!
//! For `A` of finite hopping range, `π_n(A^k x)` depends on finitely many
//! coordinates of `x`, so it suffices to test unit vectors: the condition
//! fails at `n` iff the set of columns `l` with `(A^k)_{i,l} ≠ 0` for some
//! `i ≤ n` and some `k` is unbounded. [`reach_set`] computes that set for a
//! finite power budget.
//!
//! For `A = D - B` with `B` a quasiadjacency matrix, take `l > m` and
//! `k = d(v_1, v_l)`. Expanding `(D - B)^k` into words, any word with fewer
//! than `k` factors of `B` moves `e_l` fewer than `k` steps and cannot reach
//! coordinate 1, so
//!
//! ```text
//! π_1((D - B)^k e_l) = (-1)^k (B^k)_{1,l}.
//! ```
//!
//! Every walk of length `k` contributes `Π c / α^k` with `Π c > 0`, so the
//! walks cannot cancel and the entry is nonzero. That pair `(l, k)` is the
//! [`NonGenerationCertificate`] for `m`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::laplacian::{Quasiadjacency, QuasiadjacencyPair};
use crate::operator::BandedOperator;
use crate::scalar::Scalar;
use crate::vector::FinVector;

/// Default cap on the power `k` a certificate may need.
pub const DEFAULT_POWER_BUDGET: usize = 10_000;

fn root() -> VertexId {
    VertexId::new(1)
}

fn sign_pow(k: usize) -> Scalar {
    if k % 2 == 1 {
        Scalar::integer(-1)
    } else {
        Scalar::one()
    }
}

/// Columns `l` with `(A^k)_{i,l} ≠ 0` for some `i ≤ n` and `0 ≤ k ≤ k_max`.
pub fn reach_set(op: &BandedOperator, n: u64, k_max: usize) -> Result<BTreeSet<VertexId>> {
    let upper = op.graph().vertex_count().map_or(n, |c| c.min(n));
    let mut reach = BTreeSet::new();
    for i in 1..=upper {
        let mut row = FinVector::unit(VertexId::new(i));
        reach.extend(row.support());
        for _ in 0..k_max {
            row = op.apply_left(&row)?;
            if row.is_zero() {
                break;
            }
            reach.extend(row.support());
        }
    }
    Ok(reach)
}

/// One row of a verdict table: the witness that depth `m` is not enough.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonGenerationCertificate {
    pub m: u64,
    pub l: u64,
    pub k: usize,
    /// `π_1((D - B)^k e_l)`.
    pub value: Scalar,
    /// `(-1)^k (B^k)_{1,l}`.
    pub cross_check: Scalar,
}

/// Builds the witness for depth `m` with `l = m + 1`, `k = d(v_1, v_l)`.
pub fn certificate(op: &QuasiadjacencyPair, m: u64) -> Result<NonGenerationCertificate> {
    certificate_with_budget(op, m, DEFAULT_POWER_BUDGET)
}

pub fn certificate_with_budget(
    op: &QuasiadjacencyPair,
    m: u64,
    k_max: usize,
) -> Result<NonGenerationCertificate> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let g = op.graph();
    let l = VertexId::new(m + 1);
    if !g.contains(l) {
        return Err(Error::NoWitness(m));
    }
    let k = g.distance(root(), l, g.radius_cap_for(l))?;
    if k > k_max {
        return Err(Error::BudgetExceeded {
            what: "power k",
            requested: k as u64,
            cap: k_max as u64,
        });
    }
    let value = op.operator().power_entry(k, root(), l)?;
    let cross_check = &sign_pow(k) * &op.b_operator().power_entry(k, root(), l)?;
    if value != cross_check {
        return Err(Error::InternalInconsistency(format!(
            "m={m}: π_1((D-B)^{k} e_{l}) = {value} but (-1)^k (B^k)_(1,l) = {cross_check}",
            l = l.index()
        )));
    }
    if value.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "m={m}: witness entry vanishes at l={}, k={k}",
            l.index()
        )));
    }
    Ok(NonGenerationCertificate {
        m,
        l: l.index(),
        k,
        value,
        cross_check,
    })
}

/// The terms `C(k,j) (-1)^j λ^{k-j} (B^j)_{1,l}` for `j = 0..=k`. They sum to
/// `((λ - B)^k)_{1,l}`.
pub fn binomial_collapse(
    lambda: &Scalar,
    b: &Quasiadjacency,
    l: VertexId,
    k: usize,
) -> Result<Vec<Scalar>> {
    if l.index() < 2 || k == 0 {
        return Err(Error::InvalidArgument(
            "binomial collapse needs l >= 2 and k >= 1".into(),
        ));
    }
    let b_op = b.operator();
    let mut column = FinVector::unit(l);
    let mut terms = Vec::with_capacity(k + 1);
    for j in 0..=k {
        if j > 0 {
            column = b_op.apply(&column)?;
        }
        let coeff = Scalar::real(BigInt::from(binomial(k as u64, j as u64)).into());
        let term = &(&coeff * &sign_pow(j)) * &(&lambda.pow((k - j) as u32) * &column.get(root()));
        terms.push(term);
    }
    Ok(terms)
}

/// Checks `π_1((D - B)^k e_l) = (-1)^k (B^k)_{1,l}` for `k = d(v_1, v_l)`.
pub fn diagonal_collapse_check(op: &QuasiadjacencyPair, l: VertexId, k: usize) -> Result<bool> {
    let g = op.graph();
    let d = g.distance(root(), l, g.radius_cap_for(l))?;
    if d != k || k == 0 {
        return Err(Error::InvalidArgument(format!(
            "k = {k} but d(v1, {l}) = {d}; the collapse needs k = distance >= 1"
        )));
    }
    let lhs = op.operator().power_entry(k, root(), l)?;
    let rhs = &sign_pow(k) * &op.b_operator().power_entry(k, root(), l)?;
    Ok(lhs == rhs)
}

/// Checks `(B^k)_{i,l} ≠ 0 ⇔ (a walk of length k joins v_i and v_l)` and that
/// `α^k (B^k)_{i,l}` is a nonnegative rational.
pub fn no_cancellation_check(
    b: &Quasiadjacency,
    i: VertexId,
    l: VertexId,
    k: usize,
) -> Result<bool> {
    let entry = b.operator().power_entry(k, i, l)?;
    let walk = b.graph().walk_exists(i, l, k)?;
    let ray = &b.sign().pow(k as u32) * &entry;
    Ok((!entry.is_zero()) == walk && ray.is_nonnegative_real())
}

/// Certificates for every `m` in `m_range`, in the given order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictTable {
    pub n: u64,
    pub rows: Vec<NonGenerationCertificate>,
}

/// Produces a certificate for each candidate depth `m`, showing that none of
/// them satisfies the criterion at depth `n`. Rows are computed in parallel;
/// their order follows `m_range`.
pub fn criterion_scan(
    op: &QuasiadjacencyPair,
    n: u64,
    m_range: &[u64],
    k_max: usize,
) -> Result<VerdictTable> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if let Some(&m) = m_range.iter().find(|&&m| m < n) {
        return Err(Error::InvalidArgument(format!(
            "candidate depth m = {m} is below n = {n}"
        )));
    }
    let rows = m_range
        .par_iter()
        .map(|&m| certificate_with_budget(op, m, k_max))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerdictTable { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphOracle;
    use crate::laplacian::{affine_reduce, build_laplacian};
    use crate::weights::WeightScheme;

    fn v(k: u64) -> VertexId {
        VertexId::new(k)
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn pair(g: GraphOracle, w: WeightScheme) -> QuasiadjacencyPair {
        build_laplacian(&g, &w).unwrap().1
    }

    #[test]
    fn certificates_on_the_ray() {
        let norm = pair(GraphOracle::ray(), WeightScheme::Normalized);
        let c = certificate(&norm, 3).unwrap();
        assert_eq!((c.l, c.k), (4, 3));
        assert_eq!(c.value, s("-1/4"));
        assert_eq!(c.cross_check, c.value);

        let c = certificate(&norm, 1).unwrap();
        assert_eq!((c.l, c.k, c.value), (2, 1, s("-1")));

        let unif = pair(GraphOracle::ray(), WeightScheme::Uniform);
        let c = certificate(&unif, 3).unwrap();
        assert_eq!((c.l, c.k, c.value), (4, 3, s("-1")));
    }

    #[test]
    fn certificate_errors() {
        let norm = pair(GraphOracle::ray(), WeightScheme::Normalized);
        assert!(matches!(
            certificate(&norm, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            certificate_with_budget(&norm, 5, 4),
            Err(Error::BudgetExceeded { requested: 5, .. })
        ));
        let small = pair(
            GraphOracle::finite(3, &[(1, 2), (2, 3)]).unwrap(),
            WeightScheme::Uniform,
        );
        assert!(certificate(&small, 2).is_ok());
        assert_eq!(certificate(&small, 3).unwrap_err(), Error::NoWitness(3));
    }

    #[test]
    fn binomial_terms() {
        let b = pair(GraphOracle::ray(), WeightScheme::Normalized)
            .adjacency()
            .clone();
        let terms = binomial_collapse(&Scalar::one(), &b, v(4), 3).unwrap();
        assert_eq!(terms, vec![s("0"), s("0"), s("0"), s("-1/4")]);

        // (B^3)_{1,2} = 1·½·1 + 1·½·½ = 3/4
        let terms = binomial_collapse(&Scalar::one(), &b, v(2), 3).unwrap();
        assert_eq!(terms, vec![s("0"), s("-3"), s("0"), s("-3/4")]);
        let sum = terms.iter().fold(Scalar::zero(), |a, t| a + t);
        assert_eq!(sum, s("-15/4"));

        assert!(binomial_collapse(&Scalar::one(), &b, v(1), 3).is_err());
        assert!(binomial_collapse(&Scalar::one(), &b, v(3), 0).is_err());
    }

    #[test]
    fn lambda_zero_keeps_only_the_top_term() {
        let b = pair(GraphOracle::binary_tree(), WeightScheme::Uniform)
            .adjacency()
            .clone();
        let terms = binomial_collapse(&Scalar::zero(), &b, v(5), 2).unwrap();
        assert!(terms[..2].iter().all(Scalar::is_zero));
        assert_eq!(terms[2], s("1"));
    }

    #[test]
    fn diagonal_collapse() {
        let unif = pair(GraphOracle::ray(), WeightScheme::Uniform);
        assert!(diagonal_collapse_check(&unif, v(4), 3).unwrap());
        let norm = pair(GraphOracle::ray(), WeightScheme::Normalized);
        assert!(diagonal_collapse_check(&norm, v(5), 4).unwrap());
        assert_eq!(
            norm.operator().power_entry(4, v(1), v(5)).unwrap(),
            s("1/8")
        );
        let tree = pair(GraphOracle::binary_tree(), WeightScheme::Uniform);
        assert!(diagonal_collapse_check(&tree, v(4), 2).unwrap());
        assert_eq!(tree.operator().power_entry(2, v(1), v(4)).unwrap(), s("1"));
        assert!(diagonal_collapse_check(&norm, v(5), 3).is_err());
    }

    #[test]
    fn no_cancellation() {
        let norm = pair(GraphOracle::ray(), WeightScheme::Normalized);
        let b = norm.adjacency();
        assert_eq!(b.operator().power_entry(2, v(1), v(2)).unwrap(), s("0"));
        assert!(no_cancellation_check(b, v(1), v(2), 2).unwrap());

        let unif = pair(GraphOracle::ray(), WeightScheme::Uniform);
        assert_eq!(
            unif.b_operator().power_entry(2, v(1), v(1)).unwrap(),
            s("1")
        );
        assert!(no_cancellation_check(unif.adjacency(), v(1), v(1), 2).unwrap());

        let scaled = affine_reduce(&s("0"), &s("-3"), &norm).unwrap();
        assert_eq!(scaled.adjacency().sign(), &s("-1/3"));
        assert_eq!(
            scaled.b_operator().power_entry(3, v(1), v(4)).unwrap(),
            s("-27/4")
        );
        assert!(no_cancellation_check(scaled.adjacency(), v(1), v(4), 3).unwrap());
    }

    #[test]
    fn reach_sets() {
        let diag =
            BandedOperator::diagonal(GraphOracle::ray(), |k| Scalar::integer(k.index() as i64));
        for k_max in [1, 5, 20] {
            assert_eq!(
                reach_set(&diag, 3, k_max).unwrap(),
                (1..=3).map(v).collect()
            );
        }
        let norm = pair(GraphOracle::ray(), WeightScheme::Normalized).operator();
        assert_eq!(reach_set(&norm, 1, 4).unwrap(), (1..=5).map(v).collect());
        assert_eq!(reach_set(&norm, 1, 9).unwrap(), (1..=10).map(v).collect());
    }

    #[test]
    fn scan_of_the_normalized_ray() {
        let norm = pair(GraphOracle::ray(), WeightScheme::Normalized);
        let ms: Vec<u64> = (1..=8).collect();
        let table = criterion_scan(&norm, 1, &ms, 64).unwrap();
        for (row, m) in table.rows.iter().zip(1u64..) {
            assert_eq!((row.m, row.l, row.k), (m, m + 1, m as usize));
            let expected = &sign_pow(m as usize)
                * &Scalar::real(num_rational::BigRational::new(
                    1.into(),
                    BigInt::from(1u64 << (m - 1)),
                ));
            assert_eq!(row.value, expected);
        }
        assert!(criterion_scan(&norm, 3, &[2], 8).is_err());
        assert!(criterion_scan(&norm, 0, &[2], 8).is_err());
    }
}
