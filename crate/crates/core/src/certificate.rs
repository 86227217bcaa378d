//! Certificate files: emission and from-scratch verification.
//!
//! ```json
//! {"operator":{"graph":{"family":"ray"},"weights":"normalized","alpha":"0","beta":"1"},
//!  "n":1,"rows":[{"m":3,"l":4,"k":3,"value":"-1/4","cross_check":"-1/4"}],
//!  "verified":true,"oracle_section":8}
//! ```
//!
//! Each row witnesses coordinate 1, so `n` is always 1. The verifier accepts
//! only canonical files: `l = m + 1`, `k` the graph distance, both values
//! recomputed exactly, and `oracle_section` the smallest principal section
//! that contains every walk of length `k` from `v_1`, plus the margin
//! `N > l + k`. The value of each row does not depend on `alpha`, so one file
//! certifies the whole family `alpha·Id + beta·Δ_G` for fixed `beta`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::criterion::{criterion_scan, NonGenerationCertificate, DEFAULT_POWER_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{GraphSpec, VertexId};
use crate::laplacian::{affine_reduce, build_laplacian_in, QuasiadjacencyPair};
use crate::scalar::{Field, Scalar};
use crate::section::DenseSection;
use crate::weights::WeightScheme;

/// Which operator `alpha·Id + beta·Δ_G` a certificate is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDescriptor {
    pub graph: GraphSpec,
    pub weights: WeightScheme,
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl OperatorDescriptor {
    /// Builds `D' - B'` in the smallest field containing `alpha` and `beta`,
    /// or in `field` if given.
    pub fn build(&self, field: Option<Field>) -> Result<QuasiadjacencyPair> {
        let field = field.unwrap_or_else(|| Field::of([&self.alpha, &self.beta]));
        let g = self.graph.build()?;
        let (_, delta) = build_laplacian_in(&g, &self.weights, field)?;
        affine_reduce(&self.alpha, &self.beta, &delta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub operator: OperatorDescriptor,
    pub n: u64,
    pub rows: Vec<NonGenerationCertificate>,
    pub verified: bool,
    pub oracle_section: usize,
}

/// Section size used to re-check rows densely: large enough that no walk of
/// length `k` from `v_1` leaves it, and larger than `l + k`. Capped at the
/// vertex count of finite graphs, where the section is the whole matrix.
pub fn oracle_section(op: &QuasiadjacencyPair, rows: &[NonGenerationCertificate]) -> Result<usize> {
    let g = op.graph();
    let mut size = 1usize;
    for row in rows {
        size = size.max(row.l as usize + row.k + 1);
        if let Some(far) = g.n_neighborhood(VertexId::new(1), row.k)?.last() {
            size = size.max(far.index() as usize);
        }
    }
    Ok(g.vertex_count().map_or(size, |c| size.min(c as usize)))
}

/// Re-checks every row against the principal section of size `size`.
fn dense_recheck(
    op: &QuasiadjacencyPair,
    rows: &[NonGenerationCertificate],
    size: usize,
) -> Result<Vec<(usize, String)>> {
    let full = DenseSection::new(&op.operator(), size)?;
    let b = DenseSection::new(&op.b_operator(), size)?;
    let mut failures = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let l = row.l as usize;
        if l > size {
            failures.push((idx, format!("l = {l} lies outside the oracle section")));
            continue;
        }
        let dense_value = full.row_power(1, row.k).swap_remove(l - 1);
        let mut dense_cross = b.row_power(1, row.k).swap_remove(l - 1);
        if row.k % 2 == 1 {
            dense_cross = -dense_cross;
        }
        if dense_value != row.value || dense_cross != row.cross_check {
            failures.push((
                idx,
                format!(
                    "dense section of size {size} gives value {dense_value}, cross check {dense_cross}"
                ),
            ));
        }
    }
    Ok(failures)
}

impl CertificateDocument {
    /// Computes and densely re-checks certificates for each `m` in `m_range`.
    pub fn certify(
        operator: OperatorDescriptor,
        field: Option<Field>,
        m_range: &[u64],
    ) -> Result<Self> {
        let op = operator.build(field)?;
        let table = criterion_scan(&op, 1, m_range, DEFAULT_POWER_BUDGET)?;
        let size = oracle_section(&op, &table.rows)?;
        if let Some((idx, why)) = dense_recheck(&op, &table.rows, size)?.into_iter().next() {
            return Err(Error::InternalInconsistency(format!(
                "row m={}: {why}",
                table.rows[idx].m
            )));
        }
        Ok(CertificateDocument {
            operator,
            n: table.n,
            rows: table.rows,
            verified: true,
            oracle_section: size,
        })
    }

    /// Recomputes everything from scratch. Fails only if the operator cannot
    /// be rebuilt; mismatches are collected in the report.
    pub fn verify(&self) -> Result<VerifyReport> {
        let mut report = VerifyReport::default();
        if !self.verified {
            report.fail(None, "document is marked unverified");
        }
        if self.n != 1 {
            report.fail(
                None,
                format!("rows witness coordinate 1, but n = {}", self.n),
            );
        }
        if self.rows.is_empty() {
            report.fail(None, "no rows");
        }
        let op = self.operator.build(None)?;
        let g = op.graph();
        let mut checked = Vec::new();
        for (idx, row) in self.rows.iter().enumerate() {
            let at = Some(idx);
            if row.m == 0 {
                report.fail(at, "m must be at least 1");
                continue;
            }
            if row.l != row.m + 1 {
                report.fail(
                    at,
                    format!(
                        "l = {} but the witness for m = {} is l = {}",
                        row.l,
                        row.m,
                        row.m + 1
                    ),
                );
                continue;
            }
            let l = VertexId::new(row.l);
            if !g.contains(l) {
                report.fail(at, format!("the graph has no vertex {l}"));
                continue;
            }
            let k = match g.distance(VertexId::new(1), l, g.radius_cap_for(l)) {
                Ok(k) => k,
                Err(e) => {
                    report.fail(at, e.to_string());
                    continue;
                }
            };
            if k != row.k {
                report.fail(at, format!("k = {} but d(v1, {l}) = {k}", row.k));
                continue;
            }
            let value = op.operator().power_entry(k, VertexId::new(1), l)?;
            let mut cross = op.b_operator().power_entry(k, VertexId::new(1), l)?;
            if k % 2 == 1 {
                cross = -cross;
            }
            if value != row.value {
                report.fail(at, format!("value {} recomputes to {value}", row.value));
            }
            if cross != row.cross_check {
                report.fail(
                    at,
                    format!("cross_check {} recomputes to {cross}", row.cross_check),
                );
            }
            if row.value != row.cross_check {
                report.fail(at, "value and cross_check differ");
            }
            if row.value.is_zero() {
                report.fail(at, "value vanishes");
            }
            checked.push(row.clone());
        }
        if checked.len() == self.rows.len() {
            let size = oracle_section(&op, &checked)?;
            if size != self.oracle_section {
                report.fail(
                    None,
                    format!("oracle_section {} should be {size}", self.oracle_section),
                );
            }
            for (idx, why) in dense_recheck(&op, &checked, size)? {
                report.fail(Some(idx), why);
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Index into `rows`, if the problem belongs to a row. Displayed 1-based.
    pub row: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Some(r) => write!(f, "row {}: {}", r + 1, self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    fn fail(&mut self, row: Option<usize>, reason: impl Into<String>) {
        self.mismatches.push(Mismatch {
            row,
            reason: reason.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn ray_doc() -> CertificateDocument {
        let desc = OperatorDescriptor {
            graph: GraphSpec::family(Family::Ray),
            weights: WeightScheme::Normalized,
            alpha: Scalar::zero(),
            beta: Scalar::one(),
        };
        CertificateDocument::certify(desc, None, &[1, 2, 3]).unwrap()
    }

    #[test]
    fn emitted_document_verifies() {
        let doc = ray_doc();
        assert_eq!(doc.rows[2].value, "-1/4".parse().unwrap());
        assert_eq!(doc.oracle_section, 8);
        assert!(doc.verify().unwrap().passed());
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.starts_with(r#"{"operator":{"graph":{"family":"ray"},"weights":"normalized","alpha":"0","beta":"1"},"n":1,"rows":[{"m":1,"l":2,"k":1,"value":"-1","cross_check":"-1"}"#));
        let back: CertificateDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn tampering_is_detected() {
        let mut doc = ray_doc();
        doc.rows[1].value = Scalar::zero();
        let report = doc.verify().unwrap();
        assert!(!report.passed());
        assert!(report.mismatches.iter().all(|m| m.row == Some(1)));

        let mut doc = ray_doc();
        doc.oracle_section += 1;
        assert!(!doc.verify().unwrap().passed());

        let mut doc = ray_doc();
        doc.rows[0].m = 2;
        assert!(!doc.verify().unwrap().passed());
    }

    #[test]
    fn alpha_does_not_change_the_rows() {
        let doc = ray_doc();
        let mut other = doc.clone();
        other.operator.alpha = "7/3".parse().unwrap();
        assert!(other.verify().unwrap().passed());
    }
}
