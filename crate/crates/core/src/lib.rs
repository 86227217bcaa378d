//! Exact operators of finite hopping range on the sequence space `ω = K^N`
//! indexed by the vertices of an infinite graph, and machine-checkable
//! certificates that `α·Id + β·Δ_G` (`β ≠ 0`) violates the semigroup
//! generation criterion on `ω`.
//!
//! All arithmetic is exact: rationals, or Gaussian rationals when complex
//! coefficients are requested.

pub mod certificate;
pub mod criterion;
pub mod error;
pub mod graph;
pub mod laplacian;
pub mod operator;
pub mod scalar;
pub mod section;
pub mod vector;
pub mod weights;

pub use certificate::{CertificateDocument, OperatorDescriptor, VerifyReport};
pub use criterion::{
    binomial_collapse, certificate, criterion_scan, diagonal_collapse_check, no_cancellation_check,
    reach_set, NonGenerationCertificate, VerdictTable,
};
pub use error::{Error, Result};
pub use graph::{Family, GraphOracle, GraphSpec, ValidationReport, VertexId, Violation};
pub use laplacian::{
    affine_reduce, build_laplacian, build_laplacian_in, Quasiadjacency, QuasiadjacencyPair,
};
pub use operator::BandedOperator;
pub use scalar::{Field, Scalar};
pub use section::{truncated_exponential_row, DenseSection, TruncationReport};
pub use vector::{seminorm, FinVector};
pub use weights::WeightScheme;
