//! Positive edge weights `γ_{v,w}` for the graph Laplacian.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{GraphOracle, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum WeightScheme {
    /// `γ ≡ 1`.
    Uniform,
    /// `γ_{v,w} = 1/deg(v)`; the weighted degree is identically 1.
    #[default]
    Normalized,
    /// Directed table `γ_{v_i,v_j}`.
    Custom(Arc<BTreeMap<(u64, u64), BigRational>>),
}

impl WeightScheme {
    /// A custom table; every entry must be positive.
    pub fn custom(entries: impl IntoIterator<Item = ((u64, u64), BigRational)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for ((i, j), w) in entries {
            let (vi, vj) = (VertexId::try_new(i)?, VertexId::try_new(j)?);
            if !w.is_positive() {
                return Err(Error::NonpositiveWeight(vi, vj));
            }
            table.insert((i, j), w);
        }
        Ok(WeightScheme::Custom(Arc::new(table)))
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightScheme::Uniform => "uniform",
            WeightScheme::Normalized => "normalized",
            WeightScheme::Custom(_) => "custom",
        }
    }

    /// `γ_{v,w}` for an edge `v ~ w`.
    pub fn gamma(&self, g: &GraphOracle, v: VertexId, w: VertexId) -> Result<BigRational> {
        match self {
            WeightScheme::Uniform => Ok(BigRational::one()),
            WeightScheme::Normalized => {
                let deg = g.degree(v)?;
                Ok(BigRational::new(BigInt::one(), BigInt::from(deg)))
            }
            WeightScheme::Custom(table) => table
                .get(&(v.index(), w.index()))
                .cloned()
                .ok_or(Error::MissingWeight(v, w)),
        }
    }

    /// Weighted degree `Σ_{w~v} γ_{v,w}`.
    pub fn weighted_degree(&self, g: &GraphOracle, v: VertexId) -> Result<BigRational> {
        match self {
            WeightScheme::Uniform => Ok(BigRational::from_integer(g.degree(v)?.into())),
            WeightScheme::Normalized => Ok(BigRational::one()),
            WeightScheme::Custom(_) => {
                let mut sum = BigRational::zero();
                for w in g.neighbors(v)? {
                    sum += self.gamma(g, v, w)?;
                }
                Ok(sum)
            }
        }
    }

    /// For finite graphs, checks that every directed edge has a weight.
    pub fn check_covers(&self, g: &GraphOracle) -> Result<()> {
        let (WeightScheme::Custom(_), Some(n)) = (self, g.vertex_count()) else {
            return Ok(());
        };
        for k in 1..=n {
            let v = VertexId::new(k);
            for w in g.neighbors(v)? {
                self.gamma(g, v, w)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightRepr {
    Named(String),
    Table { table: Vec<(u64, u64, Scalar)> },
}

impl Serialize for WeightScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            WeightScheme::Custom(table) => WeightRepr::Table {
                table: table
                    .iter()
                    .map(|(&(i, j), w)| (i, j, Scalar::real(w.clone())))
                    .collect(),
            },
            named => WeightRepr::Named(named.name().to_string()),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightScheme {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match WeightRepr::deserialize(deserializer)? {
            WeightRepr::Named(name) => match name.as_str() {
                "uniform" => Ok(WeightScheme::Uniform),
                "normalized" => Ok(WeightScheme::Normalized),
                other => Err(D::Error::custom(format!("unknown weight scheme {other:?}"))),
            },
            WeightRepr::Table { table } => {
                let mut entries = Vec::with_capacity(table.len());
                for (i, j, w) in table {
                    if !w.is_real() {
                        return Err(D::Error::custom(format!("weight {w} is not real")));
                    }
                    entries.push(((i, j), w.re().clone()));
                }
                WeightScheme::custom(entries).map_err(D::Error::custom)
            }
        }
    }
}
