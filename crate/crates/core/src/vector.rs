//! Finitely supported sequences, the computable part of `ω = K^N`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::VertexId;
use crate::scalar::Scalar;

/// A sequence with finitely many nonzero coordinates. Zeros are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FinVector {
    entries: BTreeMap<VertexId, Scalar>,
}

impl FinVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector `e_l`.
    pub fn unit(l: VertexId) -> Self {
        let mut v = Self::zero();
        v.entries.insert(l, Scalar::one());
        v
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (VertexId, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (k, s) in entries {
            v.add_at(k, &s);
        }
        v
    }

    /// Coordinate `k` (zero outside the support).
    pub fn get(&self, k: VertexId) -> Scalar {
        self.entries.get(&k).cloned().unwrap_or_default()
    }

    /// Adds `s` to coordinate `k`, dropping the entry if it becomes zero.
    pub fn add_at(&mut self, k: VertexId, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        match self.entries.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Scalar)> + '_ {
        self.entries.iter().map(|(&k, s)| (k, s))
    }

    pub fn support(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        FinVector {
            entries: self.entries.iter().map(|(&k, x)| (k, x * s)).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, s) in other.iter() {
            out.add_at(k, s);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, s) in other.iter() {
            out.add_at(k, &-s);
        }
        out
    }

    /// Keeps coordinates `1..=m` only (the projection `π_m`).
    pub fn truncated(&self, m: u64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        FinVector {
            entries: self
                .entries
                .range(..=VertexId::new(m))
                .map(|(&k, s)| (k, s.clone()))
                .collect(),
        }
    }
}

/// The seminorm `p_k(x) = Σ_{j ≤ k} |x_j|`, with `|a+bi| = |a|+|b|`.
pub fn seminorm(k: u64, x: &FinVector) -> BigRational {
    x.iter()
        .take_while(|(j, _)| j.index() <= k)
        .map(|(_, s)| s.abs1())
        .fold(BigRational::zero(), |acc, a| acc + a)
}

impl Serialize for FinVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (k, s) in &self.entries {
            map.serialize_entry(&k.index().to_string(), s)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for FinVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, Scalar>::deserialize(deserializer)?;
        let mut v = FinVector::zero();
        for (k, s) in raw {
            let idx: u64 = k.parse().map_err(D::Error::custom)?;
            v.add_at(VertexId::try_new(idx).map_err(D::Error::custom)?, &s);
        }
        Ok(v)
    }
}
