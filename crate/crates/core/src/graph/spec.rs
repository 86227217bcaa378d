use serde::{Deserialize, Serialize};

use super::{Family, GraphOracle};
use crate::error::{Error, Result};

type FiniteParts = (u64, Vec<(u64, u64)>);

/// JSON description of a graph:
/// `{"family":"ray"}` or `{"family":"finite","vertices":N,"edges":[[i,j],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[u64; 2]>>,
}

impl GraphSpec {
    pub fn family(family: Family) -> Self {
        GraphSpec {
            family,
            vertices: None,
            edges: None,
        }
    }

    /// Vertex count and edge list of a finite graph; `None` for a family.
    fn parts(&self) -> Result<Option<FiniteParts>> {
        match (self.family, self.vertices, &self.edges) {
            (Family::Finite, Some(n), Some(edges)) => {
                Ok(Some((n, edges.iter().map(|e| (e[0], e[1])).collect())))
            }
            (Family::Finite, _, _) => Err(Error::MalformedGraph(
                "finite graphs need \"vertices\" and \"edges\"".into(),
            )),
            (_, None, None) => Ok(None),
            (f, _, _) => Err(Error::MalformedGraph(format!(
                "family {} takes no parameters",
                f.name()
            ))),
        }
    }

    /// Builds the oracle, rejecting invalid finite graphs.
    pub fn build(&self) -> Result<GraphOracle> {
        match self.parts()? {
            Some((n, edges)) => GraphOracle::finite(n, &edges),
            None => Ok(GraphOracle::infinite(self.family)),
        }
    }

    /// Builds the oracle without validating finite graphs, so that
    /// [`GraphOracle::validate_section`] can report what is wrong.
    pub fn build_unchecked(&self) -> Result<GraphOracle> {
        match self.parts()? {
            Some((n, edges)) => Ok(GraphOracle::finite_unchecked(n, &edges)),
            None => Ok(GraphOracle::infinite(self.family)),
        }
    }
}

impl From<&GraphOracle> for GraphSpec {
    fn from(g: &GraphOracle) -> Self {
        match &g.finite {
            None => GraphSpec::family(g.family),
            Some(adj) => {
                let mut edges = Vec::new();
                for (i, list) in adj.lists.iter().enumerate() {
                    let a = i as u64 + 1;
                    edges.extend(list.iter().filter(|&&b| a <= b).map(|&b| [a, b]));
                }
                edges.sort_unstable();
                edges.dedup();
                GraphSpec {
                    family: Family::Finite,
                    vertices: Some(adj.lists.len() as u64),
                    edges: Some(edges),
                }
            }
        }
    }
}
