//! Lazily enumerated, locally finite, undirected graphs.
//!
//! A [`GraphOracle`] answers neighbour queries for vertices `v_1, v_2, ...` of
//! a fixed enumeration. The builtin families are infinite and connected by
//! construction; finite graphs come from an explicit edge list.
//!
//! Enumerations:
//!
//! | family        | `v_k`                                                     |
//! |---------------|-----------------------------------------------------------|
//! | `ray`         | the natural number `k`, with `k ~ k+1`                    |
//! | `line`        | the integers in the order `0, 1, -1, 2, -2, ...`          |
//! | `binary_tree` | breadth-first from the root `v_1`; children `v_2k, v_2k+1` |
//! | `grid2d`      | `Z²` along an outward square spiral starting at the origin |
//! | `caterpillar` | spine vertex `i` at `2i-1`, its single leaf at `2i`        |
//!
//! The spiral visits ring `r ≥ 1` (the points with max-norm `r`) starting at
//! `(r, 1-r)`, going up the right side, left along the top, down the left
//! side and right along the bottom, ending at `(r, -r)`.

mod families;
mod spec;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use families::{grid_coords, grid_index, line_index, line_value};
pub use spec::GraphSpec;

/// Index of a vertex in the fixed enumeration; always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct VertexId(u64);

impl VertexId {
    /// Panics if `k == 0`.
    pub fn new(k: u64) -> Self {
        Self::try_new(k).expect("vertex indices start at 1")
    }

    pub fn try_new(k: u64) -> Result<Self> {
        if k == 0 {
            Err(Error::ZeroIndex)
        } else {
            Ok(VertexId(k))
        }
    }

    pub fn index(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for VertexId {
    type Error = Error;
    fn try_from(k: u64) -> Result<Self> {
        Self::try_new(k)
    }
}

impl From<VertexId> for u64 {
    fn from(v: VertexId) -> u64 {
        v.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Ray,
    Line,
    BinaryTree,
    Grid2d,
    Caterpillar,
    Finite,
}

impl Family {
    pub const INFINITE: [Family; 5] = [
        Family::Ray,
        Family::Line,
        Family::BinaryTree,
        Family::Grid2d,
        Family::Caterpillar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ray => "ray",
            Family::Line => "line",
            Family::BinaryTree => "binary_tree",
            Family::Grid2d => "grid2d",
            Family::Caterpillar => "caterpillar",
            Family::Finite => "finite",
        }
    }

    /// How the family's vertices are enumerated.
    pub fn enumeration_doc(self) -> &'static str {
        match self {
            Family::Ray => "v_k = k, edges k ~ k+1",
            Family::Line => "v_1 = 0, v_2k = k, v_2k+1 = -k, edges z ~ z+1",
            Family::BinaryTree => {
                "breadth-first from root v_1, children of v_k are v_2k and v_2k+1"
            }
            Family::Grid2d => {
                "outward square spiral over Z^2 from the origin v_1, ring r starts at (r, 1-r)"
            }
            Family::Caterpillar => {
                "spine vertex i at index 2i-1 (spine i ~ i+1), its leaf at index 2i"
            }
            Family::Finite => "explicit 1-indexed vertex list",
        }
    }
}

/// Adjacency lists of a finite graph exactly as supplied, before any
/// normalization, so that validation can report what is wrong with them.
#[derive(Debug, Clone, PartialEq, Eq)]
struct FiniteAdjacency {
    lists: Vec<Vec<u64>>,
}

/// A connected, locally finite, simplicial, undirected graph with a fixed
/// vertex enumeration. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOracle {
    family: Family,
    finite: Option<Arc<FiniteAdjacency>>,
}

impl GraphOracle {
    pub fn ray() -> Self {
        Self::infinite(Family::Ray)
    }

    pub fn line() -> Self {
        Self::infinite(Family::Line)
    }

    pub fn binary_tree() -> Self {
        Self::infinite(Family::BinaryTree)
    }

    pub fn grid2d() -> Self {
        Self::infinite(Family::Grid2d)
    }

    pub fn caterpillar() -> Self {
        Self::infinite(Family::Caterpillar)
    }

    /// One of the builtin infinite families.
    ///
    /// # Panics
    /// If `family` is [`Family::Finite`].
    pub fn infinite(family: Family) -> Self {
        assert_ne!(family, Family::Finite, "finite graphs need an edge list");
        GraphOracle {
            family,
            finite: None,
        }
    }

    /// A finite graph on `v_1..=v_n` from unordered edges.
    ///
    /// The edge list is symmetrized; loops, repeated edges, out-of-range
    /// endpoints and disconnected graphs are rejected.
    pub fn finite(n: u64, edges: &[(u64, u64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in edges {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::MalformedGraph(format!(
                        "edge ({a}, {b}) has an endpoint outside 1..={n}"
                    )));
                }
            }
            if a == b {
                return Err(Error::MalformedGraph(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::MalformedGraph(format!("repeated edge ({a}, {b})")));
            }
        }
        let g = Self::finite_unchecked(n, edges);
        if let Some(v) = g.unreachable_from_root() {
            return Err(Error::MalformedGraph(format!(
                "graph is not connected: v{v} is unreachable from v1"
            )));
        }
        Ok(g)
    }

    /// Symmetrizes `edges` but keeps loops and repeats, for validation reports.
    /// An endpoint outside `1..=n` is kept in the list of the other one.
    pub fn finite_unchecked(n: u64, edges: &[(u64, u64)]) -> Self {
        let mut lists = vec![Vec::new(); n as usize];
        let inside = |x: u64| (1..=n).contains(&x);
        for &(a, b) in edges {
            if inside(a) {
                lists[(a - 1) as usize].push(b);
            }
            if inside(b) && a != b {
                lists[(b - 1) as usize].push(a);
            }
        }
        Self::from_adjacency(lists)
    }

    /// Takes adjacency lists verbatim (list `i` holds the neighbours of
    /// `v_{i+1}`). Nothing is checked; use [`GraphOracle::validate_section`].
    pub fn from_adjacency(lists: Vec<Vec<u64>>) -> Self {
        GraphOracle {
            family: Family::Finite,
            finite: Some(Arc::new(FiniteAdjacency { lists })),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn enumeration_doc(&self) -> &'static str {
        self.family.enumeration_doc()
    }

    /// Number of vertices, `None` for infinite families.
    pub fn vertex_count(&self) -> Option<u64> {
        self.finite.as_ref().map(|a| a.lists.len() as u64)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertex_count().is_none_or(|n| v.0 <= n)
    }

    fn check(&self, v: VertexId) -> Result<()> {
        match self.vertex_count() {
            Some(count) if v.0 > count => Err(Error::IndexOutOfRange { index: v.0, count }),
            _ => Ok(()),
        }
    }

    fn raw_neighbors(&self, v: VertexId) -> Vec<u64> {
        match &self.finite {
            Some(adj) => adj.lists[(v.0 - 1) as usize].clone(),
            None => families::neighbors(self.family, v.0),
        }
    }

    /// Sorted, deduplicated neighbours of `v`.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.check(v)?;
        let mut raw = self.raw_neighbors(v);
        raw.sort_unstable();
        raw.dedup();
        Ok(raw
            .into_iter()
            .filter(|&w| w != 0 && self.vertex_count().is_none_or(|n| w <= n))
            .map(VertexId)
            .collect())
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// Breadth-first distance layers around `v`, up to and including depth
    /// `depth`, stopping early once `stop` reports true for a vertex.
    fn bfs<F>(&self, v: VertexId, depth: usize, mut stop: F) -> Result<Option<usize>>
    where
        F: FnMut(VertexId, usize) -> bool,
    {
        self.check(v)?;
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([(v, 0usize)]);
        while let Some((u, d)) = queue.pop_front() {
            if stop(u, d) {
                return Ok(Some(d));
            }
            if d == depth {
                continue;
            }
            for w in self.neighbors(u)? {
                if seen.insert(w) {
                    queue.push_back((w, d + 1));
                }
            }
        }
        Ok(None)
    }

    /// Graph distance from `u` to `v`, searching no further than `radius_cap`.
    pub fn distance(&self, u: VertexId, v: VertexId, radius_cap: usize) -> Result<usize> {
        self.check(v)?;
        self.bfs(u, radius_cap, |w, _| w == v)?
            .ok_or(Error::RadiusExceeded {
                from: u,
                to: v,
                cap: radius_cap,
            })
    }

    /// `U_n(v)`: every vertex within distance `n` of `v`.
    pub fn n_neighborhood(&self, v: VertexId, n: usize) -> Result<BTreeSet<VertexId>> {
        let mut out = BTreeSet::new();
        self.bfs(v, n, |w, _| {
            out.insert(w);
            false
        })?;
        Ok(out)
    }

    /// Whether some walk of exactly `j` edges leads from `u` to `v`.
    pub fn walk_exists(&self, u: VertexId, v: VertexId, j: usize) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        let mut frontier = BTreeSet::from([u]);
        for _ in 0..j {
            let mut next = BTreeSet::new();
            for &w in &frontier {
                next.extend(self.neighbors(w)?);
            }
            frontier = next;
            if frontier.is_empty() {
                return Ok(false);
            }
        }
        Ok(frontier.contains(&v))
    }

    /// A radius within which `v_l` must lie from `v_1`. Every builtin
    /// enumeration places `v_l` within distance `l - 1` of the root; for
    /// finite graphs the vertex count bounds every distance.
    pub fn radius_cap_for(&self, l: VertexId) -> usize {
        match self.vertex_count() {
            Some(n) => n as usize,
            None => l.0 as usize,
        }
    }

    fn unreachable_from_root(&self) -> Option<u64> {
        let n = self.vertex_count()?;
        let reached = self.n_neighborhood(VertexId(1), n as usize).ok()?;
        (1..=n).find(|k| !reached.contains(&VertexId(*k)))
    }

    /// Checks the graph axioms on `v_1..=v_N` (every vertex for finite graphs
    /// with fewer than `N` vertices).
    pub fn validate_section(&self, n: u64) -> ValidationReport {
        let mut report = ValidationReport::default();
        let upper = self.vertex_count().map_or(n, |c| c.min(n));
        for k in 1..=upper {
            let v = VertexId(k);
            let raw = self.raw_neighbors(v);
            let mut sorted = raw.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    report.push(Violation::Duplicate {
                        at: k,
                        neighbor: pair[0],
                    });
                }
            }
            sorted.dedup();
            for w in sorted {
                if w == k {
                    report.push(Violation::Loop { at: k });
                    continue;
                }
                if w == 0 || !self.contains(VertexId(w)) {
                    report.push(Violation::OutOfRange { at: k, neighbor: w });
                    continue;
                }
                if !self.raw_neighbors(VertexId(w)).contains(&k) {
                    report.push(Violation::Asymmetric { from: k, to: w });
                }
            }
        }
        if let Some(v) = self.unreachable_from_root() {
            report.push(Violation::Disconnected { unreachable: v });
        }
        report
    }
}

/// One failed graph axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Loop {
        at: u64,
    },
    Duplicate {
        at: u64,
        neighbor: u64,
    },
    /// `to` is listed as a neighbour of `from` but not the other way round.
    Asymmetric {
        from: u64,
        to: u64,
    },
    OutOfRange {
        at: u64,
        neighbor: u64,
    },
    Disconnected {
        unreachable: u64,
    },
    /// Row `at` of an operator has an entry in column `column` outside the
    /// allowed neighbourhood.
    Hopping {
        at: u64,
        column: u64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Loop { at } => write!(f, "loop at v{at}"),
            Violation::Duplicate { at, neighbor } => {
                write!(f, "v{neighbor} listed twice among the neighbours of v{at}")
            }
            Violation::Asymmetric { from, to } => {
                write!(f, "edge (v{from}, v{to}) has no reverse edge")
            }
            Violation::OutOfRange { at, neighbor } => {
                write!(f, "v{at} lists nonexistent neighbour {neighbor}")
            }
            Violation::Disconnected { unreachable } => {
                write!(f, "v{unreachable} is unreachable from v1")
            }
            Violation::Hopping { at, column } => {
                write!(
                    f,
                    "row v{at} reaches column v{column} outside its neighbourhood"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u64) -> VertexId {
        VertexId::new(k)
    }

    fn ids(ks: &[u64]) -> Vec<VertexId> {
        ks.iter().copied().map(v).collect()
    }

    #[test]
    fn ray_neighbors() {
        let g = GraphOracle::ray();
        assert_eq!(g.neighbors(v(1)).unwrap(), ids(&[2]));
        assert_eq!(g.neighbors(v(5)).unwrap(), ids(&[4, 6]));
    }

    #[test]
    fn tree_neighbors_first_levels() {
        // levels: 1 | 2 3 | 4 5 6 7
        let g = GraphOracle::binary_tree();
        assert_eq!(g.neighbors(v(1)).unwrap(), ids(&[2, 3]));
        assert_eq!(g.neighbors(v(2)).unwrap(), ids(&[1, 4, 5]));
        assert_eq!(g.neighbors(v(3)).unwrap(), ids(&[1, 6, 7]));
        assert_eq!(g.neighbors(v(6)).unwrap(), ids(&[3, 12, 13]));
    }

    #[test]
    fn distances() {
        let ray = GraphOracle::ray();
        assert_eq!(ray.distance(v(1), v(5), 10).unwrap(), 4);
        assert_eq!(ray.distance(v(7), v(7), 0).unwrap(), 0);
        // v2 = 1, v3 = -1 on the line: path 1 -> 0 -> -1
        assert_eq!(GraphOracle::line().distance(v(2), v(3), 10).unwrap(), 2);
        assert!(matches!(
            ray.distance(v(1), v(5), 3),
            Err(Error::RadiusExceeded { cap: 3, .. })
        ));
    }

    #[test]
    fn neighborhoods() {
        let ray = GraphOracle::ray();
        assert_eq!(ray.n_neighborhood(v(9), 0).unwrap(), BTreeSet::from([v(9)]));
        assert_eq!(
            ray.n_neighborhood(v(3), 2).unwrap(),
            (1..=5).map(v).collect::<BTreeSet<_>>()
        );
        // spiral ring 1: v2=(1,0) v3=(1,1) v4=(0,1) v5=(-1,1) v6=(-1,0) v7=(-1,-1) v8=(0,-1) v9=(1,-1)
        let grid = GraphOracle::grid2d();
        assert_eq!(
            grid.n_neighborhood(v(1), 1).unwrap(),
            BTreeSet::from([v(1), v(2), v(4), v(6), v(8)])
        );
    }

    #[test]
    fn walks() {
        let ray = GraphOracle::ray();
        assert!(ray.walk_exists(v(1), v(1), 2).unwrap());
        assert!(!ray.walk_exists(v(1), v(2), 2).unwrap());
        assert!(ray.walk_exists(v(4), v(4), 0).unwrap());
        assert!(!ray.walk_exists(v(1), v(4), 2).unwrap());
    }

    #[test]
    fn finite_graphs() {
        let g = GraphOracle::finite(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(g.neighbors(v(2)).unwrap(), ids(&[1, 3]));
        assert_eq!(g.vertex_count(), Some(4));
        assert!(matches!(
            g.neighbors(v(5)),
            Err(Error::IndexOutOfRange { index: 5, count: 4 })
        ));
        assert!(g.validate_section(10).is_empty());

        assert!(GraphOracle::finite(2, &[(1, 1)]).is_err());
        assert!(GraphOracle::finite(2, &[(1, 2), (2, 1)]).is_err());
        assert!(GraphOracle::finite(2, &[(1, 3)]).is_err());
        assert!(GraphOracle::finite(3, &[(1, 2)]).is_err());
        assert!(GraphOracle::finite(0, &[]).is_err());
    }

    #[test]
    fn validation_reports() {
        assert!(GraphOracle::ray().validate_section(100).is_empty());

        let one_way = GraphOracle::from_adjacency(vec![vec![2], vec![]]);
        assert_eq!(
            one_way.validate_section(2).violations,
            vec![Violation::Asymmetric { from: 1, to: 2 }]
        );

        let looped = GraphOracle::finite_unchecked(1, &[(1, 1)]);
        assert_eq!(
            looped.validate_section(1).violations,
            vec![Violation::Loop { at: 1 }]
        );

        let doubled = GraphOracle::finite_unchecked(2, &[(1, 2), (2, 1)]);
        assert!(doubled
            .validate_section(2)
            .violations
            .contains(&Violation::Duplicate { at: 1, neighbor: 2 }));

        let stray = GraphOracle::finite_unchecked(2, &[(1, 2), (2, 5)]);
        assert_eq!(
            stray.validate_section(2).violations,
            vec![Violation::OutOfRange { at: 2, neighbor: 5 }]
        );
        assert_eq!(stray.neighbors(VertexId(2)).unwrap(), vec![VertexId(1)]);

        let split = GraphOracle::finite_unchecked(3, &[(1, 2)]);
        assert_eq!(
            split.validate_section(3).violations,
            vec![Violation::Disconnected { unreachable: 3 }]
        );
    }
}
