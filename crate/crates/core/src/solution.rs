//! Solution representations and stability semantics.
//!
//! A stable edge set and a vertex coloring are interchangeable views of a
//! solution: a stable set induces a coloring of its covered vertices, and a
//! coloring selects the edge set that agrees with it.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::instance::{ColorId, ColoredHypergraph, BOTTOM};

/// A set of edge indices into a graph's edge list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StableSet {
    pub edges: BTreeSet<usize>,
}

impl StableSet {
    pub fn empty() -> Self {
        StableSet::default()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        StableSet {
            edges: iter.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.edges.contains(&idx)
    }
}

impl FromIterator<usize> for StableSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        StableSet::from_indices(iter)
    }
}

/// A total assignment of colors to vertices. Vertices not covered by a
/// solution carry the default color [`BOTTOM`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexColoring {
    pub colors: Vec<ColorId>,
}

impl VertexColoring {
    pub fn uniform(n: usize, color: ColorId) -> Self {
        VertexColoring {
            colors: alloc::vec![color; n],
        }
    }

    pub fn bottom(n: usize) -> Self {
        Self::uniform(n, BOTTOM)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolutionError {
    EdgeIndexOutOfRange { index: usize },
    NotStable,
    WrongColoringLength { expected: usize, actual: usize },
}

impl fmt::Display for SolutionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionError::EdgeIndexOutOfRange { index } => {
                write!(f, "edge index {index} out of range")
            }
            SolutionError::NotStable => write!(f, "edge set is not stable"),
            SolutionError::WrongColoringLength { expected, actual } => {
                write!(f, "coloring has {actual} entries, expected {expected}")
            }
        }
    }
}

impl core::error::Error for SolutionError {}

/// True iff every two selected edges sharing a vertex have equal color.
///
/// Checked per vertex: all selected edges incident to a vertex must agree,
/// which is equivalent to the pairwise condition and forces every connected
/// component of the selection to be monochromatic.
pub fn is_stable(g: &ColoredHypergraph, set: &StableSet) -> Result<bool, SolutionError> {
    let m = g.m();
    let mut seen: Vec<Option<ColorId>> = alloc::vec![None; g.n];
    for &idx in &set.edges {
        if idx >= m {
            return Err(SolutionError::EdgeIndexOutOfRange { index: idx });
        }
        let e = &g.edges[idx];
        for &v in &e.vertices {
            match seen[v] {
                None => seen[v] = Some(e.color),
                Some(c) if c == e.color => {}
                Some(_) => return Ok(false),
            }
        }
    }
    Ok(true)
}

/// Vertex coloring induced by a stable set: covered vertices get the color
/// of their (unique) incident selected color, others get [`BOTTOM`].
pub fn coloring_of(g: &ColoredHypergraph, set: &StableSet) -> Result<VertexColoring, SolutionError> {
    if !is_stable(g, set)? {
        return Err(SolutionError::NotStable);
    }
    let mut colors = alloc::vec![BOTTOM; g.n];
    for &idx in &set.edges {
        let e = &g.edges[idx];
        for &v in &e.vertices {
            colors[v] = e.color;
        }
    }
    Ok(VertexColoring { colors })
}

/// All edges whose every endpoint carries the edge's color under `f`.
/// The result is always stable.
pub fn stable_under(
    g: &ColoredHypergraph,
    f: &VertexColoring,
) -> Result<StableSet, SolutionError> {
    if f.colors.len() != g.n {
        return Err(SolutionError::WrongColoringLength {
            expected: g.n,
            actual: f.colors.len(),
        });
    }
    let edges = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.vertices.iter().all(|&v| f.colors[v] == e.color))
        .map(|(idx, _)| idx)
        .collect();
    Ok(StableSet { edges })
}

/// Result of an exact optimization: the maximum stable set size plus a
/// witness attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved {
    pub optimum: usize,
    pub witness: StableSet,
}

impl Solved {
    pub fn new(optimum: usize, witness: StableSet) -> Self {
        Solved { optimum, witness }
    }

    /// Panics if the witness is invalid or does not match the optimum.
    pub fn assert_consistent(&self, g: &ColoredHypergraph) {
        assert_eq!(self.witness.len(), self.optimum, "witness size mismatch");
        assert_eq!(is_stable(g, &self.witness), Ok(true), "witness not stable");
    }
}
