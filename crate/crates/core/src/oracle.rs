//! Brute-force reference oracles.
//!
//! Two independent routes compute the exact maximum stable set size on small
//! instances: [`max_stable`] searches over vertex colorings, restricted per
//! vertex to incident colors plus the default color (recoloring a vertex to a
//! color none of its edges carries can never stabilize an edge), and
//! [`max_stable_by_subsets`] enumerates edge subsets directly. Solvers are
//! cross-checked against both.

use alloc::vec::Vec;
use core::fmt;

use crate::instance::{ColorId, ColoredHypergraph, BOTTOM};
use crate::solution::{is_stable, stable_under, Solved, StableSet, VertexColoring};

/// Cap on the size of the coloring search space (product over vertices of
/// the candidate-color counts).
pub const DEFAULT_STATE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The estimated search space exceeds the limit.
    SearchSpaceTooLarge { states: u128, limit: u128 },
    /// Too many edges for subset enumeration.
    TooManyEdges { m: usize, limit: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::SearchSpaceTooLarge { states, limit } => {
                write!(f, "coloring search space {states} exceeds limit {limit}")
            }
            OracleError::TooManyEdges { m, limit } => {
                write!(f, "{m} edges exceed subset-enumeration limit {limit}")
            }
        }
    }
}

impl core::error::Error for OracleError {}

/// Exact maximum stable set size by exhaustive search over vertex colorings,
/// with the default state limit.
pub fn max_stable(g: &ColoredHypergraph) -> Result<Solved, OracleError> {
    max_stable_with_limit(g, DEFAULT_STATE_LIMIT)
}

/// Exact maximum by coloring search with an explicit state limit.
pub fn max_stable_with_limit(g: &ColoredHypergraph, limit: u128) -> Result<Solved, OracleError> {
    let inc = g.incidence_lists();
    // Candidate colors per vertex: incident colors plus the default color.
    let mut candidates: Vec<Vec<ColorId>> = Vec::with_capacity(g.n);
    for v in 0..g.n {
        let mut cs: Vec<ColorId> = inc[v].iter().map(|&e| g.edges[e].color).collect();
        cs.push(BOTTOM);
        cs.sort_unstable();
        cs.dedup();
        candidates.push(cs);
    }

    let mut states: u128 = 1;
    for cs in &candidates {
        states = states.saturating_mul(cs.len() as u128);
        if states > limit {
            return Err(OracleError::SearchSpaceTooLarge { states, limit });
        }
    }

    // An edge is decided once its largest vertex is colored.
    let mut closing: Vec<Vec<usize>> = alloc::vec![Vec::new(); g.n];
    for (idx, e) in g.edges.iter().enumerate() {
        let last = *e.vertices.last().expect("edges are nonempty");
        closing[last].push(idx);
    }
    // suffix[v] = number of edges decided at vertex >= v; used for pruning.
    let mut suffix = alloc::vec![0usize; g.n + 1];
    for v in (0..g.n).rev() {
        suffix[v] = suffix[v + 1] + closing[v].len();
    }

    let mut assignment = alloc::vec![BOTTOM; g.n];
    let mut best_count = 0usize;
    let mut best = alloc::vec![BOTTOM; g.n];
    search(
        g,
        &candidates,
        &closing,
        &suffix,
        0,
        0,
        &mut assignment,
        &mut best_count,
        &mut best,
    );

    let coloring = VertexColoring { colors: best };
    let witness = stable_under(g, &coloring).expect("coloring has correct length");
    debug_assert_eq!(witness.len(), best_count);
    Ok(Solved::new(best_count, witness))
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &ColoredHypergraph,
    candidates: &[Vec<ColorId>],
    closing: &[Vec<usize>],
    suffix: &[usize],
    v: usize,
    count: usize,
    assignment: &mut [ColorId],
    best_count: &mut usize,
    best: &mut [ColorId],
) {
    if v == g.n {
        if count > *best_count {
            *best_count = count;
            best.copy_from_slice(assignment);
        }
        return;
    }
    // Even deciding every remaining edge cannot beat the incumbent.
    if count + suffix[v] <= *best_count {
        return;
    }
    for &c in &candidates[v] {
        assignment[v] = c;
        let mut gained = 0;
        for &idx in &closing[v] {
            let e = &g.edges[idx];
            if e.color == c && e.vertices.iter().all(|&u| assignment[u] == e.color) {
                gained += 1;
            }
        }
        search(
            g,
            candidates,
            closing,
            suffix,
            v + 1,
            count + gained,
            assignment,
            best_count,
            best,
        );
    }
}

/// Exact maximum by enumerating all edge subsets. Independent of the
/// coloring search; intended for cross-validation on tiny instances.
pub fn max_stable_by_subsets(g: &ColoredHypergraph, max_m: usize) -> Result<Solved, OracleError> {
    let m = g.m();
    if m > max_m || m >= usize::BITS as usize {
        return Err(OracleError::TooManyEdges { m, limit: max_m });
    }
    let mut best = StableSet::empty();
    for mask in 0usize..(1 << m) {
        if (mask.count_ones() as usize) <= best.len() {
            continue;
        }
        let set = StableSet::from_indices((0..m).filter(|&i| mask >> i & 1 == 1));
        if is_stable(g, &set).expect("indices in range") {
            best = set;
        }
    }
    let optimum = best.len();
    Ok(Solved::new(optimum, best))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;

    fn triangle(colors: [ColorId; 3], palette: usize) -> ColoredHypergraph {
        ColoredHypergraph::with_edges(
            3,
            palette,
            alloc::vec![
                Edge::pair(0, 1, colors[0]),
                Edge::pair(1, 2, colors[1]),
                Edge::pair(0, 2, colors[2]),
            ],
        )
    }

    #[test]
    fn monochromatic_triangle_all_edges() {
        let g = triangle([0, 0, 0], 1);
        let solved = max_stable(&g).unwrap();
        assert_eq!(solved.optimum, 3);
        solved.assert_consistent(&g);
    }

    #[test]
    fn rainbow_triangle_single_edge() {
        let g = triangle([0, 1, 2], 3);
        let solved = max_stable(&g).unwrap();
        assert_eq!(solved.optimum, 1);
        solved.assert_consistent(&g);
    }

    #[test]
    fn subset_oracle_agrees_on_triangles() {
        for colors in [[0, 0, 0], [0, 0, 1], [0, 1, 2]] {
            let g = triangle(colors, 3);
            let a = max_stable(&g).unwrap().optimum;
            let b = max_stable_by_subsets(&g, 20).unwrap().optimum;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn state_limit_guard_fires() {
        // 8 vertices in one rainbow star: candidate product is large for a
        // tiny limit.
        let edges: Vec<Edge> = (1..8).map(|v| Edge::pair(0, v, v - 1)).collect();
        let g = ColoredHypergraph::with_edges(8, 7, edges);
        assert!(matches!(
            max_stable_with_limit(&g, 4),
            Err(OracleError::SearchSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn empty_graph_optimum_zero() {
        let g = ColoredHypergraph::new(0, 0);
        let solved = max_stable(&g).unwrap();
        assert_eq!(solved.optimum, 0);
        assert!(solved.witness.is_empty());
    }

    #[test]
    fn hyperedges_supported() {
        // Two overlapping 3-edges of different colors conflict; a disjoint
        // singleton of a third color is free.
        let g = ColoredHypergraph::with_edges(
            5,
            3,
            alloc::vec![
                Edge::new(alloc::vec![0, 1, 2], 0),
                Edge::new(alloc::vec![2, 3], 1),
                Edge::new(alloc::vec![4], 2),
            ],
        );
        let solved = max_stable(&g).unwrap();
        assert_eq!(solved.optimum, 2);
        let by_subsets = max_stable_by_subsets(&g, 10).unwrap();
        assert_eq!(by_subsets.optimum, 2);
    }
}
