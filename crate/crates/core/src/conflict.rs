//! Conflict graphs and the exact solvers built on them.
//!
//! The conflict graph has one node per instance edge; two nodes are adjacent
//! iff the edges intersect and carry different colors. Stable edge sets are
//! exactly the independent sets of the conflict graph, so the maximum stable
//! set size is `m` minus the minimum vertex cover of the conflict graph.
//! This holds for hypergraphs of any order since stability is a pairwise
//! condition.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::instance::{CCInstance, ColoredHypergraph};
use crate::matching::{bipartite_matching, koenig_cover, Bipartite};
use crate::solution::{is_stable, Solved, StableSet};

/// The derived conflict graph. Node `i` stands for edge `i` of the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictGraph {
    pub nodes: usize,
    pub adj: Vec<BTreeSet<usize>>,
}

impl ConflictGraph {
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Conflict pairs `(i, j)` with `i < j`.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs.iter().filter(|&&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn is_independent(&self, set: &StableSet) -> bool {
        set.edges
            .iter()
            .all(|&i| self.adj[i].iter().all(|j| !set.edges.contains(j)))
    }
}

/// Builds the conflict graph: edges conflict iff they share a vertex and
/// differ in color.
pub fn build_conflict(g: &ColoredHypergraph) -> ConflictGraph {
    let mut adj = alloc::vec![BTreeSet::new(); g.m()];
    for list in g.incidence_lists() {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                if g.edges[i].color != g.edges[j].color {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
    }
    ConflictGraph { nodes: g.m(), adj }
}

/// Exact solve through a minimum vertex cover of the conflict graph.
/// The witness is the complement of the cover.
pub fn solve_via_vc(inst: &CCInstance) -> Solved {
    let g = &inst.graph;
    let cg = build_conflict(g);
    let cover = min_vertex_cover(&cg);
    let witness: StableSet = (0..g.m()).filter(|i| !cover.contains(i)).collect();
    let solved = Solved::new(g.m() - cover.len(), witness);
    debug_assert_eq!(is_stable(g, &solved.witness), Ok(true));
    solved
}

/// Exact solve by branching on conflicting pairs: pick two adjacent
/// conflict-graph nodes and branch on which of the two edges is discarded.
pub fn branch_unstable(inst: &CCInstance) -> Solved {
    let g = &inst.graph;
    let cg = build_conflict(g);
    let m = g.m();
    let mut alive = alloc::vec![true; m];
    // (discarded count, surviving set); sentinel worse than any outcome.
    let mut best: (usize, Vec<bool>) = (m + 1, Vec::new());
    branch_rec(&cg, &mut alive, 0, &mut best);
    let witness: StableSet = (0..m).filter(|&i| best.1[i]).collect();
    let solved = Solved::new(m - best.0, witness);
    debug_assert_eq!(is_stable(g, &solved.witness), Ok(true));
    solved
}

fn branch_rec(cg: &ConflictGraph, alive: &mut [bool], discarded: usize, best: &mut (usize, Vec<bool>)) {
    if discarded >= best.0 {
        return;
    }
    // Lowest-indexed conflicting pair among surviving edges.
    let pair = (0..cg.nodes)
        .filter(|&i| alive[i])
        .find_map(|i| {
            cg.adj[i]
                .iter()
                .find(|&&j| j > i && alive[j])
                .map(|&j| (i, j))
        });
    match pair {
        None => {
            *best = (discarded, alive.to_vec());
        }
        Some((i, j)) => {
            for &drop in &[i, j] {
                alive[drop] = false;
                branch_rec(cg, alive, discarded + 1, best);
                alive[drop] = true;
            }
        }
    }
}

/// Decision form of [`branch_unstable`]: may the instance keep `k` stable
/// edges while discarding at most `m - k`?
pub fn branch_unstable_decision(inst: &CCInstance) -> bool {
    branch_unstable(inst).optimum >= inst.k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoColorError {
    TooManyColors { present: usize },
}

impl fmt::Display for TwoColorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoColorError::TooManyColors { present } => {
                write!(f, "two-color solver got {present} distinct colors")
            }
        }
    }
}

impl core::error::Error for TwoColorError {}

/// Polynomial exact solve for instances whose edges use at most two
/// distinct colors: the conflict graph is bipartite (color classes), so the
/// minimum vertex cover equals the maximum matching.
pub fn solve_two_colors(inst: &CCInstance) -> Result<Solved, TwoColorError> {
    let g = &inst.graph;
    let present: BTreeSet<usize> = g.edges.iter().map(|e| e.color).collect();
    if present.len() > 2 {
        return Err(TwoColorError::TooManyColors {
            present: present.len(),
        });
    }
    let mut it = present.iter();
    let c0 = it.next().copied();
    let cg = build_conflict(g);

    // All conflicts run between the two color classes.
    let left_ids: Vec<usize> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| Some(e.color) == c0)
        .map(|(i, _)| i)
        .collect();
    let right_ids: Vec<usize> = g
        .edges
        .iter()
        .enumerate()
        .filter(|(_, e)| Some(e.color) != c0)
        .map(|(i, _)| i)
        .collect();
    let right_pos: BTreeMap<usize, usize> =
        right_ids.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let adj: Vec<Vec<usize>> = left_ids
        .iter()
        .map(|&i| cg.adj[i].iter().map(|j| right_pos[j]).collect())
        .collect();
    let bip = Bipartite {
        left: left_ids.len(),
        right: right_ids.len(),
        adj,
    };
    let (_, ml, mr) = bipartite_matching(&bip);
    let (cl, cr) = koenig_cover(&bip, &ml, &mr);

    let mut in_cover = alloc::vec![false; g.m()];
    for (p, &i) in left_ids.iter().enumerate() {
        in_cover[i] = cl[p];
    }
    for (p, &i) in right_ids.iter().enumerate() {
        in_cover[i] = cr[p];
    }
    let witness: StableSet = (0..g.m()).filter(|&i| !in_cover[i]).collect();
    let optimum = witness.len();
    let solved = Solved::new(optimum, witness);
    debug_assert_eq!(is_stable(g, &solved.witness), Ok(true));
    Ok(solved)
}

// ---------------------------------------------------------------------------
// Minimum vertex cover: branch and reduce.
// ---------------------------------------------------------------------------

type Adj = BTreeMap<usize, BTreeSet<usize>>;

/// Exact minimum vertex cover of the conflict graph, as a set of node ids.
///
/// Branch and reduce: degree-0/1 reduction, degree-2 folding (mirror rule
/// when the neighbors are adjacent), branching on the lowest-indexed
/// maximum-degree node, pruned by greedy-matching and LP lower bounds.
pub fn min_vertex_cover(cg: &ConflictGraph) -> BTreeSet<usize> {
    let mut adj: Adj = BTreeMap::new();
    for i in 0..cg.nodes {
        if !cg.adj[i].is_empty() {
            adj.insert(i, cg.adj[i].clone());
        }
    }
    let next_id = cg.nodes;

    // Greedy upper bound doubles as the fallback witness.
    let greedy = greedy_cover(adj.clone());
    let budget = greedy.len();
    match vc_search(adj, next_id, budget.saturating_sub(1)) {
        Some(cover) => {
            debug_assert!(cover.len() <= budget);
            cover
        }
        None => greedy,
    }
}

fn greedy_cover(mut adj: Adj) -> BTreeSet<usize> {
    let mut cover = BTreeSet::new();
    loop {
        let Some((&v, _)) = adj
            .iter()
            .filter(|(_, nbrs)| !nbrs.is_empty())
            .max_by_key(|(&v, nbrs)| (nbrs.len(), core::cmp::Reverse(v)))
        else {
            break;
        };
        cover.insert(v);
        remove_vertex(&mut adj, v);
    }
    cover
}

fn remove_vertex(adj: &mut Adj, v: usize) {
    if let Some(nbrs) = adj.remove(&v) {
        for u in nbrs {
            if let Some(s) = adj.get_mut(&u) {
                s.remove(&v);
            }
        }
    }
}

struct Fold {
    folded: usize,
    center: usize,
    left: usize,
    right: usize,
}

/// Returns a cover of size at most `budget`, or `None` if none exists.
fn vc_search(mut adj: Adj, mut next_id: usize, budget: usize) -> Option<BTreeSet<usize>> {
    let mut forced: BTreeSet<usize> = BTreeSet::new();
    let mut folds: Vec<Fold> = Vec::new();

    // Reduction loop.
    loop {
        let mut changed = false;
        let isolated: Vec<usize> = adj
            .iter()
            .filter(|(_, nbrs)| nbrs.is_empty())
            .map(|(&v, _)| v)
            .collect();
        for v in isolated {
            adj.remove(&v);
            changed = true;
        }
        if let Some((&v, nbrs)) = adj.iter().find(|(_, nbrs)| nbrs.len() == 1) {
            let u = *nbrs.first().expect("degree one");
            forced.insert(u);
            remove_vertex(&mut adj, u);
            adj.remove(&v);
            changed = true;
        } else if let Some((&v, nbrs)) = adj.iter().find(|(_, nbrs)| nbrs.len() == 2) {
            let mut it = nbrs.iter();
            let a = *it.next().expect("degree two");
            let b = *it.next().expect("degree two");
            if adj[&a].contains(&b) {
                // Triangle: taking both neighbors dominates.
                forced.insert(a);
                forced.insert(b);
                remove_vertex(&mut adj, a);
                remove_vertex(&mut adj, b);
                adj.remove(&v);
            } else {
                // Fold the path a-v-b into a fresh node.
                let folded = next_id;
                next_id += 1;
                let mut merged: BTreeSet<usize> = &adj[&a] | &adj[&b];
                merged.remove(&v);
                merged.remove(&a);
                merged.remove(&b);
                remove_vertex(&mut adj, a);
                remove_vertex(&mut adj, b);
                adj.remove(&v);
                for &t in &merged {
                    adj.entry(t).or_default().insert(folded);
                }
                adj.insert(folded, merged);
                folds.push(Fold {
                    folded,
                    center: v,
                    left: a,
                    right: b,
                });
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }

    // Every fold contributes one cover vertex on top of the residual cover.
    let base_cost = forced.len() + folds.len();
    let result = if base_cost > budget {
        None
    } else if adj.is_empty() {
        Some(BTreeSet::new())
    } else {
        let residual_budget = budget - base_cost;
        if lower_bound(&adj) > residual_budget {
            None
        } else {
            branch_on_max_degree(&adj, next_id, residual_budget)
        }
    };

    result.map(|mut cover| {
        // Forced vertices may themselves be folded nodes (a fold result can
        // later hit the degree-1 rule), so merge them before unfolding.
        cover.extend(forced.iter().copied());
        for fold in folds.iter().rev() {
            if cover.remove(&fold.folded) {
                cover.insert(fold.left);
                cover.insert(fold.right);
            } else {
                cover.insert(fold.center);
            }
        }
        cover
    })
}

fn branch_on_max_degree(adj: &Adj, next_id: usize, budget: usize) -> Option<BTreeSet<usize>> {
    if budget == 0 {
        // Any remaining edge is uncoverable.
        return None;
    }
    let (&v, nbrs) = adj
        .iter()
        .max_by_key(|(&v, nbrs)| (nbrs.len(), core::cmp::Reverse(v)))
        .expect("graph not empty");
    let nbrs = nbrs.clone();

    // Branch 1: v joins the cover.
    let mut g1 = adj.clone();
    remove_vertex(&mut g1, v);
    let take_v = vc_search(g1, next_id, budget - 1).map(|mut c| {
        c.insert(v);
        c
    });

    // Branch 2: v stays out, so its whole neighborhood joins.
    let alt_budget = match take_v {
        Some(ref c) => c.len().saturating_sub(1), // must strictly improve
        None => budget,
    };
    let take_n = if nbrs.len() <= alt_budget {
        let mut g2 = adj.clone();
        for &u in &nbrs {
            remove_vertex(&mut g2, u);
        }
        g2.remove(&v);
        vc_search(g2, next_id, alt_budget - nbrs.len()).map(|mut c| {
            c.extend(nbrs.iter().copied());
            c
        })
    } else {
        None
    };

    match (take_v, take_n) {
        (Some(a), Some(b)) => Some(if b.len() <= a.len() { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Lower bound on the cover size: the larger of a greedy matching bound and
/// the half-integral LP bound (half the maximum matching of the bipartite
/// double cover, rounded up).
fn lower_bound(adj: &Adj) -> usize {
    // Greedy matching: disjoint edges each need a distinct cover vertex.
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut matching = 0usize;
    for (&v, nbrs) in adj.iter() {
        if used.contains(&v) {
            continue;
        }
        if let Some(&u) = nbrs.iter().find(|u| !used.contains(u)) {
            used.insert(v);
            used.insert(u);
            matching += 1;
        }
    }
    let lp = lp_half_units(adj).div_ceil(2);
    matching.max(lp)
}

/// Twice the LP vertex cover optimum of the graph, an integer thanks to
/// half-integrality: the maximum matching size of the bipartite double
/// cover.
pub(crate) fn lp_half_units(adj: &Adj) -> usize {
    let ids: Vec<usize> = adj.keys().copied().collect();
    let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let bip_adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| adj[&v].iter().map(|u| pos[u]).collect())
        .collect();
    let bip = Bipartite {
        left: ids.len(),
        right: ids.len(),
        adj: bip_adj,
    };
    let (size, _, _) = bipartite_matching(&bip);
    size
}

/// Conflict-graph adjacency in the map form used by the cover solver.
pub(crate) fn conflict_adj_map(cg: &ConflictGraph) -> Adj {
    (0..cg.nodes)
        .filter(|&i| !cg.adj[i].is_empty())
        .map(|i| (i, cg.adj[i].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Edge;
    use crate::oracle;

    fn triangle(colors: [usize; 3], palette: usize) -> CCInstance {
        CCInstance::new(
            ColoredHypergraph::with_edges(
                3,
                palette,
                alloc::vec![
                    Edge::pair(0, 1, colors[0]),
                    Edge::pair(1, 2, colors[1]),
                    Edge::pair(0, 2, colors[2]),
                ],
            ),
            1,
        )
    }

    #[test]
    fn monochromatic_conflict_graph_is_edgeless() {
        let inst = triangle([0, 0, 0], 1);
        let cg = build_conflict(&inst.graph);
        assert_eq!(cg.edge_count(), 0);
        assert_eq!(solve_via_vc(&inst).optimum, 3);
    }

    #[test]
    fn two_one_split_has_two_conflicts() {
        let inst = triangle([0, 0, 1], 2);
        let cg = build_conflict(&inst.graph);
        assert_eq!(cg.edge_count(), 2);
        assert_eq!(solve_via_vc(&inst).optimum, 2);
    }

    #[test]
    fn rainbow_triangle_cover_two() {
        let inst = triangle([0, 1, 2], 3);
        let cg = build_conflict(&inst.graph);
        assert_eq!(min_vertex_cover(&cg).len(), 2);
        assert_eq!(solve_via_vc(&inst).optimum, 1);
    }

    #[test]
    fn independence_matches_stability() {
        use rand::{Rng, SeedableRng};
        use crate::solution::StableSet;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = crate::generators::random_instance(
                &crate::generators::RandomParams {
                    n: rng.random_range(2..7),
                    m: rng.random_range(0..8),
                    colors: rng.random_range(1..4),
                    order: 2,
                    planted: None,
                },
                rng.random(),
            )
            .graph;
            let cg = build_conflict(&g);
            for mask in 0u32..(1 << g.m()) {
                let set: StableSet = (0..g.m()).filter(|&i| mask >> i & 1 == 1).collect();
                assert_eq!(
                    cg.is_independent(&set),
                    is_stable(&g, &set).unwrap(),
                    "mask {mask:b}"
                );
            }
        }
    }

    #[test]
    fn branching_never_branches_without_conflicts() {
        let inst = triangle([0, 0, 0], 1);
        let solved = branch_unstable(&inst);
        assert_eq!(solved.optimum, 3);
    }

    #[test]
    fn branching_decision_rainbow() {
        let mut inst = triangle([0, 1, 2], 3);
        inst.k = 1;
        assert!(branch_unstable_decision(&inst));
        inst.k = 2;
        assert!(!branch_unstable_decision(&inst));
    }

    #[test]
    fn two_colors_alternating_path() {
        // Path with colors a,b,a,b on 5 vertices: optimum 2.
        let edges = (0..4).map(|i| Edge::pair(i, i + 1, i % 2)).collect();
        let inst = CCInstance::new(ColoredHypergraph::with_edges(5, 2, edges), 2);
        let solved = solve_two_colors(&inst).unwrap();
        assert_eq!(solved.optimum, 2);
        assert_eq!(solved.optimum, oracle::max_stable(&inst.graph).unwrap().optimum);
    }

    #[test]
    fn two_colors_rejects_three() {
        let inst = triangle([0, 1, 2], 3);
        assert!(solve_two_colors(&inst).is_err());
    }

    #[test]
    fn monochromatic_two_color_solver() {
        let inst = triangle([1, 1, 1], 2);
        assert_eq!(solve_two_colors(&inst).unwrap().optimum, 3);
    }

    #[test]
    fn koenig_consistency_on_two_color_instances() {
        // On bipartite conflict graphs the maximum matching equals the
        // minimum cover, so matching size plus optimum equals m.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        for seed in 0..60u64 {
            let inst = crate::generators::random_instance(
                &crate::generators::RandomParams {
                    n: rng.random_range(2..8),
                    m: rng.random_range(0..10),
                    colors: 2,
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = &inst.graph;
            let cg = build_conflict(g);
            let c0: Vec<usize> = (0..g.m()).filter(|&i| g.edges[i].color == 0).collect();
            let pos: BTreeMap<usize, usize> =
                (0..g.m()).filter(|&i| g.edges[i].color == 1).zip(0..).collect();
            let bip = Bipartite {
                left: c0.len(),
                right: pos.len(),
                adj: c0
                    .iter()
                    .map(|&i| cg.adj[i].iter().map(|j| pos[j]).collect())
                    .collect(),
            };
            let (matching, _, _) = bipartite_matching(&bip);
            let solved = solve_two_colors(&inst).unwrap();
            assert_eq!(matching + solved.optimum, g.m(), "seed {seed}");
        }
    }

    #[test]
    fn solvers_agree_with_oracle_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for round in 0..120 {
            let params = crate::generators::RandomParams {
                n: rng.random_range(2..8),
                m: rng.random_range(0..11),
                colors: rng.random_range(1..4),
                order: if round % 3 == 0 { 3 } else { 2 },
                planted: None,
            };
            let g = crate::generators::random_instance(&params, rng.random()).graph;
            let inst = CCInstance::new(g.clone(), 1);
            let expect = oracle::max_stable(&g).unwrap().optimum;
            let vc = solve_via_vc(&inst);
            vc.assert_consistent(&g);
            assert_eq!(vc.optimum, expect, "vc vs oracle on {g:?}");
            let br = branch_unstable(&inst);
            br.assert_consistent(&g);
            assert_eq!(br.optimum, expect, "branch vs oracle on {g:?}");
            if params.colors <= 2 {
                let tc = solve_two_colors(&inst).unwrap();
                tc.assert_consistent(&g);
                assert_eq!(tc.optimum, expect, "two-color vs oracle on {g:?}");
            }
        }
    }
}
