//! Lower bounds on the number of unstable edges and above-guarantee gap
//! parameters.
//!
//! At any vertex, all incident edges except those of one color are unstable,
//! which yields degree-based lower bounds on the number of unstable edges.
//! The capped variant (never charging a vertex more than half its degree)
//! is dominated by the LP relaxation of vertex cover on the conflict graph;
//! [`dual_certificate`] makes that comparison constructive by assembling an
//! explicit feasible dual solution from per-vertex certificates on the
//! complete multipartite conflict neighborhoods.
//!
//! All arithmetic is exact rational; values are multiples of one quarter.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::conflict::{build_conflict, conflict_adj_map, lp_half_units, ConflictGraph};
use crate::instance::{CCInstance, ColoredHypergraph};
use crate::matching::{greedy_maximal_matching, maximum_matching, MatchingInfo};

pub type Frac = Ratio<i64>;

fn frac(n: i64, d: i64) -> Frac {
    Ratio::new(n, d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsError {
    NotAGraph,
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::NotAGraph => write!(f, "bound requires all edges to be pairs"),
        }
    }
}

impl core::error::Error for BoundsError {}

/// Degree-based lower bound on the number of unstable edges of a graph:
/// half the sum over vertices of (degree minus largest per-color degree).
pub fn degree_bound(g: &ColoredHypergraph) -> Result<Frac, BoundsError> {
    if !g.is_graph() {
        return Err(BoundsError::NotAGraph);
    }
    let profile = g.degree_profile();
    let sum: i64 = (0..g.n)
        .map(|v| (profile.degree(v) - profile.max_color_degree(v)) as i64)
        .sum();
    Ok(frac(sum, 2))
}

/// Capped degree bound: like [`degree_bound`] but charging each vertex at
/// most half its degree. Never exceeds the plain degree bound, and never
/// exceeds the conflict-graph LP value.
pub fn capped_degree_bound(g: &ColoredHypergraph) -> Result<Frac, BoundsError> {
    if !g.is_graph() {
        return Err(BoundsError::NotAGraph);
    }
    Ok(capped_sum(g) / 2)
}

/// Hypergraph variant: the capped per-vertex sum divided by the order
/// instead of two. Zero for edgeless instances.
pub fn hyper_degree_bound(g: &ColoredHypergraph) -> Frac {
    let d = g.order();
    if d == 0 {
        return Frac::from(0);
    }
    capped_sum(g) / d as i64
}

fn capped_sum(g: &ColoredHypergraph) -> Frac {
    let profile = g.degree_profile();
    (0..g.n)
        .map(|v| {
            let deg = profile.degree(v) as i64;
            let slack = deg - profile.max_color_degree(v) as i64;
            Frac::from(slack).min(frac(deg, 2))
        })
        .sum()
}

/// Exact optimum of the vertex-cover LP relaxation on a conflict graph.
/// By half-integrality this equals half the maximum matching size of the
/// bipartite double cover.
pub fn lp_cover_value(cg: &ConflictGraph) -> Frac {
    let adj = conflict_adj_map(cg);
    frac(lp_half_units(&adj) as i64, 2)
}

/// A feasible solution of the dual of the vertex-cover LP on the conflict
/// graph: one value per conflict-graph edge, with the per-node sums bounded
/// by one. Its total value is a certified lower bound on the LP optimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCertificate {
    /// Nonzero dual values keyed by conflict pairs `(i, j)`, `i < j`.
    pub values: BTreeMap<(usize, usize), Frac>,
}

impl DualCertificate {
    pub fn value(&self) -> Frac {
        self.values.values().copied().sum()
    }

    /// Exact feasibility: every key is a conflict pair, every value lies in
    /// `[0, 1]`, and the incident sum at every node is at most one.
    pub fn is_feasible(&self, cg: &ConflictGraph) -> bool {
        let zero = Frac::from(0);
        let one = Frac::from(1);
        let mut incident = alloc::vec![zero; cg.nodes];
        for (&(i, j), &val) in &self.values {
            if i >= j || j >= cg.nodes || !cg.adj[i].contains(&j) {
                return false;
            }
            if val < zero || val > one {
                return false;
            }
            incident[i] += val;
            incident[j] += val;
        }
        incident.iter().all(|s| *s <= one)
    }
}

/// Constructs a feasible dual certificate of value at least the capped
/// degree bound.
///
/// The conflict subgraph induced by the edges at a vertex is complete
/// multipartite (parts are the color classes). Each vertex contributes a
/// local dual solution on that subgraph: built by matching into a dominant
/// part, or by pairing off the two largest parts and recursing, ending in an
/// all-halves triangle: and every conflict pair receives half the local
/// value from each shared endpoint.
pub fn dual_certificate(g: &ColoredHypergraph) -> Result<DualCertificate, BoundsError> {
    if !g.is_graph() {
        return Err(BoundsError::NotAGraph);
    }
    let mut values: BTreeMap<(usize, usize), Frac> = BTreeMap::new();
    for list in g.incidence_lists() {
        // Color classes among the edges at this vertex.
        let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &e in &list {
            by_color.entry(g.edges[e].color).or_default().push(e);
        }
        let parts: Vec<(usize, Vec<usize>)> = by_color.into_iter().collect();
        let mut local: Vec<((usize, usize), Frac)> = Vec::new();
        multipartite_dual(parts, &mut local);
        for ((a, b), val) in local {
            let key = (a.min(b), a.max(b));
            *values.entry(key).or_insert_with(|| Frac::from(0)) += val / 2;
        }
    }
    values.retain(|_, v| *v != Frac::from(0));
    Ok(DualCertificate { values })
}

/// Emits a dual solution on the complete multipartite graph whose nodes are
/// the given ids, of value `sum - n1` when the largest part dominates and
/// half the node count otherwise. Ties between parts break on color id.
fn multipartite_dual(mut parts: Vec<(usize, Vec<usize>)>, out: &mut Vec<((usize, usize), Frac)>) {
    loop {
        parts.retain(|(_, ids)| !ids.is_empty());
        let total: usize = parts.iter().map(|(_, ids)| ids.len()).sum();
        if parts.len() <= 1 || total < 2 {
            return;
        }
        parts.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.0.cmp(&b.0)));
        let n1 = parts[0].1.len();
        if n1 >= total - n1 {
            // Dominant part: match every other node to a distinct node of
            // the dominant part with weight one.
            let dominant = parts[0].1.clone();
            let mut slot = 0;
            for (_, ids) in &parts[1..] {
                for &node in ids {
                    out.push(((dominant[slot], node), Frac::from(1)));
                    slot += 1;
                }
            }
            return;
        }
        if total == 3 {
            // Three singleton parts: all-halves on the triangle.
            let ids: Vec<usize> = parts.iter().flat_map(|(_, ids)| ids.clone()).collect();
            out.push(((ids[0], ids[1]), frac(1, 2)));
            out.push(((ids[0], ids[2]), frac(1, 2)));
            out.push(((ids[1], ids[2]), frac(1, 2)));
            return;
        }
        // Pair the lead nodes of the two largest parts and recurse.
        let u = parts[0].1.remove(0);
        let v = parts[1].1.remove(0);
        out.push(((u, v), Frac::from(1)));
    }
}

/// Whether the instance was decided outright by a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decided {
    Yes(&'static str),
    No(&'static str),
}

/// Everything the above-guarantee parameterizations care about: matching
/// and induced-matching sizes, the degree bounds, the LP value, and the
/// gaps between the instance targets and those bounds.
#[derive(Clone, Debug)]
pub struct GapReport {
    pub k: usize,
    pub unstable_budget: i64,
    pub matching: usize,
    pub matching_exact: bool,
    pub induced_matching: Option<usize>,
    pub degree_bound: Option<Frac>,
    pub capped_degree_bound: Option<Frac>,
    pub hyper_degree_bound: Frac,
    pub lp_bound: Frac,
    pub decided: Option<Decided>,
}

impl GapReport {
    pub fn k_minus_matching(&self) -> i64 {
        self.k as i64 - self.matching as i64
    }

    pub fn k_minus_induced(&self) -> Option<i64> {
        self.induced_matching.map(|i| self.k as i64 - i as i64)
    }

    pub fn gap_to(&self, bound: Frac) -> Frac {
        Frac::from(self.unstable_budget) - bound
    }
}

/// Computes all applicable bounds plus the trivial decisions they imply:
/// a matching of size `k` proves yes; an unstable-edge budget below any
/// lower bound proves no.
pub fn gap_parameters(inst: &CCInstance, induced: Option<&MatchingInfo>) -> GapReport {
    let g = &inst.graph;
    let m = g.m() as i64;
    let unstable_budget = m - inst.k as i64;
    let (matching, matching_exact) = match maximum_matching(g) {
        Ok(info) => (info.size(), true),
        Err(_) => (greedy_maximal_matching(g).size(), false),
    };
    let induced_matching = induced.map(|mi| {
        debug_assert!(mi.induced);
        mi.size()
    });
    let cg = build_conflict(g);
    let lp_bound = lp_cover_value(&cg);
    let degree = degree_bound(g).ok();
    let capped = capped_degree_bound(g).ok();
    let hyper = hyper_degree_bound(g);

    let mut decided = None;
    if matching >= inst.k {
        decided = Some(Decided::Yes("matching reaches the target"));
    } else if unstable_budget < 0 {
        decided = Some(Decided::No("more stable edges requested than exist"));
    } else {
        let budget = Frac::from(unstable_budget);
        let mut lower = lp_bound.max(hyper);
        if let Some(d) = degree {
            lower = lower.max(d);
        }
        if budget < lower {
            decided = Some(Decided::No("unstable budget below a lower bound"));
        }
    }

    GapReport {
        k: inst.k,
        unstable_budget,
        matching,
        matching_exact,
        induced_matching,
        degree_bound: degree,
        capped_degree_bound: capped,
        hyper_degree_bound: hyper,
        lp_bound,
        decided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conflict::{min_vertex_cover, solve_via_vc};
    use crate::generators::{random_instance, RandomParams};
    use crate::instance::Edge;
    use crate::oracle;
    use rand::{Rng, SeedableRng};

    #[test]
    fn monochromatic_bounds_are_zero() {
        let g = ColoredHypergraph::with_edges(
            3,
            1,
            alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 0), Edge::pair(0, 2, 0)],
        );
        assert_eq!(degree_bound(&g).unwrap(), Frac::from(0));
        assert_eq!(capped_degree_bound(&g).unwrap(), Frac::from(0));
        let cert = dual_certificate(&g).unwrap();
        assert_eq!(cert.value(), Frac::from(0));
    }

    #[test]
    fn cherry_bound_is_half() {
        let g = ColoredHypergraph::with_edges(
            3,
            2,
            alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 1)],
        );
        assert_eq!(degree_bound(&g).unwrap(), frac(1, 2));
        let cert = dual_certificate(&g).unwrap();
        let cg = build_conflict(&g);
        assert!(cert.is_feasible(&cg));
        assert!(cert.value() >= frac(1, 2));
    }

    #[test]
    fn rainbow_star_capped_below_plain() {
        // Rainbow K_{1,4}: plain bound 3/2 overshoots, capped bound 1, true
        // unstable count 3.
        let edges = (0..4).map(|i| Edge::pair(0, i + 1, i)).collect();
        let g = ColoredHypergraph::with_edges(5, 4, edges);
        assert_eq!(degree_bound(&g).unwrap(), frac(3, 2));
        assert_eq!(capped_degree_bound(&g).unwrap(), Frac::from(1));
        let opt = oracle::max_stable(&g).unwrap().optimum;
        assert_eq!(g.m() - opt, 3);
    }

    #[test]
    fn chromatic_degree_two_collapses_the_bounds() {
        // Every vertex sees at most two colors: the bounds coincide.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let mut found = 0;
        for seed in 0..200u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(3..8),
                    m: rng.random_range(1..10),
                    colors: 2,
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = inst.graph;
            let profile = g.degree_profile();
            if (0..g.n).all(|v| profile.chromatic_degree(v) <= 2) {
                assert_eq!(degree_bound(&g).unwrap(), capped_degree_bound(&g).unwrap());
                found += 1;
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn order_two_hyper_bound_matches_capped() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for seed in 0..50u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..8),
                    m: rng.random_range(1..10),
                    colors: rng.random_range(1..4),
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = inst.graph;
            if g.m() == 0 {
                continue;
            }
            assert_eq!(hyper_degree_bound(&g), capped_degree_bound(&g).unwrap());
        }
    }

    #[test]
    fn lp_value_on_single_conflict_edge() {
        let g = ColoredHypergraph::with_edges(
            3,
            2,
            alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 1)],
        );
        let cg = build_conflict(&g);
        assert_eq!(lp_cover_value(&cg), Frac::from(1));
    }

    #[test]
    fn lp_value_on_conflict_triangle() {
        let g = ColoredHypergraph::with_edges(
            3,
            3,
            alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 1), Edge::pair(0, 2, 2)],
        );
        let cg = build_conflict(&g);
        assert_eq!(lp_cover_value(&cg), frac(3, 2));
    }

    #[test]
    fn bound_chain_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(55);
        for seed in 0..200u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..9),
                    m: rng.random_range(0..12),
                    colors: rng.random_range(1..5),
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = &inst.graph;
            let plain = degree_bound(g).unwrap();
            let capped = capped_degree_bound(g).unwrap();
            let cg = build_conflict(g);
            let alpha = lp_cover_value(&cg);
            let cover = min_vertex_cover(&cg).len() as i64;
            assert!(capped <= plain, "seed {seed}");
            assert!(capped <= alpha, "seed {seed}");
            assert!(alpha <= Frac::from(cover), "seed {seed}");
            // Cover size is the true number of unstable edges.
            let opt = solve_via_vc(&inst).optimum;
            assert_eq!(cover, (g.m() - opt) as i64, "seed {seed}");
            let cert = dual_certificate(g).unwrap();
            assert!(cert.is_feasible(&cg), "seed {seed}");
            assert!(cert.value() >= capped, "seed {seed}");
            // Weak duality: dual values never exceed the LP optimum.
            assert!(cert.value() <= alpha, "seed {seed}");
        }
    }

    #[test]
    fn gap_report_decisions_are_sound() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for seed in 0..150u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..8),
                    m: rng.random_range(0..10),
                    colors: rng.random_range(1..4),
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let report = gap_parameters(&inst, None);
            let opt = oracle::max_stable(&inst.graph).unwrap().optimum;
            match report.decided {
                Some(Decided::Yes(_)) => assert!(opt >= inst.k, "seed {seed}"),
                Some(Decided::No(_)) => assert!(opt < inst.k, "seed {seed}"),
                None => {}
            }
        }
    }
}
