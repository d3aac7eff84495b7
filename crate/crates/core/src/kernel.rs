//! Data reduction: shrink an instance to an equivalent one whose size is
//! bounded by a polynomial in the target `k`, or decide it outright.
//!
//! Four rules, applied exhaustively in priority order with a restart after
//! every change, followed by deletion of isolated vertices:
//!
//! 1. a (greedy maximal) matching of size `k` is itself a stable witness;
//! 2. `k` same-colored edges are a stable witness;
//! 3. at a vertex with very large chromatic degree, the least frequent
//!    incident color is redundant and its edges at that vertex are deleted;
//! 4. enough cover vertices that see many colors each reaching many
//!    neighbors outside the cover allow a greedy witness construction.
//!
//! Rules 1-3 apply to hypergraphs; rule 4 is specific to graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::instance::{CCInstance, ColoredHypergraph, Edge};
use crate::matching::greedy_maximal_matching;
use crate::solution::{is_stable, StableSet};

/// Identifies which rule produced a log entry or a decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleId {
    Matching,
    OneColor,
    ChromaticDegree,
    MeetInMiddle,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Matching => "matching",
            RuleId::OneColor => "one-color",
            RuleId::ChromaticDegree => "chromatic-degree",
            RuleId::MeetInMiddle => "meet-in-middle",
        }
    }
}

/// One rule application, in the order performed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleApplication {
    Matching { size: usize },
    OneColor { color: usize, count: usize },
    ChromaticDegree { vertex: usize, color: usize, removed: usize },
    MeetInMiddle { core_size: usize, witness_size: usize },
    IsolatedVertices { removed: usize },
}

/// Result of kernelization: either an early yes with a checkable witness
/// (in original edge indices), or an equivalent reduced instance together
/// with maps back to the original vertex and edge ids.
#[derive(Clone, Debug)]
pub enum KernelOutcome {
    DecidedYes { rule: RuleId, witness: StableSet },
    Reduced(ReducedInstance),
}

#[derive(Clone, Debug)]
pub struct ReducedInstance {
    pub instance: CCInstance,
    /// Original edge index of each reduced edge.
    pub edge_origin: Vec<usize>,
    /// Original vertex id of each reduced vertex.
    pub vertex_origin: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct KernelResult {
    pub outcome: KernelOutcome,
    pub log: Vec<RuleApplication>,
}

impl KernelResult {
    pub fn decided_yes(&self) -> bool {
        matches!(self.outcome, KernelOutcome::DecidedYes { .. })
    }
}

/// Ceiling of the square root.
pub fn ceil_sqrt(k: usize) -> usize {
    let r = k.isqrt();
    if r * r == k {
        r
    } else {
        r + 1
    }
}

/// Rule 1: a matching of size `k` is stable. Fires with the first `k`
/// edges of the greedy maximal matching.
pub fn rule_matching(inst: &CCInstance) -> Option<StableSet> {
    let matching = greedy_maximal_matching(&inst.graph);
    if matching.size() >= inst.k {
        Some(StableSet::from_indices(
            matching.edge_indices.iter().copied().take(inst.k),
        ))
    } else {
        None
    }
}

/// Rule 2: `k` edges of one color are stable. Fires on the lowest color id
/// whose class reaches `k`.
pub fn rule_one_color(inst: &CCInstance) -> Option<StableSet> {
    let g = &inst.graph;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &g.edges {
        *counts.entry(e.color).or_insert(0) += 1;
    }
    let color = counts
        .iter()
        .find(|&(_, &count)| count >= inst.k)
        .map(|(&c, _)| c)?;
    Some(StableSet::from_indices(
        g.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.color == color)
            .map(|(i, _)| i)
            .take(inst.k),
    ))
}

/// Rule 3: at a vertex whose chromatic degree is large enough, the edges of
/// the least frequent incident color can be deleted without changing the
/// answer. Returns the reduced instance and `(vertex, color, removed)`.
///
/// The firing threshold is `d*k + 1` on the chromatic degree (with `d` the
/// instance order), plus a safety condition covering inputs where a single
/// neighboring vertex carries several colors towards `v` (parallel edges,
/// or hyperedges overlapping in two or more vertices): any exchange witness
/// spans at most `d*k - 1` other vertices, so the number of colors those
/// vertices can touch at `v` must stay below the chromatic degree. On
/// simple graphs the safety condition is implied and the rule fires exactly
/// at chromatic degree `2k + 1`.
pub fn rule_chromatic_degree(inst: &CCInstance) -> Option<(CCInstance, (usize, usize, usize))> {
    let g = &inst.graph;
    let d = g.order();
    let k = inst.k;
    let threshold = d.saturating_mul(k).saturating_add(1);
    let profile = g.degree_profile();
    for v in 0..g.n {
        if profile.chromatic_degree(v) < threshold {
            continue;
        }
        // Colors reachable at v through each other vertex.
        let mut shared: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for e in &g.edges {
            if !e.contains(v) {
                continue;
            }
            for &u in &e.vertices {
                if u != v {
                    shared.entry(u).or_default().insert(e.color);
                }
            }
        }
        let mut per_vertex: Vec<usize> = shared.values().map(|s| s.len()).collect();
        per_vertex.sort_unstable_by(|a, b| b.cmp(a));
        let span = d.saturating_mul(k).saturating_sub(1);
        let blocked: usize = per_vertex.iter().take(span).sum();
        if profile.chromatic_degree(v) < blocked + 2 {
            continue;
        }
        let (&(color, _), _) = profile
            .incident_colors(v)
            .iter()
            .map(|pair| (pair, pair.1))
            .min_by_key(|&(&(c, count), _)| (count, c))
            .expect("vertex has incident edges");
        let mut graph = g.clone();
        let mut removed = 0usize;
        graph.edges.retain(|e| {
            let hit = e.color == color && e.contains(v);
            if hit {
                removed += 1;
            }
            !hit
        });
        return Some((CCInstance::new(graph, k), (v, color, removed)));
    }
    None
}

/// Rule 4 (graphs only): let `t = ceil(sqrt(k))` and let the core be the
/// cover vertices having at least `2t` colors with at least `2t` neighbors
/// outside the cover each. If the core reaches size `t`, a stable set of
/// size `k` exists and is constructed greedily: the q-th core vertex
/// contributes `2t - (q-1)` edges of the color currently reaching the most
/// fresh outside neighbors.
pub fn rule_meet_in_middle(inst: &CCInstance, cover: &BTreeSet<usize>) -> Option<StableSet> {
    let g = &inst.graph;
    debug_assert!(g.is_graph());
    let k = inst.k;
    let t = ceil_sqrt(k);
    let need = 2 * t;

    let core = core_vertices(g, cover, need);
    if core.len() < t || t == 0 {
        return None;
    }

    // Greedy witness construction.
    let by_color = neighbors_by_color(g);
    let mut witness: Vec<usize> = Vec::new();
    let mut used_outside: BTreeSet<usize> = BTreeSet::new();
    for (q, &v) in core.iter().take(t).enumerate() {
        let want = need - q;
        let classes = &by_color[v];
        let best = classes
            .iter()
            .map(|(&c, nbrs)| {
                let fresh = nbrs
                    .iter()
                    .filter(|u| !cover.contains(u) && !used_outside.contains(u))
                    .count();
                (c, fresh)
            })
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(c, _)| c)
            .expect("core vertex has incident edges");
        let fresh: Vec<usize> = by_color[v][&best]
            .iter()
            .filter(|u| !cover.contains(u) && !used_outside.contains(u))
            .copied()
            .collect();
        assert!(
            fresh.len() >= want,
            "core guarantees {want} fresh neighbors, found {}",
            fresh.len()
        );
        for &u in fresh.iter().take(want) {
            let idx = g
                .edges
                .iter()
                .position(|e| e.color == best && e.vertices == [u.min(v), u.max(v)])
                .expect("neighbor relation came from an edge");
            witness.push(idx);
            used_outside.insert(u);
        }
    }
    let set = StableSet::from_indices(witness);
    debug_assert!(set.len() >= k);
    debug_assert_eq!(is_stable(g, &set), Ok(true));
    Some(set)
}

/// Core vertices for rule 4: cover vertices with at least `need` colors
/// reaching at least `need` distinct neighbors outside the cover.
pub fn core_vertices(
    g: &ColoredHypergraph,
    cover: &BTreeSet<usize>,
    need: usize,
) -> Vec<usize> {
    let by_color = neighbors_by_color(g);
    cover
        .iter()
        .copied()
        .filter(|&v| {
            let rich = by_color[v]
                .iter()
                .filter(|(_, nbrs)| nbrs.iter().filter(|u| !cover.contains(u)).count() >= need)
                .count();
            rich >= need
        })
        .collect()
}

/// Distinct neighbors per color per vertex.
fn neighbors_by_color(g: &ColoredHypergraph) -> Vec<BTreeMap<usize, BTreeSet<usize>>> {
    let mut out = alloc::vec![BTreeMap::new(); g.n];
    for e in &g.edges {
        for &v in &e.vertices {
            for &u in &e.vertices {
                if u != v {
                    out[v]
                        .entry(e.color)
                        .or_insert_with(BTreeSet::new)
                        .insert(u);
                }
            }
        }
    }
    out
}

/// Vertex cover obtained from the endpoints of the greedy maximal matching.
pub fn matching_cover(g: &ColoredHypergraph) -> BTreeSet<usize> {
    let matching = greedy_maximal_matching(g);
    matching
        .edge_indices
        .iter()
        .flat_map(|&i| g.edges[i].vertices.iter().copied())
        .collect()
}

/// Applies the rules exhaustively in priority order (restarting after every
/// change) and finally deletes isolated vertices.
pub fn kernelize(inst: &CCInstance) -> KernelResult {
    let mut cur = inst.clone();
    let mut edge_origin: Vec<usize> = (0..inst.graph.m()).collect();
    let mut log: Vec<RuleApplication> = Vec::new();

    loop {
        if let Some(witness) = rule_matching(&cur) {
            log.push(RuleApplication::Matching {
                size: witness.len(),
            });
            return KernelResult {
                outcome: KernelOutcome::DecidedYes {
                    rule: RuleId::Matching,
                    witness: map_witness(&witness, &edge_origin),
                },
                log,
            };
        }
        if let Some(witness) = rule_one_color(&cur) {
            let color = witness
                .edges
                .first()
                .map(|&i| cur.graph.edges[i].color)
                .unwrap_or(0);
            log.push(RuleApplication::OneColor {
                color,
                count: witness.len(),
            });
            return KernelResult {
                outcome: KernelOutcome::DecidedYes {
                    rule: RuleId::OneColor,
                    witness: map_witness(&witness, &edge_origin),
                },
                log,
            };
        }
        if let Some((next, (vertex, color, removed))) = rule_chromatic_degree(&cur) {
            // Track surviving edges through the deletion.
            let surviving: Vec<usize> = cur
                .graph
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| !(e.color == color && e.contains(vertex)))
                .map(|(i, _)| i)
                .collect();
            edge_origin = surviving.iter().map(|&i| edge_origin[i]).collect();
            cur = next;
            log.push(RuleApplication::ChromaticDegree {
                vertex,
                color,
                removed,
            });
            continue;
        }
        if cur.graph.is_graph() {
            let cover = matching_cover(&cur.graph);
            let core = core_vertices(&cur.graph, &cover, 2 * ceil_sqrt(cur.k));
            if let Some(witness) = rule_meet_in_middle(&cur, &cover) {
                log.push(RuleApplication::MeetInMiddle {
                    core_size: core.len(),
                    witness_size: witness.len(),
                });
                return KernelResult {
                    outcome: KernelOutcome::DecidedYes {
                        rule: RuleId::MeetInMiddle,
                        witness: map_witness(&witness, &edge_origin),
                    },
                    log,
                };
            }
        }
        break;
    }

    // Drop isolated vertices, compacting ids.
    let mut touched = alloc::vec![false; cur.graph.n];
    for e in &cur.graph.edges {
        for &v in &e.vertices {
            touched[v] = true;
        }
    }
    let vertex_origin: Vec<usize> = (0..cur.graph.n).filter(|&v| touched[v]).collect();
    let remap: BTreeMap<usize, usize> = vertex_origin
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let removed = cur.graph.n - vertex_origin.len();
    if removed > 0 {
        log.push(RuleApplication::IsolatedVertices { removed });
    }
    let edges: Vec<Edge> = cur
        .graph
        .edges
        .iter()
        .map(|e| Edge::new(e.vertices.iter().map(|v| remap[v]).collect(), e.color))
        .collect();
    let graph = ColoredHypergraph::with_edges(vertex_origin.len(), cur.graph.colors, edges);
    debug_assert_eq!(graph.validate(), Ok(()));

    KernelResult {
        outcome: KernelOutcome::Reduced(ReducedInstance {
            instance: CCInstance::new(graph, cur.k),
            edge_origin,
            vertex_origin,
        }),
        log,
    }
}

fn map_witness(witness: &StableSet, edge_origin: &[usize]) -> StableSet {
    witness.edges.iter().map(|&i| edge_origin[i]).collect()
}

/// Structural facts about a reduced graph instance, with the size terms the
/// kernel bound is made of.
#[derive(Clone, Debug)]
pub struct KernelStructure {
    pub vertices: usize,
    pub edges: usize,
    pub max_matching_below_k: bool,
    pub color_classes_below_k: bool,
    pub chromatic_degrees_bounded: bool,
    pub core_below_sqrt: bool,
    pub no_isolated_vertices: bool,
    /// Edges incident to the core are at most `2k^2 * |core|`.
    pub core_edges_bounded: bool,
    /// Per non-core cover vertex, the rich-color and sparse-color edge
    /// counts stay within their respective bounds.
    pub per_vertex_terms_bounded: bool,
}

impl KernelStructure {
    pub fn all_hold(&self) -> bool {
        self.max_matching_below_k
            && self.color_classes_below_k
            && self.chromatic_degrees_bounded
            && self.core_below_sqrt
            && self.no_isolated_vertices
            && self.core_edges_bounded
            && self.per_vertex_terms_bounded
    }
}

/// Checks the structural postconditions of a reduced graph instance.
pub fn kernel_structure(inst: &CCInstance) -> KernelStructure {
    let g = &inst.graph;
    let k = inst.k;
    let t = ceil_sqrt(k);
    let profile = g.degree_profile();

    let matching = greedy_maximal_matching(g);
    let max_matching_below_k = matching.size() < k;

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for e in &g.edges {
        *counts.entry(e.color).or_insert(0) += 1;
    }
    let color_classes_below_k = counts.values().all(|&c| c < k);

    let bound = g.order().saturating_mul(k);
    let chromatic_degrees_bounded = (0..g.n).all(|v| profile.chromatic_degree(v) <= bound);

    let cover = matching_cover(g);
    let core = core_vertices(g, &cover, 2 * t);
    let core_below_sqrt = core.len() < t.max(1);

    let no_isolated_vertices = (0..g.n).all(|v| profile.degree(v) > 0);

    let core_set: BTreeSet<usize> = core.iter().copied().collect();
    let core_incident = g
        .edges
        .iter()
        .filter(|e| e.vertices.iter().any(|v| core_set.contains(v)))
        .count();
    let core_edges_bounded = core_incident <= 2 * k * k * core.len().max(1);

    let by_color = neighbors_by_color(g);
    let mut per_vertex_terms_bounded = true;
    for &v in cover.iter().filter(|v| !core_set.contains(v)) {
        let rich: Vec<usize> = by_color[v]
            .iter()
            .filter(|(_, nbrs)| nbrs.iter().filter(|u| !cover.contains(u)).count() >= 2 * t)
            .map(|(&c, _)| c)
            .collect();
        if rich.len() >= 2 * t {
            per_vertex_terms_bounded = false;
            break;
        }
        let rich_edges = g
            .edges
            .iter()
            .filter(|e| e.contains(v) && rich.contains(&e.color))
            .count();
        // Each color class has fewer than k edges overall.
        if rich_edges > rich.len() * k.saturating_sub(1) {
            per_vertex_terms_bounded = false;
            break;
        }
        let sparse_outside = g
            .edges
            .iter()
            .filter(|e| {
                e.contains(v)
                    && !rich.contains(&e.color)
                    && e.vertices.iter().any(|u| !cover.contains(u))
            })
            .count();
        let chrom = profile.chromatic_degree(v);
        if sparse_outside > chrom * (2 * t).saturating_sub(1) {
            per_vertex_terms_bounded = false;
            break;
        }
    }

    KernelStructure {
        vertices: g.n,
        edges: g.m(),
        max_matching_below_k,
        color_classes_below_k,
        chromatic_degrees_bounded,
        core_below_sqrt,
        no_isolated_vertices,
        core_edges_bounded,
        per_vertex_terms_bounded,
    }
}
