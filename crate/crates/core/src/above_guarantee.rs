//! Solvers parameterized above induced-matching lower bounds.
//!
//! An induced matching `M` is stable on its own, so only targets beyond
//! `|M|` are interesting. For those, any stable set of size `k` that keeps
//! as many matching edges as possible has at most `2(k - |M|)` edges off
//! the matching. Color coding samples uniform vertex colorings, repairs
//! them around the matching, and succeeds with constant probability after
//! enough repetitions; the enumeration solver tries all small off-matching
//! stable sets deterministically and extends each with every compatible
//! matching edge.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{CCInstance, ColoredHypergraph};
use crate::matching::{check_induced, MatchingError, MatchingInfo};
use crate::solution::{is_stable, stable_under, StableSet, VertexColoring};

/// Controls for the randomized solver.
#[derive(Clone, Debug)]
pub struct ColorCodingConfig {
    /// One-sided failure probability bound for true yes-instances.
    pub epsilon: f64,
    pub seed: u64,
    /// Explicit repetition count; derived from `epsilon` when absent.
    pub repetitions: Option<u64>,
}

impl Default for ColorCodingConfig {
    fn default() -> Self {
        ColorCodingConfig {
            epsilon: 0.1,
            seed: 0,
            repetitions: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColorCodingAnswer {
    /// Always correct: carries a verified witness.
    Yes(StableSet),
    /// One-sided: a true yes-instance is missed with probability at most
    /// the configured epsilon.
    ProbablyNo { repetitions: u64 },
}

/// Repetitions sufficient to push the miss probability below `epsilon`:
/// a sampled coloring matches a fixed target on the off-matching vertices
/// with probability at least `colors^-(2 * order * gap)`.
pub fn derived_repetitions(colors: usize, order: usize, gap: usize, epsilon: f64) -> u64 {
    let colors = colors.max(1) as u128;
    let exponent = 2u32.saturating_mul(order as u32).saturating_mul(gap as u32);
    let mut inv_p: u128 = 1;
    for _ in 0..exponent {
        inv_p = inv_p.saturating_mul(colors);
        if inv_p > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    let ln_term = libm::log(1.0 / epsilon.clamp(1e-12, 1.0));
    let reps = libm::ceil(inv_p as f64 * ln_term.max(0.0));
    if reps >= u64::MAX as f64 {
        u64::MAX
    } else {
        (reps as u64).max(1)
    }
}

/// Repairs a coloring around an induced matching: for every matching edge,
/// if fewer than two edges incident to its vertices are stable under `f`,
/// all its vertices are recolored to the edge color. All checks read the
/// original `f`.
pub fn reconstruct(
    g: &ColoredHypergraph,
    matching: &MatchingInfo,
    f: &VertexColoring,
) -> Result<VertexColoring, MatchingError> {
    check_induced(g, &matching.edge_indices)?;
    let inc = g.incidence_lists();
    let mut repaired = f.clone();
    for &mi in &matching.edge_indices {
        let member = &g.edges[mi];
        let mut incident: Vec<usize> = member
            .vertices
            .iter()
            .flat_map(|&v| inc[v].iter().copied())
            .collect();
        incident.sort_unstable();
        incident.dedup();
        let stable_count = incident
            .iter()
            .filter(|&&e| {
                g.edges[e]
                    .vertices
                    .iter()
                    .all(|&v| f.colors[v] == g.edges[e].color)
            })
            .count();
        if stable_count < 2 {
            for &v in &member.vertices {
                repaired.colors[v] = member.color;
            }
        }
    }
    Ok(repaired)
}

/// Randomized decision above the induced matching: repeatedly samples a
/// uniform coloring, repairs it, and tests the target. Yes answers carry
/// a verified witness; no answers are one-sided.
pub fn solve_color_coding(
    inst: &CCInstance,
    matching: &MatchingInfo,
    cfg: &ColorCodingConfig,
) -> Result<ColorCodingAnswer, MatchingError> {
    let g = &inst.graph;
    check_induced(g, &matching.edge_indices)?;
    if inst.k <= matching.size() {
        let witness: StableSet = matching.edge_indices.iter().copied().take(inst.k).collect();
        debug_assert_eq!(is_stable(g, &witness), Ok(true));
        return Ok(ColorCodingAnswer::Yes(witness));
    }
    let gap = inst.k - matching.size();
    let reps = cfg
        .repetitions
        .unwrap_or_else(|| derived_repetitions(g.colors, g.order(), gap, cfg.epsilon));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let colors = g.colors.max(1);
    for _ in 0..reps {
        let f = VertexColoring {
            colors: (0..g.n).map(|_| rng.random_range(0..colors)).collect(),
        };
        let repaired = reconstruct(g, matching, &f)?;
        let candidate = stable_under(g, &repaired).expect("coloring has correct length");
        if candidate.len() >= inst.k {
            return Ok(ColorCodingAnswer::Yes(candidate));
        }
    }
    Ok(ColorCodingAnswer::ProbablyNo { repetitions: reps })
}

/// Exact decision above the induced matching: enumerates every stable set
/// of at most `2(k - |M|)` off-matching edges and extends each with all
/// compatible matching edges. `Some(witness)` iff `k` stable edges exist.
pub fn solve_xp(
    inst: &CCInstance,
    matching: &MatchingInfo,
) -> Result<Option<StableSet>, MatchingError> {
    let g = &inst.graph;
    check_induced(g, &matching.edge_indices)?;
    if inst.k <= matching.size() {
        let witness: StableSet = matching.edge_indices.iter().copied().take(inst.k).collect();
        return Ok(Some(witness));
    }
    let budget = 2 * (inst.k - matching.size());
    let in_matching = {
        let mut flags = alloc::vec![false; g.m()];
        for &i in &matching.edge_indices {
            flags[i] = true;
        }
        flags
    };
    let candidates: Vec<usize> = (0..g.m()).filter(|&i| !in_matching[i]).collect();

    let mut chosen: Vec<usize> = Vec::new();
    let found = extend(
        g,
        inst.k,
        matching,
        &candidates,
        0,
        budget,
        &mut chosen,
    );
    Ok(found)
}

fn extend(
    g: &ColoredHypergraph,
    k: usize,
    matching: &MatchingInfo,
    candidates: &[usize],
    idx: usize,
    budget: usize,
    chosen: &mut Vec<usize>,
) -> Option<StableSet> {
    // Try completing the current off-matching selection.
    let compatible: Vec<usize> = matching
        .edge_indices
        .iter()
        .copied()
        .filter(|&mi| {
            chosen.iter().all(|&ci| {
                !g.edges[ci].intersects(&g.edges[mi]) || g.edges[ci].color == g.edges[mi].color
            })
        })
        .collect();
    if chosen.len() + compatible.len() >= k {
        let witness: StableSet = chosen.iter().copied().chain(compatible).collect();
        debug_assert_eq!(is_stable(g, &witness), Ok(true));
        return Some(witness);
    }
    if chosen.len() >= budget || idx == candidates.len() {
        return None;
    }
    // Not even taking everything left could reach k.
    if chosen.len() + (candidates.len() - idx) + matching.size() < k {
        return None;
    }
    for next in idx..candidates.len() {
        let e = candidates[next];
        let ok = chosen.iter().all(|&ci| {
            !g.edges[ci].intersects(&g.edges[e]) || g.edges[ci].color == g.edges[e].color
        });
        if !ok {
            continue;
        }
        chosen.push(e);
        if let Some(w) = extend(g, k, matching, candidates, next + 1, budget, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}
