//! Reduction to weighted exact cover and a branching solver for it.
//!
//! Monochromatic connected subsets are the building blocks of stable sets:
//! a stable set of size `k` covers at most `d*k` vertices, partitioned into
//! monochromatic components. The reduction therefore emits, for every color
//! class component, all vertex subsets weighted by their internal edge
//! count, plus zero-weight padding singletons; the instance asks for a
//! disjoint subfamily covering exactly `s` elements with weight at least
//! `k`. Two guards decide trivially yes before sizes can blow up: `k`
//! components of one color, or one component with `k` edges.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::instance::{CCInstance, DisjointSets};
use crate::solution::{is_stable, StableSet};

/// A weighted exact cover instance over elements `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WecInstance {
    pub universe: usize,
    pub sets: Vec<WecSet>,
    /// Exactly this many elements must be covered.
    pub cover_size: usize,
    /// Minimum total weight of the chosen subfamily.
    pub weight_target: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WecSet {
    pub elements: Vec<usize>,
    pub weight: u64,
}

/// Where a reduction set came from, for witness reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetOrigin {
    Component { color: usize },
    Padding,
}

/// Output of [`reduce_to_wec`].
#[derive(Clone, Debug)]
pub enum Reduction {
    /// One of the guards already proves a yes-instance.
    DecidedYes(StableSet),
    Wec(WecReduction),
}

#[derive(Clone, Debug)]
pub struct WecReduction {
    pub wec: WecInstance,
    pub origins: Vec<SetOrigin>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WecError {
    /// A monochromatic component exceeds the vertex bound implied by the
    /// guards; reaching this means the trivial-yes branch was missed.
    ComponentTooLarge {
        color: usize,
        vertices: usize,
        limit: usize,
    },
}

impl fmt::Display for WecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WecError::ComponentTooLarge {
                color,
                vertices,
                limit,
            } => write!(
                f,
                "color {color} component spans {vertices} vertices, limit {limit}"
            ),
        }
    }
}

impl core::error::Error for WecError {}

/// Builds the weighted exact cover instance for a target of `k >= 1` stable
/// edges, or decides yes outright.
pub fn reduce_to_wec(inst: &CCInstance) -> Result<Reduction, WecError> {
    let g = &inst.graph;
    let k = inst.k;
    assert!(k >= 1, "the zero target is decided before reducing");
    let d = g.order();
    let s = d * k;

    // Group edges by color.
    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in g.edges.iter().enumerate() {
        by_color.entry(e.color).or_default().push(i);
    }

    let mut sets: Vec<WecSet> = Vec::new();
    let mut origins: Vec<SetOrigin> = Vec::new();

    for (&color, edge_ids) in &by_color {
        // Components of the subgraph spanned by this color class.
        let mut dsu = DisjointSets::new(g.n);
        for &i in edge_ids {
            for w in g.edges[i].vertices.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut comp_vertices: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut comp_edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &i in edge_ids {
            let root = dsu.find(g.edges[i].vertices[0]);
            comp_edges.entry(root).or_default().push(i);
        }
        for root in comp_edges.keys().copied().collect::<Vec<_>>() {
            let mut vs: Vec<usize> = (0..g.n)
                .filter(|&v| {
                    dsu.find(v) == root
                        && edge_ids.iter().any(|&i| g.edges[i].contains(v))
                })
                .collect();
            vs.sort_unstable();
            comp_vertices.insert(root, vs);
        }

        if comp_edges.len() >= k {
            // One edge per component: disjoint and monochromatic.
            let witness: StableSet = comp_edges
                .values()
                .take(k)
                .map(|ids| ids[0])
                .collect();
            debug_assert_eq!(is_stable(g, &witness), Ok(true));
            return Ok(Reduction::DecidedYes(witness));
        }
        for (root, ids) in &comp_edges {
            if ids.len() >= k {
                let witness: StableSet = ids.iter().copied().take(k).collect();
                debug_assert_eq!(is_stable(g, &witness), Ok(true));
                return Ok(Reduction::DecidedYes(witness));
            }
            let vertices = &comp_vertices[root];
            let limit = d * (k - 1);
            if vertices.len() > limit {
                return Err(WecError::ComponentTooLarge {
                    color,
                    vertices: vertices.len(),
                    limit,
                });
            }
            // All nonempty subsets, weighted by internal edge count.
            let q = vertices.len();
            for mask in 1usize..(1 << q) {
                let subset: Vec<usize> = (0..q)
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| vertices[b])
                    .collect();
                let weight = ids
                    .iter()
                    .filter(|&&i| {
                        g.edges[i]
                            .vertices
                            .iter()
                            .all(|v| subset.binary_search(v).is_ok())
                    })
                    .count() as u64;
                sets.push(WecSet {
                    elements: subset,
                    weight,
                });
                origins.push(SetOrigin::Component { color });
            }
        }
    }

    // Padding singletons make "exactly s covered" reachable.
    for p in 0..s {
        sets.push(WecSet {
            elements: alloc::vec![g.n + p],
            weight: 0,
        });
        origins.push(SetOrigin::Padding);
    }

    #[cfg(debug_assertions)]
    {
        // Family size bound implied by the guards: per color fewer than k
        // components, each contributing at most 2^(d(k-1)) subsets.
        let exponent = (d as u32).saturating_mul(k as u32);
        if exponent < 64 {
            let bound = (g.colors as u128) * (k as u128) * (1u128 << exponent) + s as u128;
            debug_assert!((sets.len() as u128) <= bound);
        }
    }

    Ok(Reduction::Wec(WecReduction {
        wec: WecInstance {
            universe: g.n + s,
            sets,
            cover_size: s,
            weight_target: k as u64,
        },
        origins,
    }))
}

/// A maximum-weight subfamily meeting both constraints, if one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WecSolution {
    pub weight: u64,
    pub chosen: Vec<usize>,
}

/// Solves weighted exact cover by depth-first branching on the
/// lowest-indexed undecided element: cover it with one of its sets or leave
/// it uncovered, memoizing on the covered mask.
///
/// Elements covered only by zero-weight singletons are interchangeable
/// fillers; branching over them individually would square the state space
/// for nothing, so they are pulled out up front and only their count enters
/// the exact-coverage accounting.
pub fn solve_wec(wec: &WecInstance) -> Option<WecSolution> {
    let mut containing = alloc::vec![Vec::new(); wec.universe];
    for (t, set) in wec.sets.iter().enumerate() {
        for &el in &set.elements {
            containing[el].push(t);
        }
    }
    let is_filler = |el: usize| {
        !containing[el].is_empty()
            && containing[el]
                .iter()
                .all(|&t| wec.sets[t].elements.len() == 1 && wec.sets[t].weight == 0)
    };
    let mut filler_sets: Vec<usize> = Vec::new();
    let mut real: Vec<usize> = Vec::new();
    for el in 0..wec.universe {
        if is_filler(el) {
            filler_sets.push(containing[el][0]);
        } else {
            real.push(el);
        }
    }
    assert!(
        real.len() <= 127,
        "exact-cover search supports at most 127 distinct non-filler elements"
    );
    let bit_of: BTreeMap<usize, usize> = real.iter().enumerate().map(|(b, &el)| (el, b)).collect();
    let masks: Vec<u128> = wec
        .sets
        .iter()
        .map(|set| {
            set.elements
                .iter()
                .filter_map(|el| bit_of.get(el))
                .fold(0u128, |acc, &b| acc | (1u128 << b))
        })
        .collect();

    let mut memo: BTreeMap<(usize, u128), (Option<u64>, usize)> = BTreeMap::new();
    const DISCARD: usize = usize::MAX;

    struct Ctx<'a> {
        wec: &'a WecInstance,
        real: &'a [usize],
        containing: &'a [Vec<usize>],
        masks: &'a [u128],
        fillers: usize,
    }

    fn best(
        idx: usize,
        mask: u128,
        covered: usize,
        ctx: &Ctx<'_>,
        memo: &mut BTreeMap<(usize, u128), (Option<u64>, usize)>,
    ) -> Option<u64> {
        if covered > ctx.wec.cover_size {
            return None;
        }
        if idx == ctx.real.len() {
            // Fillers absorb any remaining deficit.
            let feasible = ctx.wec.cover_size - covered <= ctx.fillers;
            return feasible.then_some(0);
        }
        if mask >> idx & 1 == 1 {
            return best(idx + 1, mask, covered, ctx, memo);
        }
        if let Some(&(val, _)) = memo.get(&(idx, mask)) {
            return val;
        }
        let mut result: Option<u64> = None;
        let mut choice = DISCARD;
        // Leave this element uncovered.
        if let Some(v) = best(idx + 1, mask, covered, ctx, memo) {
            result = Some(v);
        }
        for &t in &ctx.containing[ctx.real[idx]] {
            if ctx.masks[t] & mask != 0 {
                continue;
            }
            let next_cover = covered + ctx.wec.sets[t].elements.len();
            if let Some(v) = best(idx + 1, mask | ctx.masks[t], next_cover, ctx, memo) {
                let total = v + ctx.wec.sets[t].weight;
                if result.is_none_or(|r| total > r) {
                    result = Some(total);
                    choice = t;
                }
            }
        }
        memo.insert((idx, mask), (result, choice));
        result
    }

    let ctx = Ctx {
        wec,
        real: &real,
        containing: &containing,
        masks: &masks,
        fillers: filler_sets.len(),
    };
    let total = best(0, 0, 0, &ctx, &mut memo)?;
    if total < wec.weight_target {
        return None;
    }

    // Replay the memoized choices to extract the subfamily.
    let mut chosen = Vec::new();
    let mut covered = 0usize;
    let mut idx = 0;
    let mut mask = 0u128;
    while idx < real.len() {
        if mask >> idx & 1 == 1 {
            idx += 1;
            continue;
        }
        let &(val, choice) = memo.get(&(idx, mask)).expect("state was explored");
        debug_assert!(val.is_some());
        if choice != DISCARD {
            chosen.push(choice);
            mask |= masks[choice];
            covered += wec.sets[choice].elements.len();
        }
        idx += 1;
    }
    // Top up to the exact cover size with fillers.
    let deficit = wec.cover_size - covered;
    debug_assert!(deficit <= filler_sets.len());
    chosen.extend(filler_sets.into_iter().take(deficit));
    Some(WecSolution {
        weight: total,
        chosen,
    })
}

/// Decision through the exact-cover route: `Some(witness)` iff the instance
/// has `k` stable edges. The witness collects, for every chosen component
/// subset, all its internal edges of the component color.
pub fn solve_via_exactcover(inst: &CCInstance) -> Result<Option<StableSet>, WecError> {
    if inst.k == 0 {
        return Ok(Some(StableSet::empty()));
    }
    let g = &inst.graph;
    match reduce_to_wec(inst)? {
        Reduction::DecidedYes(witness) => Ok(Some(witness)),
        Reduction::Wec(red) => {
            let Some(sol) = solve_wec(&red.wec) else {
                return Ok(None);
            };
            let mut witness = StableSet::empty();
            for &t in &sol.chosen {
                let SetOrigin::Component { color } = red.origins[t] else {
                    continue;
                };
                let subset = &red.wec.sets[t].elements;
                for (i, e) in g.edges.iter().enumerate() {
                    if e.color == color
                        && e.vertices.iter().all(|v| subset.binary_search(v).is_ok())
                    {
                        witness.edges.insert(i);
                    }
                }
            }
            debug_assert!(witness.len() as u64 >= sol.weight);
            debug_assert_eq!(is_stable(g, &witness), Ok(true));
            debug_assert!(witness.len() >= inst.k);
            Ok(Some(witness))
        }
    }
}

/// Exhaustive reference: tries every subfamily. For tiny instances only.
pub fn wec_bruteforce(wec: &WecInstance) -> Option<u64> {
    let count = wec.sets.len();
    assert!(count <= 20);
    let mut best: Option<u64> = None;
    'outer: for mask in 0usize..(1 << count) {
        let mut covered = alloc::vec![false; wec.universe];
        let mut total_elems = 0usize;
        let mut weight = 0u64;
        for t in 0..count {
            if mask >> t & 1 == 0 {
                continue;
            }
            for &el in &wec.sets[t].elements {
                if covered[el] {
                    continue 'outer;
                }
                covered[el] = true;
                total_elems += 1;
            }
            weight += wec.sets[t].weight;
        }
        if total_elems == wec.cover_size && best.is_none_or(|b| weight > b) {
            best = Some(weight);
        }
    }
    best.filter(|&w| w >= wec.weight_target)
}
