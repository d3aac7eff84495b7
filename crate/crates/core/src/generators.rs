//! Instance generators: seeded random instances (optionally with a planted
//! solution) and constructive reductions from 3-SAT, monotone one-in-three
//! SAT, multicolored clique and independent set. The reductions double as
//! correctness benchmarks: the generated instance is a yes-instance exactly
//! when the source instance is.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{CCInstance, ColoredHypergraph, Edge};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorError {
    EmptyClause { clause: usize },
    ClauseTooLarge { clause: usize, len: usize },
    RepeatedVariable { clause: usize, var: usize },
    NotMonotone { clause: usize },
    TooManyOccurrences { var: usize, count: usize },
    MissingPolarity { var: usize },
    WrongOccurrenceCount { var: usize, count: usize },
    LiteralOutOfRange { clause: usize },
    PartsNotPartition,
    PartNotIndependent { part: usize },
    DegreeTooLarge { vertex: usize, degree: usize },
    SelfLoop { vertex: usize },
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::EmptyClause { clause } => write!(f, "clause {clause} is empty"),
            GeneratorError::ClauseTooLarge { clause, len } => {
                write!(f, "clause {clause} has {len} literals")
            }
            GeneratorError::RepeatedVariable { clause, var } => {
                write!(f, "clause {clause} repeats variable {var}")
            }
            GeneratorError::NotMonotone { clause } => {
                write!(f, "clause {clause} contains a negative literal")
            }
            GeneratorError::TooManyOccurrences { var, count } => {
                write!(f, "variable {var} occurs {count} times")
            }
            GeneratorError::MissingPolarity { var } => {
                write!(f, "variable {var} lacks one polarity")
            }
            GeneratorError::WrongOccurrenceCount { var, count } => {
                write!(f, "variable {var} occurs {count} times, expected exactly 3")
            }
            GeneratorError::LiteralOutOfRange { clause } => {
                write!(f, "clause {clause} references an out-of-range variable")
            }
            GeneratorError::PartsNotPartition => write!(f, "parts do not partition the vertices"),
            GeneratorError::PartNotIndependent { part } => {
                write!(f, "part {part} contains an edge")
            }
            GeneratorError::DegreeTooLarge { vertex, degree } => {
                write!(f, "vertex {vertex} has degree {degree}")
            }
            GeneratorError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
        }
    }
}

impl core::error::Error for GeneratorError {}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Parameters for [`random_instance`].
#[derive(Clone, Debug)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    /// Size of the color palette (at least 1).
    pub colors: usize,
    /// Maximum edge cardinality; 2 generates plain graphs.
    pub order: usize,
    /// Plant a stable set of this size (as monochromatic components),
    /// guaranteeing a yes-instance with `k` set to the planted size.
    pub planted: Option<usize>,
}

/// Seeded random instance. Edges have pairwise distinct vertex sets. Without
/// planting, `k` is drawn uniformly from `0..=m+1`.
pub fn random_instance(params: &RandomParams, seed: u64) -> CCInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    assert!(params.colors >= 1, "need at least one color");
    assert!(params.order >= 2, "order must be at least 2");
    let n = params.n;

    let mut edges: Vec<Edge> = Vec::new();
    let mut used_sets: BTreeSet<Vec<usize>> = BTreeSet::new();

    // Plant first: vertex-disjoint monochromatic clusters on fresh vertices.
    let mut planted_edges = 0usize;
    if let Some(k) = params.planted {
        let mut pool: Vec<usize> = (0..n).collect();
        // Deterministic shuffle so plants land on random vertices.
        for i in (1..pool.len()).rev() {
            let j = rng.random_range(0..=i);
            pool.swap(i, j);
        }
        let mut next = 0usize;
        while planted_edges < k {
            let remaining = k - planted_edges;
            let want = if remaining >= 3 { 3 } else { 2 };
            if next + want > pool.len() {
                break;
            }
            let group = &pool[next..next + want];
            next += want;
            let color = rng.random_range(0..params.colors);
            if want == 3 {
                // Monochromatic triangle: three stable edges.
                for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                    let set = alloc::vec![group[a].min(group[b]), group[a].max(group[b])];
                    used_sets.insert(set.clone());
                    edges.push(Edge::new(set, color));
                    planted_edges += 1;
                    if planted_edges == k {
                        break;
                    }
                }
            } else {
                let set = alloc::vec![group[0].min(group[1]), group[0].max(group[1])];
                used_sets.insert(set.clone());
                edges.push(Edge::new(set, color));
                planted_edges += 1;
            }
        }
        assert!(
            planted_edges >= k,
            "not enough vertices to plant {k} edges into {n}"
        );
    }

    // Fill with random edges on distinct vertex sets.
    let mut attempts = 0usize;
    let max_attempts = 60 * params.m + 100;
    while edges.len() < params.m && attempts < max_attempts {
        attempts += 1;
        let size = if params.order == 2 {
            2
        } else {
            rng.random_range(2..=params.order)
        };
        if size > n {
            continue;
        }
        let mut set = BTreeSet::new();
        while set.len() < size {
            set.insert(rng.random_range(0..n));
        }
        let set: Vec<usize> = set.into_iter().collect();
        if used_sets.insert(set.clone()) {
            let color = rng.random_range(0..params.colors);
            edges.push(Edge::new(set, color));
        }
    }

    let graph = ColoredHypergraph::with_edges(n, params.colors, edges);
    debug_assert_eq!(graph.validate(), Ok(()));
    let k = params
        .planted
        .unwrap_or_else(|| rng.random_range(0..=graph.m() + 1));
    CCInstance::new(graph, k)
}

// ---------------------------------------------------------------------------
// CNF formulas
// ---------------------------------------------------------------------------

/// A CNF formula. Literals are nonzero integers: `+v` / `-v` refer to the
/// 0-based variable `v - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Self {
        Cnf { num_vars, clauses }
    }

    fn check_literals(&self) -> Result<(), GeneratorError> {
        for (ci, clause) in self.clauses.iter().enumerate() {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize;
                if lit == 0 || var > self.num_vars {
                    return Err(GeneratorError::LiteralOutOfRange { clause: ci });
                }
            }
        }
        Ok(())
    }

    /// Occurrence counts `(positive, negative)` per variable.
    pub fn polarity_counts(&self) -> Vec<(usize, usize)> {
        let mut counts = alloc::vec![(0usize, 0usize); self.num_vars];
        for clause in &self.clauses {
            for &lit in clause {
                let var = lit.unsigned_abs() as usize - 1;
                if lit > 0 {
                    counts[var].0 += 1;
                } else {
                    counts[var].1 += 1;
                }
            }
        }
        counts
    }
}

/// Exhaustive satisfiability check; usable up to ~20 variables.
pub fn sat_bruteforce(cnf: &Cnf) -> bool {
    assert!(cnf.num_vars <= 20);
    'outer: for mask in 0u32..(1 << cnf.num_vars) {
        for clause in &cnf.clauses {
            let satisfied = clause.iter().any(|&lit| {
                let var = lit.unsigned_abs() as usize - 1;
                (mask >> var & 1 == 1) == (lit > 0)
            });
            if !satisfied {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// Exhaustive check for one-in-three satisfiability (exactly one true
/// literal per clause).
pub fn one_in_three_bruteforce(cnf: &Cnf) -> bool {
    assert!(cnf.num_vars <= 20);
    'outer: for mask in 0u32..(1 << cnf.num_vars) {
        for clause in &cnf.clauses {
            let sat = clause
                .iter()
                .filter(|&&lit| {
                    let var = lit.unsigned_abs() as usize - 1;
                    (mask >> var & 1 == 1) == (lit > 0)
                })
                .count();
            if sat != 1 {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// Normalization before the 3-SAT reduction: deduplicates literals within
/// clauses, drops tautological clauses, and repeatedly deletes all clauses
/// containing a pure literal (a variable occurring with one polarity only).
/// Preserves satisfiability.
pub fn normalize_3sat(cnf: &Cnf) -> Cnf {
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    'clause: for clause in &cnf.clauses {
        let mut lits: Vec<i32> = clause.clone();
        lits.sort_unstable();
        lits.dedup();
        for &lit in &lits {
            if lits.contains(&-lit) {
                continue 'clause; // tautology
            }
        }
        clauses.push(lits);
    }
    loop {
        let probe = Cnf::new(cnf.num_vars, clauses.clone());
        let counts = probe.polarity_counts();
        let pure: Option<i32> = (0..cnf.num_vars).find_map(|v| {
            let (p, n) = counts[v];
            match (p, n) {
                (0, 0) => None,
                (_, 0) => Some(v as i32 + 1),
                (0, _) => Some(-(v as i32 + 1)),
                _ => None,
            }
        });
        match pure {
            Some(lit) => clauses.retain(|c| !c.contains(&lit)),
            None => break,
        }
    }
    Cnf::new(cnf.num_vars, clauses)
}

/// Builds a degree-3, five-color instance from a 3-SAT formula in which
/// every variable occurs at most three times with both polarities present.
/// The result is a yes-instance iff the formula is satisfiable; `k` equals
/// the number of clauses.
///
/// Per variable, the edges of its positive occurrences share one color and
/// the edges of its negative occurrences share another, chosen so that no
/// clause vertex sees a repeated color.
pub fn from_3sat(cnf: &Cnf) -> Result<CCInstance, GeneratorError> {
    cnf.check_literals()?;
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        if clause.is_empty() {
            return Err(GeneratorError::EmptyClause { clause: ci });
        }
        if clause.len() > 3 {
            return Err(GeneratorError::ClauseTooLarge {
                clause: ci,
                len: clause.len(),
            });
        }
        let mut vars: Vec<usize> = clause.iter().map(|l| l.unsigned_abs() as usize).collect();
        vars.sort_unstable();
        for w in vars.windows(2) {
            if w[0] == w[1] {
                return Err(GeneratorError::RepeatedVariable {
                    clause: ci,
                    var: w[0] - 1,
                });
            }
        }
    }
    let counts = cnf.polarity_counts();
    for (var, &(p, n)) in counts.iter().enumerate() {
        if p + n == 0 {
            continue;
        }
        if p + n > 3 {
            return Err(GeneratorError::TooManyOccurrences { var, count: p + n });
        }
        if p == 0 || n == 0 {
            return Err(GeneratorError::MissingPolarity { var });
        }
    }

    const PALETTE: usize = 5;
    let nv = cnf.num_vars;
    let m = cnf.clauses.len();
    // Vertex ids: variables then clauses.
    let var_vertex = |x: usize| x;
    let clause_vertex = |y: usize| nv + y;

    let mut edges: Vec<Edge> = Vec::new();
    // Colors already used at each clause vertex.
    let mut used_at = alloc::vec![BTreeSet::new(); m];

    for x in 0..nv {
        let mut pos: Vec<usize> = Vec::new();
        let mut neg: Vec<usize> = Vec::new();
        for (ci, clause) in cnf.clauses.iter().enumerate() {
            for &lit in clause {
                if lit.unsigned_abs() as usize - 1 == x {
                    if lit > 0 {
                        pos.push(ci);
                    } else {
                        neg.push(ci);
                    }
                }
            }
        }
        if pos.is_empty() && neg.is_empty() {
            continue;
        }
        // Color the larger occurrence group first.
        let (first, second) = if pos.len() >= neg.len() {
            (pos, neg)
        } else {
            (neg, pos)
        };
        let mut chosen: Vec<usize> = Vec::new();
        for group in [&first, &second] {
            let color = (0..PALETTE)
                .find(|c| {
                    !chosen.contains(c) && group.iter().all(|&y| !used_at[y].contains(c))
                })
                .expect("five colors suffice for degree-3 clause vertices");
            chosen.push(color);
            for &y in group {
                used_at[y].insert(color);
                edges.push(Edge::pair(var_vertex(x), clause_vertex(y), color));
            }
        }
    }

    let graph = ColoredHypergraph::with_edges(nv + m, PALETTE, edges);
    debug_assert_eq!(graph.validate(), Ok(()));
    Ok(CCInstance::new(graph, m))
}

/// Builds an instance from a monotone one-in-three SAT system (every clause
/// three distinct positive literals, every variable exactly three
/// occurrences; hence #clauses = #variables =: `n`). The output has `n`
/// clause vertices plus six gadget vertices per variable, `15n` edges in
/// `5n` triangle colors, and `k = 7n`; it is a yes-instance iff some
/// assignment satisfies exactly one literal of every clause.
pub fn from_one_in_three(cnf: &Cnf) -> Result<CCInstance, GeneratorError> {
    cnf.check_literals()?;
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        if clause.iter().any(|&l| l < 0) {
            return Err(GeneratorError::NotMonotone { clause: ci });
        }
        if clause.len() != 3 {
            return Err(GeneratorError::ClauseTooLarge {
                clause: ci,
                len: clause.len(),
            });
        }
        let mut vars: Vec<i32> = clause.clone();
        vars.sort_unstable();
        for w in vars.windows(2) {
            if w[0] == w[1] {
                return Err(GeneratorError::RepeatedVariable {
                    clause: ci,
                    var: w[0] as usize - 1,
                });
            }
        }
    }
    let counts = cnf.polarity_counts();
    for (var, &(p, n)) in counts.iter().enumerate() {
        if p + n != 3 {
            return Err(GeneratorError::WrongOccurrenceCount { var, count: p + n });
        }
        debug_assert_eq!(n, 0);
    }

    let n = cnf.num_vars;
    let m = cnf.clauses.len();
    debug_assert_eq!(3 * m, 3 * n, "three slots per clause, three per variable");

    let clause_vertex = |y: usize| y;
    let u_vertex = |x: usize, i: usize| m + 6 * x + i;
    let w_vertex = |x: usize, i: usize| m + 6 * x + 3 + i;

    let mut occurrences: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    for (ci, clause) in cnf.clauses.iter().enumerate() {
        for &lit in clause {
            occurrences[lit as usize - 1].push(ci);
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    let triangle = |a: usize, b: usize, c: usize, color: usize, edges: &mut Vec<Edge>| {
        edges.push(Edge::pair(a, b, color));
        edges.push(Edge::pair(b, c, color));
        edges.push(Edge::pair(a, c, color));
    };
    for x in 0..n {
        let base = 5 * x;
        triangle(
            u_vertex(x, 0),
            u_vertex(x, 1),
            u_vertex(x, 2),
            base,
            &mut edges,
        );
        triangle(
            w_vertex(x, 0),
            w_vertex(x, 1),
            w_vertex(x, 2),
            base + 1,
            &mut edges,
        );
        for (i, &y) in occurrences[x].iter().enumerate() {
            triangle(
                clause_vertex(y),
                u_vertex(x, i),
                w_vertex(x, i),
                base + 2 + i,
                &mut edges,
            );
        }
    }

    let graph = ColoredHypergraph::with_edges(m + 6 * n, 5 * n, edges);
    debug_assert_eq!(graph.validate(), Ok(()));
    debug_assert_eq!(graph.m(), 15 * n);
    Ok(CCInstance::new(graph, 7 * n))
}

// ---------------------------------------------------------------------------
// Multicolored clique
// ---------------------------------------------------------------------------

/// A graph whose vertex set is partitioned into independent parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    pub n: usize,
    pub parts: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl PartitionedGraph {
    fn validate(&self) -> Result<(), GeneratorError> {
        let mut seen = alloc::vec![false; self.n];
        for part in &self.parts {
            for &v in part {
                if v >= self.n || seen[v] {
                    return Err(GeneratorError::PartsNotPartition);
                }
                seen[v] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(GeneratorError::PartsNotPartition);
        }
        for (pi, part) in self.parts.iter().enumerate() {
            for &(u, v) in &self.edges {
                if part.contains(&u) && part.contains(&v) {
                    return Err(GeneratorError::PartNotIndependent { part: pi });
                }
            }
        }
        Ok(())
    }

    fn part_of(&self) -> Vec<usize> {
        let mut part = alloc::vec![0usize; self.n];
        for (pi, p) in self.parts.iter().enumerate() {
            for &v in p {
                part[v] = pi;
            }
        }
        part
    }
}

/// Exhaustive multicolored clique check: one vertex per part, pairwise
/// adjacent.
pub fn multicolored_clique_bruteforce(pg: &PartitionedGraph) -> bool {
    let adj: BTreeSet<(usize, usize)> = pg
        .edges
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    fn rec(
        pg: &PartitionedGraph,
        adj: &BTreeSet<(usize, usize)>,
        idx: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if idx == pg.parts.len() {
            return true;
        }
        for &v in &pg.parts[idx] {
            if chosen.iter().all(|&u| adj.contains(&(u, v))) {
                chosen.push(v);
                if rec(pg, adj, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(pg, &adj, 0, &mut Vec::new())
}

/// Gadget ids for the multicolored-clique construction, exposed so tests
/// can locate the matching-color edges.
pub struct CliqueReduction {
    pub instance: CCInstance,
    /// Indices of the edges carrying the designated matching color.
    pub matching_edges: Vec<usize>,
}

/// Builds an instance that is yes iff the partitioned graph contains a
/// clique with one vertex per part. With `s` parts and `n` vertices,
/// `k = (s-1)(n+s)`; the designated matching color induces an induced
/// matching of size `(s-1)n`.
///
/// Per vertex `v` of part `i` and part `j != i` there is a ladder: a hub
/// edge from `u_i` to `w_v` in `v`'s private color, and a matching-color
/// rung `{w_v, x_v}`. Keeping a rung is always worth one; trading it for
/// the hub edge is neutral, and pays off only through the verification
/// edge `{x_v, u_j}` carried by each source edge `{v, v'}` and colored in
/// the partner's private color: stable exactly when the opposite hub has
/// committed to the adjacent partner. Every ordered part pair must earn
/// that extra unit to reach `k`, which forces the committed vertices to be
/// pairwise adjacent.
pub fn from_multicolored_clique(pg: &PartitionedGraph) -> Result<CliqueReduction, GeneratorError> {
    pg.validate()?;
    let s = pg.parts.len();
    let n = pg.n;
    let part = pg.part_of();

    // Colors: matching color, then one color per vertex.
    const C_MATCH: usize = 0;
    let vertex_color = |v: usize| 1 + v;

    // Vertices: hubs, then (w, x) ladders per (vertex, target part).
    let mut next = s;
    let mut w_id = alloc::vec![alloc::collections::BTreeMap::new(); n];
    let mut x_id = alloc::vec![alloc::collections::BTreeMap::new(); n];
    for v in 0..n {
        for j in 0..s {
            if j == part[v] {
                continue;
            }
            w_id[v].insert(j, next);
            x_id[v].insert(j, next + 1);
            next += 2;
        }
    }

    let mut edges: Vec<Edge> = Vec::new();
    let mut matching_edges: Vec<usize> = Vec::new();
    for v in 0..n {
        let i = part[v];
        for j in 0..s {
            if j == i {
                continue;
            }
            edges.push(Edge::pair(i, w_id[v][&j], vertex_color(v)));
            matching_edges.push(edges.len());
            edges.push(Edge::pair(w_id[v][&j], x_id[v][&j], C_MATCH));
        }
    }
    // Verification edges, one per direction of each source edge. Parallel
    // source edges would duplicate them, so deduplicate first.
    let mut source: Vec<(usize, usize)> = pg
        .edges
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    source.sort_unstable();
    source.dedup();
    for &(u, v) in &source {
        let (i, j) = (part[u], part[v]);
        edges.push(Edge::pair(x_id[u][&j], j, vertex_color(v)));
        edges.push(Edge::pair(x_id[v][&i], i, vertex_color(u)));
    }

    let graph = ColoredHypergraph::with_edges(next, 1 + n, edges);
    debug_assert_eq!(graph.validate(), Ok(()));
    let k = (s - 1) * (n + s);
    Ok(CliqueReduction {
        instance: CCInstance::new(graph, k),
        matching_edges,
    })
}

// ---------------------------------------------------------------------------
// Independent set
// ---------------------------------------------------------------------------

/// A plain graph for the independent-set reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// Maximum independent set size by branching; usable up to ~25 vertices.
pub fn independent_set_bruteforce(g: &SimpleGraph) -> usize {
    assert!(g.n <= 25);
    let mut adj = alloc::vec![0u32; g.n];
    for &(u, v) in &g.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    fn rec(v: usize, n: usize, adj: &[u32], taken: u32) -> usize {
        if v == n {
            return taken.count_ones() as usize;
        }
        let mut best = rec(v + 1, n, adj, taken);
        if adj[v] & taken == 0 {
            best = best.max(rec(v + 1, n, adj, taken | 1 << v));
        }
        best
    }
    rec(0, g.n, &adj, 0)
}

/// Builds a hypergraph instance (order at most 3, degree at most 2, three
/// colors) that is yes iff the input graph has an independent set of size
/// `s`. Requires maximum degree 3.
///
/// Every edge is subdivided twice (raising the target by one per edge), the
/// subdivided graph is properly 3-colored: original vertices get color 0,
/// the two subdivision vertices of each edge get colors 1 and 2: and each
/// vertex turns into a hyperedge over its incident (subdivided) edges.
pub fn from_independent_set(g: &SimpleGraph, s: usize) -> Result<CCInstance, GeneratorError> {
    let mut degree = alloc::vec![0usize; g.n];
    for &(u, v) in &g.edges {
        if u == v {
            return Err(GeneratorError::SelfLoop { vertex: u });
        }
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some((v, &d)) = degree.iter().enumerate().find(|&(_, &d)| d > 3) {
        return Err(GeneratorError::DegreeTooLarge { vertex: v, degree: d });
    }

    // Isolated vertices always join an independent set; peel them off.
    let keep: Vec<usize> = (0..g.n).filter(|&v| degree[v] > 0).collect();
    let isolated = g.n - keep.len();
    let target = s.saturating_sub(isolated);
    if target == 0 {
        // Trivial yes.
        return Ok(CCInstance::new(ColoredHypergraph::new(0, 3), 0));
    }
    let index_of: alloc::collections::BTreeMap<usize, usize> =
        keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    // Subdivide twice: vertices are originals then two per edge; colors
    // 0 for originals, 1 and 2 along each subdivided path.
    let base = keep.len();
    let sub_n = base + 2 * g.edges.len();
    let mut sub_edges: Vec<(usize, usize)> = Vec::new();
    for (ei, &(u, v)) in g.edges.iter().enumerate() {
        let a = base + 2 * ei;
        let b = base + 2 * ei + 1;
        sub_edges.push((index_of[&u], a));
        sub_edges.push((a, b));
        sub_edges.push((b, index_of[&v]));
    }
    let coloring: Vec<usize> = (0..sub_n)
        .map(|v| {
            if v < base {
                0
            } else if (v - base) % 2 == 0 {
                1
            } else {
                2
            }
        })
        .collect();
    for &(u, v) in &sub_edges {
        debug_assert_ne!(coloring[u], coloring[v], "coloring must be proper");
    }

    // Dualize: one hyperedge per subdivided-graph vertex, over the indices
    // of its incident edges, colored by the vertex color.
    let mut incident = alloc::vec![Vec::new(); sub_n];
    for (idx, &(u, v)) in sub_edges.iter().enumerate() {
        incident[u].push(idx);
        incident[v].push(idx);
    }
    let edges: Vec<Edge> = (0..sub_n)
        .map(|v| Edge::new(incident[v].clone(), coloring[v]))
        .collect();
    debug_assert!(edges.iter().all(|e| !e.vertices.is_empty()));

    let graph = ColoredHypergraph::with_edges(sub_edges.len(), 3, edges);
    debug_assert_eq!(graph.validate(), Ok(()));
    debug_assert!(graph.order() <= 3);
    let k = target + g.edges.len();
    Ok(CCInstance::new(graph, k))
}
