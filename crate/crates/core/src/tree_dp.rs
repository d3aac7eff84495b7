//! Structural solvers driven by a spanning-tree layout.
//!
//! A rooted forest over the vertex set assigns every non-tree edge a path;
//! the number of such paths through a vertex is its local feedback edge
//! count. A dynamic program over the tree runs in time exponential only in
//! that count: each table state fixes a vertex color plus a stable subset
//! of the non-tree edges crossing the vertex boundary, and children are
//! combined bottom-up. Plain forests admit a linear-time special case, and
//! an edge-deletion wrapper lifts any polynomial base class by branching
//! over the deleted set.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::conflict::solve_two_colors;
use crate::instance::{CCInstance, ColoredHypergraph, DisjointSets, Edge};
use crate::solution::{is_stable, Solved, StableSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeDpError {
    NotAGraph,
    NotAForest,
    InvalidLayout(&'static str),
    BoundaryTooWide { vertex: usize, size: usize },
    ResidualNotInClass,
    EdgeIndexOutOfRange { index: usize },
    DeletionSetTooLarge { size: usize },
}

impl fmt::Display for TreeDpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeDpError::NotAGraph => write!(f, "layout solvers require all edges to be pairs"),
            TreeDpError::NotAForest => write!(f, "input graph is not a forest"),
            TreeDpError::InvalidLayout(msg) => write!(f, "invalid tree layout: {msg}"),
            TreeDpError::BoundaryTooWide { vertex, size } => {
                write!(f, "vertex {vertex} has {size} boundary edges, too many")
            }
            TreeDpError::ResidualNotInClass => {
                write!(f, "graph minus the deletion set is outside the declared class")
            }
            TreeDpError::EdgeIndexOutOfRange { index } => {
                write!(f, "edge index {index} out of range")
            }
            TreeDpError::DeletionSetTooLarge { size } => {
                write!(f, "deletion set of {size} edges is too large to branch over")
            }
        }
    }
}

impl core::error::Error for TreeDpError {}

/// A rooted spanning forest over the instance vertices. The tree need not
/// be a subgraph of the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLayout {
    pub parent: Vec<Option<usize>>,
    pub roots: Vec<usize>,
}

impl TreeLayout {
    pub fn validate(&self, n: usize) -> Result<(), TreeDpError> {
        if self.parent.len() != n {
            return Err(TreeDpError::InvalidLayout("wrong vertex count"));
        }
        for &r in &self.roots {
            if r >= n || self.parent[r].is_some() {
                return Err(TreeDpError::InvalidLayout("bad root"));
            }
        }
        // Every vertex must reach a root without cycles.
        for v in 0..n {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = self.parent[cur] {
                if p >= n {
                    return Err(TreeDpError::InvalidLayout("parent out of range"));
                }
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(TreeDpError::InvalidLayout("cycle in parent array"));
                }
            }
            if !self.roots.contains(&cur) {
                return Err(TreeDpError::InvalidLayout("vertex not attached to a root"));
            }
        }
        Ok(())
    }

    /// Breadth-first spanning forest of the graph, one root per component
    /// (the lowest vertex id).
    pub fn bfs_forest(g: &ColoredHypergraph) -> TreeLayout {
        let mut adj = alloc::vec![BTreeSet::new(); g.n];
        for e in &g.edges {
            for w in e.vertices.windows(2) {
                adj[w[0]].insert(w[1]);
                adj[w[1]].insert(w[0]);
            }
        }
        let mut parent = alloc::vec![None; g.n];
        let mut seen = alloc::vec![false; g.n];
        let mut roots = Vec::new();
        for start in 0..g.n {
            if seen[start] {
                continue;
            }
            roots.push(start);
            seen[start] = true;
            let mut queue = alloc::vec![start];
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        parent[u] = Some(v);
                        queue.push(u);
                    }
                }
            }
        }
        TreeLayout { parent, roots }
    }

    fn depths(&self) -> Vec<usize> {
        let n = self.parent.len();
        let mut depth = alloc::vec![usize::MAX; n];
        for v in 0..n {
            let mut chain = alloc::vec![];
            let mut cur = v;
            while depth[cur] == usize::MAX {
                chain.push(cur);
                match self.parent[cur] {
                    Some(p) => cur = p,
                    None => {
                        depth[cur] = 0;
                        break;
                    }
                }
            }
            let mut d = depth[cur];
            for &x in chain.iter().rev() {
                if x == cur {
                    continue;
                }
                d += 1;
                depth[x] = d;
            }
        }
        depth
    }

    fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = alloc::vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }
}

/// Per-vertex classification of the non-tree edges whose tree path visits
/// the vertex, split by how they cross it, plus the edges realized by tree
/// pairs.
struct LayoutClasses {
    /// Passing through: one endpoint strictly below, the other outside.
    c1: Vec<Vec<usize>>,
    /// Spanning two child subtrees (the vertex is the path's top).
    c2: Vec<Vec<usize>>,
    /// From the vertex down into its subtree.
    c3: Vec<Vec<usize>>,
    /// From the vertex to the outside.
    c4: Vec<Vec<usize>>,
    /// Edge indices per (parent, child) tree pair.
    tree_pairs: BTreeMap<(usize, usize), Vec<usize>>,
}

fn classify(g: &ColoredHypergraph, layout: &TreeLayout) -> LayoutClasses {
    let n = g.n;
    let depth = layout.depths();
    let mut classes = LayoutClasses {
        c1: alloc::vec![Vec::new(); n],
        c2: alloc::vec![Vec::new(); n],
        c3: alloc::vec![Vec::new(); n],
        c4: alloc::vec![Vec::new(); n],
        tree_pairs: BTreeMap::new(),
    };
    for (idx, e) in g.edges.iter().enumerate() {
        let (u, w) = (e.vertices[0], e.vertices[1]);
        if layout.parent[u] == Some(w) {
            classes.tree_pairs.entry((w, u)).or_default().push(idx);
            continue;
        }
        if layout.parent[w] == Some(u) {
            classes.tree_pairs.entry((u, w)).or_default().push(idx);
            continue;
        }
        // Walk both endpoints up to the meeting point.
        let (mut a, mut b) = (u, w);
        let mut up_a = alloc::vec![a];
        let mut up_b = alloc::vec![b];
        while depth[a] > depth[b] {
            a = layout.parent[a].expect("deeper vertex has a parent");
            up_a.push(a);
        }
        while depth[b] > depth[a] {
            b = layout.parent[b].expect("deeper vertex has a parent");
            up_b.push(b);
        }
        while a != b {
            a = layout.parent[a].expect("forest paths meet");
            b = layout.parent[b].expect("forest paths meet");
            up_a.push(a);
            up_b.push(b);
        }
        let lca = a;
        let mut path: Vec<usize> = up_a;
        // up_b ends at the lca; append the other side excluding it.
        for &x in up_b.iter().rev().skip(1) {
            path.push(x);
        }
        for &x in &path {
            if x == u || x == w {
                if x == lca {
                    classes.c3[x].push(idx);
                } else {
                    classes.c4[x].push(idx);
                }
            } else if x == lca {
                classes.c2[x].push(idx);
            } else {
                classes.c1[x].push(idx);
            }
        }
    }
    classes
}

/// Local feedback edge count per vertex: non-tree edges whose tree path
/// visits the vertex.
pub fn local_feedback_counts(g: &ColoredHypergraph, layout: &TreeLayout) -> Vec<usize> {
    let classes = classify(g, layout);
    (0..g.n)
        .map(|v| {
            classes.c1[v].len() + classes.c2[v].len() + classes.c3[v].len() + classes.c4[v].len()
        })
        .collect()
}

/// The layout's width: the maximum local feedback edge count.
pub fn local_feedback_number(g: &ColoredHypergraph, layout: &TreeLayout) -> usize {
    local_feedback_counts(g, layout).iter().copied().max().unwrap_or(0)
}

/// Searches for a spanning forest with small local feedback edge number:
/// breadth- and depth-first forests from several roots, seeded random
/// spanning forests, then greedy edge-swap descent. `budget` bounds the
/// number of random candidates and descent rounds.
pub fn spanning_tree_search(
    g: &ColoredHypergraph,
    budget: usize,
) -> Result<TreeLayout, TreeDpError> {
    if !g.is_graph() {
        return Err(TreeDpError::NotAGraph);
    }
    let pairs: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|e| (e.vertices[0], e.vertices[1]))
        .collect();

    let mut best = TreeLayout::bfs_forest(g);
    let mut best_width = local_feedback_number(g, &best);

    let consider = |layout: TreeLayout, best: &mut TreeLayout, best_width: &mut usize| {
        let width = local_feedback_number(g, &layout);
        if width < *best_width {
            *best = layout;
            *best_width = width;
        }
    };

    // Depth-first forest.
    consider(dfs_forest(g.n, &pairs), &mut best, &mut best_width);
    // Random spanning forests from shuffled edge orders.
    use rand::{Rng, SeedableRng};
    for seed in 0..budget as u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        for i in (1..order.len()).rev() {
            let j = rng.random_range(0..=i);
            order.swap(i, j);
        }
        let mut dsu = DisjointSets::new(g.n);
        let mut forest_pairs: Vec<(usize, usize)> = Vec::new();
        for &i in &order {
            let (u, w) = pairs[i];
            if u != w && dsu.union(u, w) {
                forest_pairs.push((u, w));
            }
        }
        consider(
            rooted_from_pairs(g.n, &forest_pairs),
            &mut best,
            &mut best_width,
        );
    }

    // Local descent: swap a tree edge on a chord's path for the chord.
    for _ in 0..budget {
        let mut improved = false;
        let tree_pairs: BTreeSet<(usize, usize)> = tree_pair_set(&best);
        for &(u, w) in pairs.iter() {
            if u == w || tree_pairs.contains(&(u.min(w), u.max(w))) {
                continue;
            }
            // Replace each tree pair on the u-w path in turn.
            let path = tree_path_pairs(&best, u, w);
            for &(a, b) in &path {
                let mut np: Vec<(usize, usize)> = tree_pairs
                    .iter()
                    .copied()
                    .filter(|&p| p != (a.min(b), a.max(b)))
                    .collect();
                np.push((u.min(w), u.max(w)));
                let candidate = rooted_from_pairs(g.n, &np);
                let width = local_feedback_number(g, &candidate);
                if width < best_width {
                    best = candidate;
                    best_width = width;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if !improved {
            break;
        }
    }

    Ok(best)
}

fn tree_pair_set(layout: &TreeLayout) -> BTreeSet<(usize, usize)> {
    layout
        .parent
        .iter()
        .enumerate()
        .filter_map(|(v, p)| p.map(|p| (v.min(p), v.max(p))))
        .collect()
}

fn tree_path_pairs(layout: &TreeLayout, u: usize, w: usize) -> Vec<(usize, usize)> {
    let depth = layout.depths();
    let (mut a, mut b) = (u, w);
    let mut out = Vec::new();
    while depth[a] > depth[b] {
        let p = layout.parent[a].unwrap();
        out.push((a, p));
        a = p;
    }
    while depth[b] > depth[a] {
        let p = layout.parent[b].unwrap();
        out.push((b, p));
        b = p;
    }
    while a != b {
        let pa = layout.parent[a].unwrap();
        let pb = layout.parent[b].unwrap();
        out.push((a, pa));
        out.push((b, pb));
        a = pa;
        b = pb;
    }
    out
}

fn dfs_forest(n: usize, pairs: &[(usize, usize)]) -> TreeLayout {
    let mut adj = alloc::vec![BTreeSet::new(); n];
    for &(u, w) in pairs {
        if u != w {
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let mut parent = alloc::vec![None; n];
    let mut seen = alloc::vec![false; n];
    let mut roots = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        roots.push(start);
        seen[start] = true;
        let mut stack = alloc::vec![start];
        while let Some(v) = stack.pop() {
            for &u in adj[v].iter().rev() {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    stack.push(u);
                }
            }
        }
    }
    TreeLayout { parent, roots }
}

fn rooted_from_pairs(n: usize, pairs: &[(usize, usize)]) -> TreeLayout {
    dfs_forest(n, pairs)
}

// ---------------------------------------------------------------------------
// The layout-driven dynamic program.
// ---------------------------------------------------------------------------

const BOUNDARY_LIMIT: usize = 22;

#[derive(Clone, Debug)]
struct Entry {
    value: usize,
    s2_mask: u64,
    s3_mask: u64,
    child_colors: Vec<usize>,
}

/// Exact maximum stable set via dynamic programming over the layout.
///
/// A table state is a vertex, its color, and a stable subset of the
/// boundary edges (the non-tree edges with exactly one endpoint in the
/// vertex's subtree). States whose boundary edges at the vertex disagree
/// with the vertex color are inconsistent and never materialize.
pub fn solve_secw_dp(inst: &CCInstance, layout: &TreeLayout) -> Result<Solved, TreeDpError> {
    let g = &inst.graph;
    if !g.is_graph() {
        return Err(TreeDpError::NotAGraph);
    }
    layout.validate(g.n)?;
    // Every edge must stay within one tree of the forest, otherwise it has
    // no tree path.
    let root_of = {
        let mut root = alloc::vec![usize::MAX; g.n];
        for v in 0..g.n {
            let mut cur = v;
            while let Some(p) = layout.parent[cur] {
                cur = p;
            }
            root[v] = cur;
        }
        root
    };
    if g
        .edges
        .iter()
        .any(|e| root_of[e.vertices[0]] != root_of[e.vertices[1]])
    {
        return Err(TreeDpError::InvalidLayout("edge spans two trees"));
    }
    let classes = classify(g, layout);
    let colors = g.colors.max(1);
    let children = layout.children();

    // Boundary edge list per vertex, in edge-index order.
    let boundary: Vec<Vec<usize>> = (0..g.n)
        .map(|v| {
            let mut b: Vec<usize> = classes.c1[v]
                .iter()
                .chain(classes.c4[v].iter())
                .copied()
                .collect();
            b.sort_unstable();
            b
        })
        .collect();
    for v in 0..g.n {
        let local = boundary[v].len() + classes.c2[v].len() + classes.c3[v].len();
        if local > BOUNDARY_LIMIT {
            return Err(TreeDpError::BoundaryTooWide {
                vertex: v,
                size: local,
            });
        }
    }

    let conflicts = |a: usize, b: usize| {
        g.edges[a].intersects(&g.edges[b]) && g.edges[a].color != g.edges[b].color
    };

    let mut table: Vec<BTreeMap<(usize, u64), Entry>> = alloc::vec![BTreeMap::new(); g.n];

    // Post-order over every root.
    let mut order: Vec<usize> = Vec::new();
    for &root in &layout.roots {
        let mut stack = alloc::vec![(root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
            } else {
                stack.push((v, true));
                for &c in &children[v] {
                    stack.push((c, false));
                }
            }
        }
    }

    for &v in &order {
        let b_edges = &boundary[v];
        // Pairwise conflict masks among this vertex's local edges:
        // boundary, subtree-spanning (c2), and downward (c3) edges.
        let local: Vec<usize> = b_edges
            .iter()
            .chain(classes.c2[v].iter())
            .chain(classes.c3[v].iter())
            .copied()
            .collect();
        let nb = b_edges.len();
        let n2 = classes.c2[v].len();
        let n3 = classes.c3[v].len();
        let nl = local.len();
        let mut conflict_mask = alloc::vec![0u64; nl];
        for i in 0..nl {
            for j in 0..nl {
                if i != j && conflicts(local[i], local[j]) {
                    conflict_mask[i] |= 1 << j;
                }
            }
        }
        let stable_mask =
            |mask: u64| (0..nl).all(|i| mask >> i & 1 == 0 || conflict_mask[i] & mask == 0);

        for s_mask in 0u64..(1 << nb) {
            // The boundary subset must be stable on its own.
            if !(0..nb).all(|i| {
                s_mask >> i & 1 == 0 || conflict_mask[i] & s_mask & ((1 << nb) - 1) == 0
            }) {
                continue;
            }
            // Color forced by boundary edges incident to v, if any.
            let mut forced: Option<usize> = None;
            let mut consistent = true;
            for (i, &e) in b_edges.iter().enumerate() {
                if s_mask >> i & 1 == 1 && g.edges[e].contains(v) {
                    match forced {
                        None => forced = Some(g.edges[e].color),
                        Some(c) if c == g.edges[e].color => {}
                        Some(_) => {
                            consistent = false;
                            break;
                        }
                    }
                }
            }
            if !consistent {
                continue;
            }
            for c in 0..colors {
                if forced.is_some_and(|f| f != c) {
                    continue;
                }
                // Downward edges must carry the vertex color.
                let allowed3: Vec<usize> = (0..n3)
                    .filter(|&i| g.edges[classes.c3[v][i]].color == c)
                    .collect();
                let mut best: Option<Entry> = None;
                for m2 in 0u64..(1 << n2) {
                    'm3: for m3_select in 0u64..(1 << allowed3.len()) {
                        let mut m3 = 0u64;
                        for (bit, &i) in allowed3.iter().enumerate() {
                            if m3_select >> bit & 1 == 1 {
                                m3 |= 1 << i;
                            }
                        }
                        let full = s_mask | m2 << nb | m3 << (nb + n2);
                        if !stable_mask(full) {
                            continue;
                        }
                        // Chosen edge ids at this vertex.
                        let mut union: BTreeSet<usize> = BTreeSet::new();
                        for i in 0..nl {
                            if full >> i & 1 == 1 {
                                union.insert(local[i]);
                            }
                        }
                        let mut value = (m2.count_ones() + m3.count_ones()) as usize;
                        let mut child_colors = Vec::with_capacity(children[v].len());
                        for &w in &children[v] {
                            let mut w_mask = 0u64;
                            for (bit, &e) in boundary[w].iter().enumerate() {
                                if union.contains(&e) {
                                    w_mask |= 1 << bit;
                                }
                            }
                            let tree_count = |cc: usize| {
                                classes
                                    .tree_pairs
                                    .get(&(v, w))
                                    .map(|ids| {
                                        ids.iter()
                                            .filter(|&&i| g.edges[i].color == cc)
                                            .count()
                                    })
                                    .unwrap_or(0)
                            };
                            let mut child_best: Option<(usize, usize)> = None;
                            for cc in 0..colors {
                                let Some(entry) = table[w].get(&(cc, w_mask)) else {
                                    continue;
                                };
                                let bonus = if cc == c { tree_count(c) } else { 0 };
                                let total = entry.value + bonus;
                                if child_best.is_none_or(|(bv, _)| total > bv) {
                                    child_best = Some((total, cc));
                                }
                            }
                            match child_best {
                                Some((bv, bc)) => {
                                    value += bv;
                                    child_colors.push(bc);
                                }
                                None => continue 'm3,
                            }
                        }
                        if best.as_ref().is_none_or(|b| value > b.value) {
                            best = Some(Entry {
                                value,
                                s2_mask: m2,
                                s3_mask: m3,
                                child_colors,
                            });
                        }
                    }
                }
                if let Some(entry) = best {
                    table[v].insert((c, s_mask), entry);
                }
            }
        }
    }

    // Combine roots and extract the witness.
    let mut optimum = 0usize;
    let mut witness = StableSet::empty();
    for &root in &layout.roots {
        let (&(c, _), entry) = table[root]
            .iter()
            .filter(|((_, mask), _)| *mask == 0)
            .max_by_key(|((c, _), entry)| (entry.value, core::cmp::Reverse(*c)))
            .expect("root has at least the empty state");
        optimum += entry.value;
        collect_witness(
            g,
            &classes,
            &boundary,
            &children,
            &table,
            root,
            c,
            0,
            &mut witness,
        );
    }
    let solved = Solved::new(optimum, witness);
    debug_assert_eq!(solved.witness.len(), solved.optimum);
    debug_assert_eq!(is_stable(g, &solved.witness), Ok(true));
    Ok(solved)
}

#[allow(clippy::too_many_arguments)]
fn collect_witness(
    g: &ColoredHypergraph,
    classes: &LayoutClasses,
    boundary: &[Vec<usize>],
    children: &[Vec<usize>],
    table: &[BTreeMap<(usize, u64), Entry>],
    v: usize,
    c: usize,
    s_mask: u64,
    out: &mut StableSet,
) {
    let entry = table[v].get(&(c, s_mask)).expect("state exists");
    let mut union: BTreeSet<usize> = BTreeSet::new();
    for (i, &e) in boundary[v].iter().enumerate() {
        if s_mask >> i & 1 == 1 {
            union.insert(e);
        }
    }
    for (i, &e) in classes.c2[v].iter().enumerate() {
        if entry.s2_mask >> i & 1 == 1 {
            union.insert(e);
            out.edges.insert(e);
        }
    }
    for (i, &e) in classes.c3[v].iter().enumerate() {
        if entry.s3_mask >> i & 1 == 1 {
            union.insert(e);
            out.edges.insert(e);
        }
    }
    for (pos, &w) in children[v].iter().enumerate() {
        let cc = entry.child_colors[pos];
        if cc == c {
            if let Some(ids) = classes.tree_pairs.get(&(v, w)) {
                for &i in ids {
                    if g.edges[i].color == c {
                        out.edges.insert(i);
                    }
                }
            }
        }
        let mut w_mask = 0u64;
        for (bit, &e) in boundary[w].iter().enumerate() {
            if union.contains(&e) {
                w_mask |= 1 << bit;
            }
        }
        collect_witness(g, classes, boundary, children, table, w, cc, w_mask, out);
    }
}

// ---------------------------------------------------------------------------
// Forests and the deletion wrapper.
// ---------------------------------------------------------------------------

/// Exact maximum stable set on forests: one color per vertex, summed over
/// children, in polynomial time.
pub fn forest_dp(inst: &CCInstance) -> Result<Solved, TreeDpError> {
    let g = &inst.graph;
    if !g.is_graph() {
        return Err(TreeDpError::NotAGraph);
    }
    // Parallel edges count as cycles.
    let mut dsu = DisjointSets::new(g.n);
    for e in &g.edges {
        if !dsu.union(e.vertices[0], e.vertices[1]) {
            return Err(TreeDpError::NotAForest);
        }
    }
    let layout = TreeLayout::bfs_forest(g);
    let children = layout.children();
    let colors = g.colors.max(1);

    // The unique connecting edge per (parent, child), if the pair is in G.
    let mut pair_edge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, e) in g.edges.iter().enumerate() {
        let (u, w) = (e.vertices[0], e.vertices[1]);
        if layout.parent[u] == Some(w) {
            pair_edge.insert((w, u), i);
        } else if layout.parent[w] == Some(u) {
            pair_edge.insert((u, w), i);
        }
    }

    let mut value = alloc::vec![alloc::vec![0usize; colors]; g.n];
    let mut choice = alloc::vec![alloc::vec![Vec::new(); colors]; g.n];

    let mut order: Vec<usize> = Vec::new();
    for &root in &layout.roots {
        let mut stack = alloc::vec![(root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
            } else {
                stack.push((v, true));
                for &cchild in &children[v] {
                    stack.push((cchild, false));
                }
            }
        }
    }
    for &v in &order {
        for c in 0..colors {
            let mut total = 0usize;
            let mut picks: Vec<usize> = Vec::with_capacity(children[v].len());
            for &w in &children[v] {
                let edge = pair_edge.get(&(v, w)).copied();
                let mut best = (0usize, 0usize);
                for cc in 0..colors {
                    let bonus = match edge {
                        Some(i) if g.edges[i].color == c && cc == c => 1,
                        _ => 0,
                    };
                    let val = value[w][cc] + bonus;
                    if cc == 0 || val > best.0 {
                        best = (val, cc);
                    }
                }
                total += best.0;
                picks.push(best.1);
            }
            value[v][c] = total;
            choice[v][c] = picks;
        }
    }

    let mut optimum = 0usize;
    let mut witness = StableSet::empty();
    for &root in &layout.roots {
        let best_c = (0..colors).max_by_key(|&c| (value[root][c], core::cmp::Reverse(c))).unwrap();
        optimum += value[root][best_c];
        // Walk the choices down.
        let mut stack = alloc::vec![(root, best_c)];
        while let Some((v, c)) = stack.pop() {
            for (pos, &w) in children[v].iter().enumerate() {
                let cc = choice[v][c][pos];
                if cc == c {
                    if let Some(&i) = pair_edge.get(&(v, w)) {
                        if g.edges[i].color == c {
                            witness.edges.insert(i);
                        }
                    }
                }
                stack.push((w, cc));
            }
        }
    }
    let solved = Solved::new(optimum, witness);
    debug_assert_eq!(solved.witness.len(), solved.optimum);
    debug_assert_eq!(is_stable(g, &solved.witness), Ok(true));
    Ok(solved)
}

/// Base classes the deletion wrapper can hand residual instances to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualClass {
    Forest,
    TwoColors,
}

/// Exact solve when deleting a known edge set lands in a polynomial class:
/// branches over every stable subset of the deletion set, prunes the
/// residual graph of edges conflicting with the kept subset, and hands the
/// rest to the class solver.
pub fn solve_deletion_wrapper(
    inst: &CCInstance,
    removable: &BTreeSet<usize>,
    class: ResidualClass,
) -> Result<Solved, TreeDpError> {
    let g = &inst.graph;
    for &i in removable {
        if i >= g.m() {
            return Err(TreeDpError::EdgeIndexOutOfRange { index: i });
        }
    }
    let residual_ids: Vec<usize> = (0..g.m()).filter(|i| !removable.contains(i)).collect();
    check_class(g, &residual_ids, class)?;

    let removable_ids: Vec<usize> = removable.iter().copied().collect();
    if removable_ids.len() > 25 {
        return Err(TreeDpError::DeletionSetTooLarge {
            size: removable_ids.len(),
        });
    }
    let mut best: Option<Solved> = None;
    for mask in 0u64..(1 << removable_ids.len()) {
        let kept: Vec<usize> = (0..removable_ids.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| removable_ids[i])
            .collect();
        // The kept subset must be internally stable.
        let internally_stable = kept.iter().enumerate().all(|(a, &i)| {
            kept[a + 1..].iter().all(|&j| {
                !g.edges[i].intersects(&g.edges[j]) || g.edges[i].color == g.edges[j].color
            })
        });
        if !internally_stable {
            continue;
        }
        // Drop residual edges conflicting with the kept subset.
        let surviving: Vec<usize> = residual_ids
            .iter()
            .copied()
            .filter(|&i| {
                kept.iter().all(|&j| {
                    !g.edges[i].intersects(&g.edges[j]) || g.edges[i].color == g.edges[j].color
                })
            })
            .collect();
        let sub_edges: Vec<Edge> = surviving.iter().map(|&i| g.edges[i].clone()).collect();
        let sub = CCInstance::new(
            ColoredHypergraph::with_edges(g.n, g.colors, sub_edges),
            inst.k.saturating_sub(kept.len()),
        );
        let solved = match class {
            ResidualClass::Forest => forest_dp(&sub)?,
            ResidualClass::TwoColors => {
                solve_two_colors(&sub).map_err(|_| TreeDpError::ResidualNotInClass)?
            }
        };
        let mut witness: StableSet = kept.iter().copied().collect();
        for &local in &solved.witness.edges {
            witness.edges.insert(surviving[local]);
        }
        let total = kept.len() + solved.optimum;
        if best.as_ref().is_none_or(|b| total > b.optimum) {
            best = Some(Solved::new(total, witness));
        }
    }
    let solved = best.expect("empty subset is always feasible");
    debug_assert_eq!(is_stable(g, &solved.witness), Ok(true));
    debug_assert_eq!(solved.witness.len(), solved.optimum);
    Ok(solved)
}

fn check_class(
    g: &ColoredHypergraph,
    edge_ids: &[usize],
    class: ResidualClass,
) -> Result<(), TreeDpError> {
    match class {
        ResidualClass::Forest => {
            if edge_ids.iter().any(|&i| g.edges[i].vertices.len() != 2) {
                return Err(TreeDpError::NotAGraph);
            }
            let mut dsu = DisjointSets::new(g.n);
            for &i in edge_ids {
                let e = &g.edges[i];
                if !dsu.union(e.vertices[0], e.vertices[1]) {
                    return Err(TreeDpError::ResidualNotInClass);
                }
            }
            Ok(())
        }
        ResidualClass::TwoColors => {
            let present: BTreeSet<usize> = edge_ids.iter().map(|&i| g.edges[i].color).collect();
            if present.len() > 2 {
                return Err(TreeDpError::ResidualNotInClass);
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_instance, RandomParams};
    use crate::oracle;
    use rand::{Rng, SeedableRng};

    fn triangle_aab() -> CCInstance {
        CCInstance::new(
            ColoredHypergraph::with_edges(
                3,
                2,
                alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 0), Edge::pair(0, 2, 1)],
            ),
            2,
        )
    }

    #[test]
    fn tree_input_has_zero_width() {
        let g = ColoredHypergraph::with_edges(
            4,
            2,
            alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 1), Edge::pair(1, 3, 0)],
        );
        let layout = spanning_tree_search(&g, 4).unwrap();
        assert_eq!(local_feedback_number(&g, &layout), 0);
    }

    #[test]
    fn cycle_has_width_one() {
        let edges: Vec<Edge> = (0..5).map(|i| Edge::pair(i, (i + 1) % 5, 0)).collect();
        let g = ColoredHypergraph::with_edges(5, 1, edges);
        let layout = spanning_tree_search(&g, 4).unwrap();
        assert_eq!(local_feedback_number(&g, &layout), 1);
    }

    #[test]
    fn reported_width_matches_direct_recount() {
        // Recount the per-vertex path loads directly from the definition.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for seed in 0..40u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..9),
                    m: rng.random_range(0..12),
                    colors: 2,
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = &inst.graph;
            let layout = TreeLayout::bfs_forest(g);
            let counts = local_feedback_counts(g, &layout);
            let tree_pairs = tree_pair_set(&layout);
            let mut direct = alloc::vec![0usize; g.n];
            for e in &g.edges {
                let (u, w) = (e.vertices[0], e.vertices[1]);
                if tree_pairs.contains(&(u.min(w), u.max(w))) {
                    continue;
                }
                // Vertices on the tree path.
                let mut on_path: BTreeSet<usize> = BTreeSet::new();
                for (a, b) in tree_path_pairs(&layout, u, w) {
                    on_path.insert(a);
                    on_path.insert(b);
                }
                for &x in &on_path {
                    direct[x] += 1;
                }
            }
            assert_eq!(counts, direct, "seed {seed}");
        }
    }

    #[test]
    fn dp_on_triangle_with_path_tree() {
        let inst = triangle_aab();
        let layout = TreeLayout {
            parent: alloc::vec![None, Some(0), Some(1)],
            roots: alloc::vec![0],
        };
        let solved = solve_secw_dp(&inst, &layout).unwrap();
        assert_eq!(solved.optimum, 2);
    }

    #[test]
    fn dp_matches_forest_dp_on_trees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        for seed in 0..40u64 {
            let n = rng.random_range(2..9usize);
            let colors = rng.random_range(1..4usize);
            let edges: Vec<Edge> = (1..n)
                .map(|v| {
                    Edge::pair(v, rng.random_range(0..v), rng.random_range(0..colors))
                })
                .collect();
            let g = ColoredHypergraph::with_edges(n, colors, edges);
            let inst = CCInstance::new(g, 1);
            let by_forest = forest_dp(&inst).unwrap();
            let layout = TreeLayout::bfs_forest(&inst.graph);
            let by_dp = solve_secw_dp(&inst, &layout).unwrap();
            assert_eq!(by_forest.optimum, by_dp.optimum, "seed {seed}");
        }
    }

    #[test]
    fn dp_matches_oracle_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for seed in 0..100u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..9),
                    m: rng.random_range(0..12),
                    colors: rng.random_range(1..4),
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let expect = oracle::max_stable(&inst.graph).unwrap().optimum;
            let layout = spanning_tree_search(&inst.graph, 3).unwrap();
            let solved = solve_secw_dp(&inst, &layout).unwrap();
            solved.assert_consistent(&inst.graph);
            assert_eq!(solved.optimum, expect, "seed {seed}");
        }
    }

    #[test]
    fn dp_is_layout_independent() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        for seed in 0..30u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(3..8),
                    m: rng.random_range(2..11),
                    colors: rng.random_range(1..4),
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let a = solve_secw_dp(&inst, &TreeLayout::bfs_forest(&inst.graph)).unwrap();
            let b = solve_secw_dp(&inst, &spanning_tree_search(&inst.graph, 5).unwrap()).unwrap();
            assert_eq!(a.optimum, b.optimum, "seed {seed}");
        }
    }

    #[test]
    fn forest_dp_examples() {
        // Single edge.
        let single = CCInstance::new(
            ColoredHypergraph::with_edges(2, 1, alloc::vec![Edge::pair(0, 1, 0)]),
            1,
        );
        assert_eq!(forest_dp(&single).unwrap().optimum, 1);
        // Star with colors a,a,b keeps the majority color.
        let star = CCInstance::new(
            ColoredHypergraph::with_edges(
                4,
                2,
                alloc::vec![Edge::pair(0, 1, 0), Edge::pair(0, 2, 0), Edge::pair(0, 3, 1)],
            ),
            2,
        );
        assert_eq!(forest_dp(&star).unwrap().optimum, 2);
    }

    #[test]
    fn forest_dp_rejects_cycles() {
        let inst = triangle_aab();
        assert_eq!(forest_dp(&inst), Err(TreeDpError::NotAForest));
    }

    #[test]
    fn forest_dp_matches_oracle_on_random_forests() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        for seed in 0..60u64 {
            let n = rng.random_range(2..10usize);
            let colors = rng.random_range(1..4usize);
            // Random forest: attach each vertex to a random earlier one,
            // skipping some to create several trees.
            let mut edges = Vec::new();
            for v in 1..n {
                if rng.random_range(0..4u32) != 0 {
                    edges.push(Edge::pair(
                        v,
                        rng.random_range(0..v),
                        rng.random_range(0..colors),
                    ));
                }
            }
            let g = ColoredHypergraph::with_edges(n, colors, edges);
            let inst = CCInstance::new(g, 1);
            let expect = oracle::max_stable(&inst.graph).unwrap().optimum;
            assert_eq!(forest_dp(&inst).unwrap().optimum, expect, "seed {seed}");
        }
    }

    #[test]
    fn wrapper_with_empty_deletion_set_is_class_solver() {
        let g = ColoredHypergraph::with_edges(
            4,
            2,
            alloc::vec![Edge::pair(0, 1, 0), Edge::pair(1, 2, 1), Edge::pair(2, 3, 0)],
        );
        let inst = CCInstance::new(g, 2);
        let direct = forest_dp(&inst).unwrap();
        let wrapped =
            solve_deletion_wrapper(&inst, &BTreeSet::new(), ResidualClass::Forest).unwrap();
        assert_eq!(direct.optimum, wrapped.optimum);
    }

    #[test]
    fn wrapper_on_unicyclic_graph() {
        let inst = triangle_aab();
        // Remove the closing chord; the rest is a path.
        let removable: BTreeSet<usize> = [2usize].into_iter().collect();
        let solved = solve_deletion_wrapper(&inst, &removable, ResidualClass::Forest).unwrap();
        let expect = oracle::max_stable(&inst.graph).unwrap().optimum;
        assert_eq!(solved.optimum, expect);
    }

    #[test]
    fn wrapper_matches_oracle_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        for seed in 0..60u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..8),
                    m: rng.random_range(0..11),
                    colors: rng.random_range(1..4),
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = &inst.graph;
            // Deletion set: all edges outside a spanning forest.
            let mut dsu = DisjointSets::new(g.n);
            let mut removable: BTreeSet<usize> = BTreeSet::new();
            for (i, e) in g.edges.iter().enumerate() {
                if !dsu.union(e.vertices[0], e.vertices[1]) {
                    removable.insert(i);
                }
            }
            if removable.len() > 10 {
                continue;
            }
            let solved =
                solve_deletion_wrapper(&inst, &removable, ResidualClass::Forest).unwrap();
            let expect = oracle::max_stable(g).unwrap().optimum;
            assert_eq!(solved.optimum, expect, "seed {seed}");
        }
    }

    #[test]
    fn wrapper_two_color_class() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(89);
        for seed in 0..40u64 {
            let inst = random_instance(
                &RandomParams {
                    n: rng.random_range(2..8),
                    m: rng.random_range(0..10),
                    colors: 3,
                    order: 2,
                    planted: None,
                },
                seed,
            );
            let g = &inst.graph;
            // Delete everything that is not one of the two lowest colors.
            let removable: BTreeSet<usize> = g
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.color >= 2)
                .map(|(i, _)| i)
                .collect();
            if removable.len() > 10 {
                continue;
            }
            let solved =
                solve_deletion_wrapper(&inst, &removable, ResidualClass::TwoColors).unwrap();
            let expect = oracle::max_stable(g).unwrap().optimum;
            assert_eq!(solved.optimum, expect, "seed {seed}");
        }
    }
}
