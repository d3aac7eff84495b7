//! Matchings: greedy maximal, exact maximum (blossom), bipartite matching
//! with König covers, and induced matchings.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::instance::{ColoredHypergraph, VertexId};

/// A matching in the instance graph, as edge indices. `induced` records
/// whether the set was constructed or verified as an induced matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingInfo {
    pub edge_indices: Vec<usize>,
    pub induced: bool,
}

impl MatchingInfo {
    pub fn size(&self) -> usize {
        self.edge_indices.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingError {
    NotAGraph,
    TooManyEdges { m: usize, limit: usize },
    NotDisjoint { first: usize, second: usize },
    NotInduced { first: usize, second: usize, via: usize },
    EdgeIndexOutOfRange { index: usize },
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingError::NotAGraph => write!(f, "operation requires all edges to be pairs"),
            MatchingError::TooManyEdges { m, limit } => {
                write!(f, "{m} edges exceed exact-search limit {limit}")
            }
            MatchingError::NotDisjoint { first, second } => {
                write!(f, "edges {first} and {second} share a vertex")
            }
            MatchingError::NotInduced { first, second, via } => {
                write!(f, "edge {via} links matching edges {first} and {second}")
            }
            MatchingError::EdgeIndexOutOfRange { index } => {
                write!(f, "edge index {index} out of range")
            }
        }
    }
}

impl core::error::Error for MatchingError {}

/// Greedy maximal matching: scans edges in index order, taking each edge
/// disjoint from the ones taken so far. Works for any edge cardinality.
pub fn greedy_maximal_matching(g: &ColoredHypergraph) -> MatchingInfo {
    let mut taken: Vec<usize> = Vec::new();
    let mut used = alloc::vec![false; g.n];
    for (idx, e) in g.edges.iter().enumerate() {
        if e.vertices.iter().all(|&v| !used[v]) {
            for &v in &e.vertices {
                used[v] = true;
            }
            taken.push(idx);
        }
    }
    MatchingInfo {
        edge_indices: taken,
        induced: false,
    }
}

/// Exact maximum matching via augmenting paths with blossom contraction.
/// Requires a graph (every edge a pair); parallel edges are collapsed.
pub fn maximum_matching(g: &ColoredHypergraph) -> Result<MatchingInfo, MatchingError> {
    if !g.is_graph() {
        return Err(MatchingError::NotAGraph);
    }
    let mut adj = alloc::vec![Vec::new(); g.n];
    for e in &g.edges {
        let (u, v) = (e.vertices[0], e.vertices[1]);
        adj[u].push(v);
        adj[v].push(u);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mate = blossom_matching(g.n, &adj);

    // Map matched vertex pairs back to the lowest edge index realizing them.
    let mut edge_indices = Vec::new();
    for u in 0..g.n {
        if let Some(v) = mate[u] {
            if u < v {
                let idx = g
                    .edges
                    .iter()
                    .position(|e| e.vertices == [u, v])
                    .expect("matched pair must be an edge");
                edge_indices.push(idx);
            }
        }
    }
    edge_indices.sort_unstable();
    Ok(MatchingInfo {
        edge_indices,
        induced: false,
    })
}

/// Maximum cardinality matching on an adjacency-list graph; returns the
/// mate of each vertex. Standard blossom contraction over BFS forests.
pub fn blossom_matching(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut mate = alloc::vec![NONE; n];

    // Cheap greedy initialization saves augmentation rounds.
    for v in 0..n {
        if mate[v] == NONE {
            for &u in &adj[v] {
                if mate[u] == NONE && u != v {
                    mate[v] = u;
                    mate[u] = v;
                    break;
                }
            }
        }
    }

    let mut parent = alloc::vec![NONE; n];
    let mut base = alloc::vec![0usize; n];
    let mut queue: Vec<usize> = Vec::new();
    let mut used = alloc::vec![false; n];
    let mut blossom = alloc::vec![false; n];

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        // BFS for an augmenting path from `root`.
        for v in 0..n {
            parent[v] = NONE;
            base[v] = v;
            used[v] = false;
        }
        used[root] = true;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        let mut finish = NONE;

        'bfs: while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &to in &adj[v] {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                    // Found a blossom; contract it.
                    let curbase = lca(&mate, &parent, &base, v, to);
                    for f in blossom.iter_mut() {
                        *f = false;
                    }
                    mark_path(&mate, &mut parent, &base, &mut blossom, v, curbase, to);
                    mark_path(&mate, &mut parent, &base, &mut blossom, to, curbase, v);
                    for i in 0..n {
                        if blossom[base[i]] {
                            base[i] = curbase;
                            if !used[i] {
                                used[i] = true;
                                queue.push(i);
                            }
                        }
                    }
                } else if parent[to] == NONE {
                    parent[to] = v;
                    if mate[to] == NONE {
                        finish = to;
                        break 'bfs;
                    }
                    used[mate[to]] = true;
                    queue.push(mate[to]);
                }
            }
        }

        if finish != NONE {
            // Augment along the discovered path.
            let mut v = finish;
            while v != NONE {
                let pv = parent[v];
                let ppv = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = ppv;
            }
        }
    }

    mate.into_iter()
        .map(|x| if x == NONE { None } else { Some(x) })
        .collect()
}

const NONE: usize = usize::MAX;

fn lca(mate: &[usize], parent: &[usize], base: &[usize], mut a: usize, mut b: usize) -> usize {
    let mut used_path = BTreeSet::new();
    loop {
        a = base[a];
        used_path.insert(a);
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if used_path.contains(&b) {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    mate: &[usize],
    parent: &mut [usize],
    base: &[usize],
    blossom: &mut [bool],
    mut v: usize,
    curbase: usize,
    mut child: usize,
) {
    while base[v] != curbase {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// True iff the given edge indices form an induced matching: members are
/// pairwise disjoint and no edge of the graph intersects two distinct
/// members. The definition applies unchanged to hypergraphs.
pub fn check_induced(g: &ColoredHypergraph, members: &[usize]) -> Result<(), MatchingError> {
    for &idx in members {
        if idx >= g.m() {
            return Err(MatchingError::EdgeIndexOutOfRange { index: idx });
        }
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.edges[a].intersects(&g.edges[b]) {
                return Err(MatchingError::NotDisjoint { first: a, second: b });
            }
        }
    }
    for (h, e) in g.edges.iter().enumerate() {
        let mut touching = members.iter().filter(|&&m| e.intersects(&g.edges[m]));
        if let (Some(&a), Some(&b)) = (touching.next(), touching.next()) {
            return Err(MatchingError::NotInduced {
                first: a,
                second: b,
                via: h,
            });
        }
    }
    Ok(())
}

/// Validates a user-provided induced matching.
pub fn provided_induced_matching(
    g: &ColoredHypergraph,
    members: Vec<usize>,
) -> Result<MatchingInfo, MatchingError> {
    check_induced(g, &members)?;
    Ok(MatchingInfo {
        edge_indices: members,
        induced: true,
    })
}

/// Greedy maximal induced matching: scans edges in index order and keeps
/// each edge whose addition preserves the induced property.
pub fn greedy_induced_matching(g: &ColoredHypergraph) -> MatchingInfo {
    let mut members: Vec<usize> = Vec::new();
    for idx in 0..g.m() {
        members.push(idx);
        if check_induced(g, &members).is_err() {
            members.pop();
        }
    }
    MatchingInfo {
        edge_indices: members,
        induced: true,
    }
}

/// Exact maximum induced matching by branching; limited to small edge
/// counts (finding one is hard in general).
pub fn maximum_induced_matching(
    g: &ColoredHypergraph,
    max_m: usize,
) -> Result<MatchingInfo, MatchingError> {
    let m = g.m();
    if m > max_m {
        return Err(MatchingError::TooManyEdges { m, limit: max_m });
    }
    // conflict[a] = edges that can never join a in an induced matching.
    let mut conflict = alloc::vec![BTreeSet::new(); m];
    for a in 0..m {
        for b in a + 1..m {
            if check_induced(g, &[a, b]).is_err() {
                conflict[a].insert(b);
                conflict[b].insert(a);
            }
        }
    }
    let mut best: Vec<usize> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn branch(
        idx: usize,
        m: usize,
        conflict: &[BTreeSet<usize>],
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
    ) {
        if chosen.len() + (m - idx) <= best.len() {
            return;
        }
        if idx == m {
            if chosen.len() > best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.iter().all(|&c| !conflict[c].contains(&idx)) {
            chosen.push(idx);
            branch(idx + 1, m, conflict, chosen, best);
            chosen.pop();
        }
        branch(idx + 1, m, conflict, chosen, best);
    }
    branch(0, m, &conflict, &mut chosen, &mut best);
    debug_assert!(check_induced(g, &best).is_ok());
    Ok(MatchingInfo {
        edge_indices: best,
        induced: true,
    })
}

/// A bipartite graph given by adjacency from left vertices to right ones.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

/// Maximum bipartite matching (Hopcroft-Karp). Returns the size and the
/// partner arrays for both sides.
pub fn bipartite_matching(b: &Bipartite) -> (usize, Vec<Option<usize>>, Vec<Option<usize>>) {
    let mut match_left: Vec<Option<usize>> = alloc::vec![None; b.left];
    let mut match_right: Vec<Option<usize>> = alloc::vec![None; b.right];
    let mut size = 0;

    loop {
        // BFS layers from unmatched left vertices.
        let mut dist = alloc::vec![usize::MAX; b.left];
        let mut queue: Vec<usize> = Vec::new();
        for u in 0..b.left {
            if match_left[u].is_none() {
                dist[u] = 0;
                queue.push(u);
            }
        }
        let mut head = 0;
        let mut reachable_free = false;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &v in &b.adj[u] {
                match match_right[v] {
                    None => reachable_free = true,
                    Some(w) => {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push(w);
                        }
                    }
                }
            }
        }
        if !reachable_free {
            break;
        }
        // DFS augmentation along layered paths.
        fn try_augment(
            u: usize,
            b: &Bipartite,
            dist: &mut [usize],
            match_left: &mut [Option<usize>],
            match_right: &mut [Option<usize>],
        ) -> bool {
            for i in 0..b.adj[u].len() {
                let v = b.adj[u][i];
                match match_right[v] {
                    None => {
                        match_left[u] = Some(v);
                        match_right[v] = Some(u);
                        return true;
                    }
                    Some(w) => {
                        if dist[w] == dist[u] + 1
                            && try_augment(w, b, dist, match_left, match_right)
                        {
                            match_left[u] = Some(v);
                            match_right[v] = Some(u);
                            return true;
                        }
                    }
                }
            }
            dist[u] = usize::MAX;
            false
        }
        for u in 0..b.left {
            if match_left[u].is_none()
                && dist[u] == 0
                && try_augment(u, b, &mut dist, &mut match_left, &mut match_right)
            {
                size += 1;
            }
        }
    }

    (size, match_left, match_right)
}

/// Minimum vertex cover of a bipartite graph from a maximum matching
/// (alternating reachability from unmatched left vertices).
pub fn koenig_cover(
    b: &Bipartite,
    match_left: &[Option<usize>],
    match_right: &[Option<usize>],
) -> (Vec<bool>, Vec<bool>) {
    let mut visited_left = alloc::vec![false; b.left];
    let mut visited_right = alloc::vec![false; b.right];
    let mut stack: Vec<usize> = (0..b.left).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        visited_left[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &b.adj[u] {
            if Some(v) == match_left[u] || visited_right[v] {
                continue;
            }
            visited_right[v] = true;
            if let Some(w) = match_right[v] {
                if !visited_left[w] {
                    visited_left[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let cover_left: Vec<bool> = visited_left.iter().map(|&z| !z).collect();
    let cover_right = visited_right;
    (cover_left, cover_right)
}

/// Exhaustive maximum matching over vertex pairs, for cross-checking the
/// blossom search on tiny graphs.
pub fn maximum_matching_bruteforce(n: usize, pairs: &[(VertexId, VertexId)]) -> usize {
    fn rec(idx: usize, pairs: &[(usize, usize)], used: &mut [bool]) -> usize {
        if idx == pairs.len() {
            return 0;
        }
        let mut best = rec(idx + 1, pairs, used);
        let (u, v) = pairs[idx];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            best = best.max(1 + rec(idx + 1, pairs, used));
            used[u] = false;
            used[v] = false;
        }
        best
    }
    let mut used = alloc::vec![false; n];
    rec(0, pairs, &mut used)
}
