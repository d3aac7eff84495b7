//! Instance model: colored (hyper)graphs, edges, degree profiles.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

/// Vertex ids are dense integers `0..n`.
pub type VertexId = usize;
/// Color ids are dense integers `0..colors`. Color `0` doubles as the
/// default color assigned to vertices not touched by a solution.
pub type ColorId = usize;

/// The default vertex color.
pub const BOTTOM: ColorId = 0;

/// A single colored (hyper)edge: a set of distinct vertices plus a color.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    /// Vertex ids, kept sorted. Must be nonempty and duplicate-free.
    pub vertices: Vec<VertexId>,
    pub color: ColorId,
}

impl Edge {
    /// Creates an edge; vertices are sorted into canonical order.
    pub fn new(mut vertices: Vec<VertexId>, color: ColorId) -> Self {
        vertices.sort_unstable();
        Edge { vertices, color }
    }

    pub fn pair(u: VertexId, v: VertexId, color: ColorId) -> Self {
        Edge::new(alloc::vec![u, v], color)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn intersects(&self, other: &Edge) -> bool {
        // Both sides are sorted; merge-scan.
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// An edge-colored (hyper)graph on vertex ids `0..n` with color ids
/// `0..colors`. Edge order is significant: solutions and solvers refer to
/// edges by their index in `edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredHypergraph {
    pub n: usize,
    pub colors: usize,
    pub edges: Vec<Edge>,
}

/// First violated structural invariant, reported by [`ColoredHypergraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidInstance {
    EmptyEdge { edge: usize },
    DuplicateVertex { edge: usize, vertex: VertexId },
    VertexOutOfRange { edge: usize, vertex: VertexId },
    ColorOutOfRange { edge: usize, color: ColorId },
}

impl fmt::Display for InvalidInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidInstance::EmptyEdge { edge } => write!(f, "edge {edge} is empty"),
            InvalidInstance::DuplicateVertex { edge, vertex } => {
                write!(f, "edge {edge} contains duplicate vertex {vertex}")
            }
            InvalidInstance::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} references vertex {vertex} out of range")
            }
            InvalidInstance::ColorOutOfRange { edge, color } => {
                write!(f, "edge {edge} has color {color} out of range")
            }
        }
    }
}

impl core::error::Error for InvalidInstance {}

impl ColoredHypergraph {
    pub fn new(n: usize, colors: usize) -> Self {
        ColoredHypergraph {
            n,
            colors,
            edges: Vec::new(),
        }
    }

    pub fn with_edges(n: usize, colors: usize, edges: Vec<Edge>) -> Self {
        ColoredHypergraph { n, colors, edges }
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Maximum edge cardinality (0 for an edgeless instance).
    pub fn order(&self) -> usize {
        self.edges.iter().map(|e| e.vertices.len()).max().unwrap_or(0)
    }

    /// True iff every edge has exactly two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.vertices.len() == 2)
    }

    /// Checks all structural invariants, reporting the first violation:
    /// edges nonempty, vertex ids distinct and `< n`, colors `< colors`.
    pub fn validate(&self) -> Result<(), InvalidInstance> {
        for (idx, e) in self.edges.iter().enumerate() {
            if e.vertices.is_empty() {
                return Err(InvalidInstance::EmptyEdge { edge: idx });
            }
            for w in e.vertices.windows(2) {
                if w[0] == w[1] {
                    return Err(InvalidInstance::DuplicateVertex {
                        edge: idx,
                        vertex: w[0],
                    });
                }
            }
            if let Some(&v) = e.vertices.iter().find(|&&v| v >= self.n) {
                return Err(InvalidInstance::VertexOutOfRange { edge: idx, vertex: v });
            }
            if e.color >= self.colors {
                return Err(InvalidInstance::ColorOutOfRange {
                    edge: idx,
                    color: e.color,
                });
            }
        }
        Ok(())
    }

    /// Per-vertex lists of incident edge indices.
    pub fn incidence_lists(&self) -> Vec<Vec<usize>> {
        let mut inc = alloc::vec![Vec::new(); self.n];
        for (idx, e) in self.edges.iter().enumerate() {
            for &v in &e.vertices {
                inc[v].push(idx);
            }
        }
        inc
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        DegreeProfile::new(self)
    }

    /// Connected components (on vertices), each as a sorted vertex list.
    /// Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut dsu = DisjointSets::new(self.n);
        for e in &self.edges {
            for w in e.vertices.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        let mut groups: alloc::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n {
            groups.entry(dsu.find(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }
}

/// Degree statistics per vertex: total degree, per-color degree and
/// chromatic degree (number of distinct incident colors).
#[derive(Clone, Debug)]
pub struct DegreeProfile {
    deg: Vec<usize>,
    /// Sorted `(color, count)` pairs per vertex.
    color_deg: Vec<Vec<(ColorId, usize)>>,
}

impl DegreeProfile {
    pub fn new(g: &ColoredHypergraph) -> Self {
        let mut deg = alloc::vec![0usize; g.n];
        let mut maps: Vec<alloc::collections::BTreeMap<ColorId, usize>> =
            alloc::vec![Default::default(); g.n];
        for e in &g.edges {
            for &v in &e.vertices {
                deg[v] += 1;
                *maps[v].entry(e.color).or_insert(0) += 1;
            }
        }
        let color_deg = maps
            .into_iter()
            .map(|m| m.into_iter().collect::<Vec<_>>())
            .collect();
        DegreeProfile { deg, color_deg }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.deg[v]
    }

    pub fn color_degree(&self, v: VertexId, c: ColorId) -> usize {
        self.color_deg[v]
            .binary_search_by_key(&c, |&(c, _)| c)
            .map(|i| self.color_deg[v][i].1)
            .unwrap_or(0)
    }

    /// Number of distinct colors incident to `v`.
    pub fn chromatic_degree(&self, v: VertexId) -> usize {
        self.color_deg[v].len()
    }

    /// Sorted `(color, count)` pairs for `v`.
    pub fn incident_colors(&self, v: VertexId) -> &[(ColorId, usize)] {
        &self.color_deg[v]
    }

    /// Largest per-color degree at `v` (0 if isolated).
    pub fn max_color_degree(&self, v: VertexId) -> usize {
        self.color_deg[v].iter().map(|&(_, k)| k).max().unwrap_or(0)
    }
}

/// A solving target: the instance graph plus the requested number of stable
/// edges. `k > m` is permitted and trivially unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CCInstance {
    pub graph: ColoredHypergraph,
    pub k: usize,
}

impl CCInstance {
    pub fn new(graph: ColoredHypergraph, k: usize) -> Self {
        CCInstance { graph, k }
    }

    /// Permitted number of unstable edges, `m - k` (saturating at 0 when
    /// `k > m`, in which case the instance is a trivial no).
    pub fn slack(&self) -> usize {
        self.graph.m().saturating_sub(self.k)
    }
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false if both were already in the same set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Distinct colors appearing on edges containing both `u` and `v`.
/// For simple graphs this is at most one per vertex pair.
pub fn shared_edge_colors(g: &ColoredHypergraph, u: VertexId, v: VertexId) -> BTreeSet<ColorId> {
    g.edges
        .iter()
        .filter(|e| e.contains(u) && e.contains(v))
        .map(|e| e.color)
        .collect()
}
