//! Text formats.
//!
//! Instance files (one item per line, `#` starts a comment):
//!
//! ```text
//! p cc <n> <m> <colors> <k>
//! e <color> <v1> ... <vd>
//! ```
//!
//! Solutions serialize as `s <size>` followed by `f <edge-index>` lines.
//! Tree layouts use `t <root>` and `p <vertex> <parent>` lines. CNF input
//! follows the usual DIMACS conventions, and partitioned graphs for the
//! clique generator use a `p mcc` header with `part` and `e` lines.

use std::fmt::Write as _;

use cc_core::exact_cover::WecInstance;
use cc_core::generators::{Cnf, PartitionedGraph, SimpleGraph};
use cc_core::instance::{CCInstance, ColoredHypergraph, Edge};
use cc_core::kernel::RuleApplication;
use cc_core::solution::StableSet;
use cc_core::tree_dp::TreeLayout;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("invalid instance: {0}")]
    Invalid(String),
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        message: message.into(),
    }
}

/// Significant lines with their 1-based numbers.
fn significant(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_number<T: core::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse::<T>()
        .map_err(|_| err(line, format!("malformed {what} `{token}`")))
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

pub fn parse_instance(text: &str) -> Result<CCInstance, ParseError> {
    let mut lines = significant(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader("p cc"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 6 || tokens[0] != "p" || tokens[1] != "cc" {
        return Err(err(hline, "expected `p cc <n> <m> <colors> <k>`"));
    }
    let n: usize = parse_number(hline, tokens[2], "vertex count")?;
    let m: usize = parse_number(hline, tokens[3], "edge count")?;
    let colors: usize = parse_number(hline, tokens[4], "color count")?;
    let k: usize = parse_number(hline, tokens[5], "target")?;

    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] != "e" {
            return Err(err(lineno, format!("unexpected line `{line}`")));
        }
        if tokens.len() < 3 {
            return Err(err(lineno, "edge needs a color and at least one vertex"));
        }
        let color: usize = parse_number(lineno, tokens[1], "color token")?;
        let vertices = tokens[2..]
            .iter()
            .map(|t| parse_number(lineno, t, "vertex id"))
            .collect::<Result<Vec<usize>, _>>()?;
        edges.push(Edge::new(vertices, color));
        if edges.len() > m {
            return Err(err(lineno, format!("more than {m} edge lines")));
        }
    }
    if edges.len() != m {
        return Err(ParseError::Invalid(format!(
            "header promises {m} edges, found {}",
            edges.len()
        )));
    }
    let graph = ColoredHypergraph::with_edges(n, colors, edges);
    graph
        .validate()
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(CCInstance::new(graph, k))
}

pub fn format_instance(inst: &CCInstance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    let _ = writeln!(out, "p cc {} {} {} {}", g.n, g.m(), g.colors, inst.k);
    for e in &g.edges {
        let _ = write!(out, "e {}", e.color);
        for v in &e.vertices {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

pub fn format_solution(set: &StableSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "s {}", set.len());
    for idx in &set.edges {
        let _ = writeln!(out, "f {idx}");
    }
    out
}

pub fn parse_solution(text: &str) -> Result<StableSet, ParseError> {
    let mut lines = significant(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader("s"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 || tokens[0] != "s" {
        return Err(err(hline, "expected `s <size>`"));
    }
    let size: usize = parse_number(hline, tokens[1], "size")?;
    let mut set = StableSet::empty();
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 || tokens[0] != "f" {
            return Err(err(lineno, format!("unexpected line `{line}`")));
        }
        set.edges.insert(parse_number(lineno, tokens[1], "edge index")?);
    }
    if set.len() != size {
        return Err(ParseError::Invalid(format!(
            "header promises {size} edges, found {}",
            set.len()
        )));
    }
    Ok(set)
}

// ---------------------------------------------------------------------------
// Weighted exact cover (debug output)
// ---------------------------------------------------------------------------

pub fn format_wec(wec: &WecInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p wec {} {} {} {}",
        wec.universe,
        wec.sets.len(),
        wec.cover_size,
        wec.weight_target
    );
    for set in &wec.sets {
        let _ = write!(out, "s {}", set.weight);
        for el in &set.elements {
            let _ = write!(out, " {el}");
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Tree layouts
// ---------------------------------------------------------------------------

pub fn format_tree(layout: &TreeLayout) -> String {
    let mut out = String::new();
    for root in &layout.roots {
        let _ = writeln!(out, "t {root}");
    }
    for (v, parent) in layout.parent.iter().enumerate() {
        if let Some(p) = parent {
            let _ = writeln!(out, "p {v} {p}");
        }
    }
    out
}

pub fn parse_tree(text: &str, n: usize) -> Result<TreeLayout, ParseError> {
    let mut parent = vec![None; n];
    let mut roots = Vec::new();
    for (lineno, line) in significant(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["t", root] => roots.push(parse_number(lineno, root, "root")?),
            ["p", v, p] => {
                let v: usize = parse_number(lineno, v, "vertex")?;
                if v >= n {
                    return Err(err(lineno, format!("vertex {v} out of range")));
                }
                parent[v] = Some(parse_number(lineno, p, "parent")?);
            }
            _ => return Err(err(lineno, format!("unexpected line `{line}`"))),
        }
    }
    let layout = TreeLayout { parent, roots };
    layout
        .validate(n)
        .map_err(|e| ParseError::Invalid(e.to_string()))?;
    Ok(layout)
}

// ---------------------------------------------------------------------------
// Kernelization log
// ---------------------------------------------------------------------------

pub fn format_kernel_log(log: &[RuleApplication]) -> String {
    let mut out = String::new();
    for entry in log {
        match entry {
            RuleApplication::Matching { size } => {
                let _ = writeln!(out, "rule matching size={size}");
            }
            RuleApplication::OneColor { color, count } => {
                let _ = writeln!(out, "rule one-color color={color} count={count}");
            }
            RuleApplication::ChromaticDegree {
                vertex,
                color,
                removed,
            } => {
                let _ = writeln!(
                    out,
                    "rule chromatic-degree vertex={vertex} color={color} removed={removed}"
                );
            }
            RuleApplication::MeetInMiddle {
                core_size,
                witness_size,
            } => {
                let _ = writeln!(
                    out,
                    "rule meet-in-middle core={core_size} witness={witness_size}"
                );
            }
            RuleApplication::IsolatedVertices { removed } => {
                let _ = writeln!(out, "rule isolated-vertices removed={removed}");
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Generator inputs
// ---------------------------------------------------------------------------

/// DIMACS CNF: `p cnf <vars> <clauses>` then clauses terminated by 0.
pub fn parse_dimacs(text: &str) -> Result<Cnf, ParseError> {
    let mut num_vars = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        if line.starts_with('p') {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 || tokens[1] != "cnf" {
                return Err(err(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            num_vars = Some(parse_number::<usize>(lineno, tokens[2], "variable count")?);
            continue;
        }
        for token in line.split_whitespace() {
            let lit: i32 = parse_number(lineno, token, "literal")?;
            if lit == 0 {
                clauses.push(core::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let num_vars = num_vars.ok_or(ParseError::MissingHeader("p cnf"))?;
    Ok(Cnf::new(num_vars, clauses))
}

/// Plain graph: `p graph <n> <m>` then `e <u> <v>` lines.
pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut lines = significant(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader("p graph"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "graph" {
        return Err(err(hline, "expected `p graph <n> <m>`"));
    }
    let n: usize = parse_number(hline, tokens[2], "vertex count")?;
    let m: usize = parse_number(hline, tokens[3], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["e", u, v] => edges.push((
                parse_number(lineno, u, "vertex")?,
                parse_number(lineno, v, "vertex")?,
            )),
            _ => return Err(err(lineno, format!("unexpected line `{line}`"))),
        }
    }
    if edges.len() != m {
        return Err(ParseError::Invalid(format!(
            "header promises {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(SimpleGraph { n, edges })
}

/// Partitioned graph: `p mcc <n> <m> <parts>`, `part <v...>` lines in part
/// order, then `e <u> <v>` lines.
pub fn parse_partitioned_graph(text: &str) -> Result<PartitionedGraph, ParseError> {
    let mut lines = significant(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader("p mcc"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5 || tokens[0] != "p" || tokens[1] != "mcc" {
        return Err(err(hline, "expected `p mcc <n> <m> <parts>`"));
    }
    let n: usize = parse_number(hline, tokens[2], "vertex count")?;
    let m: usize = parse_number(hline, tokens[3], "edge count")?;
    let s: usize = parse_number(hline, tokens[4], "part count")?;
    let mut parts = Vec::with_capacity(s);
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            Some(&"part") => {
                let vs = tokens[1..]
                    .iter()
                    .map(|t| parse_number(lineno, t, "vertex"))
                    .collect::<Result<Vec<usize>, _>>()?;
                parts.push(vs);
            }
            Some(&"e") if tokens.len() == 3 => edges.push((
                parse_number(lineno, tokens[1], "vertex")?,
                parse_number(lineno, tokens[2], "vertex")?,
            )),
            _ => return Err(err(lineno, format!("unexpected line `{line}`"))),
        }
    }
    if parts.len() != s || edges.len() != m {
        return Err(ParseError::Invalid(format!(
            "header promises {s} parts and {m} edges, found {} and {}",
            parts.len(),
            edges.len()
        )));
    }
    Ok(PartitionedGraph { n, parts, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_roundtrip_is_identity() {
        let text = "p cc 3 1 2 3\ne 0 0 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph.n, 3);
        assert_eq!(inst.k, 3);
        assert_eq!(format_instance(&inst), text);
    }

    #[test]
    fn hyperedge_line_parses() {
        let text = "p cc 4 2 3 1\n# comment\ne 2 0 1 2\ne 0 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.graph.order(), 3);
        assert_eq!(inst.graph.edges[1].vertices, vec![3]);
    }

    #[test]
    fn malformed_color_reports_line() {
        let text = "p cc 3 1 2 1\ne x 0 1\n";
        match parse_instance(text) {
            Err(ParseError::Line { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn edge_count_mismatch_rejected() {
        assert!(matches!(
            parse_instance("p cc 3 2 2 1\ne 0 0 1\n"),
            Err(ParseError::Invalid(_))
        ));
    }

    #[test]
    fn invalid_instance_rejected() {
        assert!(matches!(
            parse_instance("p cc 2 1 1 1\ne 5 0 1\n"),
            Err(ParseError::Invalid(_))
        ));
    }

    #[test]
    fn solution_roundtrip() {
        let set = StableSet::from_indices([0, 2, 5]);
        let text = format_solution(&set);
        assert_eq!(parse_solution(&text).unwrap(), set);
    }

    #[test]
    fn wec_serialization_shape() {
        use cc_core::exact_cover::{WecInstance, WecSet};
        let wec = WecInstance {
            universe: 4,
            sets: vec![
                WecSet {
                    elements: vec![0, 2],
                    weight: 3,
                },
                WecSet {
                    elements: vec![1],
                    weight: 0,
                },
            ],
            cover_size: 3,
            weight_target: 2,
        };
        assert_eq!(format_wec(&wec), "p wec 4 2 3 2\ns 3 0 2\ns 0 1\n");
    }

    #[test]
    fn tree_roundtrip() {
        let layout = TreeLayout {
            parent: vec![None, Some(0), Some(1), None],
            roots: vec![0, 3],
        };
        let text = format_tree(&layout);
        assert_eq!(parse_tree(&text, 4).unwrap(), layout);
    }

    #[test]
    fn dimacs_parses_multiline_clauses() {
        let cnf = parse_dimacs("c header\np cnf 3 2\n1 -2 0\n2\n3 0\n").unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![2, 3]]);
    }

    #[test]
    fn partitioned_graph_parses() {
        let pg = parse_partitioned_graph("p mcc 2 1 2\npart 0\npart 1\ne 0 1\n").unwrap();
        assert_eq!(pg.parts.len(), 2);
        assert_eq!(pg.edges, vec![(0, 1)]);
    }
}
