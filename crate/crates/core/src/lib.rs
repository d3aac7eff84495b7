//! Exact algorithms for clustering edge-colored graphs and hypergraphs.
//!
//! The underlying optimization problem: given a (hyper)graph whose edges
//! carry colors, select as many edges as possible such that any two selected
//! edges sharing a vertex have the same color (a *stable* edge set).
//! Equivalently, color the vertices so that as many edges as possible agree
//! with all their endpoints.
//!
//! The crate provides
//! - the instance model and stability semantics ([`instance`], [`solution`]),
//! - a brute-force reference oracle ([`oracle`]),
//! - the conflict-graph route: maximum stable set via minimum vertex cover
//!   ([`conflict`]),
//! - data reduction to a small equivalent instance ([`kernel`]),
//! - a reduction to weighted exact cover ([`exact_cover`]),
//! - degree- and LP-based lower bounds with dual certificates ([`bounds`]),
//! - solvers parameterized above matching lower bounds ([`above_guarantee`]),
//! - dynamic programming over spanning-tree layouts ([`tree_dp`]),
//! - instance generators, including reductions from SAT, independent set and
//!   multicolored clique ([`generators`]).
//!
//! The crate is `no_std` (with `alloc`); all IO and file formats live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod above_guarantee;
pub mod bounds;
pub mod conflict;
pub mod exact_cover;
pub mod generators;
pub mod instance;
pub mod kernel;
pub mod matching;
pub mod oracle;
pub mod solution;
pub mod tree_dp;

pub use instance::{CCInstance, ColoredHypergraph, DegreeProfile, Edge, InvalidInstance};
pub use solution::{Solved, StableSet, VertexColoring};
