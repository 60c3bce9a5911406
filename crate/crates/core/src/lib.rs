//! Exclusivity graphs of graph-state stabilizer groups.
//!
//! Given a simple graph `G`, the stabilizer group of its graph state yields a
//! family of measurement events; their exclusivity graph `H(G)` is invariant
//! along the local-complementation (Kotzig) orbit of `G`. This crate builds
//! `H(G)`, certifies its independence number, Lovász number and fractional
//! packing number with exact arithmetic, and classifies orbits.

pub mod amplitudes;
pub mod bits;
pub mod boolean;
pub mod capacity;
pub mod classify;
pub mod cliques;
pub mod error;
pub mod game;
pub mod graph;
pub mod graph6;
pub mod hgraph;
pub mod lc;
pub mod orbit;
pub mod parameters;
pub mod pauli;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hgraph::{Event, EventGraph, RenderStyle};
pub use pauli::{Letter, PauliOperator, StabilizerGroup};
pub use scalar::ExactScalar;
