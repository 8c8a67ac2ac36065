//! Shared fixtures for the criterion benchmarks.

use kneser_core::kneser::{kneser_graph, InducedGraph};

pub fn kneser_fixture(n: u32, r: u32) -> InducedGraph {
    kneser_graph(n, r).expect("valid benchmark instance")
}
