//! Backbone colouring toolkit for chordal graphs.
//!
//! A `q`-backbone `k`-colouring of a graph pair `(G, H)`, where `H` is a
//! spanning subgraph of `G`, is a proper `k`-colouring of `G` whose
//! colours differ by at least `q` across every edge of `H`. This crate
//! provides:
//!
//! * the instance model, file formats and a universal verifier,
//! * chordal structure recognition (elimination orderings, maximal
//!   cliques, clique trees and paths, smooth tree decompositions),
//! * three constructive colouring algorithms for gap 2 with proven span
//!   guarantees, plus a dispatcher returning the best verified result,
//! * exact branch-and-bound solvers and brute-force oracles,
//! * exact maximum-average-degree computation via flows,
//! * seeded instance generators and backbone extractors.

pub mod algorithms;
pub mod chordal;
pub mod colouring;
pub mod decomp;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod instance;
pub mod io;
pub mod mad;

pub use colouring::{verify_backbone_colouring, verify_circular_colouring, Colouring};
pub use graph::Graph;
pub use instance::BackboneInstance;

// The guide chapters double as doc-tests so the book stays in sync with
// the API.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(instances, "../../../book/src/instances.md");
    chapter!(chordal_structure, "../../../book/src/chordal-structure.md");
    chapter!(algorithms, "../../../book/src/algorithms.md");
    chapter!(exact_solvers, "../../../book/src/exact-solvers.md");
    chapter!(generators, "../../../book/src/generators.md");
}
