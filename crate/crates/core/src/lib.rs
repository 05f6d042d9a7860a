//! Vertex covers whose induced subgraph is highly connected.
//!
//! The crate provides exact FPT solvers for the `p`-vertex-connected and
//! `p`-edge-connected vertex cover problems, a `(1 + eps)`-approximate
//! kernelization shared by both, a `2(p + 1)`-approximation for the edge variant
//! built on Gomory-Hu trees, the connectivity and linear-matroid machinery these
//! need, brute-force oracles, and instance generators.

pub mod error;
pub mod graph;
pub mod io;
pub mod flow;
pub mod connectivity;
pub mod gomory_hu;
pub mod blocks;
pub mod approx;
pub mod oracle;
pub mod kernel;
pub mod fpt_pcvc;
pub mod matroid;
pub mod fpt_pecvc;
pub mod instgen;

pub use connectivity::Variant;
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
