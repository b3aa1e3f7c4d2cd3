//! Zero-sum Ramsey numbers `R(G, Z_k)` for small graphs, `k` in `{2, 3}`.

pub mod cache;
pub mod canon;
pub mod colouring;
pub mod embed;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod ramsey;
pub mod structure;
pub mod treegen;
pub mod verify;

pub use error::{Result, ZsrError};
pub use graph::{Graph, RootedTree};
