//! Connected components of undirected graphs through perturbations of the
//! adjacency matrix, and the graph traversals carried out by iterative
//! linear solvers.
//!
//! * [`graph`]: graphs, the edge-array portrait, edge-list I/O.
//! * [`generate`]: seeded generators.
//! * [`oracle`]: union-find and BFS ground truth.
//! * [`traversal`]: algebraic BFS, simple-iteration search (SIS) and
//!   Gauss–Seidel search (GSS), plus the all-components driver.
//! * [`exact`]: the exact perturbation test and its accuracy bounds.
//! * [`detlab`]: brute-force determinant identities on small graphs.
//! * [`bench`]: the benchmark harness.

pub mod bench;
pub mod detlab;
pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod traversal;

pub use error::{Error, Result};
pub use graph::{build_portrait, load_edge_list, write_edge_list, ComponentPartition, Graph, Portrait};
pub use params::MatrixParams;
pub use traversal::{components_via, DriverOptions, Strategy};
