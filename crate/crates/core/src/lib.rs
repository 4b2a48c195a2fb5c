//! Solvers, exact oracles and checkers for flexible graph connectivity.
//!
//! Three problems share one labelled multigraph type: FGC (connectivity that
//! survives the loss of any unsafe edge), FVC (no unsafe cut vertex) and k-FGC
//! (any `k` unsafe edges may fail together).

mod dsu;

pub mod blocks;
pub mod connectivity;
pub mod driver;
pub mod ear;
pub mod error;
pub mod exact;
pub mod feasibility;
pub mod fgc;
pub mod fvc;
pub mod graph;
pub mod harness;
pub mod io;
pub mod kfgc;
pub mod par;

pub use driver::{solve_instance, SolveOptions};
pub use error::{Error, Result};
pub use feasibility::{check_fgc, check_fvc, check_kfgc, Instance, Problem, Solution};
pub use fgc::solve_fgc;
pub use fvc::solve_fvc;
pub use graph::{Edge, EdgeId, LabeledGraph, VertexId};
pub use kfgc::solve_kfgc;
