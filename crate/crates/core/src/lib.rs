//! Exact verification and symmetry-reduced search for polyhedral realizations of
//! triangulated closed surfaces on small integer grids.

pub mod checker;
pub mod complex;
pub mod enumerate;
pub mod geom;
pub mod search;

/// Engine version recorded with search results.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use checker::{check_realization, strongest_mode, CheckReport, Embedding, RealizationMode, Violation};
pub use complex::{Triangulation, Vertex};
pub use geom::LatticePoint;
