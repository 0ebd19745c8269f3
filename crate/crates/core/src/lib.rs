//! Exact construction and analysis of five- and ten-fold quasiperiodic
//! tilings: golden-ring arithmetic, the Weyl group of the Σ5 root system,
//! Robinson-triangle substitution, composite-tile detection,
//! cut-and-project point sets, frequency statistics and file output.

pub mod error;
pub mod exact;
pub mod grouping;
pub mod io;
mod parallel;
pub mod projection;
pub mod stats;
pub mod triangles;
pub mod weyl;

pub use error::{ArithError, FormatError, GroupError, ProjectionError, TilingError};
pub use exact::{CycloPoint, GoldenInt};
pub use triangles::{Patch, Triangle, TriangleKind};
