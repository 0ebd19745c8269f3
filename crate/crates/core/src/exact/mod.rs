//! Exact arithmetic in the golden ring Z[τ] and the cyclotomic module Z[ε].

mod cyclo;
mod golden;
mod independence;

pub use cyclo::{cyclo_conj, cyclo_embed, cyclo_mul, cyclo_rotate72, sq_norm, CycloPoint, SIN72};
pub use golden::{golden_conj, golden_embed, golden_mul, GoldenInt, PHI};
pub use independence::{int_lin_independent, Independence};
