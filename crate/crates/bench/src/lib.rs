//! Fixtures shared by the benchmarks.

use quasitile::triangles::{deflate_patch, seed_sun, seed_wheel, Patch};

/// Generic offset used for quasilattice benchmarks.
pub const GENERIC_GAMMA: [f64; 3] = [0.01, 0.0137, 0.0071];

pub fn sun(generation: u32) -> Patch {
    deflate_patch(&seed_sun(), generation).expect("sun deflates")
}

pub fn wheel(generation: u32) -> Patch {
    deflate_patch(&seed_wheel(), generation).expect("wheel deflates")
}
