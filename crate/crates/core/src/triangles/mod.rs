//! Robinson triangles, their substitution, seed patches and patch checks.

mod patch;
mod triangle;
mod validate;

pub use patch::{
    deflate_patch, deflate_patch_with, homothety_rotation, inflate_patch, seed_sun, seed_wheel,
    symmetry_order, Patch, PatchTriangle, SeedKind,
};
pub use triangle::{
    canonical_acute, canonical_obtuse, deflate_triangle, Chirality, Triangle, TriangleKind,
};
pub use validate::{validate_patch, ValidationReport, Violation};
