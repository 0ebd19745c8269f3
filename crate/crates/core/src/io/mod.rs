//! The `.qtile` text format and SVG rendering.

mod format;
mod svg;

pub use format::{read_tiling, write_tiling, ProjectionMeta, TilingDocument, FORMAT_VERSION};
pub use svg::{render_svg, Palette, RenderOptions};

use crate::projection::Quasilattice;
use crate::triangles::{Patch, SeedKind};

/// A vertex-only document holding the distinct points of `q`.
pub fn quasilattice_document(q: &Quasilattice) -> TilingDocument {
    let mut vertices: Vec<_> = q.points.iter().map(|p| p.cyclo).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let patch = Patch {
        vertices,
        ..Patch::empty(SeedKind::Custom)
    };
    TilingDocument {
        patch,
        groups: None,
        projection: Some(ProjectionMeta {
            gamma: q.gamma,
            radius: q.radius,
            box_size: q.box_size,
        }),
    }
}

#[cfg(test)]
mod tests;
