use std::fmt::Write as _;

use super::format::TilingDocument;
use crate::exact::CycloPoint;
use crate::grouping::{union_outline, CompositeKind};
use crate::triangles::{homothety_rotation, TriangleKind};

/// Fill colour for every composite kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub colors: [(CompositeKind, &'static str); 10],
}

impl Default for Palette {
    fn default() -> Self {
        use CompositeKind::*;
        Self {
            colors: [
                (ThickRhomb, "#ffbf00"),
                (ThinRhomb, "#008080"),
                (Deltoid, "#8e6cc0"),
                (Trapezoid, "#2e8b57"),
                (PentagonBig, "#ffd700"),
                (PentagonSmall, "#ffd700"),
                (Pentagram, "#dc143c"),
                (Boat, "#1f4fd1"),
                (AcuteTriangle, "#c8c8c8"),
                (ObtuseTriangle, "#969696"),
            ],
        }
    }
}

impl Palette {
    pub fn color(&self, kind: CompositeKind) -> &'static str {
        self.colors
            .iter()
            .find(|(k, _)| *k == kind)
            .map_or("#000000", |(_, c)| c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// SVG units per unit length.
    pub scale: f64,
    pub palette: Palette,
    /// Draw a circle at every vertex.
    pub atoms: bool,
    /// Also stroke the outlines of the image under `v ↦ τ^k ε^m v`.
    pub overlay: Option<(u32, i32)>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            scale: 100.0,
            palette: Palette::default(),
            atoms: false,
            overlay: None,
        }
    }
}

/// Fixed six-decimal formatting without negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".to_string()
    } else {
        s
    }
}

struct Canvas {
    scale: f64,
    body: String,
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Canvas {
    /// SVG coordinates, y pointing down.
    fn xy(&mut self, v: CycloPoint) -> (f64, f64) {
        let (x, y) = v.embed();
        let p = (self.scale * x, -self.scale * y);
        self.lo = (self.lo.0.min(p.0), self.lo.1.min(p.1));
        self.hi = (self.hi.0.max(p.0), self.hi.1.max(p.1));
        p
    }

    fn polygon(&mut self, pts: &[CycloPoint], style: &str) {
        let coords: Vec<String> = pts
            .iter()
            .map(|&v| {
                let (x, y) = self.xy(v);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            self.body,
            "<polygon points=\"{}\" {style}/>",
            coords.join(" ")
        );
    }
}

/// Deterministic SVG 1.1 rendering: one polygon per group when groups are
/// present, otherwise one per triangle.
pub fn render_svg(doc: &TilingDocument, opts: &RenderOptions) -> String {
    let p = &doc.patch;
    let mut c = Canvas {
        scale: opts.scale,
        body: String::new(),
        lo: (f64::INFINITY, f64::INFINITY),
        hi: (f64::NEG_INFINITY, f64::NEG_INFINITY),
    };
    let stroke = "stroke=\"#202020\" stroke-width=\"0.5\" stroke-linejoin=\"round\"";
    let tri_kind = |i: usize| match p.triangles[i].kind {
        TriangleKind::Acute => CompositeKind::AcuteTriangle,
        TriangleKind::Obtuse => CompositeKind::ObtuseTriangle,
    };
    match &doc.groups {
        Some(groups) => {
            for g in groups {
                let fill = opts.palette.color(g.kind);
                let style = format!("fill=\"{fill}\" {stroke}");
                match union_outline(p, &g.triangles) {
                    Some(outline) => c.polygon(&outline, &style),
                    None => {
                        for &t in &g.triangles {
                            c.polygon(&p.triangle(t as usize).vertices(), &style);
                        }
                    }
                }
            }
        }
        None => {
            for i in 0..p.triangles.len() {
                let style = format!("fill=\"{}\" {stroke}", opts.palette.color(tri_kind(i)));
                c.polygon(&p.triangle(i).vertices(), &style);
            }
        }
    }
    if let Some((k, m)) = opts.overlay {
        if let Ok(image) = homothety_rotation(p, k, m) {
            let style = "fill=\"none\" stroke=\"#d02090\" stroke-width=\"1\"";
            for i in 0..image.triangles.len() {
                c.polygon(&image.triangle(i).vertices(), style);
            }
        }
    }
    if opts.atoms {
        let r = 0.06 * opts.scale;
        for &v in &p.vertices {
            let (x, y) = c.xy(v);
            let _ = writeln!(
                c.body,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#303030\"/>",
                num(x),
                num(y),
                num(r)
            );
        }
    }
    let (lo, hi) = if c.lo.0.is_finite() {
        (c.lo, c.hi)
    } else {
        ((0.0, 0.0), (1.0, 1.0))
    };
    let pad = 0.1 * opts.scale;
    let (x0, y0) = (lo.0 - pad, lo.1 - pad);
    let (w, h) = (hi.0 - lo.0 + 2.0 * pad, hi.1 - lo.1 + 2.0 * pad);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"{}\" height=\"{}\">",
        num(x0),
        num(y0),
        num(w),
        num(h),
        num(w),
        num(h)
    );
    s.push_str(&c.body);
    s.push_str("</svg>\n");
    s
}
