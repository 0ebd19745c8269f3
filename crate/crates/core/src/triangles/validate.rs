use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use super::patch::Patch;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Vertex list not strictly increasing at this position.
    VertexOrder(usize),
    IndexOutOfRange {
        triangle: usize,
    },
    Shape {
        triangle: usize,
        reason: String,
    },
    Chirality {
        triangle: usize,
    },
    Overlap {
        first: usize,
        second: usize,
    },
    /// A vertex lies strictly inside an edge of a triangle.
    EdgeToEdge {
        triangle: usize,
        vertex: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOrder(i) => write!(f, "vertex {i} out of canonical order or duplicated"),
            Self::IndexOutOfRange { triangle } => {
                write!(f, "triangle {triangle} references a missing vertex")
            }
            Self::Shape { triangle, reason } => write!(f, "triangle {triangle}: {reason}"),
            Self::Chirality { triangle } => {
                write!(
                    f,
                    "triangle {triangle}: stored chirality disagrees with orientation"
                )
            }
            Self::Overlap { first, second } => {
                write!(f, "triangles {first} and {second} overlap")
            }
            Self::EdgeToEdge { triangle, vertex } => {
                write!(
                    f,
                    "vertex {vertex} lies inside an edge of triangle {triangle}"
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub triangles: usize,
    pub vertices: usize,
    pub first_violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_violation {
            None => write!(
                f,
                "ok: {} triangles, {} vertices",
                self.triangles, self.vertices
            ),
            Some(v) => write!(f, "FAILED: {v}"),
        }
    }
}

type P = (f64, f64);

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn dot(a: P, b: P) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

/// Interiors intersect by more than `tol` along every separating-axis
/// candidate.
fn interiors_overlap(s: &[P; 3], t: &[P; 3], tol: f64) -> bool {
    for poly in [s, t] {
        for i in 0..3 {
            let e = sub(poly[(i + 1) % 3], poly[i]);
            let n = (-e.1, e.0);
            let len = dot(n, n).sqrt();
            let proj = |q: &[P; 3]| {
                let v = q.map(|p| dot(p, n) / len);
                (v[0].min(v[1]).min(v[2]), v[0].max(v[1]).max(v[2]))
            };
            let (a0, a1) = proj(s);
            let (b0, b1) = proj(t);
            if a1.min(b1) - a0.max(b0) <= tol {
                return false;
            }
        }
    }
    true
}

fn cell_of(p: P, size: f64) -> (i64, i64) {
    ((p.0 / size).floor() as i64, (p.1 / size).floor() as i64)
}

/// Checks exact triangle shapes, canonical vertex order, interior
/// disjointness (float, tolerance 1e-9 of the shortest edge) and the
/// edge-to-edge condition (exact collinearity).
pub fn validate_patch(p: &Patch) -> ValidationReport {
    let report = |v| ValidationReport {
        triangles: p.triangles.len(),
        vertices: p.vertices.len(),
        first_violation: v,
    };
    if let Some(i) = p.vertices.windows(2).position(|w| w[0] >= w[1]) {
        return report(Some(Violation::VertexOrder(i + 1)));
    }
    let nv = p.vertices.len() as u32;
    if let Some(t) = p
        .triangles
        .iter()
        .position(|t| t.indices().iter().any(|&k| k >= nv))
    {
        return report(Some(Violation::IndexOutOfRange { triangle: t }));
    }
    let shape = (0..p.triangles.len()).into_par_iter().find_first(|&i| {
        let t = p.triangle(i);
        t.check().is_err() || t.chirality().ok() != Some(p.triangles[i].chirality)
    });
    if let Some(i) = shape {
        let t = p.triangle(i);
        return report(Some(match t.check() {
            Err(e) => Violation::Shape {
                triangle: i,
                reason: e.to_string(),
            },
            Ok(()) => Violation::Chirality { triangle: i },
        }));
    }
    if p.triangles.is_empty() {
        return report(None);
    }

    let pts: Vec<P> = p.vertices.iter().map(|v| v.embed()).collect();
    let tri_pts: Vec<[P; 3]> = p
        .triangles
        .iter()
        .map(|t| t.indices().map(|k| pts[k as usize]))
        .collect();
    let (mut min_edge, mut max_edge) = (f64::INFINITY, 0.0f64);
    for t in &tri_pts {
        for i in 0..3 {
            let e = sub(t[(i + 1) % 3], t[i]);
            let l = dot(e, e).sqrt();
            min_edge = min_edge.min(l);
            max_edge = max_edge.max(l);
        }
    }
    let tol = 1e-9 * min_edge;
    let cell = max_edge;

    // Bucket triangles by the cells their bounding boxes touch.
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, t) in tri_pts.iter().enumerate() {
        let lo = cell_of(
            (
                t[0].0.min(t[1].0).min(t[2].0),
                t[0].1.min(t[1].1).min(t[2].1),
            ),
            cell,
        );
        let hi = cell_of(
            (
                t[0].0.max(t[1].0).max(t[2].0),
                t[0].1.max(t[1].1).max(t[2].1),
            ),
            cell,
        );
        for cx in lo.0..=hi.0 {
            for cy in lo.1..=hi.1 {
                grid.entry((cx, cy)).or_default().push(i);
            }
        }
    }
    let overlap = (0..tri_pts.len()).into_par_iter().find_map_first(|i| {
        let t = &tri_pts[i];
        let c = cell_of(t[0], cell);
        let mut seen = HashSet::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &j in grid.get(&(c.0 + dx, c.1 + dy)).into_iter().flatten() {
                    if j > i && seen.insert(j) && interiors_overlap(t, &tri_pts[j], tol) {
                        return Some(Violation::Overlap {
                            first: i,
                            second: j,
                        });
                    }
                }
            }
        }
        None
    });
    if overlap.is_some() {
        return report(overlap);
    }

    let mut vgrid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (k, &q) in pts.iter().enumerate() {
        vgrid.entry(cell_of(q, cell)).or_default().push(k);
    }
    let t_junction = (0..p.triangles.len()).into_par_iter().find_map_first(|i| {
        let idx = p.triangles[i].indices();
        for e in 0..3 {
            let (ia, ib) = (idx[e] as usize, idx[(e + 1) % 3] as usize);
            let (a, b) = (p.vertices[ia], p.vertices[ib]);
            let (fa, fb) = (pts[ia], pts[ib]);
            let d = sub(fb, fa);
            let len2 = dot(d, d);
            let (c0, c1) = (cell_of(fa, cell), cell_of(fb, cell));
            for cx in c0.0.min(c1.0)..=c0.0.max(c1.0) {
                for cy in c0.1.min(c1.1)..=c0.1.max(c1.1) {
                    for &k in vgrid.get(&(cx, cy)).into_iter().flatten() {
                        if k == ia || k == ib {
                            continue;
                        }
                        let s = dot(sub(pts[k], fa), d) / len2;
                        if s <= 0.0 || s >= 1.0 {
                            continue;
                        }
                        let collinear = (b - a)
                            .cross_scaled(p.vertices[k] - a)
                            .map(|c| c.is_zero())
                            .unwrap_or(false);
                        if collinear {
                            return Some(Violation::EdgeToEdge {
                                triangle: i,
                                vertex: k,
                            });
                        }
                    }
                }
            }
        }
        None
    });
    report(t_junction)
}
