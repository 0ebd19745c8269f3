//! Regrouping of a triangle patch into composite tiles.
//!
//! A composite is found by placing a template outline with one of its corners
//! on a patch vertex, under one of the 20 symmetries of the decagon, and
//! collecting the triangles inside. The placement is accepted when the union
//! of those triangles has exactly the template outline as its boundary.

mod templates;

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

pub use templates::{template, CompositeKind, Template};

use crate::error::ArithError;
use crate::exact::{CycloPoint, GoldenInt};
use crate::parallel;
use crate::triangles::{Chirality, Patch, TriangleKind};

pub const POLICY_SET_A: [CompositeKind; 5] = [
    CompositeKind::Pentagram,
    CompositeKind::Boat,
    CompositeKind::PentagonBig,
    CompositeKind::ThickRhomb,
    CompositeKind::ThinRhomb,
];

pub const POLICY_SET_B: [CompositeKind; 5] = [
    CompositeKind::PentagonBig,
    CompositeKind::PentagonSmall,
    CompositeKind::Trapezoid,
    CompositeKind::ThickRhomb,
    CompositeKind::AcuteTriangle,
];

pub const POLICY_RHOMBS: [CompositeKind; 3] = [
    CompositeKind::ThickRhomb,
    CompositeKind::ThinRhomb,
    CompositeKind::Deltoid,
];

/// `v ↦ shift + τ^scale_exp · ε₁^rotation · (conj v if reflect)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    pub rotation: u8,
    pub reflect: bool,
    pub scale_exp: i32,
    pub shift: CycloPoint,
}

impl Isometry {
    pub fn apply(&self, v: CycloPoint) -> Result<CycloPoint, ArithError> {
        let w = if self.reflect { v.conj() } else { v };
        let w = w.rotate36_by(self.rotation as i32);
        self.shift
            .checked_add(w.checked_scale(GoldenInt::tau_pow(self.scale_exp)?)?)
    }

    /// Maps a counter-clockwise outline, returning it counter-clockwise.
    fn map_outline(&self, outline: &[CycloPoint]) -> Result<Vec<CycloPoint>, ArithError> {
        let mut out = outline
            .iter()
            .map(|&v| self.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        if self.reflect {
            out.reverse();
            out.rotate_right(1);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeGroup {
    pub kind: CompositeKind,
    /// Sorted triangle indices.
    pub triangles: Vec<u32>,
    /// Template placement; absent for singletons and for groups read back
    /// from a file.
    pub isometry: Option<Isometry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CompositeTiling {
    pub groups: Vec<CompositeGroup>,
    pub triangle_count: usize,
}

impl CompositeTiling {
    /// Fraction of triangles that belong to non-singleton groups.
    pub fn coverage(&self) -> f64 {
        if self.triangle_count == 0 {
            return 0.0;
        }
        let grouped: usize = self
            .groups
            .iter()
            .filter(|g| !g.kind.is_singleton())
            .map(|g| g.triangles.len())
            .sum();
        grouped as f64 / self.triangle_count as f64
    }

    /// Every triangle index appears in exactly one group.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.triangle_count];
        for g in &self.groups {
            for &t in &g.triangles {
                match seen.get_mut(t as usize) {
                    Some(s) if !*s => *s = true,
                    _ => return false,
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn count_tiles(t: &CompositeTiling) -> BTreeMap<CompositeKind, usize> {
    let mut m = BTreeMap::new();
    for g in &t.groups {
        *m.entry(g.kind).or_insert(0) += 1;
    }
    m
}

/// Exponent `k` such that the patch triangles have leg `τ^(k+1)`.
pub fn patch_scale(p: &Patch) -> Option<i32> {
    let leg = p
        .triangles
        .first()
        .map(|_| p.triangle(0).leg_sq_norm())?
        .ok()?;
    (-64..=64).find(|&k| GoldenInt::tau_pow(2 * k + 2).is_ok_and(|x| x == leg))
}

/// Counter-clockwise corners of the union of `tris`, with collinear boundary
/// points dropped. `None` when the union is not bounded by one simple loop.
pub fn union_outline(p: &Patch, tris: &[u32]) -> Option<Vec<CycloPoint>> {
    let mut edges: HashSet<(u32, u32)> = HashSet::new();
    for &i in tris {
        let t = p.triangles.get(i as usize)?;
        let [a, b, c] = match t.chirality {
            Chirality::Positive => [t.apex, t.base[0], t.base[1]],
            Chirality::Negative => [t.apex, t.base[1], t.base[0]],
        };
        for (u, v) in [(a, b), (b, c), (c, a)] {
            if !edges.remove(&(v, u)) && !edges.insert((u, v)) {
                return None;
            }
        }
    }
    let mut next: HashMap<u32, u32> = HashMap::with_capacity(edges.len());
    for &(u, v) in &edges {
        if next.insert(u, v).is_some() {
            return None;
        }
    }
    let start = *next.keys().min()?;
    let mut loop_pts = vec![start];
    let mut cur = next[&start];
    while cur != start {
        loop_pts.push(cur);
        cur = *next.get(&cur)?;
        if loop_pts.len() > edges.len() {
            return None;
        }
    }
    if loop_pts.len() != edges.len() {
        return None;
    }
    let pts: Vec<CycloPoint> = loop_pts.iter().map(|&i| p.vertices[i as usize]).collect();
    let n = pts.len();
    let corners: Vec<CycloPoint> = (0..n)
        .filter(|&i| {
            let prev = pts[(i + n - 1) % n];
            let d1 = pts[i] - prev;
            let d2 = pts[(i + 1) % n] - pts[i];
            d1.cross_scaled(d2).map_or(true, |c| !c.is_zero())
        })
        .map(|i| pts[i])
        .collect();
    Some(corners)
}

/// Equal as cyclic sequences.
fn same_cycle(a: &[CycloPoint], b: &[CycloPoint]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    let Some(off) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    (0..a.len()).all(|i| a[i] == b[(i + off) % b.len()])
}

fn part_counts(p: &Patch, tris: &[u32]) -> (usize, usize) {
    let a = tris
        .iter()
        .filter(|&&i| p.triangles[i as usize].kind == TriangleKind::Acute)
        .count();
    (a, tris.len() - a)
}

fn linear_maps(scale_exp: i32) -> impl Iterator<Item = Isometry> {
    (0..20u8).map(move |j| Isometry {
        rotation: j % 10,
        reflect: j >= 10,
        scale_exp,
        shift: CycloPoint::ZERO,
    })
}

/// Re-checks that `group` is exactly its template under its isometry, or
/// under some isometry when none is recorded.
pub fn verify_group(p: &Patch, group: &CompositeGroup) -> bool {
    if group
        .triangles
        .iter()
        .any(|&i| i as usize >= p.triangles.len())
    {
        return false;
    }
    if group.kind.is_singleton() {
        let want = match group.kind {
            CompositeKind::AcuteTriangle => TriangleKind::Acute,
            _ => TriangleKind::Obtuse,
        };
        return group.triangles.len() == 1 && p.triangles[group.triangles[0] as usize].kind == want;
    }
    match group.isometry {
        Some(iso) => check_placement(p, group.kind, &group.triangles, &iso),
        None => find_isometry(p, group.kind, &group.triangles).is_some(),
    }
}

fn check_placement(p: &Patch, kind: CompositeKind, tris: &[u32], iso: &Isometry) -> bool {
    let Some(t) = template(kind) else {
        return false;
    };
    if part_counts(p, tris) != t.parts {
        return false;
    }
    let (Some(boundary), Ok(mapped)) = (union_outline(p, tris), iso.map_outline(&t.outline)) else {
        return false;
    };
    same_cycle(&mapped, &boundary)
}

/// Searches for an isometry placing the template of `kind` onto `tris`.
pub fn find_isometry(p: &Patch, kind: CompositeKind, tris: &[u32]) -> Option<Isometry> {
    let t = template(kind)?;
    let k = patch_scale(p)?;
    if part_counts(p, tris) != t.parts {
        return None;
    }
    let boundary = union_outline(p, tris)?;
    for &anchor in &boundary {
        for lin in linear_maps(k) {
            let iso = Isometry {
                shift: anchor,
                ..lin
            };
            if iso
                .map_outline(&t.outline)
                .is_ok_and(|m| same_cycle(&m, &boundary))
            {
                return Some(iso);
            }
        }
    }
    None
}

struct Placement {
    triangles: Vec<u32>,
    isometry: Isometry,
    /// Squared distance of the corner sum from the origin.
    radius: GoldenInt,
    /// Smallest sorted corner list over the five 72° rotations.
    shape_key: Vec<CycloPoint>,
}

fn point_in_polygon(q: (f64, f64), poly: &[(f64, f64)]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.1 > q.1) != (b.1 > q.1) {
            let x = a.0 + (q.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
            if q.0 < x {
                inside = !inside;
            }
        }
    }
    inside
}

struct CentroidIndex {
    cell: f64,
    grid: HashMap<(i64, i64), Vec<u32>>,
    centroids: Vec<(f64, f64)>,
}

impl CentroidIndex {
    fn new(p: &Patch) -> Self {
        let pts: Vec<(f64, f64)> = p.vertices.iter().map(|v| v.embed()).collect();
        let centroids: Vec<(f64, f64)> = p
            .triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.indices().map(|i| pts[i as usize]);
                ((a.0 + b.0 + c.0) / 3.0, (a.1 + b.1 + c.1) / 3.0)
            })
            .collect();
        let cell = p.triangles.first().map_or(1.0, |_| {
            let (x, y) = (p.triangle(0).base[0] - p.triangle(0).apex).embed();
            (x * x + y * y).sqrt()
        });
        let mut grid: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, c) in centroids.iter().enumerate() {
            grid.entry(Self::key(*c, cell)).or_default().push(i as u32);
        }
        Self {
            cell,
            grid,
            centroids,
        }
    }

    fn key(c: (f64, f64), cell: f64) -> (i64, i64) {
        ((c.0 / cell).floor() as i64, (c.1 / cell).floor() as i64)
    }

    fn inside(&self, poly: &[(f64, f64)]) -> Vec<u32> {
        let (mut lo, mut hi) = (
            (f64::INFINITY, f64::INFINITY),
            (f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for &(x, y) in poly {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        let (k0, k1) = (Self::key(lo, self.cell), Self::key(hi, self.cell));
        let mut out = Vec::new();
        for cx in k0.0..=k1.0 {
            for cy in k0.1..=k1.1 {
                for &i in self.grid.get(&(cx, cy)).into_iter().flatten() {
                    if point_in_polygon(self.centroids[i as usize], poly) {
                        out.push(i);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn shape_key(corners: &[CycloPoint]) -> Vec<CycloPoint> {
    (0..5)
        .map(|m| {
            let mut v: Vec<CycloPoint> = corners.iter().map(|&c| c.rotate36_by(2 * m)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .expect("five rotations")
}

fn find_placements(p: &Patch, t: &Template, k: i32, index: &CentroidIndex) -> Vec<Placement> {
    let maps: Vec<(Isometry, Vec<CycloPoint>)> = linear_maps(k)
        .filter_map(|iso| Some((iso, iso.map_outline(&t.outline).ok()?)))
        .collect();
    let mut found: Vec<Placement> = (0..p.vertices.len())
        .into_par_iter()
        .flat_map_iter(|vi| {
            let anchor = p.vertices[vi];
            let mut local = Vec::new();
            for (lin, rel) in &maps {
                let Ok(corners) = rel
                    .iter()
                    .map(|&c| anchor.checked_add(c))
                    .collect::<Result<Vec<_>, _>>()
                else {
                    continue;
                };
                if !corners.iter().all(|c| p.vertices.binary_search(c).is_ok()) {
                    continue;
                }
                let poly: Vec<(f64, f64)> = corners.iter().map(|c| c.embed()).collect();
                let tris = index.inside(&poly);
                if part_counts(p, &tris) != t.parts {
                    continue;
                }
                let iso = Isometry {
                    shift: anchor,
                    ..*lin
                };
                if !check_placement(p, t.kind, &tris, &iso) {
                    continue;
                }
                let sum = corners.iter().fold(CycloPoint::ZERO, |acc, &c| acc + c);
                let Ok(radius) = sum.sq_norm() else { continue };
                local.push(Placement {
                    triangles: tris,
                    isometry: iso,
                    radius,
                    shape_key: shape_key(&corners),
                });
            }
            local
        })
        .collect();
    found.sort_by(|a, b| {
        a.radius
            .cmp_value(b.radius)
            .then_with(|| a.shape_key.cmp(&b.shape_key))
            .then_with(|| a.triangles.cmp(&b.triangles))
            .then_with(|| a.isometry.cmp(&b.isometry))
    });
    found.dedup_by(|a, b| a.triangles == b.triangles);
    found
}

/// Greedy composite detection. Kinds are tried in `policy` order; within a
/// kind, placements are claimed nearest the origin first. Triangles left
/// over become singleton groups.
pub fn detect_composites(p: &Patch, policy: &[CompositeKind]) -> CompositeTiling {
    detect_composites_with(p, policy, None).expect("global pool")
}

/// As [`detect_composites`] with an explicit worker count. Only the
/// placement search runs in parallel, so the result does not depend on
/// `jobs`.
pub fn detect_composites_with(
    p: &Patch,
    policy: &[CompositeKind],
    jobs: Option<usize>,
) -> Result<CompositeTiling, String> {
    parallel::install(jobs, || detect_inner(p, policy))
}

fn detect_inner(p: &Patch, policy: &[CompositeKind]) -> CompositeTiling {
    let n = p.triangles.len();
    let mut claimed = vec![false; n];
    let mut groups = Vec::new();
    if let Some(k) = patch_scale(p) {
        let index = CentroidIndex::new(p);
        for kind in policy {
            let Some(t) = template(*kind) else { continue };
            for pl in find_placements(p, &t, k, &index) {
                if pl.triangles.iter().all(|&i| !claimed[i as usize]) {
                    for &i in &pl.triangles {
                        claimed[i as usize] = true;
                    }
                    groups.push(CompositeGroup {
                        kind: *kind,
                        triangles: pl.triangles,
                        isometry: Some(pl.isometry),
                    });
                }
            }
        }
    }
    for (i, c) in claimed.iter().enumerate() {
        if !c {
            let kind = match p.triangles[i].kind {
                TriangleKind::Acute => CompositeKind::AcuteTriangle,
                TriangleKind::Obtuse => CompositeKind::ObtuseTriangle,
            };
            groups.push(CompositeGroup {
                kind,
                triangles: vec![i as u32],
                isometry: None,
            });
        }
    }
    CompositeTiling {
        groups,
        triangle_count: n,
    }
}

/// Thick and thin rhombs and deltoids.
pub fn glue_rhombs(p: &Patch) -> CompositeTiling {
    detect_composites(p, &POLICY_RHOMBS)
}

#[cfg(test)]
mod tests;
