use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::triangle::{
    canonical_acute, canonical_obtuse, deflate_unchecked, Chirality, Triangle, TriangleKind,
};
use crate::error::{ArithError, TilingError};
use crate::exact::{CycloPoint, GoldenInt};
use crate::parallel;

/// Where a patch started.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeedKind {
    Sun,
    Wheel,
    Acute,
    Obtuse,
    Custom,
}

impl SeedKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Sun => "sun",
            Self::Wheel => "wheel",
            Self::Acute => "acute",
            Self::Obtuse => "obtuse",
            Self::Custom => "custom",
        }
    }

    pub fn patch(self) -> Patch {
        match self {
            Self::Sun => seed_sun(),
            Self::Wheel => seed_wheel(),
            Self::Acute => seed_single(canonical_acute(), self),
            Self::Obtuse => seed_single(canonical_obtuse(), self),
            Self::Custom => Patch::empty(self),
        }
    }
}

impl fmt::Display for SeedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeedKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "sun" => Self::Sun,
            "wheel" => Self::Wheel,
            "acute" => Self::Acute,
            "obtuse" => Self::Obtuse,
            "custom" => Self::Custom,
            _ => return Err(format!("unknown seed '{s}'")),
        })
    }
}

/// A triangle of a patch, referring to vertices by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PatchTriangle {
    pub kind: TriangleKind,
    pub apex: u32,
    pub base: [u32; 2],
    pub chirality: Chirality,
    /// Index of the parent triangle in the previous generation.
    pub parent: Option<u32>,
}

impl PatchTriangle {
    pub fn indices(&self) -> [u32; 3] {
        [self.apex, self.base[0], self.base[1]]
    }
}

/// A finite set of triangles on a shared, sorted, duplicate-free vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub vertices: Vec<CycloPoint>,
    pub triangles: Vec<PatchTriangle>,
    pub generation: u32,
    pub seed: SeedKind,
    /// Parent indices of the older generations, oldest first. Together with
    /// the `parent` fields of `triangles` this is the deflation tree.
    pub ancestry: Vec<Vec<u32>>,
}

impl Patch {
    pub fn empty(seed: SeedKind) -> Self {
        Self {
            vertices: vec![],
            triangles: vec![],
            generation: 0,
            seed,
            ancestry: vec![],
        }
    }

    /// Builds a patch from exact triangles, sorting and deduplicating the
    /// vertices. Triangle order is kept.
    pub fn from_triangles(
        triangles: &[Triangle],
        parents: Option<&[u32]>,
        generation: u32,
        seed: SeedKind,
    ) -> Result<Self, ArithError> {
        let mut vertices: Vec<CycloPoint> = triangles.iter().flat_map(|t| t.vertices()).collect();
        vertices.par_sort_unstable();
        vertices.dedup();
        let index = |p: &CycloPoint| vertices.binary_search(p).expect("vertex present") as u32;
        let tris = triangles
            .par_iter()
            .enumerate()
            .map(|(i, t)| {
                Ok(PatchTriangle {
                    kind: t.kind,
                    apex: index(&t.apex),
                    base: [index(&t.base[0]), index(&t.base[1])],
                    chirality: t.chirality()?,
                    parent: parents.map(|p| p[i]),
                })
            })
            .collect::<Result<Vec<_>, ArithError>>()?;
        Ok(Self {
            vertices,
            triangles: tris,
            generation,
            seed,
            ancestry: vec![],
        })
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        let t = &self.triangles[i];
        let v = |k: u32| self.vertices[k as usize];
        Triangle::new(t.kind, v(t.apex), v(t.base[0]), v(t.base[1]))
    }

    pub fn exact_triangles(&self) -> Vec<Triangle> {
        (0..self.triangles.len())
            .map(|i| self.triangle(i))
            .collect()
    }

    /// `(acute, obtuse)`.
    pub fn counts(&self) -> (usize, usize) {
        let a = self
            .triangles
            .iter()
            .filter(|t| t.kind == TriangleKind::Acute)
            .count();
        (a, self.triangles.len() - a)
    }

    pub fn total_area(&self) -> f64 {
        self.exact_triangles().iter().map(Triangle::area).sum()
    }

    /// Number of levels that `inflate_patch` can undo.
    pub fn history_depth(&self) -> u32 {
        match self.triangles.first() {
            Some(t) if t.parent.is_some() => self.ancestry.len() as u32 + 1,
            _ => 0,
        }
    }

    /// Applies `f` to every vertex and re-sorts, keeping triangles and lineage.
    fn map_vertices<F>(&self, f: F) -> Result<Self, ArithError>
    where
        F: Fn(CycloPoint) -> Result<CycloPoint, ArithError> + Sync,
    {
        let mapped = self
            .vertices
            .par_iter()
            .map(|&v| f(v))
            .collect::<Result<Vec<_>, _>>()?;
        let mut order: Vec<u32> = (0..mapped.len() as u32).collect();
        order.sort_unstable_by_key(|&i| mapped[i as usize]);
        let mut new_index = vec![0u32; mapped.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old as usize] = new as u32;
        }
        let vertices = order.iter().map(|&i| mapped[i as usize]).collect();
        let triangles = self
            .triangles
            .iter()
            .map(|t| PatchTriangle {
                apex: new_index[t.apex as usize],
                base: [new_index[t.base[0] as usize], new_index[t.base[1] as usize]],
                ..*t
            })
            .collect();
        Ok(Self {
            vertices,
            triangles,
            ..self.clone()
        })
    }
}

fn seed_single(t: Triangle, seed: SeedKind) -> Patch {
    Patch::from_triangles(&[t], None, 0, seed).expect("seed arithmetic is small")
}

/// Ten acute triangles with apex at the origin, the k-th spanning
/// directions 36k° to 36(k+1)°. Neighbours are mirror images, so the base
/// order alternates.
pub fn seed_sun() -> Patch {
    let tau = CycloPoint::TAU;
    let tris: Vec<Triangle> = (0..10)
        .map(|k| {
            let p = tau.rotate36_by(k);
            let q = tau.rotate36_by(k + 1);
            let (b0, b1) = if k % 2 == 0 { (p, q) } else { (q, p) };
            Triangle::new(TriangleKind::Acute, CycloPoint::ZERO, b0, b1)
        })
        .collect();
    Patch::from_triangles(&tris, None, 0, SeedKind::Sun).expect("seed arithmetic is small")
}

/// Five thick rhombs with their 72° corners at the origin. Each rhomb is cut
/// along its long diagonal into two obtuse triangles whose first base vertex
/// is the far corner.
pub fn seed_wheel() -> Patch {
    let tau = CycloPoint::TAU;
    let tau2 = tau * tau;
    let mut tris = Vec::with_capacity(10);
    for k in 0..5 {
        let side0 = tau.rotate36_by(2 * k);
        let side1 = tau.rotate36_by(2 * k + 2);
        let far = tau2.rotate36_by(2 * k + 1);
        tris.push(Triangle::new(
            TriangleKind::Obtuse,
            side0,
            far,
            CycloPoint::ZERO,
        ));
        tris.push(Triangle::new(
            TriangleKind::Obtuse,
            side1,
            far,
            CycloPoint::ZERO,
        ));
    }
    Patch::from_triangles(&tris, None, 0, SeedKind::Wheel).expect("seed arithmetic is small")
}

/// Deflates every triangle `steps` times, on the global pool.
pub fn deflate_patch(p: &Patch, steps: u32) -> Result<Patch, TilingError> {
    deflate_patch_with(p, steps, None)
}

/// As [`deflate_patch`], with an explicit worker count. The result does not
/// depend on `jobs`.
pub fn deflate_patch_with(
    p: &Patch,
    steps: u32,
    jobs: Option<usize>,
) -> Result<Patch, TilingError> {
    if steps == 0 {
        return Ok(p.clone());
    }
    for i in 0..p.triangles.len() {
        p.triangle(i).check()?;
    }
    parallel::install(jobs, || {
        let mut cur = p.clone();
        for _ in 0..steps {
            cur = deflate_once(&cur)?;
        }
        Ok(cur)
    })
    .map_err(TilingError::Pool)?
}

fn deflate_once(p: &Patch) -> Result<Patch, TilingError> {
    let per_parent: Vec<Vec<Triangle>> = (0..p.triangles.len())
        .into_par_iter()
        .map(|i| deflate_unchecked(&p.triangle(i)))
        .collect::<Result<_, _>>()?;
    let mut parents = Vec::new();
    let mut children = Vec::new();
    for (i, kids) in per_parent.into_iter().enumerate() {
        parents.extend(std::iter::repeat_n(i as u32, kids.len()));
        children.extend(kids);
    }
    let mut out = Patch::from_triangles(&children, Some(&parents), p.generation + 1, p.seed)?;
    out.ancestry = p.ancestry.clone();
    if let Some(old) = parent_indices(p) {
        out.ancestry.push(old);
    }
    Ok(out)
}

fn parent_indices(p: &Patch) -> Option<Vec<u32>> {
    p.triangles.iter().map(|t| t.parent).collect()
}

/// Rebuilds the parent of a group of children produced by one deflation.
fn reassemble(kids: &[Triangle]) -> Result<Triangle, TilingError> {
    use TriangleKind::*;
    let bad = || TilingError::BadTriangle("children do not match a deflation pattern".into());
    match kids {
        [o, a] if o.kind == Obtuse && a.kind == Acute => {
            Ok(Triangle::new(Acute, o.base[1], o.base[0], a.base[0]))
        }
        [o1, o2, a] if o1.kind == Obtuse && o2.kind == Obtuse && a.kind == Acute => {
            Ok(Triangle::new(Obtuse, o2.base[1], o1.base[1], o2.base[0]))
        }
        _ => Err(bad()),
    }
}

/// Undoes `steps` deflations using the recorded deflation tree.
pub fn inflate_patch(p: &Patch, steps: u32) -> Result<Patch, TilingError> {
    if steps == 0 {
        return Ok(p.clone());
    }
    let depth = p.history_depth();
    if depth == 0 {
        return Err(TilingError::NoHistory);
    }
    if steps > depth {
        return Err(TilingError::InflateTooFar {
            requested: steps,
            available: depth,
        });
    }
    let mut cur = p.clone();
    for _ in 0..steps {
        let parents = parent_indices(&cur).ok_or(TilingError::NoHistory)?;
        let n_parents = parents.iter().max().map_or(0, |m| *m as usize + 1);
        let mut groups: Vec<Vec<Triangle>> = vec![Vec::new(); n_parents];
        for (i, &par) in parents.iter().enumerate() {
            groups[par as usize].push(cur.triangle(i));
        }
        let rebuilt = groups
            .iter()
            .map(|g| reassemble(g))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ancestry = cur.ancestry.clone();
        let grand = ancestry.pop();
        let mut next =
            Patch::from_triangles(&rebuilt, grand.as_deref(), cur.generation - 1, cur.seed)?;
        next.ancestry = ancestry;
        cur = next;
    }
    Ok(cur)
}

/// Largest `n` in {10, 5, 2, 1} such that rotation by 360°/n about `center`
/// maps `points` onto itself.
pub fn symmetry_order(points: &[CycloPoint], center: CycloPoint) -> u32 {
    let set: HashSet<CycloPoint> = points.iter().copied().collect();
    let rel: Vec<CycloPoint> = set.iter().map(|&p| p - center).collect();
    let invariant = |rot: fn(CycloPoint) -> CycloPoint| {
        rel.par_iter().all(|&d| set.contains(&(rot(d) + center)))
    };
    if invariant(CycloPoint::rotate36) {
        10
    } else if invariant(CycloPoint::rotate72) {
        5
    } else if invariant(|d| -d) {
        2
    } else {
        1
    }
}

/// Maps every vertex `v ↦ τ^k · ε^m · v`.
pub fn homothety_rotation(
    p: &Patch,
    tau_exponent: u32,
    rot72_steps: i32,
) -> Result<Patch, TilingError> {
    let scale = GoldenInt::TAU.checked_pow(tau_exponent)?;
    let m = rot72_steps.rem_euclid(5);
    Ok(p.map_vertices(|v| {
        let mut w = v.checked_scale(scale)?;
        for _ in 0..m {
            w = w.rotate72();
        }
        Ok(w)
    })?)
}
