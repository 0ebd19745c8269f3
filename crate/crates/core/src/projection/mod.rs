//! Cut-and-project quasilattices from the five-dimensional integer lattice.
//!
//! `E⁵` splits into the plane `par`, the plane `perp` and the line along
//! `(1,1,1,1,1)`. A lattice point is accepted when its `perp ⊕ delta`
//! projection, shifted by `-gamma`, lies strictly inside the projection of
//! the unit 5-cube.

use std::collections::HashMap;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::ProjectionError;
use crate::exact::{CycloPoint, GoldenInt};
use crate::parallel;
use crate::triangles::symmetry_order;

pub type Vec3 = [f64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice5Point(pub [i64; 5]);

impl Lattice5Point {
    /// `(x0,…,x4) ↦ (x4,x0,…,x3)`.
    pub fn cycled(self) -> Self {
        let x = self.0;
        Self([x[4], x[0], x[1], x[2], x[3]])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionBasis {
    pub par: [[f64; 5]; 2],
    pub perp: [[f64; 5]; 2],
    pub delta: [f64; 5],
}

impl ProjectionBasis {
    fn rows(&self) -> [[f64; 5]; 5] {
        [
            self.par[0],
            self.par[1],
            self.perp[0],
            self.perp[1],
            self.delta,
        ]
    }

    /// Largest entry of `M·Mᵀ − I` for the stacked 5×5 matrix.
    pub fn orthogonality_residual(&self) -> f64 {
        let r = self.rows();
        let mut worst = 0.0f64;
        for i in 0..5 {
            for j in 0..5 {
                let d: f64 = (0..5).map(|k| r[i][k] * r[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((d - want).abs());
            }
        }
        worst
    }

    pub fn par_of(&self, x: &[f64; 5]) -> (f64, f64) {
        let dot = |row: &[f64; 5]| (0..5).map(|k| row[k] * x[k]).sum::<f64>();
        (dot(&self.par[0]), dot(&self.par[1]))
    }

    /// The `perp ⊕ delta` projection.
    pub fn internal_of(&self, x: &[f64; 5]) -> Vec3 {
        let dot = |row: &[f64; 5]| (0..5).map(|k| row[k] * x[k]).sum::<f64>();
        [dot(&self.perp[0]), dot(&self.perp[1]), dot(&self.delta)]
    }
}

pub fn projection_basis() -> ProjectionBasis {
    let s = (2.0f64 / 5.0).sqrt();
    let col = |k: usize, step: f64| {
        let a = (step * k as f64).to_radians();
        (s * a.cos(), s * a.sin())
    };
    let mut par = [[0.0; 5]; 2];
    let mut perp = [[0.0; 5]; 2];
    for k in 0..5 {
        let (x, y) = col(k, 72.0);
        par[0][k] = x;
        par[1][k] = y;
        let (x, y) = col(k, 144.0);
        perp[0][k] = x;
        perp[1][k] = y;
    }
    ProjectionBasis {
        par,
        perp,
        delta: [1.0 / 5f64.sqrt(); 5],
    }
}

/// Half-space `normal · y ≤ offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Facet {
    pub normal: Vec3,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub facets: Vec<Facet>,
    /// Projections of the 32 vertices of the unit 5-cube.
    pub cube_vertices: Vec<Vec3>,
}

fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

impl Window {
    pub fn centroid(&self) -> Vec3 {
        let n = self.cube_vertices.len() as f64;
        let mut c = [0.0; 3];
        for v in &self.cube_vertices {
            for i in 0..3 {
                c[i] += v[i] / n;
            }
        }
        c
    }

    /// Smallest facet slack of `y`: positive strictly inside.
    pub fn slack(&self, y: Vec3) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset - dot3(f.normal, y))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_strict(&self, y: Vec3) -> bool {
        self.slack(y) > 0.0
    }

    /// The window scaled by `lambda` about its centroid.
    pub fn inflated(&self, lambda: f64) -> Self {
        let c = self.centroid();
        let scale = |v: Vec3| [0, 1, 2].map(|i| c[i] + lambda * (v[i] - c[i]));
        Self {
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal,
                    offset: dot3(f.normal, c) + lambda * (f.offset - dot3(f.normal, c)),
                })
                .collect(),
            cube_vertices: self.cube_vertices.iter().map(|&v| scale(v)).collect(),
        }
    }

    /// Largest distance of a window point from the delta axis.
    fn perp_extent(&self) -> f64 {
        self.cube_vertices
            .iter()
            .map(|v| v[0].hypot(v[1]))
            .fold(0.0, f64::max)
    }
}

/// Convex hull of the projected unit 5-cube. The projection is the zonotope
/// spanned by the five projected basis vectors, so every facet is parallel
/// to a pair of them.
pub fn build_window() -> Result<Window, ProjectionError> {
    let b = projection_basis();
    let gens: Vec<Vec3> = (0..5)
        .map(|k| {
            let mut e = [0.0; 5];
            e[k] = 1.0;
            b.internal_of(&e)
        })
        .collect();
    let cube_vertices: Vec<Vec3> = (0..32u32)
        .map(|m| {
            let x: [f64; 5] = std::array::from_fn(|k| f64::from((m >> k) & 1));
            b.internal_of(&x)
        })
        .collect();
    let mut facets = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            let n = cross(gens[i], gens[j]);
            let len = dot3(n, n).sqrt();
            if len < 1e-9 {
                return Err(ProjectionError::DegenerateWindow(format!(
                    "generators {i} and {j} are parallel"
                )));
            }
            for sign in [1.0, -1.0] {
                let normal = n.map(|c| sign * c / len);
                let offset = gens.iter().map(|&g| dot3(normal, g).max(0.0)).sum();
                facets.push(Facet { normal, offset });
            }
        }
    }
    Ok(Window {
        facets,
        cube_vertices,
    })
}

/// Exact reduction `(x0−x4, x1−x4, x2−x4, x3−x4)` using `ε⁴ = −1 − ε − ε² − ε³`.
pub fn lattice_to_cyclo(x: Lattice5Point) -> CycloPoint {
    let x = x.0;
    CycloPoint::new(x[0] - x[4], x[1] - x[4], x[2] - x[4], x[3] - x[4])
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AcceptedPoint {
    pub lattice: Lattice5Point,
    pub cyclo: CycloPoint,
    pub position: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Quasilattice {
    /// Sorted by lattice coordinates.
    pub points: Vec<AcceptedPoint>,
    pub gamma: Vec3,
    pub radius: f64,
    pub box_size: i64,
    pub warnings: Vec<String>,
}

impl Quasilattice {
    /// Accepted point nearest the origin, ties broken by lattice order.
    pub fn nearest_to_origin(&self) -> Option<&AcceptedPoint> {
        self.points.iter().min_by(|a, b| {
            let (da, db) = (
                a.position.0.hypot(a.position.1),
                b.position.0.hypot(b.position.1),
            );
            da.total_cmp(&db).then(a.lattice.cmp(&b.lattice))
        })
    }

    /// Exact symmetry order of the points in the largest disc about the
    /// nearest point that the radius fully covers.
    pub fn exact_symmetry_order(&self) -> u32 {
        let Some(c) = self.nearest_to_origin() else {
            return 1;
        };
        let reach = self.radius - c.position.0.hypot(c.position.1);
        // positions are √(2/5) times the cyclotomic embedding
        let bound = (reach / (0.4f64).sqrt()).powi(2).floor() as i64 - 1;
        if bound <= 0 {
            return 1;
        }
        let limit = GoldenInt::from_int(bound);
        let disc: Vec<CycloPoint> = self
            .points
            .iter()
            .map(|p| p.cyclo)
            .filter(|&z| {
                (z - c.cyclo)
                    .sq_norm()
                    .is_ok_and(|n| n.cmp_value(limit).is_le())
            })
            .collect();
        symmetry_order(&disc, c.cyclo)
    }
}

fn validate_args(radius: f64, gamma: Vec3, box_size: i64) -> Result<(), ProjectionError> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(ProjectionError::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if gamma.iter().any(|g| !g.is_finite()) {
        return Err(ProjectionError::InvalidArgument(
            "gamma must be finite".into(),
        ));
    }
    if !(0..=64).contains(&box_size) {
        return Err(ProjectionError::InvalidArgument(format!(
            "box must be in 0..=64, got {box_size}"
        )));
    }
    Ok(())
}

/// All `x ∈ [−box, box]⁵` with `internal(x) − gamma` strictly inside the
/// window and `|par(x)| ≤ radius`.
pub fn generate_quasilattice(
    radius: f64,
    gamma: Vec3,
    box_size: i64,
) -> Result<Quasilattice, ProjectionError> {
    generate_quasilattice_with(radius, gamma, box_size, None)
}

pub fn generate_quasilattice_with(
    radius: f64,
    gamma: Vec3,
    box_size: i64,
    jobs: Option<usize>,
) -> Result<Quasilattice, ProjectionError> {
    validate_args(radius, gamma, box_size)?;
    let window = build_window()?;
    generate_in(&window, radius, gamma, box_size, jobs)
}

fn generate_in(
    window: &Window,
    radius: f64,
    gamma: Vec3,
    box_size: i64,
    jobs: Option<usize>,
) -> Result<Quasilattice, ProjectionError> {
    let b = projection_basis();
    let s = (0.4f64).sqrt();
    // Any accepted x satisfies x = parᵀ·par(x) + perpᵀ·perp(x) + deltaᵀ·delta(x).
    let delta_hi = 5f64.sqrt() + gamma[2].abs();
    let needed =
        s * (radius + window.perp_extent() + gamma[0].hypot(gamma[1])) + delta_hi / 5f64.sqrt();
    let mut warnings = Vec::new();
    if needed.ceil() as i64 > box_size {
        warnings.push(format!(
            "box {box_size} may truncate the disc of radius {radius}: coordinates up to {} can be accepted",
            needed.ceil() as i64
        ));
    }
    let range: Vec<i64> = (-box_size..=box_size).collect();
    let run = || {
        let mut pts: Vec<AcceptedPoint> = range
            .par_iter()
            .flat_map_iter(|&x0| {
                let mut out = Vec::new();
                for &x1 in &range {
                    for &x2 in &range {
                        for &x3 in &range {
                            for &x4 in &range {
                                let lat = [x0, x1, x2, x3, x4];
                                let xf = lat.map(|v| v as f64);
                                let par = b.par_of(&xf);
                                if par.0.hypot(par.1) > radius {
                                    continue;
                                }
                                let y = b.internal_of(&xf);
                                if !window.contains_strict([
                                    y[0] - gamma[0],
                                    y[1] - gamma[1],
                                    y[2] - gamma[2],
                                ]) {
                                    continue;
                                }
                                let lattice = Lattice5Point(lat);
                                out.push(AcceptedPoint {
                                    lattice,
                                    cyclo: lattice_to_cyclo(lattice),
                                    position: par,
                                });
                            }
                        }
                    }
                }
                out
            })
            .collect();
        pts.sort_by_key(|p| p.lattice);
        pts
    };
    let points = parallel::install(jobs, run).map_err(ProjectionError::Pool)?;
    Ok(Quasilattice {
        points,
        gamma,
        radius,
        box_size,
        warnings,
    })
}

/// Largest `n ∈ {10, 5, 2, 1}` such that rotating by 360°/n about `center`
/// sends every point within `reach − tol` of the center to within `tol` of
/// some point.
pub fn float_symmetry_order(
    points: &[(f64, f64)],
    center: (f64, f64),
    reach: f64,
    tol: f64,
) -> u32 {
    let cell = tol.max(1e-12) * 4.0;
    let key = |p: (f64, f64)| ((p.0 / cell).floor() as i64, (p.1 / cell).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<(f64, f64)>> = HashMap::new();
    for &p in points {
        grid.entry(key(p)).or_default().push(p);
    }
    let has_match = |q: (f64, f64)| {
        let (kx, ky) = key(q);
        (-1..=1).any(|dx| {
            (-1..=1).any(|dy| {
                grid.get(&(kx + dx, ky + dy))
                    .is_some_and(|v| v.iter().any(|p| (p.0 - q.0).hypot(p.1 - q.1) <= tol))
            })
        })
    };
    let inner: Vec<(f64, f64)> = points
        .iter()
        .map(|p| (p.0 - center.0, p.1 - center.1))
        .filter(|d| d.0.hypot(d.1) <= reach - 2.0 * tol)
        .collect();
    for n in [10u32, 5, 2] {
        let (s, c) = (2.0 * PI / n as f64).sin_cos();
        let ok = inner
            .par_iter()
            .all(|d| has_match((center.0 + c * d.0 - s * d.1, center.1 + s * d.0 + c * d.1)));
        if ok {
            return n;
        }
    }
    1
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanEntry {
    pub gamma: Vec3,
    pub order: u32,
    pub count: usize,
    pub warnings: Vec<String>,
}

/// `steps` evenly spaced gammas from `from` to `to`, both included.
pub fn linear_path(from: Vec3, to: Vec3, steps: usize) -> Vec<Vec3> {
    match steps {
        0 => vec![],
        1 => vec![from],
        _ => (0..steps)
            .map(|i| {
                let t = i as f64 / (steps - 1) as f64;
                [0, 1, 2].map(|k| from[k] + t * (to[k] - from[k]))
            })
            .collect(),
    }
}

/// Symmetry order and point count of the quasilattice at each gamma, about
/// the accepted point nearest the origin.
pub fn scan_offset(
    path: &[Vec3],
    radius: f64,
    box_size: i64,
) -> Result<Vec<ScanEntry>, ProjectionError> {
    scan_offset_with(path, radius, box_size, None)
}

pub fn scan_offset_with(
    path: &[Vec3],
    radius: f64,
    box_size: i64,
    jobs: Option<usize>,
) -> Result<Vec<ScanEntry>, ProjectionError> {
    if path.is_empty() {
        return Err(ProjectionError::InvalidArgument("empty gamma path".into()));
    }
    for &g in path {
        validate_args(radius, g, box_size)?;
    }
    let window = build_window()?;
    let run = || {
        path.par_iter()
            .map(|&gamma| {
                let q = generate_in(&window, radius, gamma, box_size, None)?;
                let order = match q.nearest_to_origin() {
                    Some(c) => {
                        let pts: Vec<(f64, f64)> = q.points.iter().map(|p| p.position).collect();
                        let reach = radius - c.position.0.hypot(c.position.1);
                        float_symmetry_order(&pts, c.position, reach, 1e-6 * radius)
                    }
                    None => 1,
                };
                Ok(ScanEntry {
                    gamma,
                    order,
                    count: q.points.len(),
                    warnings: q.warnings,
                })
            })
            .collect::<Result<Vec<_>, ProjectionError>>()
    };
    parallel::install(jobs, run).map_err(ProjectionError::Pool)?
}

/// Gamma whose window is centred on the origin of internal space.
pub fn symmetric_gamma() -> Vec3 {
    [0.0, 0.0, -(5f64.sqrt()) / 2.0]
}
