//! The Σ5 root system and its Weyl group D5, over Z[τ].
//!
//! Coordinates are taken in the simple-root basis `(a, b)` with `a = 1` and
//! `b = ε²` (the root at 144°). Vectors are rows: a matrix `M` acts by
//! `v ↦ v·M`, so row `i` of a reflection matrix is the image of basis vector
//! `i`. This is the convention under which the printed `S_a = (−1 0; τ 1)`
//! sends `a ↦ −a` and `b ↦ b + τa`.
//!
//! Inner products are stored doubled, `2(x, y)`, with Gram entries
//! `2(a,a) = 2(b,b) = 2` and `2(a,b) = −τ`, so every value stays in Z[τ].

use std::collections::HashSet;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{ArithError, GroupError};
use crate::exact::{CycloPoint, GoldenInt};

const fn g(a: i64, b: i64) -> GoldenInt {
    GoldenInt::new(a, b)
}

/// A vector `c_a·a + c_b·b` in the simple-root basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootVec {
    pub ca: GoldenInt,
    pub cb: GoldenInt,
}

impl RootVec {
    pub const fn new(ca: GoldenInt, cb: GoldenInt) -> Self {
        Self { ca, cb }
    }

    /// Doubled inner product `2(x, y)`.
    pub fn dot2(self, other: Self) -> GoldenInt {
        let two = GoldenInt::from_int(2);
        let cross = self.ca * other.cb + self.cb * other.ca;
        two * (self.ca * other.ca + self.cb * other.cb) - GoldenInt::TAU * cross
    }

    /// The same vector as a point of Z[ε].
    pub fn to_cyclo(self) -> CycloPoint {
        let b = CycloPoint::new(0, 0, 1, 0);
        CycloPoint::from_golden(self.ca) + CycloPoint::from_golden(self.cb) * b
    }

    fn is_parallel(self, other: Self) -> bool {
        (self.ca * other.cb - self.cb * other.ca).is_zero()
    }
}

impl Neg for RootVec {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.ca, -self.cb)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})a + ({})b", self.ca, self.cb)
    }
}

/// A 2×2 matrix over Z[τ] acting on row vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2G {
    pub m: [[GoldenInt; 2]; 2],
}

impl Mat2G {
    pub const IDENTITY: Self = Self::new([[g(1, 0), g(0, 0)], [g(0, 0), g(1, 0)]]);

    pub const fn new(m: [[GoldenInt; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn det(&self) -> GoldenInt {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        let mut out = [[GoldenInt::ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let p = self.m[i][0].checked_mul(rhs.m[0][j])?;
                let q = self.m[i][1].checked_mul(rhs.m[1][j])?;
                *cell = p.checked_add(q)?;
            }
        }
        Ok(Self::new(out))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::IDENTITY, |acc, _| acc * *self)
    }

    /// Inverse over Z[τ]; exists iff the determinant is a unit.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        let d = self.det();
        let [[p, q], [r, s]] = self.m;
        let div = |x: GoldenInt| x.checked_div(d);
        Ok(Self::new([[div(s)?, div(-q)?], [div(-r)?, div(p)?]]))
    }

    /// Applies the operator to a row vector: `v·M`.
    pub fn apply(&self, v: RootVec) -> RootVec {
        RootVec::new(
            v.ca * self.m[0][0] + v.cb * self.m[1][0],
            v.ca * self.m[0][1] + v.cb * self.m[1][1],
        )
    }

    /// Operator composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        *other * *self
    }
}

impl Mul for Mat2G {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("matrix overflow")
    }
}

impl fmt::Display for Mat2G {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ {}  {} ]", self.m[0][0], self.m[0][1])?;
        write!(f, "[ {}  {} ]", self.m[1][0], self.m[1][1])
    }
}

/// `(S_a, S_b)` exactly as printed: `S_a = (−1 0; τ 1)`, `S_b = (1 τ; 0 −1)`.
pub fn simple_reflections() -> (Mat2G, Mat2G) {
    let sa = Mat2G::new([[g(-1, 0), g(0, 0)], [g(0, 1), g(1, 0)]]);
    let sb = Mat2G::new([[g(1, 0), g(0, 1)], [g(0, 0), g(-1, 0)]]);
    (sa, sb)
}

/// The ten elements of the group generated by `S_a` and `S_b`, as words in
/// the generators. `C = S_a·S_b`.
pub fn named_elements() -> Vec<(&'static str, Mat2G)> {
    let (sa, sb) = simple_reflections();
    let c = sa * sb;
    vec![
        ("I", Mat2G::IDENTITY),
        ("C = S_a S_b", c),
        ("C^2", c.pow(2)),
        ("C^3", c.pow(3)),
        ("C^4", c.pow(4)),
        ("S_a", sa),
        ("S_b", sb),
        ("S_a S_b S_a", sa * sb * sa),
        ("S_b S_a S_b", sb * sa * sb),
        ("S_a S_b S_a S_b S_a", c.pow(2) * sa),
    ]
}

pub const DEFAULT_CLOSURE_BOUND: usize = 1000;

/// Closure of `generators` under multiplication, including the identity, in
/// breadth-first discovery order.
pub fn group_closure(generators: &[Mat2G], bound: usize) -> Result<Vec<Mat2G>, GroupError> {
    for (i, m) in generators.iter().enumerate() {
        if !m.det().is_unit() {
            return Err(GroupError::NotInvertible(i));
        }
    }
    let mut seen: HashSet<Mat2G> = HashSet::new();
    let mut order = vec![Mat2G::IDENTITY];
    seen.insert(Mat2G::IDENTITY);
    let mut head = 0;
    while head < order.len() {
        let cur = order[head];
        head += 1;
        for gen in generators {
            let next = cur.checked_mul(gen)?;
            if seen.insert(next) {
                if order.len() == bound {
                    return Err(GroupError::ClosureBound(bound));
                }
                order.push(next);
            }
        }
    }
    Ok(order)
}

/// `S_r(x) = x − 2(r,x)/(r,r)·r` for a unit root (`2(r,r) = 2`, so the
/// coefficient is the doubled Gram value itself).
pub fn reflect_in_root(r: RootVec) -> Result<Mat2G, GroupError> {
    let n = r.dot2(r);
    if n != GoldenInt::from_int(2) {
        return Err(GroupError::NonUnitRoot(r.to_string(), n.to_string()));
    }
    let basis = [
        RootVec::new(GoldenInt::ONE, GoldenInt::ZERO),
        RootVec::new(GoldenInt::ZERO, GoldenInt::ONE),
    ];
    let mut m = [[GoldenInt::ZERO; 2]; 2];
    for (i, e) in basis.iter().enumerate() {
        let c = r.dot2(*e);
        m[i][0] = e.ca.checked_sub(c.checked_mul(r.ca)?)?;
        m[i][1] = e.cb.checked_sub(c.checked_mul(r.cb)?)?;
    }
    Ok(Mat2G::new(m))
}

/// `{±a, ±b, ±(a + τb), ±(b + τa), ±τ(a + b)}`, positive roots first.
pub fn roots_sigma5() -> Vec<RootVec> {
    let one = GoldenInt::ONE;
    let zero = GoldenInt::ZERO;
    let tau = GoldenInt::TAU;
    let positive = [
        RootVec::new(one, zero),
        RootVec::new(zero, one),
        RootVec::new(one, tau),
        RootVec::new(tau, one),
        RootVec::new(tau, tau),
    ];
    positive
        .iter()
        .copied()
        .chain(positive.iter().map(|&r| -r))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    /// `root` has a parallel root other than ±root.
    R1 { root: RootVec, parallel: RootVec },
    /// Reflecting `target` in `root` leaves the root set.
    R2 {
        root: RootVec,
        target: RootVec,
        image: Option<RootVec>,
    },
    /// A group element maps `root` outside the root set.
    Orbit { element: usize, root: RootVec },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub r1: Result<(), AxiomFailure>,
    pub r2: Result<(), AxiomFailure>,
    pub orbit: Result<(), AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.r1.is_ok() && self.r2.is_ok() && self.orbit.is_ok()
    }
}

/// Checks R1 (only ±r are parallel to r) and R2 (each root reflection
/// permutes the set), plus closure of the set under the whole group.
pub fn check_axioms(roots: &[RootVec], group: &[Mat2G]) -> AxiomReport {
    let set: HashSet<RootVec> = roots.iter().copied().collect();

    let r1 = roots
        .iter()
        .find_map(|&r| {
            roots
                .iter()
                .find(|&&s| r.is_parallel(s) && s != r && s != -r)
                .map(|&s| AxiomFailure::R1 {
                    root: r,
                    parallel: s,
                })
        })
        .map_or(Ok(()), Err);

    let r2 = (|| {
        for &r in roots {
            let refl = match reflect_in_root(r) {
                Ok(m) => m,
                Err(_) => {
                    return Err(AxiomFailure::R2 {
                        root: r,
                        target: r,
                        image: None,
                    });
                }
            };
            for &s in roots {
                let img = refl.apply(s);
                if !set.contains(&img) {
                    return Err(AxiomFailure::R2 {
                        root: r,
                        target: s,
                        image: Some(img),
                    });
                }
            }
        }
        Ok(())
    })();

    let orbit = (|| {
        for (i, w) in group.iter().enumerate() {
            for &r in roots {
                if !set.contains(&w.apply(r)) {
                    return Err(AxiomFailure::Orbit {
                        element: i,
                        root: r,
                    });
                }
            }
        }
        Ok(())
    })();

    AxiomReport { r1, r2, orbit }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationReport {
    pub pairs_checked: usize,
    pub first_failure: Option<(usize, RootVec)>,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Verifies `w ∘ S_r ∘ w⁻¹ = S_{w(r)}` for every group element and root.
pub fn check_theorem1(group: &[Mat2G], roots: &[RootVec]) -> ConjugationReport {
    let mut pairs_checked = 0;
    for (i, w) in group.iter().enumerate() {
        let Ok(w_inv) = w.inverse() else {
            return ConjugationReport {
                pairs_checked,
                first_failure: Some((i, roots[0])),
            };
        };
        for &r in roots {
            pairs_checked += 1;
            let lhs = reflect_in_root(r).map(|s| w.compose(&s.compose(&w_inv)));
            let rhs = reflect_in_root(w.apply(r));
            match (lhs, rhs) {
                (Ok(l), Ok(rr)) if l == rr => {}
                _ => {
                    return ConjugationReport {
                        pairs_checked,
                        first_failure: Some((i, r)),
                    };
                }
            }
        }
    }
    ConjugationReport {
        pairs_checked,
        first_failure: None,
    }
}

/// The 72° rotation of the rank-4 quasilattice in its integer coordinates:
/// `(z0, z1, z2, z3) ↦ (−z3, z0 − z3, z1 − z3, z2 − z3)`.
pub fn rank4_rotation(z: [i64; 4]) -> [i64; 4] {
    let [z0, z1, z2, z3] = z;
    [-z3, z0 - z3, z1 - z3, z2 - z3]
}
