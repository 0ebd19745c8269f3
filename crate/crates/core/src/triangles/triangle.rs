use crate::error::{ArithError, TilingError};
use crate::exact::{CycloPoint, GoldenInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleKind {
    /// Angles (36°, 72°, 72°); legs are τ times the base.
    Acute,
    /// Angles (108°, 36°, 36°); the base is τ times the legs.
    Obtuse,
}

impl TriangleKind {
    pub fn code(self) -> char {
        match self {
            Self::Acute => 'A',
            Self::Obtuse => 'O',
        }
    }

    pub fn from_code(c: &str) -> Option<Self> {
        match c {
            "A" => Some(Self::Acute),
            "O" => Some(Self::Obtuse),
            _ => None,
        }
    }
}

/// Orientation sign of `(base0 − apex, base1 − apex)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Positive,
    Negative,
}

impl Chirality {
    pub fn sign(self) -> i32 {
        match self {
            Self::Positive => 1,
            Self::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }

    pub fn code(self) -> char {
        match self {
            Self::Positive => '+',
            Self::Negative => '-',
        }
    }
}

/// A Robinson triangle with exact vertices.
///
/// `base[0]` and `base[1]` are ordered: deflation splits the leg
/// `apex → base[1]` of an acute triangle and the leg `base[0] → apex` of an
/// obtuse one, so the order carries the substitution labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub kind: TriangleKind,
    pub apex: CycloPoint,
    pub base: [CycloPoint; 2],
}

/// `x·(τ − 1)`, i.e. `x / τ`.
fn shrink(x: CycloPoint) -> Result<CycloPoint, ArithError> {
    x.checked_scale(GoldenInt::TAU_INV)
}

/// The point at fraction 1/τ along `from → to`.
fn golden_cut(from: CycloPoint, to: CycloPoint) -> Result<CycloPoint, ArithError> {
    from.checked_add(shrink(to.checked_sub(from)?)?)
}

impl Triangle {
    pub fn new(kind: TriangleKind, apex: CycloPoint, base0: CycloPoint, base1: CycloPoint) -> Self {
        Self {
            kind,
            apex,
            base: [base0, base1],
        }
    }

    pub fn vertices(&self) -> [CycloPoint; 3] {
        [self.apex, self.base[0], self.base[1]]
    }

    /// Squared lengths `[apex to base0, apex to base1, base0 to base1]`.
    pub fn edge_sq_norms(&self) -> Result<[GoldenInt; 3], ArithError> {
        Ok([
            self.base[0].checked_sub(self.apex)?.sq_norm()?,
            self.base[1].checked_sub(self.apex)?.sq_norm()?,
            self.base[1].checked_sub(self.base[0])?.sq_norm()?,
        ])
    }

    pub fn leg_sq_norm(&self) -> Result<GoldenInt, ArithError> {
        self.base[0].checked_sub(self.apex)?.sq_norm()
    }

    /// Twice the signed area in units of sin 72°.
    pub fn doubled_area_scaled(&self) -> Result<GoldenInt, ArithError> {
        let u = self.base[0].checked_sub(self.apex)?;
        let v = self.base[1].checked_sub(self.apex)?;
        u.cross_scaled(v)
    }

    pub fn chirality(&self) -> Result<Chirality, ArithError> {
        Ok(match self.doubled_area_scaled()?.signum() {
            s if s > 0 => Chirality::Positive,
            _ => Chirality::Negative,
        })
    }

    pub fn area(&self) -> f64 {
        let [(ax, ay), (bx, by), (cx, cy)] = self.vertices().map(|p| p.embed());
        0.5 * ((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)).abs()
    }

    /// Checks the exact shape invariants of the kind.
    pub fn check(&self) -> Result<(), TilingError> {
        let [a, b, c] = self.vertices();
        if a == b || b == c || a == c {
            return Err(TilingError::BadTriangle(format!(
                "repeated vertex in {self:?}"
            )));
        }
        let [l0, l1, base] = self.edge_sq_norms()?;
        if l0 != l1 {
            return Err(TilingError::BadTriangle(format!(
                "unequal legs {l0} vs {l1}"
            )));
        }
        let tau2 = GoldenInt::new(1, 1);
        let ok = match self.kind {
            TriangleKind::Acute => l0 == tau2.checked_mul(base)?,
            TriangleKind::Obtuse => base == tau2.checked_mul(l0)?,
        };
        if !ok {
            return Err(TilingError::BadTriangle(format!(
                "{:?} proportions violated: leg² {l0}, base² {base}",
                self.kind
            )));
        }
        if self.doubled_area_scaled()?.is_zero() {
            return Err(TilingError::BadTriangle("degenerate".into()));
        }
        Ok(())
    }

    /// Applies `v ↦ f(v)` to every vertex, keeping the labelling.
    pub fn map<F>(&self, mut f: F) -> Result<Self, ArithError>
    where
        F: FnMut(CycloPoint) -> Result<CycloPoint, ArithError>,
    {
        Ok(Self::new(
            self.kind,
            f(self.apex)?,
            f(self.base[0])?,
            f(self.base[1])?,
        ))
    }
}

/// Acute: apex 0, base `τ·1` and `τ·ε₁`. Legs τ, base 1.
pub fn canonical_acute() -> Triangle {
    let tau = CycloPoint::TAU;
    Triangle::new(
        TriangleKind::Acute,
        CycloPoint::ZERO,
        tau,
        tau * CycloPoint::EPS1,
    )
}

/// Obtuse: apex 0, legs τ along `1` and `ε₁³`, base τ².
pub fn canonical_obtuse() -> Triangle {
    let tau = CycloPoint::TAU;
    Triangle::new(
        TriangleKind::Obtuse,
        CycloPoint::ZERO,
        tau,
        tau.rotate36_by(3),
    )
}

/// One substitution step. Children are τ times smaller and tile the parent.
///
/// Acute `(A; B, C)`, with `Q` at 1/τ along `A → C`:
/// obtuse `(Q; B, A)` and acute `(B; C, Q)`.
///
/// Obtuse `(G; A, B)`, with `P` at 1/τ along `A → B` and `R` at 1/τ along
/// `A → G`: obtuse `(R; P, A)`, obtuse `(P; B, G)` and acute `(P; G, R)`.
///
/// The base order of each child fixes which of its edges the next step
/// splits; this order keeps neighbouring children edge-to-edge.
pub fn deflate_triangle(t: &Triangle) -> Result<Vec<Triangle>, TilingError> {
    t.check()?;
    deflate_unchecked(t).map_err(Into::into)
}

pub(crate) fn deflate_unchecked(t: &Triangle) -> Result<Vec<Triangle>, ArithError> {
    use TriangleKind::*;
    let [b0, b1] = t.base;
    Ok(match t.kind {
        Acute => {
            let a = t.apex;
            let q = golden_cut(a, b1)?;
            vec![
                Triangle::new(Obtuse, q, b0, a),
                Triangle::new(Acute, b0, b1, q),
            ]
        }
        Obtuse => {
            let gv = t.apex;
            let p = golden_cut(b0, b1)?;
            let r = golden_cut(b0, gv)?;
            vec![
                Triangle::new(Obtuse, r, p, b0),
                Triangle::new(Obtuse, p, b1, gv),
                Triangle::new(Acute, p, gv, r),
            ]
        }
    })
}
