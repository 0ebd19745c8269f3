use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::golden::GoldenInt;
use crate::error::ArithError;

const COS: [f64; 4] = [
    1.0,
    0.309_016_994_374_947_45,
    -0.809_016_994_374_947_5,
    -0.809_016_994_374_947_5,
];
const SIN: [f64; 4] = [
    0.0,
    0.951_056_516_295_153_5,
    0.587_785_252_292_473_1,
    -0.587_785_252_292_473_1,
];
pub const SIN72: f64 = 0.951_056_516_295_153_5;

/// A point `z0 + z1ε + z2ε² + z3ε³` of the rank-4 quasilattice Z[ε],
/// ε = exp(2πi/5).
///
/// Always stored fully reduced against ε⁴ = −1 − ε − ε² − ε³, so equality is
/// fieldwise. The derived ordering is lexicographic on `(z0, z1, z2, z3)`; it
/// is a canonical sort key, not a geometric order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CycloPoint {
    pub z: [i64; 4],
}

impl CycloPoint {
    pub const ZERO: Self = Self::new(0, 0, 0, 0);
    pub const ONE: Self = Self::new(1, 0, 0, 0);
    /// ε, rotation by 72°.
    pub const EPS: Self = Self::new(0, 1, 0, 0);
    /// ε₁ = −ε³ = exp(πi/5), rotation by 36°.
    pub const EPS1: Self = Self::new(0, 0, 0, -1);
    /// τ = −ε² − ε³.
    pub const TAU: Self = Self::new(0, 0, -1, -1);

    pub const fn new(z0: i64, z1: i64, z2: i64, z3: i64) -> Self {
        Self {
            z: [z0, z1, z2, z3],
        }
    }

    /// Embeds `a + bτ` as `a − bε² − bε³`.
    pub fn from_golden(x: GoldenInt) -> Self {
        Self::new(x.a, 0, -x.b, -x.b)
    }

    pub fn is_zero(self) -> bool {
        self.z == [0; 4]
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, ArithError> {
        let mut z = [0i64; 4];
        for (k, out) in z.iter_mut().enumerate() {
            *out = self.z[k]
                .checked_add(rhs.z[k])
                .ok_or(ArithError::Overflow("cyclo add"))?;
        }
        Ok(Self { z })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, ArithError> {
        let mut z = [0i64; 4];
        for (k, out) in z.iter_mut().enumerate() {
            *out = self.z[k]
                .checked_sub(rhs.z[k])
                .ok_or(ArithError::Overflow("cyclo sub"))?;
        }
        Ok(Self { z })
    }

    pub fn checked_neg(self) -> Result<Self, ArithError> {
        Self::ZERO.checked_sub(self)
    }

    /// Polynomial product reduced by ε⁵ = 1, then by ε⁴ = −1 − ε − ε² − ε³.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, ArithError> {
        let mut c = [0i128; 5];
        for i in 0..4 {
            for j in 0..4 {
                c[(i + j) % 5] += self.z[i] as i128 * rhs.z[j] as i128;
            }
        }
        let top = c[4];
        let mut z = [0i64; 4];
        for k in 0..4 {
            z[k] = i64::try_from(c[k] - top).map_err(|_| ArithError::Overflow("cyclo mul"))?;
        }
        Ok(Self { z })
    }

    pub fn checked_scale(self, x: GoldenInt) -> Result<Self, ArithError> {
        self.checked_mul(Self::from_golden(x))
    }

    /// Multiplication by ε: `(−z3, z0 − z3, z1 − z3, z2 − z3)`.
    pub fn rotate72(self) -> Self {
        let [z0, z1, z2, z3] = self.z;
        let sub = |a: i64, b: i64| a.checked_sub(b).expect("cyclo rotate overflow");
        Self::new(
            z3.checked_neg().expect("cyclo rotate overflow"),
            sub(z0, z3),
            sub(z1, z3),
            sub(z2, z3),
        )
    }

    /// Multiplication by ε₁ = −ε³ (rotation by 36°).
    pub fn rotate36(self) -> Self {
        let r = self.rotate72().rotate72().rotate72();
        r.checked_neg().expect("cyclo rotate overflow")
    }

    /// Rotation by `steps` multiples of 36°.
    pub fn rotate36_by(self, steps: i32) -> Self {
        let n = steps.rem_euclid(10);
        let mut p = self;
        if n % 2 == 1 {
            p = p.rotate36();
        }
        for _ in 0..n / 2 {
            p = p.rotate72();
        }
        p
    }

    /// Complex conjugation: ε^k ↦ ε^(5−k), reduced.
    pub fn conj(self) -> Self {
        let [z0, z1, z2, z3] = self.z;
        let sub = |a: i64, b: i64| a.checked_sub(b).expect("cyclo conj overflow");
        Self::new(
            sub(z0, z1),
            z1.checked_neg().expect("cyclo conj overflow"),
            sub(z3, z1),
            sub(z2, z1),
        )
    }

    /// If the value is real, its coordinates in Z[τ].
    pub fn to_golden(self) -> Result<GoldenInt, ArithError> {
        let [z0, z1, z2, z3] = self.z;
        if z1 != 0 || z2 != z3 {
            return Err(ArithError::NotReal(format!("{self:?}")));
        }
        Ok(GoldenInt::new(
            z0,
            z2.checked_neg().ok_or(ArithError::Overflow("to_golden"))?,
        ))
    }

    /// `|p|² = p·conj(p)` as an element of Z[τ].
    pub fn sq_norm(self) -> Result<GoldenInt, ArithError> {
        self.checked_mul(self.conj())?.to_golden()
    }

    /// `Im(p) / sin 72°`, an element of Z[τ].
    pub fn im_scaled(self) -> GoldenInt {
        let [_, z1, z2, z3] = self.z;
        let d = z2 - z3;
        GoldenInt::new(z1 - d, d)
    }

    /// `2·Re(p)`, an element of Z[τ].
    pub fn re_doubled(self) -> GoldenInt {
        let [z0, z1, z2, z3] = self.z;
        GoldenInt::new(2 * z0 - z1, z1 - z2 - z3)
    }

    /// `Im(conj(self)·other) / sin 72°`: twice the signed area spanned by the
    /// two vectors, in units of sin 72°.
    pub fn cross_scaled(self, other: Self) -> Result<GoldenInt, ArithError> {
        Ok(self.conj().checked_mul(other)?.im_scaled())
    }

    pub fn embed(self) -> (f64, f64) {
        let mut x = 0.0;
        let mut y = 0.0;
        for k in 0..4 {
            x += self.z[k] as f64 * COS[k];
            y += self.z[k] as f64 * SIN[k];
        }
        (x, y)
    }
}

impl fmt::Debug for CycloPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.z;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl Add for CycloPoint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("cyclo add overflow")
    }
}

impl Sub for CycloPoint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("cyclo sub overflow")
    }
}

impl Mul for CycloPoint {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("cyclo mul overflow")
    }
}

impl Neg for CycloPoint {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("cyclo neg overflow")
    }
}

pub fn cyclo_mul(p: CycloPoint, q: CycloPoint) -> Result<CycloPoint, ArithError> {
    p.checked_mul(q)
}

pub fn cyclo_rotate72(p: CycloPoint) -> CycloPoint {
    p.rotate72()
}

pub fn cyclo_conj(p: CycloPoint) -> CycloPoint {
    p.conj()
}

pub fn sq_norm(p: CycloPoint) -> Result<GoldenInt, ArithError> {
    p.sq_norm()
}

pub fn cyclo_embed(p: CycloPoint) -> (f64, f64) {
    p.embed()
}

#[cfg(test)]
mod tests {
    use super::*;

    const fn c(a: i64, b: i64, d: i64, e: i64) -> CycloPoint {
        CycloPoint::new(a, b, d, e)
    }

    /// Multiplies as polynomials mod x⁵ − 1, then removes multiples of
    /// 1 + x + x² + x³ + x⁴ so the x⁴ coefficient vanishes.
    fn oracle_mul(p: CycloPoint, q: CycloPoint) -> CycloPoint {
        let mut full = [0i64; 9];
        for i in 0..4 {
            for j in 0..4 {
                full[i + j] += p.z[i] * q.z[j];
            }
        }
        let mut m5 = [0i64; 5];
        for (k, v) in full.iter().enumerate() {
            m5[k % 5] += v;
        }
        let t = m5[4];
        c(m5[0] - t, m5[1] - t, m5[2] - t, m5[3] - t)
    }

    #[test]
    fn mul_examples() {
        let e2 = c(0, 0, 1, 0);
        let e3 = c(0, 0, 0, 1);
        assert_eq!(cyclo_mul(e2, e3).unwrap(), c(1, 0, 0, 0));
        assert_eq!(cyclo_mul(e3, CycloPoint::EPS).unwrap(), c(-1, -1, -1, -1));
        let tau_c = c(0, 0, -1, -1);
        assert_eq!(cyclo_mul(tau_c, tau_c).unwrap(), c(1, 0, -1, -1));
        assert_eq!(oracle_mul(tau_c, tau_c), c(1, 0, -1, -1));
        assert_eq!(
            cyclo_mul(tau_c, tau_c).unwrap(),
            CycloPoint::ONE + CycloPoint::from_golden(GoldenInt::TAU)
        );
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(cyclo_rotate72(c(1, 0, 0, 0)), c(0, 1, 0, 0));
        assert_eq!(cyclo_rotate72(c(0, 0, 0, 1)), c(-1, -1, -1, -1));
        let p = c(3, -2, 7, 1);
        let mut q = p;
        for _ in 0..5 {
            q = cyclo_rotate72(q);
        }
        assert_eq!(q, p);
        assert_eq!(p.rotate72(), p.checked_mul(CycloPoint::EPS).unwrap());
    }

    #[test]
    fn rotate36_is_eps1() {
        let p = c(2, -1, 4, 5);
        assert_eq!(p.rotate36(), p * CycloPoint::EPS1);
        assert_eq!(p.rotate36().rotate36(), p.rotate72());
        assert_eq!(p.rotate36_by(10), p);
        assert_eq!(p.rotate36_by(-1).rotate36(), p);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(cyclo_conj(c(1, 0, 0, 0)), c(1, 0, 0, 0));
        assert_eq!(cyclo_conj(c(0, 1, 0, 0)), c(-1, -1, -1, -1));
        assert_eq!(cyclo_conj(c(0, 0, -1, -1)), c(0, 0, -1, -1));
    }

    #[test]
    fn sq_norm_examples() {
        assert_eq!(sq_norm(c(0, 1, 0, 0)).unwrap(), GoldenInt::new(1, 0));
        assert_eq!(sq_norm(c(1, 1, 0, 0)).unwrap(), GoldenInt::new(1, 1));
        let (x, y) = c(1, 1, 0, 0).embed();
        assert!((x * x + y * y - GoldenInt::new(1, 1).embed()).abs() < 1e-12);
        assert_eq!(sq_norm(c(0, 0, -1, -1)).unwrap(), GoldenInt::new(1, 1));
    }

    #[test]
    fn not_real_is_rejected() {
        assert!(matches!(
            c(0, 1, 0, 0).to_golden(),
            Err(ArithError::NotReal(_))
        ));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(cyclo_embed(c(1, 0, 0, 0)), (1.0, 0.0));
        let (x, y) = cyclo_embed(c(0, 1, 0, 0));
        assert!((x - 0.309_016_9).abs() < 1e-7 && (y - 0.951_056_5).abs() < 1e-7);
        assert!((x - (5f64.sqrt() - 1.0) / 4.0).abs() < 1e-15);
        let (x, y) = cyclo_embed(c(0, 0, -1, -1));
        assert!((x - 1.618_033_9).abs() < 1e-7 && y.abs() < 1e-15);
    }

    #[test]
    fn scaled_parts_match_embedding() {
        let p = c(3, -5, 2, 7);
        let (x, y) = p.embed();
        assert!((p.re_doubled().embed() - 2.0 * x).abs() < 1e-12);
        assert!((p.im_scaled().embed() * SIN72 - y).abs() < 1e-12);
    }

    #[test]
    fn cross_orientation() {
        let one = CycloPoint::ONE;
        assert_eq!(one.cross_scaled(CycloPoint::EPS1).unwrap().signum(), 1);
        assert_eq!(CycloPoint::EPS1.cross_scaled(one).unwrap().signum(), -1);
        assert_eq!(one.cross_scaled(CycloPoint::TAU).unwrap().signum(), 0);
    }
}
