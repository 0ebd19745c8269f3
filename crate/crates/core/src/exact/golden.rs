use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ArithError;

/// τ = (1+√5)/2 to full double precision.
pub const PHI: f64 = 1.618_033_988_749_895;

/// An element `a + bτ` of the golden ring Z[τ], where τ² = τ + 1.
///
/// Equality is fieldwise: the pair `(a, b)` is the unique representation.
/// Arithmetic is checked; the `checked_*` methods report overflow and the
/// operator impls panic on it rather than wrap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const TAU: Self = Self::new(0, 1);
    /// 1/τ = τ − 1.
    pub const TAU_INV: Self = Self::new(-1, 1);

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn from_int(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, ArithError> {
        Ok(Self {
            a: self
                .a
                .checked_add(rhs.a)
                .ok_or(ArithError::Overflow("golden add"))?,
            b: self
                .b
                .checked_add(rhs.b)
                .ok_or(ArithError::Overflow("golden add"))?,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, ArithError> {
        Ok(Self {
            a: self
                .a
                .checked_sub(rhs.a)
                .ok_or(ArithError::Overflow("golden sub"))?,
            b: self
                .b
                .checked_sub(rhs.b)
                .ok_or(ArithError::Overflow("golden sub"))?,
        })
    }

    pub fn checked_neg(self) -> Result<Self, ArithError> {
        Ok(Self {
            a: self
                .a
                .checked_neg()
                .ok_or(ArithError::Overflow("golden neg"))?,
            b: self
                .b
                .checked_neg()
                .ok_or(ArithError::Overflow("golden neg"))?,
        })
    }

    /// (a + bτ)(c + dτ) = (ac + bd) + (ad + bc + bd)τ.
    pub fn checked_mul(self, rhs: Self) -> Result<Self, ArithError> {
        let (a, b, c, d) = (self.a as i128, self.b as i128, rhs.a as i128, rhs.b as i128);
        let bd = b * d;
        narrow(a * c + bd, a * d + b * c + bd, "golden mul")
    }

    pub fn checked_scale(self, k: i64) -> Result<Self, ArithError> {
        Ok(Self {
            a: self
                .a
                .checked_mul(k)
                .ok_or(ArithError::Overflow("golden scale"))?,
            b: self
                .b
                .checked_mul(k)
                .ok_or(ArithError::Overflow("golden scale"))?,
        })
    }

    /// Galois conjugate √5 ↦ −√5: `a + bτ ↦ (a + b) − bτ`.
    pub fn conj(self) -> Self {
        Self {
            a: self.a.checked_add(self.b).expect("golden conj overflow"),
            b: self.b.checked_neg().expect("golden conj overflow"),
        }
    }

    /// Field norm `x·conj(x) = a² + ab − b²`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.a as i128, self.b as i128);
        a * a + a * b - b * b
    }

    pub fn is_unit(self) -> bool {
        self.norm().abs() == 1
    }

    pub fn embed(self) -> f64 {
        self.a as f64 + self.b as f64 * PHI
    }

    /// Exact sign of the real number `a + bτ`.
    pub fn signum(self) -> i32 {
        // a + bτ = (p + q√5)/2 with p = 2a + b, q = b
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        let sp = p.signum() as i32;
        let sq = q.signum() as i32;
        if sp == sq || sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        // opposite signs: compare p² against 5q²
        match (p * p).cmp(&(5 * q * q)) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0,
        }
    }

    /// Numeric comparison of the embedded reals, computed exactly.
    pub fn cmp_value(self, other: Self) -> Ordering {
        match self.checked_sub(other).map(|d| d.signum()) {
            Ok(s) => s.cmp(&0),
            Err(_) => self.embed().total_cmp(&other.embed()),
        }
    }

    /// Exact quotient, if it exists in Z[τ].
    pub fn checked_div(self, rhs: Self) -> Result<Self, ArithError> {
        let n = rhs.norm();
        if n == 0 {
            return Err(ArithError::InexactDivision("golden div by zero"));
        }
        let num = self.checked_mul(rhs.conj())?;
        let (a, b) = (num.a as i128, num.b as i128);
        if a % n != 0 || b % n != 0 {
            return Err(ArithError::InexactDivision("golden div"));
        }
        narrow(a / n, b / n, "golden div")
    }

    /// τ^k for any integer k (negative powers use 1/τ = τ − 1).
    pub fn tau_pow(k: i32) -> Result<Self, ArithError> {
        let base = if k >= 0 { Self::TAU } else { Self::TAU_INV };
        base.checked_pow(k.unsigned_abs())
    }

    pub fn checked_pow(self, mut e: u32) -> Result<Self, ArithError> {
        let mut acc = Self::ONE;
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(base)?;
            }
        }
        Ok(acc)
    }
}

fn narrow(a: i128, b: i128, what: &'static str) -> Result<GoldenInt, ArithError> {
    Ok(GoldenInt {
        a: i64::try_from(a).map_err(|_| ArithError::Overflow(what))?,
        b: i64::try_from(b).map_err(|_| ArithError::Overflow(what))?,
    })
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "{}-{}τ", self.a, self.b.unsigned_abs())
        } else {
            write!(f, "{}+{}τ", self.a, self.b)
        }
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl From<i64> for GoldenInt {
    fn from(a: i64) -> Self {
        Self::from_int(a)
    }
}

impl Add for GoldenInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("golden add overflow")
    }
}

impl Sub for GoldenInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("golden sub overflow")
    }
}

impl Mul for GoldenInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("golden mul overflow")
    }
}

impl Neg for GoldenInt {
    type Output = Self;
    fn neg(self) -> Self {
        self.checked_neg().expect("golden neg overflow")
    }
}

pub fn golden_mul(x: GoldenInt, y: GoldenInt) -> Result<GoldenInt, ArithError> {
    x.checked_mul(y)
}

pub fn golden_conj(x: GoldenInt) -> GoldenInt {
    x.conj()
}

pub fn golden_embed(x: GoldenInt) -> f64 {
    x.embed()
}
