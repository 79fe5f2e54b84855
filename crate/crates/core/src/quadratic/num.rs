use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Returns true when `d` is squarefree and not 0 or 1. Negative values are
/// allowed so that characteristic roots with negative discriminant can be
/// represented; the Pell machinery itself requires `d > 1`.
pub fn is_field_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Writes `n = k²·core` with `core` squarefree and carrying the sign of `n`.
/// Requires `0 < |n| ≤ i64::MAX`.
pub fn square_decomposition(n: &BigInt) -> Result<(BigInt, i64)> {
    let signed = i64::try_from(n)
        .ok()
        .filter(|v| *v != 0 && *v != i64::MIN)
        .ok_or_else(|| Error::InvalidInput(format!("cannot decompose {n}")))?;
    let mut rest = signed.unsigned_abs();
    let (mut k, mut core) = (1u64, 1u64);
    let mut p = 2u64;
    // once p³ > rest, rest has at most two prime factors, all larger than p
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            k *= p;
        }
        if rest % p == 0 {
            rest /= p;
            core *= p;
        }
        p += 1;
    }
    let r = rest.isqrt();
    if r * r == rest {
        k *= r;
    } else {
        core *= rest;
    }
    let core = core as i64 * signed.signum();
    Ok((BigInt::from(k), core))
}

pub(crate) fn check_field(d: i64) -> Result<()> {
    if is_field_discriminant(d) {
        Ok(())
    } else {
        Err(Error::NotSquarefree(d))
    }
}

/// An exact element `x + y·√d` of the quadratic field ℚ(√d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    x: BigRational,
    y: BigRational,
    d: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` to two elements of the same field.
pub fn quad_arith(a: &QuadNum, b: &QuadNum, op: ArithOp) -> Result<QuadNum> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuadNum {
    pub fn new(x: BigRational, y: BigRational, d: i64) -> Result<Self> {
        check_field(d)?;
        Ok(Self { x, y, d })
    }

    pub fn from_ints(x: i64, y: i64, d: i64) -> Result<Self> {
        Self::new(rat(x), rat(y), d)
    }

    /// `(x + y·√d) / 2` with integer `x`, `y`.
    pub fn half_integral(x: &BigInt, y: &BigInt, d: i64) -> Result<Self> {
        let two = BigInt::from(2);
        Self::new(
            BigRational::new(x.clone(), two.clone()),
            BigRational::new(y.clone(), two),
            d,
        )
    }

    /// Embeds a rational number into ℚ(√d).
    pub fn from_rational(r: BigRational, d: i64) -> Result<Self> {
        Self::new(r, BigRational::zero(), d)
    }

    /// √d itself.
    pub fn sqrt_d(d: i64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    // Callers guarantee `d` has already been validated.
    pub(crate) fn raw(x: BigRational, y: BigRational, d: i64) -> Self {
        Self { x, y, d }
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.x.clone(), -self.y.clone(), self.d)
    }

    /// `x² − d·y²`.
    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - rat(self.d) * &self.y * &self.y
    }

    /// `2x`.
    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::MixedField(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self::raw(&self.x - &other.x, &self.y - &other.y, self.d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = other.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        Self::raw(&self.x + &other.x, &self.y + &other.y, self.d)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let d = rat(self.d);
        let x = &self.x * &other.x + d * &self.y * &other.y;
        let y = &self.x * &other.y + &self.y * &other.x;
        Self::raw(x, y, self.d)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::raw(&self.x * r, &self.y * r, self.d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::raw(&self.x / &n, -(&self.y / &n), self.d))
    }

    /// Exact integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_unsigned(exp.unsigned_abs()))
    }

    pub(crate) fn pow_unsigned(&self, mut e: u64) -> Self {
        let mut acc = Self::raw(BigRational::one(), BigRational::zero(), self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Sign of the real embedding `x + y·√d` (d > 0 only).
    pub fn real_signum(&self) -> Result<i32> {
        if self.d < 0 {
            return Err(Error::InvalidInput(format!(
                "sqrt({}) has no real embedding",
                self.d
            )));
        }
        let sx = sign(&self.x);
        let sy = sign(&self.y);
        if sx == 0 || sx == sy {
            return Ok(if sx == 0 { sy } else { sx });
        }
        if sy == 0 {
            return Ok(sx);
        }
        // x and y·√d have opposite signs: compare x² with d·y².
        let diff = self.norm();
        Ok(if diff.is_positive() {
            sx
        } else if diff.is_zero() {
            0
        } else {
            sy
        })
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::raw(-self.x, -self.y, self.d)
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::raw(-self.x.clone(), -self.y.clone(), self.d)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, y) = if self.y.is_negative() {
            ("-", -self.y.clone())
        } else {
            ("+", self.y.clone())
        };
        let root = if y.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{y}*sqrt({})", self.d)
        };
        if self.x.is_zero() && !self.y.is_zero() {
            let sign = if op == "-" { "-" } else { "" };
            write!(f, "{sign}{root}")
        } else {
            write!(f, "{}{op}{root}", self.x)
        }
    }
}
