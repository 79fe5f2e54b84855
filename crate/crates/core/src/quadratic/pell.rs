//! Continued fractions of √d and the classical Pell solutions derived from them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::num::{is_field_discriminant, QuadNum};
use crate::error::{Error, Result};
use crate::serde_big;

/// `√d = [a0; period, period, ...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub a0: u64,
    pub period: Vec<u64>,
}

pub(crate) fn check_real_field(d: u64) -> Result<i64> {
    let signed = i64::try_from(d).map_err(|_| Error::NotSquarefree(i64::MAX))?;
    if d > 1 && is_field_discriminant(signed) {
        Ok(signed)
    } else {
        Err(Error::NotSquarefree(signed))
    }
}

/// Periodic expansion of √d by the exact `(m, q)` recursion
/// `m' = a·q − m`, `q' = (d − m'²)/q`, `a' = ⌊(a0 + m')/q'⌋`.
pub fn continued_fraction_sqrt(d: u64) -> Result<ContinuedFraction> {
    check_real_field(d)?;
    let dd = d as u128;
    let a0 = dd.isqrt();
    let (mut m, mut q, mut a) = (0u128, 1u128, a0);
    let mut seen: HashMap<(u128, u128), usize> = HashMap::new();
    let mut partials = Vec::new();
    loop {
        m = a * q - m;
        q = (dd - m * m) / q;
        a = (a0 + m) / q;
        if let Some(&start) = seen.get(&(m, q)) {
            let period = partials[start..].to_vec();
            return Ok(ContinuedFraction {
                a0: a0 as u64,
                period,
            });
        }
        seen.insert((m, q), partials.len());
        partials.push(a as u64);
    }
}

/// Fundamental solutions attached to ℚ(√d) with basis {1, √d}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellData {
    pub d: u64,
    /// Minimal positive `(x, y)` with `x² − d·y² = 1`.
    #[serde(serialize_with = "serde_big::pair")]
    pub fundamental: (BigInt, BigInt),
    /// Minimal positive `(x, y)` with `x² − d·y² = −1`, when it exists.
    #[serde(serialize_with = "serde_big::opt_pair")]
    pub negative: Option<(BigInt, BigInt)>,
    /// Minimal positive `(t, u)` with `t² − d·u² = 4`.
    #[serde(serialize_with = "serde_big::pair")]
    pub automorph: (BigInt, BigInt),
    pub continued_fraction: ContinuedFraction,
}

impl PellData {
    pub fn cf_period(&self) -> usize {
        self.continued_fraction.period.len()
    }

    fn field(&self) -> i64 {
        self.d as i64
    }

    /// `x₁ + y₁√d`.
    pub fn fundamental_unit(&self) -> QuadNum {
        let (x, y) = &self.fundamental;
        QuadNum::raw(x.clone().into(), y.clone().into(), self.field())
    }

    /// Generator of the unit group of ℤ[√d]: the norm −1 unit when it exists.
    pub fn minimal_unit(&self) -> QuadNum {
        match &self.negative {
            Some((x, y)) => QuadNum::raw(x.clone().into(), y.clone().into(), self.field()),
            None => self.fundamental_unit(),
        }
    }

    /// `(t + u√d) / 2`.
    pub fn automorph_unit(&self) -> QuadNum {
        let (t, u) = &self.automorph;
        QuadNum::half_integral(t, u, self.field()).expect("validated field")
    }

    pub fn automorph_is_half_integral(&self) -> bool {
        self.automorph.0.is_odd_int()
    }
}

trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        num_integer::Integer::is_odd(self)
    }
}

/// Convergents `p_k / q_k` for `k = 0..count` of `[a0; period...]`.
fn convergents(cf: &ContinuedFraction, count: usize) -> Vec<(BigInt, BigInt)> {
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let a = if k == 0 {
            cf.a0
        } else {
            cf.period[(k - 1) % cf.period.len()]
        };
        let a = BigInt::from(a);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
    }
    out
}

pub fn pell_data(d: u64) -> Result<PellData> {
    let cf = continued_fraction_sqrt(d)?;
    let len = cf.period.len();
    let conv = convergents(&cf, 2 * len);
    let db = BigInt::from(d);
    let form = |(x, y): &(BigInt, BigInt)| x * x - &db * y * y;

    let (fundamental, negative) = if len % 2 == 0 {
        (conv[len - 1].clone(), None)
    } else {
        (conv[2 * len - 1].clone(), Some(conv[len - 1].clone()))
    };
    if !form(&fundamental).is_one() {
        return Err(Error::InvariantViolation(format!(
            "convergent {fundamental:?} does not solve x^2 - {d}y^2 = 1"
        )));
    }
    if let Some(neg) = &negative {
        if form(neg) != BigInt::from(-1) {
            return Err(Error::InvariantViolation(format!(
                "convergent {neg:?} does not solve x^2 - {d}y^2 = -1"
            )));
        }
    }
    let automorph = automorph_from_fundamental(&fundamental, &db);
    if form(&automorph) != BigInt::from(4) {
        return Err(Error::InvariantViolation(format!(
            "automorph {automorph:?} does not solve t^2 - {d}u^2 = 4"
        )));
    }
    Ok(PellData {
        d,
        fundamental,
        negative,
        automorph,
        continued_fraction: cf,
    })
}

/// The norm-one part of the unit group of ℤ[(1+√d)/2] is generated by some
/// `η = (t + u√d)/2`, and `x₁ + y₁√d` is either `η` or `η³`. A cube root
/// exists exactly when `s³ − 3s = 2x₁` has an integer solution `s = t` with
/// `(s² − 4)/d` a perfect square.
fn automorph_from_fundamental(fundamental: &(BigInt, BigInt), d: &BigInt) -> (BigInt, BigInt) {
    let (x1, y1) = fundamental;
    let target: BigInt = x1 * 2u32;
    let guess = target.cbrt();
    for s in [guess.clone() - 1, guess.clone(), guess + 1] {
        if !s.is_positive() || &s * &s * &s - &s * 3 != target {
            continue;
        }
        let rest: BigInt = &s * &s - 4u32;
        if rest.is_positive() && (&rest % d).is_zero() {
            let u2 = &rest / d;
            let u = u2.sqrt();
            if &u * &u == u2 {
                return (s, u);
            }
        }
    }
    (x1 * 2, y1 * 2)
}
