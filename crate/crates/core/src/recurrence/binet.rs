use num_bigint::BigInt;
use serde::Serialize;

use super::roots::monic_quadratic_roots;
use super::LinearRecurrence;
use crate::error::{Error, Result};
use crate::quadratic::Scalar;
use crate::serde_big;

/// `U_n = f₁·α₁ⁿ + f₂·α₂ⁿ` for a simple second-order recurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinetForm {
    /// `α₁ = (a₁ + √Δ)/2`, `α₂ = (a₁ − √Δ)/2`.
    pub roots: [Scalar; 2],
    pub coeffs: [Scalar; 2],
    /// `Δ = a₁² + 4a₂`.
    #[serde(serialize_with = "serde_big::int")]
    pub discriminant: BigInt,
}

pub fn binet(rec: &LinearRecurrence) -> Result<BinetForm> {
    if rec.order() != 2 {
        return Err(Error::UnsupportedOrder(rec.order()));
    }
    let (a1, a2) = (&rec.coeffs()[0], &rec.coeffs()[1]);
    let discriminant: BigInt = a1 * a1 + a2 * 4u32;
    let [alpha, beta] = monic_quadratic_roots(&-a1, &-a2)?.ok_or(Error::RepeatedRoot)?;
    let u0 = Scalar::from(rec.initials()[0].clone());
    let u1 = Scalar::from(rec.initials()[1].clone());
    // f₁ + f₂ = U₀, f₁α + f₂β = U₁
    let f1 = u1.sub(&u0.mul(&beta)?)?.div(&alpha.sub(&beta)?)?;
    let f2 = u0.sub(&f1)?;
    Ok(BinetForm {
        roots: [alpha, beta],
        coeffs: [f1, f2],
        discriminant,
    })
}

impl BinetForm {
    /// `f_i·α_iⁿ` for root index 0 or 1.
    pub fn component(&self, i: usize, n: u64) -> Result<Scalar> {
        let e =
            i64::try_from(n).map_err(|_| Error::InvalidInput(format!("index {n} too large")))?;
        self.coeffs[i].mul(&self.roots[i].pow(e)?)
    }

    pub fn eval(&self, n: u64) -> Result<Scalar> {
        self.component(0, n)?.add(&self.component(1, n)?)
    }
}
