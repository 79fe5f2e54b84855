//! Integer linear recurrences `U_n = a₁U_{n−1} + … + a_dU_{n−d}` and
//! multi-recurrences.

mod binet;
mod degeneracy;
mod independence;
mod multi;
mod roots;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

pub use self::binet::{binet, BinetForm};
pub use self::degeneracy::{is_degenerate, Degeneracy};
pub use self::independence::{roots_multiplicatively_independent, Independence, Relation};
pub use self::multi::{
    multirec_degenerate, MultiDegeneracy, MultiRecurrence, MultiTerm, Polynomial,
};
pub use self::roots::{characteristic_roots, CharacteristicRoots};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearRecurrence {
    coeffs: Vec<BigInt>,
    initials: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<BigInt>, initials: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput(
                "recurrence order must be at least 1".into(),
            ));
        }
        if coeffs.len() != initials.len() {
            return Err(Error::InvalidInput(format!(
                "order {} recurrence needs {} initial terms, got {}",
                coeffs.len(),
                coeffs.len(),
                initials.len()
            )));
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(Error::InvalidInput(
                "last coefficient a_d must be nonzero".into(),
            ));
        }
        if initials.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput(
                "initial terms must not all be zero".into(),
            ));
        }
        Ok(Self { coeffs, initials })
    }

    pub fn from_i64(coeffs: &[i64], initials: &[i64]) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
            initials.iter().map(|&c| BigInt::from(c)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn initials(&self) -> &[BigInt] {
        &self.initials
    }

    pub fn last_coeff(&self) -> &BigInt {
        self.coeffs.last().expect("order >= 1")
    }

    /// `[U_0, ..., U_n]`.
    pub fn terms_up_to(&self, n: usize) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.initials.iter().take(n + 1).cloned().collect();
        while out.len() <= n {
            let k = out.len();
            let next = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * &out[k - 1 - i])
                .sum();
            out.push(next);
        }
        out
    }
}

/// `a1,...,ad;U0,...,U_{d-1}`, whitespace allowed.
impl FromStr for LinearRecurrence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) = s.split_once(';').ok_or_else(|| {
            Error::Parse(format!("recurrence {s:?} needs the form a1,...,ad;U0,..."))
        })?;
        let list = |part: &str| -> Result<Vec<BigInt>> {
            part.split(',')
                .map(|t| {
                    let t = t.trim();
                    BigInt::from_str(t)
                        .map_err(|_| Error::Parse(format!("bad integer {t:?} in {s:?}")))
                })
                .collect()
        };
        Self::new(list(lhs)?, list(rhs)?)
    }
}

impl fmt::Display for LinearRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{};{}", join(&self.coeffs), join(&self.initials))
    }
}

impl Serialize for LinearRecurrence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn worked_sequences() {
        let even = LinearRecurrence::from_i64(&[2, -1], &[0, 2]).unwrap();
        assert_eq!(even.terms_up_to(5), ints(&[0, 2, 4, 6, 8, 10]));
        let six = LinearRecurrence::from_i64(&[1, -1], &[0, 3]).unwrap();
        assert_eq!(six.terms_up_to(7), ints(&[0, 3, 3, 0, -3, -3, 0, 3]));
        let pell = LinearRecurrence::from_i64(&[6, -1], &[0, 1]).unwrap();
        assert_eq!(pell.terms_up_to(4), ints(&[0, 1, 6, 35, 204]));
        assert_eq!(pell.terms_up_to(0), ints(&[0]));
    }

    #[test]
    fn validation() {
        assert!(LinearRecurrence::from_i64(&[1, 0], &[0, 1]).is_err());
        assert!(LinearRecurrence::from_i64(&[1, 1], &[0, 0]).is_err());
        assert!(LinearRecurrence::from_i64(&[1, 1], &[0]).is_err());
        assert!(LinearRecurrence::from_i64(&[], &[]).is_err());
    }

    #[test]
    fn literal_roundtrip() {
        let r: LinearRecurrence = " 6, -1 ; 0, 1 ".parse().unwrap();
        assert_eq!(r, LinearRecurrence::from_i64(&[6, -1], &[0, 1]).unwrap());
        assert_eq!(r.to_string(), "6,-1;0,1");
        assert_eq!(r.to_string().parse::<LinearRecurrence>().unwrap(), r);
        assert!("6,-1".parse::<LinearRecurrence>().is_err());
        assert!("6,x;0,1".parse::<LinearRecurrence>().is_err());
    }
}
