use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::serde_big;

/// Values with at most this many decimal digits are returned exactly.
pub const EXACT_DIGIT_LIMIT: u64 = 10_000;

/// Above this many bits the digit count is taken from a floating-point
/// logarithm instead of an exact comparison with a power of ten.
const EXACT_COMPARE_BIT_LIMIT: u64 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum BoundValue {
    Exact {
        #[serde(serialize_with = "serde_big::int")]
        value: BigInt,
        digits: u64,
    },
    Large {
        digits: u64,
        /// False when `digits` comes from a floating-point logarithm.
        digits_exact: bool,
        /// Six leading decimal digits, from a floating-point logarithm.
        leading_digits: String,
    },
}

impl BoundValue {
    pub fn digits(&self) -> u64 {
        match self {
            BoundValue::Exact { digits, .. } | BoundValue::Large { digits, .. } => *digits,
        }
    }
}

/// `A = max(s, Σ_l C(s + δ_l, s))`.
pub fn schlickewei_parameter(s: u32, degrees: &[u32]) -> Result<BigInt> {
    if s < 1 {
        return Err(Error::InvalidInput("dimension s must be at least 1".into()));
    }
    if degrees.is_empty() {
        return Err(Error::InvalidInput(
            "at least one degree is required".into(),
        ));
    }
    let total: BigInt = degrees
        .iter()
        .map(|&d| binomial(u64::from(s) + u64::from(d), u64::from(s)))
        .sum();
    Ok(total.max(BigInt::from(s)))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exponents `(35A³, 6A²)` of `2^{35A³}·D^{6A²}`.
fn exponents(s: u32, degrees: &[u32], field_degree: u32) -> Result<(u64, u64)> {
    if field_degree < 1 {
        return Err(Error::InvalidInput(
            "field degree D must be at least 1".into(),
        ));
    }
    let a = schlickewei_parameter(s, degrees)?;
    let too_big = || Error::InvalidInput(format!("parameter A = {a} is too large"));
    let a2: BigInt = &a * &a;
    let e2 = (&a2 * &a * 35u32).to_u64().ok_or_else(too_big)?;
    let ed = (a2 * 6u32).to_u64().ok_or_else(too_big)?;
    Ok((e2, ed))
}

/// The bound as an exact integer. Only sensible for small parameters.
pub fn schlickewei_bound_exact(s: u32, degrees: &[u32], field_degree: u32) -> Result<BigInt> {
    let (e2, ed) = exponents(s, degrees, field_degree)?;
    let ed =
        u32::try_from(ed).map_err(|_| Error::InvalidInput("bound too large to expand".into()))?;
    let d_part: BigInt = Pow::pow(BigInt::from(field_degree), ed);
    Ok(d_part << e2)
}

/// `2^{35A³}·D^{6A²}`, exact when it has at most [`EXACT_DIGIT_LIMIT`]
/// decimal digits and summarized by digit count otherwise.
pub fn schlickewei_bound(s: u32, degrees: &[u32], field_degree: u32) -> Result<BoundValue> {
    let (e2, ed) = exponents(s, degrees, field_degree)?;
    let log10 = e2 as f64 * std::f64::consts::LOG10_2 + ed as f64 * f64::from(field_degree).log10();
    let estimate = log10.floor() as u64 + 1;
    let bits = e2 as f64 + ed as f64 * f64::from(field_degree).log2();

    if estimate <= EXACT_DIGIT_LIMIT + 1 {
        let value = schlickewei_bound_exact(s, degrees, field_degree)?;
        let digits = value.to_string().len() as u64;
        if digits <= EXACT_DIGIT_LIMIT {
            return Ok(BoundValue::Exact { value, digits });
        }
    }
    let leading = {
        let frac = log10 - log10.floor();
        format!("{:.0}", 10f64.powf(frac + 5.0).floor())
    };
    if bits <= EXACT_COMPARE_BIT_LIMIT as f64 {
        let value = schlickewei_bound_exact(s, degrees, field_degree)?;
        let mut k = estimate;
        // 10^(k−1) ≤ value < 10^k
        while value < Pow::pow(BigInt::from(10), (k - 1) as u32) {
            k -= 1;
        }
        while value >= Pow::pow(BigInt::from(10), k as u32) {
            k += 1;
        }
        return Ok(BoundValue::Large {
            digits: k,
            digits_exact: true,
            leading_digits: leading,
        });
    }
    Ok(BoundValue::Large {
        digits: estimate,
        digits_exact: false,
        leading_digits: leading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(v: &BoundValue) -> &BigInt {
        match v {
            BoundValue::Exact { value, .. } => value,
            BoundValue::Large { .. } => panic!("expected an exact value"),
        }
    }

    #[test]
    fn worked_values() {
        let v = schlickewei_bound(1, &[0], 2).unwrap();
        assert_eq!(exact(&v), &BigInt::from(2_199_023_255_552u64));
        let v = schlickewei_bound(1, &[0], 1).unwrap();
        assert_eq!(exact(&v), &BigInt::from(34_359_738_368u64));
        let v = schlickewei_bound(2, &[0, 0], 4).unwrap();
        assert_eq!(exact(&v), &(BigInt::one() << 328u32));
        assert_eq!(v.digits(), 99);
        assert_eq!(schlickewei_parameter(2, &[0, 0]).unwrap(), BigInt::from(2));
        assert_eq!(
            schlickewei_parameter(2, &[1, 2]).unwrap(),
            BigInt::from(3 + 6)
        );
    }

    #[test]
    fn large_values_report_digits() {
        // A = 10: 2^35000 · 2^600 has about 10.7k digits
        let v = schlickewei_bound(3, &[2], 2).unwrap();
        let exact_digits = schlickewei_bound_exact(3, &[2], 2)
            .unwrap()
            .to_string()
            .len() as u64;
        match &v {
            BoundValue::Large {
                digits,
                digits_exact,
                leading_digits,
            } => {
                assert_eq!(*digits, exact_digits);
                assert!(digits_exact);
                let full = schlickewei_bound_exact(3, &[2], 2).unwrap().to_string();
                assert_eq!(&full[..6], &leading_digits[..6]);
            }
            BoundValue::Exact { .. } => panic!("expected a digit summary"),
        }
        let huge = schlickewei_bound(6, &[6], 3).unwrap();
        assert!(matches!(
            huge,
            BoundValue::Large {
                digits_exact: false,
                ..
            }
        ));
        assert!(huge.digits() > 1_000_000);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(schlickewei_bound(0, &[0], 2).is_err());
        assert!(schlickewei_bound(1, &[], 2).is_err());
        assert!(schlickewei_bound(1, &[0], 0).is_err());
    }

    #[test]
    fn monotone_on_grid() {
        let grid = [1u32, 2, 3];
        let value = |s, d, delta| schlickewei_bound_exact(s, &[delta], d).unwrap();
        for &s in &grid {
            for &d in &grid {
                for delta in 0..3u32 {
                    let v = value(s, d, delta);
                    if s < 3 {
                        assert!(v <= value(s + 1, d, delta));
                    }
                    if d < 3 {
                        assert!(v <= value(s, d + 1, delta));
                    }
                    if delta < 2 {
                        assert!(v <= value(s, d, delta + 1));
                    }
                }
            }
        }
    }
}
