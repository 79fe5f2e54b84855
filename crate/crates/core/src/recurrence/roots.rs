use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LinearRecurrence;
use crate::error::{Error, Result};
use crate::quadratic::{square_decomposition, QuadNum, Scalar};

/// Distinct roots of `x^d − a₁x^{d−1} − … − a_d` with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicRoots {
    pub roots: Vec<Scalar>,
    pub multiplicities: Vec<u32>,
}

impl CharacteristicRoots {
    pub fn is_simple(&self) -> bool {
        self.multiplicities.iter().all(|&m| m == 1)
    }
}

/// Roots of a monic quadratic `x² + b·x + c` with integer coefficients.
/// Returns `None` when the discriminant vanishes.
pub(crate) fn monic_quadratic_roots(b: &BigInt, c: &BigInt) -> Result<Option<[Scalar; 2]>> {
    let disc: BigInt = b * b - c * 4u32;
    if disc.is_zero() {
        return Ok(None);
    }
    let half = |n: BigInt| BigRational::new(n, BigInt::from(2));
    if !disc.is_negative() {
        let s = disc.sqrt_floor();
        if &s * &s == disc {
            return Ok(Some([
                Scalar::Rational(half(-b + &s)),
                Scalar::Rational(half(-b - &s)),
            ]));
        }
    }
    let (k, core) = square_decomposition(&disc)?;
    let plus = QuadNum::new(half(-b.clone()), half(k), core)?;
    Ok(Some([
        Scalar::from(plus.clone()),
        Scalar::from(plus.conj()),
    ]))
}

trait SqrtFloor {
    fn sqrt_floor(&self) -> BigInt;
}

impl SqrtFloor for BigInt {
    fn sqrt_floor(&self) -> BigInt {
        num_integer::Roots::sqrt(self)
    }
}

/// Exact roots for recurrences whose characteristic polynomial splits into
/// integer roots and at most one irreducible quadratic.
pub fn characteristic_roots(rec: &LinearRecurrence) -> Result<CharacteristicRoots> {
    // poly[i] is the coefficient of x^(deg − i)
    let mut poly: Vec<BigInt> = std::iter::once(BigInt::one())
        .chain(rec.coeffs().iter().map(|a| -a))
        .collect();
    let mut roots = Vec::new();
    let mut multiplicities = Vec::new();

    let a_d = rec
        .last_coeff()
        .abs()
        .to_u64()
        .ok_or(Error::UnsupportedOrder(rec.order()))?;
    let mut candidates = Vec::new();
    for p in divisors(a_d) {
        candidates.push(BigInt::from(p));
        candidates.push(-BigInt::from(p));
    }
    for r in candidates {
        let mut mult = 0;
        while poly.len() > 1 {
            match deflate(&poly, &r) {
                Some(q) => {
                    poly = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            roots.push(Scalar::from(r));
            multiplicities.push(mult);
        }
    }
    match poly.len() - 1 {
        0 => {}
        2 => {
            let pair = monic_quadratic_roots(&poly[1], &poly[2])?
                .expect("rational roots were already removed");
            for root in pair {
                roots.push(root);
                multiplicities.push(1);
            }
        }
        _ => return Err(Error::UnsupportedOrder(rec.order())),
    }
    Ok(CharacteristicRoots {
        roots,
        multiplicities,
    })
}

/// Synthetic division by `(x − r)`; `None` if `r` is not a root.
fn deflate(poly: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let mut out = Vec::with_capacity(poly.len() - 1);
    let mut acc = BigInt::zero();
    for c in &poly[..poly.len() - 1] {
        acc = &acc * r + c;
        out.push(acc.clone());
    }
    let rem = &acc * r + &poly[poly.len() - 1];
    rem.is_zero().then_some(out)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut p = 1u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            small.push(p);
            if p != n / p {
                large.push(n / p);
            }
        }
        p += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(a: &[i64], u: &[i64]) -> LinearRecurrence {
        LinearRecurrence::from_i64(a, u).unwrap()
    }

    #[test]
    fn quadratic_and_rational_roots() {
        let r = characteristic_roots(&rec(&[6, -1], &[0, 1])).unwrap();
        assert_eq!(
            r.roots,
            vec!["3+2sqrt2".parse().unwrap(), "3-2sqrt2".parse().unwrap()]
        );
        let r = characteristic_roots(&rec(&[1, 2], &[1, 1])).unwrap();
        assert_eq!(r.roots, vec![Scalar::from(-1), Scalar::from(2)]);
        let r = characteristic_roots(&rec(&[2, -1], &[0, 2])).unwrap();
        assert_eq!(r.roots, vec![Scalar::from(1)]);
        assert_eq!(r.multiplicities, vec![2]);
        assert!(!r.is_simple());
    }

    #[test]
    fn higher_orders() {
        // (x − 2)(x² − 2x − 2) = x³ − 4x² + 2x + 4
        let r = characteristic_roots(&rec(&[4, -2, -4], &[0, 1, 1])).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert_eq!(r.roots[0], Scalar::from(2));
        assert_eq!(r.roots[1], "1+sqrt3".parse().unwrap());
        // x³ − x − 1 is irreducible
        assert_eq!(
            characteristic_roots(&rec(&[0, 1, 1], &[1, 1, 1])),
            Err(Error::UnsupportedOrder(3))
        );
        // (x−1)(x+1)(x−2)(x+3) = x⁴ + x³ − 7x² − x + 6
        let r = characteristic_roots(&rec(&[-1, 7, 1, -6], &[1, 0, 0, 0])).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert!(r.is_simple());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
