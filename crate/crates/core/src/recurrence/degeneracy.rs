use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{characteristic_roots, LinearRecurrence};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Degeneracy {
    NonDegenerate,
    /// `α_i/α_j` is a primitive root of unity of order `ratio_order`.
    Degenerate {
        roots: (usize, usize),
        ratio_order: u32,
    },
    /// The characteristic polynomial has a repeated root.
    RepeatedRoot,
}

impl Degeneracy {
    pub fn is_degenerate(&self) -> bool {
        !matches!(self, Degeneracy::NonDegenerate)
    }

    pub fn describe(&self) -> String {
        match self {
            Degeneracy::NonDegenerate => "non-degenerate".into(),
            Degeneracy::RepeatedRoot => "repeated root".into(),
            Degeneracy::Degenerate { ratio_order, .. } => {
                let what = match ratio_order {
                    2 => "ratio -1".to_string(),
                    3 => "cube root of unity".to_string(),
                    4 => "fourth root of unity".to_string(),
                    6 => "sixth root of unity".to_string(),
                    k => format!("root of unity of order {k}"),
                };
                format!("degenerate: {what}")
            }
        }
    }
}

/// Order 2 is decided from the coefficients alone. Higher orders need every
/// characteristic root exactly, see [`characteristic_roots`].
pub fn is_degenerate(rec: &LinearRecurrence) -> Result<Degeneracy> {
    match rec.order() {
        1 => Ok(Degeneracy::NonDegenerate),
        2 => Ok(order_two(rec)),
        _ => {
            let cr = characteristic_roots(rec)?;
            if !cr.is_simple() {
                return Ok(Degeneracy::RepeatedRoot);
            }
            for i in 0..cr.roots.len() {
                for j in i + 1..cr.roots.len() {
                    let ratio = cr.roots[i].div(&cr.roots[j])?;
                    if let Some(k) = ratio.root_of_unity_order() {
                        return Ok(Degeneracy::Degenerate {
                            roots: (i, j),
                            ratio_order: k,
                        });
                    }
                }
            }
            Ok(Degeneracy::NonDegenerate)
        }
    }
}

fn order_two(rec: &LinearRecurrence) -> Degeneracy {
    let (a, b) = (&rec.coeffs()[0], &rec.coeffs()[1]);
    let a2: BigInt = a * a;
    if (&a2 + b * 4u32).is_zero() {
        return Degeneracy::RepeatedRoot;
    }
    // α/β + β/α = −(a² + 2b)/b = 2cos(2π/k)
    let ratio_order = if a.is_zero() {
        2
    } else if b.is_negative() && a2 == -b {
        3
    } else if b.is_negative() && a2 == -(b * 2u32) {
        4
    } else if b.is_negative() && a2 == -(b * 3u32) {
        6
    } else {
        return Degeneracy::NonDegenerate;
    };
    Degeneracy::Degenerate {
        roots: (0, 1),
        ratio_order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::Scalar;
    use crate::recurrence::roots::monic_quadratic_roots;

    fn rec(a: &[i64]) -> LinearRecurrence {
        let mut init = vec![0; a.len()];
        init[a.len() - 1] = 1;
        LinearRecurrence::from_i64(a, &init).unwrap()
    }

    fn oracle(a1: i64, a2: i64) -> Option<u32> {
        let [alpha, beta] = monic_quadratic_roots(&BigInt::from(-a1), &BigInt::from(-a2))
            .unwrap()
            .expect("distinct");
        let ratio = alpha.div(&beta).unwrap();
        let mut power = Scalar::one();
        for k in 1..=12 {
            power = power.mul(&ratio).unwrap();
            if power.is_one() {
                return Some(k);
            }
        }
        None
    }

    #[test]
    fn worked_verdicts() {
        let v = is_degenerate(&rec(&[1, -1])).unwrap();
        assert_eq!(
            v,
            Degeneracy::Degenerate {
                roots: (0, 1),
                ratio_order: 3
            }
        );
        assert_eq!(v.describe(), "degenerate: cube root of unity");
        assert_eq!(
            is_degenerate(&rec(&[6, -1])).unwrap(),
            Degeneracy::NonDegenerate
        );
        assert_eq!(
            is_degenerate(&rec(&[0, 5])).unwrap(),
            Degeneracy::Degenerate {
                roots: (0, 1),
                ratio_order: 2
            }
        );
        assert_eq!(
            is_degenerate(&rec(&[2, -1])).unwrap(),
            Degeneracy::RepeatedRoot
        );
        assert_eq!(
            is_degenerate(&rec(&[2, 2])).unwrap(),
            Degeneracy::NonDegenerate
        );
        assert_eq!(
            is_degenerate(&rec(&[7])).unwrap(),
            Degeneracy::NonDegenerate
        );
    }

    #[test]
    fn closed_form_matches_power_oracle() {
        for a1 in -10i64..=10 {
            for a2 in -10i64..=10 {
                if a2 == 0 {
                    continue;
                }
                let verdict = is_degenerate(&rec(&[a1, a2])).unwrap();
                if a1 * a1 + 4 * a2 == 0 {
                    assert_eq!(verdict, Degeneracy::RepeatedRoot);
                    continue;
                }
                let expected = match oracle(a1, a2) {
                    Some(k) => Degeneracy::Degenerate {
                        roots: (0, 1),
                        ratio_order: k,
                    },
                    None => Degeneracy::NonDegenerate,
                };
                assert_eq!(verdict, expected, "a = [{a1}, {a2}]");
            }
        }
    }

    #[test]
    fn higher_order_root_pairs() {
        // (x − 1)(x + 1)(x − 2): ratio −1 between the first two roots
        let v = is_degenerate(&rec(&[2, 1, -2])).unwrap();
        assert_eq!(
            v,
            Degeneracy::Degenerate {
                roots: (0, 1),
                ratio_order: 2
            }
        );
        // (x − 2)(x² − 2x − 2)
        assert_eq!(
            is_degenerate(&rec(&[4, -2, -4])).unwrap(),
            Degeneracy::NonDegenerate
        );
        // (x − 2)(x² + x + 1): cube roots of unity among the quadratic pair
        let v = is_degenerate(&rec(&[1, 1, 2])).unwrap();
        assert_eq!(
            v,
            Degeneracy::Degenerate {
                roots: (1, 2),
                ratio_order: 3
            }
        );
        // (x − 1)²(x − 3)
        assert_eq!(
            is_degenerate(&rec(&[5, -7, 3])).unwrap(),
            Degeneracy::RepeatedRoot
        );
    }
}
