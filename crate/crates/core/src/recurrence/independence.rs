use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Pow, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::Scalar;

/// `α^p·β^q = 1` with `p > 0`, or `p = 0` and `q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub p: i64,
    pub q: i64,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{}*b^{} = 1", self.p, self.q)
    }
}

impl Relation {
    /// The same relation with the roles of `α` and `β` exchanged.
    pub fn swapped(self) -> Relation {
        let (p, q) = (self.q, self.p);
        if p > 0 || (p == 0 && q > 0) {
            Relation { p, q }
        } else {
            Relation { p: -p, q: -q }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Independence {
    Dependent { witness: Relation },
    IndependentUpTo { bound: u32 },
}

impl Independence {
    pub fn is_dependent(&self) -> bool {
        matches!(self, Independence::Dependent { .. })
    }
}

/// Bounded search for `α^p·β^q = 1` with `max(|p|, |q|) ≤ bound`.
///
/// Candidates are visited by increasing `max(|p|, |q|)`, then `p`, then `q`,
/// so the reported witness is the first one in that order. Exponent pairs
/// whose degree-2 norms cannot multiply to 1 are skipped before any field
/// arithmetic.
pub fn roots_multiplicatively_independent(
    alpha: &Scalar,
    beta: &Scalar,
    bound: u32,
) -> Result<Independence> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidInput(
            "multiplicative independence needs nonzero inputs".into(),
        ));
    }
    let e = i64::from(bound);
    let na = alpha.norm_deg2().abs();
    let nb = beta.norm_deg2().abs();
    let alpha_pows = powers(alpha, 0, e)?;
    // beta_pows[k] = β^(k − e), so β^(−q) sits at index e − q
    let beta_pows = powers(beta, -e, e)?;
    let beta_neg = |q: i64| &beta_pows[(e - q) as usize];

    for h in 1..=e {
        for p in 0..=h {
            for q in -h..=h {
                if p.max(q.abs()) != h || (p == 0 && q <= 0) {
                    continue;
                }
                if !norms_cancel(&na, p, &nb, q) {
                    continue;
                }
                if alpha_pows[p as usize] == *beta_neg(q) {
                    return Ok(Independence::Dependent {
                        witness: Relation { p, q },
                    });
                }
            }
        }
    }
    Ok(Independence::IndependentUpTo { bound })
}

/// `[x^lo, x^(lo+1), ..., x^hi]`.
fn powers(x: &Scalar, lo: i64, hi: i64) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    let mut cur = x.pow(lo)?;
    for _ in lo..=hi {
        let next = cur.mul(x)?;
        out.push(cur);
        cur = next;
    }
    Ok(out)
}

fn norms_cancel(na: &BigRational, p: i64, nb: &BigRational, q: i64) -> bool {
    let pw = |n: &BigRational, k: i64| -> BigRational {
        let r: BigRational = Pow::pow(n, k.unsigned_abs() as u32);
        if k < 0 {
            r.recip()
        } else {
            r
        }
    };
    (pw(na, p) * pw(nb, q)).is_one()
}
