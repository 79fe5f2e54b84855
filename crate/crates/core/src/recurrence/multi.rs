use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::Scalar;

/// A polynomial in `s` variables with rational coefficients, stored as
/// `(coefficient, exponent vector)` monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    monomials: Vec<(BigRational, Vec<u32>)>,
}

impl Polynomial {
    pub fn new(monomials: Vec<(BigRational, Vec<u32>)>) -> Self {
        let monomials = monomials
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .collect();
        Self { monomials }
    }

    pub fn constant(c: i64) -> Self {
        Self::new(vec![(
            BigRational::from_integer(BigInt::from(c)),
            Vec::new(),
        )])
    }

    /// Number of variables the monomials mention.
    pub fn arity(&self) -> usize {
        self.monomials
            .iter()
            .map(|(_, e)| e.len())
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.monomials
            .iter()
            .map(|(_, e)| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, n: &[u64]) -> BigRational {
        self.monomials
            .iter()
            .map(|(c, e)| {
                e.iter().zip(n).fold(c.clone(), |acc, (&k, &x)| {
                    acc * BigRational::from_integer(Pow::pow(BigInt::from(x), k))
                })
            })
            .sum()
    }
}

/// `scale · P(n) · α₁^{n₁} ⋯ α_s^{n_s}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTerm {
    pub poly: Polynomial,
    pub scale: Scalar,
    pub bases: Vec<Scalar>,
}

impl MultiTerm {
    /// A term with polynomial 1 and scale 1.
    pub fn pure(bases: Vec<Scalar>) -> Self {
        Self {
            poly: Polynomial::constant(1),
            scale: Scalar::one(),
            bases,
        }
    }

    fn eval(&self, n: &[u64]) -> Result<Scalar> {
        let mut acc = self.scale.mul(&Scalar::Rational(self.poly.eval(n)))?;
        for (b, &k) in self.bases.iter().zip(n) {
            let k = i64::try_from(k)
                .map_err(|_| Error::InvalidInput(format!("index {k} too large")))?;
            acc = acc.mul(&b.pow(k)?)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiRecurrence {
    dims: usize,
    terms: Vec<MultiTerm>,
}

impl MultiRecurrence {
    pub fn new(dims: usize, terms: Vec<MultiTerm>) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidInput(
                "a multi-recurrence needs at least one variable".into(),
            ));
        }
        for t in &terms {
            if t.bases.len() != dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    got: t.bases.len(),
                });
            }
            if t.bases.iter().any(Scalar::is_zero) {
                return Err(Error::InvalidInput("bases must be nonzero".into()));
            }
            if t.poly.arity() > dims {
                return Err(Error::DimensionMismatch {
                    expected: dims,
                    got: t.poly.arity(),
                });
            }
            if dims > 1 && t.scale.as_rational().is_none() {
                return Err(Error::InvalidInput(
                    "irrational term coefficients are only supported in one variable".into(),
                ));
            }
        }
        Ok(Self { dims, terms })
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> &[MultiTerm] {
        &self.terms
    }

    pub fn eval(&self, n: &[u64]) -> Result<Scalar> {
        if n.len() != self.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                got: n.len(),
            });
        }
        self.terms
            .iter()
            .try_fold(Scalar::zero(), |acc, t| acc.add(&t.eval(n)?))
    }

    /// The sum of two multi-recurrences in the same variables.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch {
                expected: self.dims,
                got: other.dims,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(self.dims, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum MultiDegeneracy {
    Degenerate {
        terms: (usize, usize),
        witness: Vec<i64>,
    },
    NonDegenerateUpTo {
        bound: u32,
    },
}

/// Looks for a nonzero `n` with `|n_k| ≤ bound` and `𝛂_iⁿ = 𝛂_jⁿ` for some
/// pair of terms `i < j`.
///
/// Vectors are tried by increasing max-norm and then lexicographically; only
/// vectors whose first nonzero entry is positive are visited since `n` and
/// `−n` give the same condition.
pub fn multirec_degenerate(f: &MultiRecurrence, bound: u32) -> Result<MultiDegeneracy> {
    let r = f.terms.len();
    let e = i64::from(bound);
    // pows[i][k][j] = α_{ik}^(j − e)
    let mut pows = Vec::with_capacity(r);
    for t in &f.terms {
        let mut per_coord = Vec::with_capacity(f.dims);
        for b in &t.bases {
            per_coord.push((-e..=e).map(|j| b.pow(j)).collect::<Result<Vec<_>>>()?);
        }
        pows.push(per_coord);
    }
    if r < 2 {
        return Ok(MultiDegeneracy::NonDegenerateUpTo { bound });
    }
    for h in 1..=e {
        let mut n = vec![-h; f.dims];
        loop {
            let max = n.iter().map(|x: &i64| x.abs()).max().unwrap_or(0);
            let leading = n.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            if max == h && leading > 0 {
                let values = (0..r)
                    .map(|i| {
                        n.iter()
                            .enumerate()
                            .try_fold(Scalar::one(), |acc, (k, &x)| {
                                acc.mul(&pows[i][k][(x + e) as usize])
                            })
                    })
                    .collect::<Result<Vec<_>>>()?;
                for i in 0..r {
                    for j in i + 1..r {
                        if values[i] == values[j] {
                            return Ok(MultiDegeneracy::Degenerate {
                                terms: (i, j),
                                witness: n,
                            });
                        }
                    }
                }
            }
            if !advance(&mut n, h) {
                break;
            }
        }
    }
    Ok(MultiDegeneracy::NonDegenerateUpTo { bound })
}

/// Lexicographic successor in `[−h, h]^s`; false once exhausted.
fn advance(n: &mut [i64], h: i64) -> bool {
    for x in n.iter_mut().rev() {
        if *x < h {
            *x += 1;
            return true;
        }
        *x = -h;
    }
    false
}
