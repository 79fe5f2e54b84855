//! Rational S-units: signed rationals whose numerator and denominator are
//! products of the primes in a fixed finite set `S`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::serde_big;

/// Deterministic Miller–Rabin for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SPrimeSet {
    primes: Vec<u64>,
}

impl SPrimeSet {
    /// Sorts the input; rejects composites, duplicates and the empty set.
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidInput(
                "the prime set S must not be empty".into(),
            ));
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        primes.sort_unstable();
        if primes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "the prime set S has a repeated entry".into(),
            ));
        }
        Ok(Self { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `sign·∏ pᵢ^{bᵢ}`.
    pub fn value(&self, sign: i8, exponents: &[i32]) -> BigRational {
        let mut num = BigInt::from(sign);
        let mut den = BigInt::one();
        for (&p, &b) in self.primes.iter().zip(exponents) {
            let pk: BigInt = Pow::pow(BigInt::from(p), b.unsigned_abs());
            if b >= 0 {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        BigRational::new(num, den)
    }

    /// Sign and exponent vector of `value` over `S`, or `None` if `value` is
    /// zero or has a prime factor outside `S`.
    pub fn refactor(&self, value: &BigRational) -> Option<(i8, Vec<i32>)> {
        if value.is_zero() {
            return None;
        }
        let sign = if value.is_negative() { -1 } else { 1 };
        let mut num = value.numer().abs();
        let mut den = value.denom().abs();
        let mut exps = Vec::with_capacity(self.primes.len());
        for &p in &self.primes {
            let p = BigInt::from(p);
            let mut b = 0i32;
            while num.is_multiple_of(&p) {
                num /= &p;
                b += 1;
            }
            while den.is_multiple_of(&p) {
                den /= &p;
                b -= 1;
            }
            exps.push(b);
        }
        (num.is_one() && den.is_one()).then_some((sign, exps))
    }
}

impl FromStr for SPrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let primes = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad prime {t:?} in S = {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(primes)
    }
}

impl fmt::Display for SPrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SUnit {
    pub sign: i8,
    pub exponents: Vec<i32>,
    #[serde(serialize_with = "serde_big::ratio")]
    pub value: BigRational,
}

impl fmt::Display for SUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Lexicographic walk over exponent vectors in `[−E, E]^l`, each followed by
/// its signs (`−1` before `+1`).
#[derive(Clone, Debug)]
pub struct SUnitIter<'a> {
    set: &'a SPrimeSet,
    bound: i32,
    signs: &'static [i8],
    exps: Vec<i32>,
    sign_pos: usize,
    keep_leading: bool,
    done: bool,
}

impl<'a> SUnitIter<'a> {
    /// Only the shard whose first exponent equals `leading`. The shards for
    /// `leading = −E..=E` concatenate to the full enumeration.
    pub fn shard(set: &'a SPrimeSet, bound: u32, positive_only: bool, leading: i32) -> Self {
        let mut it = enumerate_sunits(set, bound, positive_only);
        it.keep_leading = true;
        if leading.unsigned_abs() > bound {
            it.done = true;
        } else {
            it.exps[0] = leading;
        }
        it
    }

    fn advance(&mut self) {
        let stop = usize::from(self.keep_leading);
        for i in (stop..self.exps.len()).rev() {
            if self.exps[i] < self.bound {
                self.exps[i] += 1;
                return;
            }
            self.exps[i] = -self.bound;
        }
        self.done = true;
    }
}

impl Iterator for SUnitIter<'_> {
    type Item = SUnit;

    fn next(&mut self) -> Option<SUnit> {
        if self.done {
            return None;
        }
        let sign = self.signs[self.sign_pos];
        let unit = SUnit {
            sign,
            exponents: self.exps.clone(),
            value: self.set.value(sign, &self.exps),
        };
        self.sign_pos += 1;
        if self.sign_pos == self.signs.len() {
            self.sign_pos = 0;
            self.advance();
        }
        Some(unit)
    }
}

pub fn enumerate_sunits(set: &SPrimeSet, bound: u32, positive_only: bool) -> SUnitIter<'_> {
    let bound = i32::try_from(bound).unwrap_or(i32::MAX);
    SUnitIter {
        set,
        bound,
        signs: if positive_only { &[1] } else { &[-1, 1] },
        exps: vec![-bound; set.len()],
        sign_pos: 0,
        keep_leading: false,
        done: false,
    }
}

/// `(2E + 1)^l`, doubled when both signs are included.
pub fn sunit_count(set: &SPrimeSet, bound: u32, positive_only: bool) -> u128 {
    let per = 2 * u128::from(bound) + 1;
    let signs = if positive_only { 1 } else { 2 };
    per.pow(set.len() as u32) * signs
}

/// Outcome of checking every nonempty subsum of a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsumCertificate {
    pub size: usize,
    pub subsums_checked: u64,
    /// Lexicographically first vanishing index set, positions counted from 1.
    pub vanishing: Option<Vec<usize>>,
}

impl SubsumCertificate {
    pub fn passed(&self) -> bool {
        self.vanishing.is_none()
    }
}

pub const MAX_CERTIFIED_TUPLE: usize = 20;

/// Visits the `2^t − 1` nonempty index sets in lexicographic order and stops
/// at the first one whose sum vanishes.
pub fn subsums_nonvanishing(tuple: &[BigRational]) -> Result<SubsumCertificate> {
    let t = tuple.len();
    if t == 0 {
        return Err(Error::InvalidInput(
            "subsum certificate needs at least one entry".into(),
        ));
    }
    if t > MAX_CERTIFIED_TUPLE {
        return Err(Error::TupleTooLarge(t));
    }
    let mut checked = 0u64;
    let mut path = Vec::with_capacity(t);
    let found = first_vanishing(tuple, 0, &BigRational::zero(), &mut path, &mut checked);
    Ok(SubsumCertificate {
        size: t,
        subsums_checked: checked,
        vanishing: found.then(|| path.iter().map(|i| i + 1).collect()),
    })
}

fn first_vanishing(
    tuple: &[BigRational],
    start: usize,
    sum: &BigRational,
    path: &mut Vec<usize>,
    checked: &mut u64,
) -> bool {
    for i in start..tuple.len() {
        path.push(i);
        let s = sum + &tuple[i];
        *checked += 1;
        if s.is_zero() || first_vanishing(tuple, i + 1, &s, path, checked) {
            return true;
        }
        path.pop();
    }
    false
}

/// A tuple of S-units with its sum and subsum certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SUnitTuple {
    pub entries: Vec<SUnit>,
    #[serde(serialize_with = "serde_big::ratio")]
    pub sum: BigRational,
    pub certificate: SubsumCertificate,
}

impl SUnitTuple {
    pub fn new(entries: Vec<SUnit>) -> Result<Self> {
        let values: Vec<BigRational> = entries.iter().map(|u| u.value.clone()).collect();
        let certificate = subsums_nonvanishing(&values)?;
        let sum = values.into_iter().sum();
        Ok(Self {
            entries,
            sum,
            certificate,
        })
    }
}
