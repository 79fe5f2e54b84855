//! Serialization helpers: big numbers are written as decimal strings so
//! report documents stay exact regardless of magnitude.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{SerializeSeq, Serializer};

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub fn pair<S: Serializer>(v: &(BigInt, BigInt), s: S) -> Result<S::Ok, S::Error> {
    ints(&[v.0.clone(), v.1.clone()], s)
}

pub fn opt_pair<S: Serializer>(v: &Option<(BigInt, BigInt)>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(p) => pair(p, s),
        None => s.serialize_none(),
    }
}

pub fn ratio<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
