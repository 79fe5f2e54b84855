use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{
    run_sharded, Bounds, CoordinateIndex, Hit, SUnitHit, SearchOptions, SearchReport, Stabilization,
};
use crate::error::{Error, Result};
use crate::norm_form::{Coordinate, NormFormProblem};
use crate::sunits::{enumerate_sunits, subsums_nonvanishing, SPrimeSet, SUnit};

pub const MAX_TUPLE: usize = 4;

/// Multisets `{w₁, …, w_t}` of S-units with all `|b_i| ≤ exponent_bound`
/// whose sum is a positive entry of `X₁ ∪ X₂` up to `coordinate_bound` and
/// whose nonempty subsums are all nonzero.
///
/// The first `t − 1` entries are enumerated; the last one is looked up as
/// `x − (w₁ + … + w_{t−1})` for every target `x`.
pub fn sunit_sum_search(
    set: &SPrimeSet,
    t: usize,
    exponent_bound: u32,
    positive_only: bool,
    problem: &NormFormProblem,
    coordinate_bound: &BigInt,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    if t == 0 || t > MAX_TUPLE {
        return Err(Error::InvalidInput(format!(
            "tuple size t must be in 1..={MAX_TUPLE}, got {t}"
        )));
    }
    if !coordinate_bound.is_positive() {
        return Err(Error::InvalidInput(
            "coordinate bound B must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let index = CoordinateIndex::build(problem, coordinate_bound)?;
    let mut targets: Vec<BigInt> = index
        .set(Coordinate::X)
        .iter()
        .chain(index.set(Coordinate::Y))
        .cloned()
        .collect();
    targets.sort();
    targets.dedup();
    let targets: Vec<BigRational> = targets.into_iter().map(BigRational::from_integer).collect();

    let units: Vec<SUnit> = enumerate_sunits(set, exponent_bound, positive_only).collect();
    let lookup: HashMap<&BigRational, usize> = units
        .iter()
        .enumerate()
        .map(|(i, u)| (&u.value, i))
        .collect();

    // units sharing a leading exponent form a contiguous block
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    for (i, u) in units.iter().enumerate() {
        match blocks.last_mut() {
            Some((lo, hi)) if units[*lo].exponents[0] == u.exponents[0] => *hi = i + 1,
            _ => blocks.push((i, i + 1)),
        }
    }

    let ctx = Ctx {
        units: &units,
        lookup: &lookup,
        targets: &targets,
        index: &index,
        t,
    };
    let mut found = run_sharded(opts.shards, blocks.len(), |b| {
        let (lo, hi) = blocks[b];
        let mut out = Vec::new();
        for (first, unit) in units.iter().enumerate().take(hi).skip(lo) {
            let mut chosen = vec![first];
            ctx.extend(&mut chosen, &unit.value, &mut out)?;
        }
        Ok(out)
    })?;
    found.sort_by(|a, b| a.0.cmp(&b.0));

    let half = i32::try_from(exponent_bound / 2).unwrap_or(i32::MAX);
    let hits_at_half = found
        .iter()
        .filter(|(_, h)| {
            h.units
                .iter()
                .all(|u| u.exponents.iter().all(|b| b.abs() <= half))
        })
        .count();
    Ok(SearchReport {
        search: "sunit-sum".into(),
        problem: problem.clone(),
        recurrence: None,
        primes: Some(set.clone()),
        positive_only: Some(positive_only),
        bounds: Bounds {
            index_bound: None,
            coordinate_bound: coordinate_bound.clone(),
            exponent_bound: Some(exponent_bound),
            tuple_size: Some(t),
        },
        coordinate_set_sizes: [
            index.set(Coordinate::X).len(),
            index.set(Coordinate::Y).len(),
        ],
        hit_count: found.len(),
        stabilization: Stabilization::new(
            "exponent",
            u64::from(exponent_bound),
            hits_at_half,
            found.len(),
        ),
        hits: found.into_iter().map(|(_, h)| Hit::SUnit(h)).collect(),
        hypotheses: None,
        elapsed: start.elapsed(),
    })
}

struct Ctx<'a> {
    units: &'a [SUnit],
    lookup: &'a HashMap<&'a BigRational, usize>,
    targets: &'a [BigRational],
    index: &'a CoordinateIndex,
    t: usize,
}

impl Ctx<'_> {
    /// `chosen` is a nondecreasing index list whose values sum to `partial`.
    fn extend(
        &self,
        chosen: &mut Vec<usize>,
        partial: &BigRational,
        out: &mut Vec<(Vec<usize>, SUnitHit)>,
    ) -> Result<()> {
        if chosen.len() == self.t {
            return self.record(chosen, partial, out);
        }
        let last = *chosen.last().expect("nonempty");
        if chosen.len() + 1 == self.t {
            for x in self.targets {
                let need = x - partial;
                if let Some(&j) = self.lookup.get(&need) {
                    if j >= last {
                        chosen.push(j);
                        self.record(chosen, x, out)?;
                        chosen.pop();
                    }
                }
            }
            return Ok(());
        }
        for next in last..self.units.len() {
            chosen.push(next);
            let p = partial + &self.units[next].value;
            self.extend(chosen, &p, out)?;
            chosen.pop();
        }
        Ok(())
    }

    fn record(
        &self,
        chosen: &[usize],
        sum: &BigRational,
        out: &mut Vec<(Vec<usize>, SUnitHit)>,
    ) -> Result<()> {
        if !sum.is_integer() || !sum.is_positive() {
            return Ok(());
        }
        let value = sum.to_integer();
        let witnesses = self.index.witnesses(&value)?;
        if witnesses.is_empty() {
            return Ok(());
        }
        let values: Vec<BigRational> = chosen
            .iter()
            .map(|&i| self.units[i].value.clone())
            .collect();
        let total: BigRational = values.iter().sum();
        if (&total - sum).is_zero() {
            let certificate = subsums_nonvanishing(&values)?;
            if certificate.passed() {
                out.push((
                    chosen.to_vec(),
                    SUnitHit {
                        units: chosen.iter().map(|&i| self.units[i].clone()).collect(),
                        sum: value,
                        witnesses,
                        certificate,
                    },
                ));
            }
            Ok(())
        } else {
            Err(Error::InvariantViolation(format!(
                "S-unit tuple sums to {total}, expected {sum}"
            )))
        }
    }
}
