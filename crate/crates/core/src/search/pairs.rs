use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::{
    audit_hypotheses, run_sharded, Bounds, CoordinateIndex, Hit, PairHit, SearchOptions,
    SearchReport, Stabilization,
};
use crate::error::{Error, Result};
use crate::norm_form::{Coordinate, NormFormProblem};
use crate::quadratic::Scalar;
use crate::recurrence::{binet, LinearRecurrence};

/// All `n₁ ≤ n₂ ≤ index_bound` with `U_{n₁} + U_{n₂}` a positive entry of
/// `X₁ ∪ X₂` not exceeding `coordinate_bound`.
pub fn pair_sum_search(
    rec: &LinearRecurrence,
    problem: &NormFormProblem,
    index_bound: u64,
    coordinate_bound: &BigInt,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    if index_bound < 1 {
        return Err(Error::InvalidInput(
            "index bound N must be at least 1".into(),
        ));
    }
    if !coordinate_bound.is_positive() {
        return Err(Error::InvalidInput(
            "coordinate bound B must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let n = usize::try_from(index_bound)
        .map_err(|_| Error::InvalidInput(format!("index bound {index_bound} too large")))?;
    let index = CoordinateIndex::build(problem, coordinate_bound)?;
    let terms = rec.terms_up_to(n);

    let hits = run_sharded(opts.shards, n + 1, |n1| {
        let mut out = Vec::new();
        for n2 in n1..=n {
            let sum = &terms[n1] + &terms[n2];
            if !sum.is_positive() || &sum > coordinate_bound {
                continue;
            }
            let in_x = index.contains(Coordinate::X, &sum);
            if !in_x && !index.contains(Coordinate::Y, &sum) {
                continue;
            }
            let witnesses = index.witnesses(&sum)?;
            out.push(PairHit {
                n1: n1 as u64,
                n2: n2 as u64,
                sum,
                witnesses,
            });
        }
        Ok(out)
    })?;

    let half = index_bound / 2;
    let hits_at_half = hits.iter().filter(|h| h.n2 <= half).count();
    let hypotheses = match audit_hypotheses(rec, opts.independence_bound) {
        Ok(h) => Some(h),
        Err(Error::UnsupportedOrder(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SearchReport {
        search: "pair-sum".into(),
        problem: problem.clone(),
        recurrence: Some(rec.clone()),
        primes: None,
        positive_only: None,
        bounds: Bounds {
            index_bound: Some(index_bound),
            coordinate_bound: coordinate_bound.clone(),
            exponent_bound: None,
            tuple_size: None,
        },
        coordinate_set_sizes: [
            index.set(Coordinate::X).len(),
            index.set(Coordinate::Y).len(),
        ],
        hit_count: hits.len(),
        stabilization: Stabilization::new("index", index_bound, hits_at_half, hits.len()),
        hits: hits.into_iter().map(Hit::Pair).collect(),
        hypotheses,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VanishingKind {
    /// `f_i α_i^{n₁} + f_i α_i^{n₂} = 0` for a single root.
    PerRoot,
    /// The whole sum `U_{n₁} + U_{n₂}` vanishes.
    FullSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingSum {
    pub n1: u64,
    pub n2: u64,
    /// Root indices, counted from 1.
    pub subset: Vec<usize>,
    pub kind: VanishingKind,
}

/// Every `n₁ ≤ n₂ ≤ index_bound` and nonempty `Δ ⊆ {1, 2}` for which
/// `Σ_{i∈Δ} f_i(α_i^{n₁} + α_i^{n₂})` vanishes exactly.
pub fn vanishing_pair_sums(rec: &LinearRecurrence, index_bound: u64) -> Result<Vec<VanishingSum>> {
    if index_bound < 1 {
        return Err(Error::InvalidInput(
            "index bound N must be at least 1".into(),
        ));
    }
    let form = binet(rec)?;
    let comps: Vec<[Scalar; 2]> = (0..=index_bound)
        .map(|k| Ok([form.component(0, k)?, form.component(1, k)?]))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for n1 in 0..=index_bound as usize {
        for n2 in n1..=index_bound as usize {
            let per: [Scalar; 2] = [
                comps[n1][0].add(&comps[n2][0])?,
                comps[n1][1].add(&comps[n2][1])?,
            ];
            for (i, s) in per.iter().enumerate() {
                if s.is_zero() {
                    out.push(VanishingSum {
                        n1: n1 as u64,
                        n2: n2 as u64,
                        subset: vec![i + 1],
                        kind: VanishingKind::PerRoot,
                    });
                }
            }
            if per[0].add(&per[1])?.is_zero() {
                out.push(VanishingSum {
                    n1: n1 as u64,
                    n2: n2 as u64,
                    subset: vec![1, 2],
                    kind: VanishingKind::FullSum,
                });
            }
        }
    }
    Ok(out)
}
