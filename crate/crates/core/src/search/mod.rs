//! Bounded searches over coordinate sets, hypothesis audits, and the small
//! calculators that accompany them.
//!
//! Every search is deterministic: shards are pure, their hits are merged and
//! sorted, and the report documents never depend on the shard count.

mod bound;
mod hypotheses;
mod pairs;
mod partitions;
mod remarks;
mod sunit_sum;

use std::time::Duration;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::norm_form::{coordinate_set, Coordinate, NormFormProblem, SolutionView};
use crate::recurrence::LinearRecurrence;
use crate::serde_big;
use crate::sunits::{SPrimeSet, SUnit, SubsumCertificate};

pub use self::bound::{
    schlickewei_bound, schlickewei_bound_exact, schlickewei_parameter, BoundValue,
};
pub use self::hypotheses::{
    audit_hypotheses, HypothesisReport, IndependenceAudit, RootOfUnityAudit, RootPair,
};
pub use self::pairs::{pair_sum_search, vanishing_pair_sums, VanishingKind, VanishingSum};
pub use self::partitions::{
    bell_number, partition_analysis, set_partitions, PartitionAnalysis, PartitionReport,
    PartitionVerdict,
};
pub use self::remarks::{verify_remark, Check, CheckStatus, RemarkReport, REMARK_IDS};
pub use self::sunit_sum::sunit_sum_search;

/// Knobs shared by the sharded searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads. Output never depends on it.
    pub shards: usize,
    /// Exponent bound for the multiplicative independence audit.
    pub independence_bound: u32,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            shards: 1,
            independence_bound: 10,
        }
    }
}

/// The positive entries of `X₁` and `X₂` up to a bound, with the solutions
/// they come from left out: a partner is recomputed whenever a hit is recorded.
#[derive(Clone, Debug)]
pub struct CoordinateIndex {
    problem: NormFormProblem,
    bound: BigInt,
    sets: [Vec<BigInt>; 2],
}

impl CoordinateIndex {
    pub fn build(problem: &NormFormProblem, bound: &BigInt) -> Result<Self> {
        let get = |c| coordinate_set(problem, c, bound, SolutionView::Nontrivial);
        Ok(Self {
            problem: problem.clone(),
            bound: bound.clone(),
            sets: [get(Coordinate::X)?, get(Coordinate::Y)?],
        })
    }

    pub fn set(&self, c: Coordinate) -> &[BigInt] {
        &self.sets[usize::from(c.index() - 1)]
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    /// Largest entry of either set, or `None` if both are empty.
    pub fn max_entry(&self) -> Option<&BigInt> {
        self.sets.iter().filter_map(|s| s.last()).max()
    }

    pub fn contains(&self, c: Coordinate, v: &BigInt) -> bool {
        self.set(c).binary_search(v).is_ok()
    }

    /// Membership witnesses for `v`, each re-verified against the equation.
    pub fn witnesses(&self, v: &BigInt) -> Result<Vec<Witness>> {
        let mut out = Vec::new();
        for c in [Coordinate::X, Coordinate::Y] {
            if !self.contains(c, v) {
                continue;
            }
            let partner = self.problem.partner(c, v).ok_or_else(|| {
                Error::InvariantViolation(format!("{v} listed in X{} without a partner", c.index()))
            })?;
            let (x, y) = match c {
                Coordinate::X => (v.clone(), partner),
                Coordinate::Y => (partner, v.clone()),
            };
            if !self.problem.is_solution(&x, &y) {
                return Err(Error::InvariantViolation(format!(
                    "({x}, {y}) does not solve the form equation"
                )));
            }
            out.push(Witness {
                set: c.index(),
                solution: (x, y),
            });
        }
        Ok(out)
    }
}

/// `v ∈ X_set`, certified by the solution `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub set: u8,
    #[serde(serialize_with = "serde_big::pair")]
    pub solution: (BigInt, BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairHit {
    pub n1: u64,
    pub n2: u64,
    #[serde(serialize_with = "serde_big::int")]
    pub sum: BigInt,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SUnitHit {
    pub units: Vec<SUnit>,
    #[serde(serialize_with = "serde_big::int")]
    pub sum: BigInt,
    pub witnesses: Vec<Witness>,
    pub certificate: SubsumCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Hit {
    Pair(PairHit),
    SUnit(SUnitHit),
}

impl Hit {
    pub fn sum(&self) -> &BigInt {
        match self {
            Hit::Pair(h) => &h.sum,
            Hit::SUnit(h) => &h.sum,
        }
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Hit::Pair(h) => &h.witnesses,
            Hit::SUnit(h) => &h.witnesses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_bound: Option<u64>,
    #[serde(serialize_with = "serde_big::int")]
    pub coordinate_bound: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tuple_size: Option<usize>,
}

/// Hit counts at half the search parameter and at the full parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub parameter: String,
    pub half: u64,
    pub full: u64,
    pub hits_at_half: usize,
    pub hits_at_full: usize,
    pub stable: bool,
}

impl Stabilization {
    fn new(parameter: &str, full: u64, hits_at_half: usize, hits_at_full: usize) -> Self {
        Self {
            parameter: parameter.into(),
            half: full / 2,
            full,
            hits_at_half,
            hits_at_full,
            stable: hits_at_half == hits_at_full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub search: String,
    pub problem: NormFormProblem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recurrence: Option<LinearRecurrence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<SPrimeSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positive_only: Option<bool>,
    pub bounds: Bounds,
    pub coordinate_set_sizes: [usize; 2],
    pub hit_count: usize,
    pub hits: Vec<Hit>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesisReport>,
    pub stabilization: Stabilization,
    /// Wall time; reported on the console only so documents stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Serializes with sorted object keys, two-space indentation and a final
/// newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    let mut s =
        serde_json::to_string_pretty(&v).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

type WorkerOutput<T> = Result<Vec<(usize, Vec<T>)>>;

/// Runs `job(0..jobs)` on `shards` threads (job `j` on worker `j % shards`)
/// and concatenates the outputs in job order.
pub(crate) fn run_sharded<T, F>(shards: usize, jobs: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<Vec<T>> + Sync,
{
    let shards = shards.clamp(1, jobs.max(1));
    if shards == 1 {
        let mut out = Vec::new();
        for j in 0..jobs {
            out.extend(job(j)?);
        }
        return Ok(out);
    }
    let per_worker: Vec<WorkerOutput<T>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..shards)
            .map(|w| {
                let job = &job;
                scope.spawn(move || {
                    (w..jobs)
                        .step_by(shards)
                        .map(|j| job(j).map(|v| (j, v)))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut chunks: Vec<(usize, Vec<T>)> = Vec::with_capacity(jobs);
    for r in per_worker {
        chunks.extend(r?);
    }
    chunks.sort_by_key(|(j, _)| *j);
    Ok(chunks.into_iter().flat_map(|(_, v)| v).collect())
}
