use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadratic::Scalar;
use crate::recurrence::{roots_multiplicatively_independent, Independence};

use super::RootPair;

pub const MAX_BASES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PartitionVerdict {
    /// Some pair inside a block satisfies a multiplicative relation.
    #[serde(rename = "certified-dependent")]
    CertifiedDependent,
    /// Every pair inside every block is independent up to the bound. This is
    /// evidence, not proof, that the block relations are trivial.
    #[serde(rename = "independent-up-to-E")]
    IndependentUpTo,
    /// Every block is a singleton, so no relation is imposed.
    #[serde(rename = "no-constraints")]
    NoConstraints,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    /// Blocks of base positions, counted from 1.
    pub blocks: Vec<Vec<usize>>,
    pub pairs: Vec<RootPair>,
    pub verdict: PartitionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionAnalysis {
    pub bases: Vec<Scalar>,
    pub exponent_bound: u32,
    pub partition_count: usize,
    pub partitions: Vec<PartitionReport>,
}

/// Set partitions of `{0, …, n−1}` in restricted-growth-string order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // a[i] = block of i, a[0] = 0 and a[i] ≤ 1 + max(a[..i])
    let mut a = vec![0usize; n];
    loop {
        let blocks = a.iter().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); blocks];
        for (i, &b) in a.iter().enumerate() {
            parts[b].push(i);
        }
        out.push(parts);

        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = a[..i].iter().copied().max().unwrap_or(0);
            if a[i] <= prefix_max {
                a[i] += 1;
                for x in a.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

pub fn bell_number(n: usize) -> u64 {
    // Bell triangle
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for x in &row {
            let v = next.last().expect("nonempty") + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Labels every set partition of the bases by pairwise dependence inside
/// its blocks.
pub fn partition_analysis(bases: &[Scalar], exponent_bound: u32) -> Result<PartitionAnalysis> {
    let n = bases.len();
    if n > MAX_BASES {
        return Err(Error::TooManyIndices(n));
    }
    if n < 2 {
        return Err(Error::InvalidInput(
            "partition analysis needs at least two bases".into(),
        ));
    }
    if exponent_bound < 1 {
        return Err(Error::InvalidInput(
            "exponent bound E must be at least 1".into(),
        ));
    }
    let mut verdicts = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            verdicts[i][j] = Some(roots_multiplicatively_independent(
                &bases[i],
                &bases[j],
                exponent_bound,
            )?);
        }
    }
    let partitions: Vec<PartitionReport> = set_partitions(n)
        .into_iter()
        .map(|blocks| {
            let mut pairs = Vec::new();
            for block in &blocks {
                for (k, &i) in block.iter().enumerate() {
                    for &j in &block[k + 1..] {
                        let verdict: Independence = verdicts[i][j].clone().expect("i < j");
                        pairs.push(RootPair {
                            i: i + 1,
                            j: j + 1,
                            verdict,
                        });
                    }
                }
            }
            let verdict = if pairs.is_empty() {
                PartitionVerdict::NoConstraints
            } else if pairs.iter().any(|p| p.verdict.is_dependent()) {
                PartitionVerdict::CertifiedDependent
            } else {
                PartitionVerdict::IndependentUpTo
            };
            PartitionReport {
                blocks: blocks
                    .into_iter()
                    .map(|b| b.into_iter().map(|i| i + 1).collect())
                    .collect(),
                pairs,
                verdict,
            }
        })
        .collect();
    Ok(PartitionAnalysis {
        bases: bases.to_vec(),
        exponent_bound,
        partition_count: partitions.len(),
        partitions,
    })
}
